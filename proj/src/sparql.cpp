#include "ontolint/sparql.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "ontolint/iri.hpp"

namespace ontolint {
namespace {

enum class Tok {
  Eof,
  Word,      // bare identifier / keyword (case kept, compared case-insensitively)
  Iri,       // <...>, value resolved
  PNameNS,   // prefix:
  PNameLN,   // prefix:local
  BlankLabel,
  Anon,      // []
  Var,       // ?x or $x
  String,
  LangTag,
  Integer,
  Decimal,
  Double,
  Punct,     // single or multi char operator
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;    // word, punct spelling, literal value, var name
  std::string prefix;  // pname tokens
  std::string local;
  int line = 1;
  int column = 1;
  std::size_t start = 0;  // byte offset, for lenient re-lexing
};

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_hex(char c) { return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'); }

bool word_eq(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

// Name characters for prefixed names / variables; multi-byte UTF-8 bytes are
// accepted wholesale, which is adequate for a syntax checker.
bool is_name_char(char c) {
  return is_alpha(c) || is_digit(c) || c == '_' || c == '-' ||
         static_cast<unsigned char>(c) >= 0x80;
}
bool is_name_start(char c) {
  return is_alpha(c) || c == '_' || static_cast<unsigned char>(c) >= 0x80;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws();
    Token t;
    t.line = line_;
    t.column = col_;
    t.start = pos_;
    if (pos_ >= text_.size()) {
      t.kind = Tok::Eof;
      return t;
    }
    char c = text_[pos_];

    if (c == '<') return iri_or_less(t);
    if (c == '?' || c == '$') return var(t);
    if (c == '"' || c == '\'') return string_literal(t);
    if (c == '@') return langtag(t);
    if (c == '_' && pos_ + 1 < text_.size() && text_[pos_ + 1] == ':') return blank_label(t);
    if (is_digit(c) || (c == '.' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1])))
      return number(t);
    if (c == '[') {
      // ANON when the bracket closes immediately (ws allowed)
      std::size_t p = pos_ + 1;
      while (p < text_.size() && is_ws(text_[p])) ++p;
      if (p < text_.size() && text_[p] == ']') {
        while (pos_ <= p) advance();
        t.kind = Tok::Anon;
        t.text = "[]";
        return t;
      }
      return punct(t);
    }
    if (is_name_start(c)) return word_or_pname(t);
    return punct(t);
  }

  [[noreturn]] void fail_here(const std::string& msg, const std::string& expected = "") {
    throw ParseError{line_, col_, msg, expected};
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (is_ws(c)) {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token iri_or_less(Token t) {
    // Try IRIREF: no spaces or angle brackets inside, must close with '>'.
    std::size_t p = pos_ + 1;
    while (p < text_.size()) {
      char c = text_[p];
      if (c == '>') break;
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' ||
          c == '}' || c == '|' || c == '^' || c == '`' || c == '\\') {
        p = std::string_view::npos;
        break;
      }
      ++p;
    }
    if (p == std::string_view::npos || p >= text_.size()) {
      // operator '<' or '<='
      t.kind = Tok::Punct;
      advance();
      if (pos_ < text_.size() && text_[pos_] == '=') {
        advance();
        t.text = "<=";
      } else {
        t.text = "<";
      }
      return t;
    }
    advance();  // '<'
    std::string value;
    while (text_[pos_] != '>') {
      value += text_[pos_];
      advance();
    }
    advance();  // '>'
    t.kind = Tok::Iri;
    t.text = value;
    return t;
  }

  Token var(Token t) {
    advance();  // ? or $
    std::string name;
    while (pos_ < text_.size() && (is_name_char(text_[pos_]))) {
      name += text_[pos_];
      advance();
    }
    if (name.empty()) fail_here("expected variable name", "VAR");
    t.kind = Tok::Var;
    t.text = name;
    return t;
  }

  Token string_literal(Token t) {
    char q = text_[pos_];
    advance();
    bool long_form = false;
    if (pos_ + 1 < text_.size() && text_[pos_] == q && text_[pos_ + 1] == q) {
      advance();
      advance();
      long_form = true;
    } else if (pos_ < text_.size() && text_[pos_] == q) {
      advance();
      t.kind = Tok::String;
      return t;  // empty string
    }
    std::string value;
    while (true) {
      if (pos_ >= text_.size()) fail_here("unterminated string", "STRING");
      char c = text_[pos_];
      if (!long_form && (c == '\n' || c == '\r'))
        fail_here("newline in single-line string", "STRING");
      if (c == q) {
        if (!long_form) {
          advance();
          break;
        }
        if (pos_ + 2 < text_.size() && text_[pos_ + 1] == q && text_[pos_ + 2] == q) {
          advance();
          advance();
          advance();
          break;
        }
        value += c;
        advance();
        continue;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size()) fail_here("unterminated escape", "ECHAR");
        char e = text_[pos_];
        if (e == 't' || e == 'b' || e == 'n' || e == 'r' || e == 'f' || e == '"' ||
            e == '\'' || e == '\\') {
          value += e;
          advance();
        } else if (e == 'u' || e == 'U') {
          int digits = e == 'u' ? 4 : 8;
          advance();
          for (int i = 0; i < digits; ++i) {
            if (pos_ >= text_.size() || !is_hex(text_[pos_]))
              fail_here("invalid \\u escape", "HEX");
            advance();
          }
        } else {
          fail_here("invalid string escape", "ECHAR");
        }
        continue;
      }
      value += c;
      advance();
    }
    t.kind = Tok::String;
    t.text = value;
    return t;
  }

  Token langtag(Token t) {
    advance();  // '@'
    std::string tag;
    if (pos_ >= text_.size() || !is_alpha(text_[pos_]))
      fail_here("invalid language tag", "LANGTAG");
    while (pos_ < text_.size() && is_alpha(text_[pos_])) {
      tag += text_[pos_];
      advance();
    }
    while (pos_ < text_.size() && text_[pos_] == '-') {
      tag += '-';
      advance();
      if (pos_ >= text_.size() || !(is_alpha(text_[pos_]) || is_digit(text_[pos_])))
        fail_here("invalid language tag", "LANGTAG");
      while (pos_ < text_.size() && (is_alpha(text_[pos_]) || is_digit(text_[pos_]))) {
        tag += text_[pos_];
        advance();
      }
    }
    t.kind = Tok::LangTag;
    t.text = tag;
    return t;
  }

  Token blank_label(Token t) {
    advance();  // '_'
    advance();  // ':'
    std::string label;
    if (pos_ >= text_.size() || !(is_name_char(text_[pos_])))
      fail_here("invalid blank node label", "BLANK_NODE_LABEL");
    while (pos_ < text_.size() && (is_name_char(text_[pos_]) || text_[pos_] == '.')) {
      label += text_[pos_];
      advance();
    }
    while (!label.empty() && label.back() == '.') {
      label.pop_back();
      --pos_;
      --col_;
    }
    t.kind = Tok::BlankLabel;
    t.text = label;
    return t;
  }

  Token number(Token t) {
    std::string lex;
    bool dot = false, exp = false;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (is_digit(c)) {
        lex += c;
        advance();
      } else if (c == '.' && !dot && !exp && pos_ + 1 < text_.size() &&
                 is_digit(text_[pos_ + 1])) {
        dot = true;
        lex += c;
        advance();
      } else if ((c == 'e' || c == 'E') && !exp) {
        exp = true;
        lex += c;
        advance();
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
          lex += text_[pos_];
          advance();
        }
        if (pos_ >= text_.size() || !is_digit(text_[pos_]))
          fail_here("malformed exponent", "DOUBLE");
      } else {
        break;
      }
    }
    t.kind = exp ? Tok::Double : dot ? Tok::Decimal : Tok::Integer;
    t.text = lex;
    return t;
  }

  Token word_or_pname(Token t) {
    std::string word;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (is_name_char(c)) {
        word += c;
        advance();
      } else if (c == '.' && pos_ + 1 < text_.size() && is_name_char(text_[pos_ + 1])) {
        // interior dot: legal in PN_PREFIX, resolved by longest match
        word += c;
        advance();
      } else {
        break;
      }
    }
    if (pos_ < text_.size() && text_[pos_] == ':') {
      advance();
      // prefixed name: local part may contain ., %XX and \-escapes
      std::string local;
      std::string pending_dots;
      while (pos_ < text_.size()) {
        char c = text_[pos_];
        if (is_name_char(c) || c == ':') {
          local += pending_dots;
          pending_dots.clear();
          local += c;
          advance();
        } else if (c == '.') {
          pending_dots += c;
          advance();
        } else if (c == '%') {
          if (pos_ + 2 >= text_.size() || !is_hex(text_[pos_ + 1]) || !is_hex(text_[pos_ + 2]))
            fail_here("invalid %-escape in local name", "PERCENT");
          local += pending_dots;
          pending_dots.clear();
          local += text_[pos_];
          advance();
          local += text_[pos_];
          advance();
          local += text_[pos_];
          advance();
        } else if (c == '\\') {
          advance();
          if (pos_ >= text_.size()) fail_here("invalid escape in local name", "PN_LOCAL_ESC");
          local += pending_dots;
          pending_dots.clear();
          local += text_[pos_];
          advance();
        } else {
          break;
        }
      }
      for (std::size_t i = 0; i < pending_dots.size(); ++i) {
        --pos_;
        --col_;
      }
      t.kind = local.empty() ? Tok::PNameNS : Tok::PNameLN;
      t.prefix = word;
      t.local = local;
      return t;
    }
    t.kind = Tok::Word;
    t.text = word;
    return t;
  }

  Token punct(Token t) {
    char c = text_[pos_];
    t.kind = Tok::Punct;
    advance();
    auto two = [&](char second, const char* spelling) -> bool {
      if (pos_ < text_.size() && text_[pos_] == second) {
        advance();
        t.text = spelling;
        return true;
      }
      return false;
    };
    switch (c) {
      case '^':
        if (two('^', "^^")) return t;
        t.text = "^";
        return t;
      case '&':
        if (two('&', "&&")) return t;
        fail_here("expected '&&'", "operator");
      case '|':
        if (two('|', "||")) return t;
        t.text = "|";
        return t;
      case '!':
        if (two('=', "!=")) return t;
        t.text = "!";
        return t;
      case '>':
        if (two('=', ">=")) return t;
        t.text = ">";
        return t;
      default:
        t.text = std::string(1, c);
        return t;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Recursive-descent validator over the token stream. Builds no AST; it
// records prefixes and IRIs while checking the grammar.
class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : lexer_(text) { shift(); }

  QueryInfo run() {
    prologue();
    if (cur_.kind == Tok::Word) {
      static const char* update_words[] = {"insert", "delete", "load", "clear", "drop",
                                           "create", "add",    "move",  "copy",  "with"};
      for (const char* w : update_words)
        if (word_eq(cur_.text, w))
          fail("SPARQL Update requests are not competency-question queries", "QueryForm");
    }
    if (is_word("select")) {
      info_.form = QueryForm::Select;
      select_query();
    } else if (is_word("construct")) {
      info_.form = QueryForm::Construct;
      construct_query();
    } else if (is_word("describe")) {
      info_.form = QueryForm::Describe;
      describe_query();
    } else if (is_word("ask")) {
      info_.form = QueryForm::Ask;
      ask_query();
    } else {
      fail("expected SELECT, CONSTRUCT, DESCRIBE or ASK", "QueryForm");
    }
    values_clause();
    if (cur_.kind != Tok::Eof) fail("trailing content after query", "EOF");
    return std::move(info_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const std::string& expected = "") const {
    throw ParseError{cur_.line, cur_.column, msg, expected};
  }

  void shift() { cur_ = lexer_.next(); }

  bool is_word(const char* w) const { return cur_.kind == Tok::Word && word_eq(cur_.text, w); }
  bool is_punct(const char* p) const { return cur_.kind == Tok::Punct && cur_.text == p; }

  void expect_word(const char* w) {
    if (!is_word(w)) fail(std::string("expected '") + w + "'", w);
    shift();
  }
  void expect_punct(const char* p) {
    if (!is_punct(p)) fail(std::string("expected '") + p + "'", p);
    shift();
  }
  bool accept_word(const char* w) {
    if (is_word(w)) {
      shift();
      return true;
    }
    return false;
  }
  bool accept_punct(const char* p) {
    if (is_punct(p)) {
      shift();
      return true;
    }
    return false;
  }

  // Resolve the current token as an IRI (records it) and consume.
  std::string iri() {
    if (cur_.kind == Tok::Iri) {
      std::string v = resolve_iri(base_, cur_.text);
      info_.iris.insert(v);
      shift();
      return v;
    }
    if (cur_.kind == Tok::PNameLN || cur_.kind == Tok::PNameNS) {
      auto it = info_.prefixes.find(cur_.prefix);
      if (it == info_.prefixes.end())
        fail("prefix '" + cur_.prefix + ":' is not declared", "PrefixedName");
      std::string v = it->second + cur_.local;
      info_.iris.insert(v);
      shift();
      return v;
    }
    fail("expected IRI", "iri");
  }

  void prologue() {
    while (true) {
      if (is_word("prefix")) {
        shift();
        if (cur_.kind != Tok::PNameNS) fail("expected prefix name", "PNAME_NS");
        std::string p = cur_.prefix;
        shift();
        if (cur_.kind != Tok::Iri) fail("expected namespace IRI", "IRIREF");
        info_.prefixes[p] = resolve_iri(base_, cur_.text);
        shift();
      } else if (is_word("base")) {
        shift();
        if (cur_.kind != Tok::Iri) fail("expected base IRI", "IRIREF");
        base_ = resolve_iri(base_, cur_.text);
        shift();
      } else {
        return;
      }
    }
  }

  void select_query() {
    select_clause();
    while (is_word("from")) dataset_clause();
    where_clause(true);
    solution_modifier();
  }

  void sub_select() {
    select_clause();
    where_clause(true);
    solution_modifier();
    values_clause();
  }

  void select_clause() {
    expect_word("select");
    accept_word("distinct") || accept_word("reduced");
    if (accept_punct("*")) return;
    bool any = false;
    while (true) {
      if (cur_.kind == Tok::Var) {
        shift();
        any = true;
      } else if (is_punct("(")) {
        shift();
        expression();
        expect_word("as");
        if (cur_.kind != Tok::Var) fail("expected variable", "VAR");
        shift();
        expect_punct(")");
        any = true;
      } else {
        break;
      }
    }
    if (!any) fail("SELECT needs at least one projection", "Var");
  }

  void construct_query() {
    expect_word("construct");
    if (is_punct("{")) {
      construct_template();
      while (is_word("from")) dataset_clause();
      where_clause(true);
    } else {
      while (is_word("from")) dataset_clause();
      expect_word("where");
      expect_punct("{");
      if (!is_punct("}")) triples_block(false);
      expect_punct("}");
    }
    solution_modifier();
  }

  void describe_query() {
    expect_word("describe");
    if (accept_punct("*")) {
    } else {
      bool any = false;
      while (cur_.kind == Tok::Var || cur_.kind == Tok::Iri || cur_.kind == Tok::PNameLN ||
             cur_.kind == Tok::PNameNS) {
        if (cur_.kind == Tok::Var)
          shift();
        else
          iri();
        any = true;
      }
      if (!any) fail("DESCRIBE needs a variable, IRI or '*'", "VarOrIri");
    }
    while (is_word("from")) dataset_clause();
    if (is_word("where") || is_punct("{")) where_clause(true);
    solution_modifier();
  }

  void ask_query() {
    expect_word("ask");
    while (is_word("from")) dataset_clause();
    where_clause(true);
    solution_modifier();
  }

  void dataset_clause() {
    expect_word("from");
    accept_word("named");
    iri();
  }

  void where_clause(bool keyword_optional) {
    if (!accept_word("where") && !keyword_optional) fail("expected WHERE", "WHERE");
    group_graph_pattern();
  }

  void group_graph_pattern() {
    expect_punct("{");
    if (is_word("select")) {
      sub_select();
      expect_punct("}");
      return;
    }
    group_graph_pattern_sub();
    expect_punct("}");
  }

  void group_graph_pattern_sub() {
    if (starts_triples()) triples_block(true);
    while (true) {
      if (is_punct("{") || is_word("optional") || is_word("minus") || is_word("graph") ||
          is_word("service") || is_word("filter") || is_word("bind") || is_word("values")) {
        graph_pattern_not_triples();
        accept_punct(".");
        if (starts_triples()) triples_block(true);
      } else {
        return;
      }
    }
  }

  bool starts_triples() const {
    switch (cur_.kind) {
      case Tok::Var:
      case Tok::Iri:
      case Tok::PNameLN:
      case Tok::PNameNS:
      case Tok::BlankLabel:
      case Tok::Anon:
      case Tok::String:
      case Tok::Integer:
      case Tok::Decimal:
      case Tok::Double:
        return true;
      case Tok::Word:
        return word_eq(cur_.text, "true") || word_eq(cur_.text, "false");
      case Tok::Punct:
        return cur_.text == "(" || cur_.text == "[" || cur_.text == "+" || cur_.text == "-";
      default:
        return false;
    }
  }

  void graph_pattern_not_triples() {
    if (is_punct("{")) {
      group_graph_pattern();
      while (accept_word("union")) group_graph_pattern();
      return;
    }
    if (accept_word("optional") || accept_word("minus")) {
      group_graph_pattern();
      return;
    }
    if (accept_word("graph")) {
      var_or_iri();
      group_graph_pattern();
      return;
    }
    if (accept_word("service")) {
      info_.uses_service = true;
      accept_word("silent");
      var_or_iri();
      group_graph_pattern();
      return;
    }
    if (accept_word("filter")) {
      constraint();
      return;
    }
    if (accept_word("bind")) {
      expect_punct("(");
      expression();
      expect_word("as");
      if (cur_.kind != Tok::Var) fail("expected variable", "VAR");
      shift();
      expect_punct(")");
      return;
    }
    if (accept_word("values")) {
      data_block();
      return;
    }
    fail("expected graph pattern", "GraphPatternNotTriples");
  }

  void values_clause() {
    if (accept_word("values")) data_block();
  }

  void data_block() {
    if (cur_.kind == Tok::Var) {
      shift();
      expect_punct("{");
      while (!is_punct("}")) data_block_value();
      shift();
      return;
    }
    expect_punct("(");
    while (cur_.kind == Tok::Var) shift();
    expect_punct(")");
    expect_punct("{");
    while (is_punct("(")) {
      shift();
      while (!is_punct(")")) data_block_value();
      shift();
    }
    expect_punct("}");
  }

  void data_block_value() {
    if (cur_.kind == Tok::Iri || cur_.kind == Tok::PNameLN || cur_.kind == Tok::PNameNS) {
      iri();
      return;
    }
    if (cur_.kind == Tok::String) {
      rdf_literal_rest();
      return;
    }
    if (cur_.kind == Tok::Integer || cur_.kind == Tok::Decimal || cur_.kind == Tok::Double) {
      shift();
      return;
    }
    if (is_punct("+") || is_punct("-")) {
      shift();
      if (cur_.kind != Tok::Integer && cur_.kind != Tok::Decimal && cur_.kind != Tok::Double)
        fail("expected number", "NumericLiteral");
      shift();
      return;
    }
    if (is_word("true") || is_word("false") || is_word("undef")) {
      shift();
      return;
    }
    fail("expected data block value", "DataBlockValue");
  }

  // --- triples ------------------------------------------------------------

  void triples_block(bool with_paths) {
    triples_same_subject(with_paths);
    while (accept_punct(".")) {
      if (!starts_triples()) return;
      triples_same_subject(with_paths);
    }
  }

  void triples_same_subject(bool with_paths) {
    if (is_punct("(") || is_punct("[")) {
      triples_node(with_paths);
      // property list optional after a triples node
      if (starts_verb(with_paths)) property_list_not_empty(with_paths);
      return;
    }
    var_or_term();
    property_list_not_empty(with_paths);
  }

  bool starts_verb(bool with_paths) const {
    if (cur_.kind == Tok::Var || cur_.kind == Tok::Iri || cur_.kind == Tok::PNameLN ||
        cur_.kind == Tok::PNameNS)
      return true;
    if (cur_.kind == Tok::Word && cur_.text == "a") return true;
    if (with_paths &&
        (is_punct("^") || is_punct("!") || is_punct("(")))
      return true;
    return false;
  }

  void property_list_not_empty(bool with_paths) {
    verb(with_paths);
    object_list(with_paths);
    while (accept_punct(";")) {
      if (!starts_verb(with_paths)) return;  // trailing ';'
      verb(with_paths);
      object_list(with_paths);
    }
  }

  void verb(bool with_paths) {
    if (cur_.kind == Tok::Var) {
      shift();
      return;
    }
    if (with_paths) {
      path();
      return;
    }
    if (cur_.kind == Tok::Word && cur_.text == "a") {
      info_.iris.insert(vocab::rdf_type);
      shift();
      return;
    }
    iri();
  }

  // Property path grammar: alternatives of sequences of possibly inverted,
  // possibly negated, possibly modified primaries.
  void path() {
    path_sequence();
    while (accept_punct("|")) path_sequence();
  }
  void path_sequence() {
    path_elt_or_inverse();
    while (accept_punct("/")) path_elt_or_inverse();
  }
  void path_elt_or_inverse() {
    accept_punct("^");
    path_elt();
  }
  void path_elt() {
    path_primary();
    if (is_punct("?") || is_punct("*") || is_punct("+")) shift();
  }
  void path_primary() {
    if (cur_.kind == Tok::Word && cur_.text == "a") {
      info_.iris.insert(vocab::rdf_type);
      shift();
      return;
    }
    if (accept_punct("!")) {
      path_negated_property_set();
      return;
    }
    if (accept_punct("(")) {
      path();
      expect_punct(")");
      return;
    }
    iri();
  }
  void path_negated_property_set() {
    if (accept_punct("(")) {
      if (!is_punct(")")) {
        path_one_in_property_set();
        while (accept_punct("|")) path_one_in_property_set();
      }
      expect_punct(")");
      return;
    }
    path_one_in_property_set();
  }
  void path_one_in_property_set() {
    accept_punct("^");
    if (cur_.kind == Tok::Word && cur_.text == "a") {
      info_.iris.insert(vocab::rdf_type);
      shift();
      return;
    }
    iri();
  }

  void object_list(bool with_paths) {
    object(with_paths);
    while (accept_punct(",")) object(with_paths);
  }

  void object(bool with_paths) {
    if (is_punct("(") || is_punct("[")) {
      triples_node(with_paths);
      return;
    }
    var_or_term();
  }

  void triples_node(bool with_paths) {
    if (accept_punct("(")) {
      if (is_punct(")")) fail("empty collection is written ()", "Collection");
      while (!is_punct(")")) object(with_paths);
      shift();
      return;
    }
    expect_punct("[");
    property_list_not_empty(with_paths);
    expect_punct("]");
  }

  void var_or_term() {
    switch (cur_.kind) {
      case Tok::Var:
      case Tok::BlankLabel:
      case Tok::Anon:
        shift();
        return;
      case Tok::Iri:
      case Tok::PNameLN:
      case Tok::PNameNS:
        iri();
        return;
      case Tok::String:
        rdf_literal_rest();
        return;
      case Tok::Integer:
      case Tok::Decimal:
      case Tok::Double:
        shift();
        return;
      case Tok::Word:
        if (word_eq(cur_.text, "true") || word_eq(cur_.text, "false")) {
          shift();
          return;
        }
        fail("expected term", "GraphTerm");
      case Tok::Punct:
        if (cur_.text == "+" || cur_.text == "-") {
          shift();
          if (cur_.kind != Tok::Integer && cur_.kind != Tok::Decimal &&
              cur_.kind != Tok::Double)
            fail("expected number", "NumericLiteral");
          shift();
          return;
        }
        [[fallthrough]];
      default:
        fail("expected term", "GraphTerm");
    }
  }

  void var_or_iri() {
    if (cur_.kind == Tok::Var) {
      shift();
      return;
    }
    iri();
  }

  void rdf_literal_rest() {
    shift();  // the string
    if (cur_.kind == Tok::LangTag) {
      shift();
      return;
    }
    if (is_punct("^^")) {
      shift();
      iri();  // datatype IRIs count as IRIs in the query
    }
  }

  // --- solution modifiers ---------------------------------------------------

  void solution_modifier() {
    if (is_word("group")) {
      shift();
      expect_word("by");
      bool any = false;
      while (true) {
        if (cur_.kind == Tok::Var) {
          shift();
          any = true;
        } else if (is_punct("(")) {
          shift();
          expression();
          if (accept_word("as")) {
            if (cur_.kind != Tok::Var) fail("expected variable", "VAR");
            shift();
          }
          expect_punct(")");
          any = true;
        } else if (is_builtin_name() || cur_.kind == Tok::Iri || cur_.kind == Tok::PNameLN ||
                   cur_.kind == Tok::PNameNS) {
          primary_expression();
          any = true;
        } else {
          break;
        }
      }
      if (!any) fail("GROUP BY needs a condition", "GroupCondition");
    }
    if (is_word("having")) {
      shift();
      constraint();
      while (is_punct("(") || is_builtin_name()) constraint();
    }
    if (is_word("order")) {
      shift();
      expect_word("by");
      bool any = false;
      while (true) {
        if (accept_word("asc") || accept_word("desc")) {
          bracketted_expression();
          any = true;
        } else if (cur_.kind == Tok::Var) {
          shift();
          any = true;
        } else if (is_punct("(") || is_builtin_name() || cur_.kind == Tok::Iri ||
                   cur_.kind == Tok::PNameLN || cur_.kind == Tok::PNameNS) {
          constraint();
          any = true;
        } else {
          break;
        }
      }
      if (!any) fail("ORDER BY needs a condition", "OrderCondition");
    }
    if (is_word("limit")) {
      shift();
      if (cur_.kind != Tok::Integer) fail("expected integer", "INTEGER");
      shift();
      if (accept_word("offset")) {
        if (cur_.kind != Tok::Integer) fail("expected integer", "INTEGER");
        shift();
      }
    } else if (is_word("offset")) {
      shift();
      if (cur_.kind != Tok::Integer) fail("expected integer", "INTEGER");
      shift();
      if (accept_word("limit")) {
        if (cur_.kind != Tok::Integer) fail("expected integer", "INTEGER");
        shift();
      }
    }
  }

  void constraint() {
    if (is_punct("(")) {
      bracketted_expression();
      return;
    }
    if (is_builtin_name()) {
      builtin_call();
      return;
    }
    if (cur_.kind == Tok::Iri || cur_.kind == Tok::PNameLN || cur_.kind == Tok::PNameNS) {
      iri();
      argument_list();
      return;
    }
    fail("expected constraint", "Constraint");
  }

  void bracketted_expression() {
    expect_punct("(");
    expression();
    expect_punct(")");
  }

  // --- expressions ----------------------------------------------------------

  void expression() { conditional_or(); }

  void conditional_or() {
    conditional_and();
    while (is_punct("||")) {
      shift();
      conditional_and();
    }
  }

  void conditional_and() {
    relational();
    while (is_punct("&&")) {
      shift();
      relational();
    }
  }

  void relational() {
    additive();
    if (is_punct("=") || is_punct("!=") || is_punct("<") || is_punct(">") ||
        is_punct("<=") || is_punct(">=")) {
      shift();
      additive();
      return;
    }
    if (is_word("in")) {
      shift();
      expression_list();
      return;
    }
    if (is_word("not")) {
      shift();
      expect_word("in");
      expression_list();
      return;
    }
  }

  void expression_list() {
    expect_punct("(");
    if (is_punct(")")) {
      shift();
      return;
    }
    expression();
    while (accept_punct(",")) expression();
    expect_punct(")");
  }

  void additive() {
    multiplicative();
    while (is_punct("+") || is_punct("-")) {
      shift();
      multiplicative();
    }
  }

  void multiplicative() {
    unary();
    while (is_punct("*") || is_punct("/")) {
      shift();
      unary();
    }
  }

  void unary() {
    if (is_punct("!") || is_punct("+") || is_punct("-")) shift();
    primary_expression();
  }

  void primary_expression() {
    if (is_punct("(")) {
      bracketted_expression();
      return;
    }
    if (cur_.kind == Tok::Var) {
      shift();
      return;
    }
    if (cur_.kind == Tok::String) {
      rdf_literal_rest();
      return;
    }
    if (cur_.kind == Tok::Integer || cur_.kind == Tok::Decimal || cur_.kind == Tok::Double) {
      shift();
      return;
    }
    if (is_word("true") || is_word("false")) {
      shift();
      return;
    }
    if (is_builtin_name()) {
      builtin_call();
      return;
    }
    if (cur_.kind == Tok::Iri || cur_.kind == Tok::PNameLN || cur_.kind == Tok::PNameNS) {
      iri();
      if (is_punct("(")) argument_list();
      return;
    }
    fail("expected expression", "PrimaryExpression");
  }

  void argument_list() {
    if (!is_punct("(")) return;
    shift();
    accept_word("distinct");
    if (is_punct(")")) {
      shift();
      return;
    }
    expression();
    while (accept_punct(",")) expression();
    expect_punct(")");
  }

  bool is_builtin_name() const {
    if (cur_.kind != Tok::Word) return false;
    static const char* names[] = {
        "str",      "lang",       "langmatches", "datatype",  "bound",     "iri",
        "uri",      "bnode",      "rand",        "abs",       "ceil",      "floor",
        "round",    "concat",     "strlen",      "ucase",     "lcase",     "encode_for_uri",
        "contains", "strstarts",  "strends",     "strbefore", "strafter",  "year",
        "month",    "day",        "hours",       "minutes",   "seconds",   "timezone",
        "tz",       "now",        "uuid",        "struuid",   "md5",       "sha1",
        "sha256",   "sha384",     "sha512",      "coalesce",  "if",        "strlang",
        "strdt",    "sameterm",   "isiri",       "isuri",     "isblank",   "isliteral",
        "isnumeric", "regex",     "substr",      "replace",   "exists",    "not",
        "count",    "sum",        "min",         "max",       "avg",       "sample",
        "group_concat"};
    for (const char* n : names)
      if (word_eq(cur_.text, n)) return true;
    return false;
  }

  void builtin_call() {
    if (accept_word("exists")) {
      group_graph_pattern();
      return;
    }
    if (is_word("not")) {
      shift();
      expect_word("exists");
      group_graph_pattern();
      return;
    }
    if (is_word("count")) {
      shift();
      expect_punct("(");
      accept_word("distinct");
      if (is_punct("*"))
        shift();
      else
        expression();
      expect_punct(")");
      return;
    }
    if (is_word("group_concat")) {
      shift();
      expect_punct("(");
      accept_word("distinct");
      expression();
      if (accept_punct(";")) {
        expect_word("separator");
        expect_punct("=");
        if (cur_.kind != Tok::String) fail("expected string", "STRING");
        shift();
      }
      expect_punct(")");
      return;
    }
    if (is_word("bnode")) {
      shift();
      if (is_punct("(")) {
        shift();
        if (!is_punct(")")) expression();
        expect_punct(")");
      }
      return;
    }
    // generic builtin: NAME '(' args ')' — NOW() and friends take zero args
    shift();
    expect_punct("(");
    if (!is_punct(")")) {
      expression();
      while (accept_punct(",")) expression();
    }
    expect_punct(")");
  }

  void construct_template() {
    expect_punct("{");
    if (!is_punct("}")) triples_block(false);
    expect_punct("}");
  }

  Lexer lexer_;
  Token cur_;
  QueryInfo info_;
  std::string base_;
};

}  // namespace

std::string_view to_string(QueryForm f) {
  switch (f) {
    case QueryForm::Select: return "SELECT";
    case QueryForm::Ask: return "ASK";
    case QueryForm::Construct: return "CONSTRUCT";
    case QueryForm::Describe: return "DESCRIBE";
  }
  return "SELECT";
}

std::variant<QueryInfo, ParseError> parse_query(std::string_view text) {
  try {
    return QueryParser(text).run();
  } catch (ParseError& e) {
    return e;
  }
}

std::optional<FormViolation> query_form_allowed(const QueryInfo& info) {
  if (info.form == QueryForm::Select || info.form == QueryForm::Ask) return std::nullopt;
  return FormViolation{info.form};
}

}  // namespace ontolint
