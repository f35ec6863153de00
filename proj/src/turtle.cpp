#include "ontolint/turtle.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "ontolint/iri.hpp"

namespace ontolint {
namespace {

constexpr char32_t kEof = 0xFFFFFFFF;

bool is_ws(char32_t c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }
bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }
bool is_alpha(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_hex(char32_t c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

bool is_pn_chars_base(char32_t c) {
  return is_alpha(c) || (c >= 0x00C0 && c <= 0x00D6) || (c >= 0x00D8 && c <= 0x00F6) ||
         (c >= 0x00F8 && c <= 0x02FF) || (c >= 0x0370 && c <= 0x037D) ||
         (c >= 0x037F && c <= 0x1FFF) || (c >= 0x200C && c <= 0x200D) ||
         (c >= 0x2070 && c <= 0x218F) || (c >= 0x2C00 && c <= 0x2FEF) ||
         (c >= 0x3001 && c <= 0xD7FF) || (c >= 0xF900 && c <= 0xFDCF) ||
         (c >= 0xFDF0 && c <= 0xFFFD) || (c >= 0x10000 && c <= 0xEFFFF);
}
bool is_pn_chars_u(char32_t c) { return is_pn_chars_base(c) || c == '_'; }
bool is_pn_chars(char32_t c) {
  return is_pn_chars_u(c) || c == '-' || is_digit(c) || c == 0x00B7 ||
         (c >= 0x0300 && c <= 0x036F) || (c >= 0x203F && c <= 0x2040);
}
bool is_pn_local_esc(char32_t c) {
  switch (c) {
    case '_': case '~': case '.': case '-': case '!': case '$': case '&':
    case '\'': case '(': case ')': case '*': case '+': case ',': case ';':
    case '=': case '/': case '?': case '#': case '@': case '%':
      return true;
    default:
      return false;
  }
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Parser {
 public:
  Parser(std::string_view text, std::string base) : text_(text), base_(std::move(base)) {}

  ParseResult run() {
    skip_ws();
    while (!at_eof()) {
      statement();
      skip_ws();
    }
    if (!result_.base && !base_.empty()) result_.base = base_;
    return std::move(result_);
  }

 private:
  // --- character access -------------------------------------------------

  bool at_eof() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(std::string message, std::string expected = "") const {
    throw ParseError{line_, column_, std::move(message), std::move(expected)};
  }

  // Decode the code point at pos_ without consuming. Malformed UTF-8 is a
  // hard error at the byte position.
  char32_t peek(std::size_t* len_out = nullptr) const {
    if (at_eof()) return kEof;
    unsigned char b0 = static_cast<unsigned char>(text_[pos_]);
    std::size_t len;
    char32_t cp;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      fail("invalid UTF-8 byte", "utf8");
    }
    if (pos_ + len > text_.size()) fail("truncated UTF-8 sequence", "utf8");
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char b = static_cast<unsigned char>(text_[pos_ + k]);
      if ((b & 0xC0) != 0x80) fail("invalid UTF-8 continuation byte", "utf8");
      cp = (cp << 6) | (b & 0x3F);
    }
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF)
      fail("invalid UTF-8 sequence", "utf8");
    if (len_out) *len_out = len;
    return cp;
  }

  char32_t next() {
    std::size_t len = 0;
    char32_t cp = peek(&len);
    if (cp == kEof) return kEof;
    pos_ += len;
    if (cp == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return cp;
  }

  void skip_ws() {
    while (!at_eof()) {
      char32_t c = peek();
      if (is_ws(c)) {
        next();
      } else if (c == '#') {
        while (!at_eof() && peek() != '\n') next();
      } else {
        break;
      }
    }
  }

  void expect(char32_t c, const char* what) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + static_cast<char>(c) + "'", what);
    next();
  }

  bool match_keyword_ci(const char* kw) {
    // Case-insensitive match of an ASCII keyword followed by a delimiter.
    std::size_t save_pos = pos_;
    int save_line = line_, save_col = column_;
    for (const char* p = kw; *p; ++p) {
      char32_t c = peek();
      if (c == kEof || (std::tolower(static_cast<int>(c)) != std::tolower(*p))) {
        pos_ = save_pos;
        line_ = save_line;
        column_ = save_col;
        return false;
      }
      next();
    }
    char32_t after = peek();
    if (after != kEof && !is_ws(after) && after != '<' && after != '#') {
      pos_ = save_pos;
      line_ = save_line;
      column_ = save_col;
      return false;
    }
    return true;
  }

  // --- statements ---------------------------------------------------------

  void statement() {
    char32_t c = peek();
    if (c == '@') {
      directive();
      return;
    }
    if (c == 'P' || c == 'p' || c == 'B' || c == 'b') {
      std::size_t save = pos_;
      if (match_keyword_ci("prefix")) {
        sparql_prefix();
        return;
      }
      if (match_keyword_ci("base")) {
        sparql_base();
        return;
      }
      pos_ = save;
    }
    triples();
    expect('.', "statement terminator");
  }

  void directive() {
    next();  // '@'
    std::string word;
    while (is_alpha(peek())) append_utf8(word, next());
    if (word == "prefix") {
      skip_ws();
      auto [prefix, ok] = pname_ns();
      if (!ok) fail("expected prefix name", "PNAME_NS");
      skip_ws();
      std::string iri = iriref();
      register_prefix(prefix, iri);
      expect('.', "directive terminator");
    } else if (word == "base") {
      skip_ws();
      std::string iri = iriref();
      base_ = iri;
      result_.base = iri;
      expect('.', "directive terminator");
    } else {
      fail("unknown directive '@" + word + "'", "directive");
    }
  }

  void sparql_prefix() {
    skip_ws();
    auto [prefix, ok] = pname_ns();
    if (!ok) fail("expected prefix name", "PNAME_NS");
    skip_ws();
    std::string iri = iriref();
    register_prefix(prefix, iri);
  }

  void sparql_base() {
    skip_ws();
    std::string iri = iriref();
    base_ = iri;
    result_.base = iri;
  }

  void register_prefix(const std::string& prefix, const std::string& iri) {
    prefixes_[prefix] = iri;
    result_.graph.set_prefix(prefix, iri);
    result_.prefix_directives.push_back({prefix, iri});
  }

  void triples() {
    skip_ws();
    char32_t c = peek();
    if (c == '[') {
      next();
      skip_ws();
      if (peek() == ']') {
        // ANON subject: a predicateObjectList must follow
        next();
        Term node = fresh_blank();
        skip_ws();
        predicate_object_list(node);
        return;
      }
      // blankNodePropertyList as subject; a following predicateObjectList
      // is optional.
      Term node = fresh_blank();
      predicate_object_list(node);
      expect(']', "end of blank node property list");
      skip_ws();
      if (peek() != '.') predicate_object_list(node);
      return;
    }
    Term subj = subject();
    skip_ws();
    predicate_object_list(subj);
  }

  Term subject() {
    char32_t c = peek();
    if (c == '<') return Term::iri(iriref());
    if (c == '_') return blank_node_label();
    if (c == '(') return collection();
    if (c == kEof) fail("unexpected end of file", "subject");
    return prefixed_name_term();
  }

  void predicate_object_list(const Term& subj) {
    while (true) {
      Term pred = verb();
      object_list(subj, pred);
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        next();
        skip_ws();
      }
      char32_t c = peek();
      // trailing ';' before '.', ']' or end of list
      if (c == '.' || c == ']' || c == kEof) return;
    }
  }

  Term verb() {
    skip_ws();
    char32_t c = peek();
    if (c == '<') return Term::iri(iriref());
    if (c == 'a') {
      // 'a' only when followed by a delimiter
      std::size_t save_pos = pos_;
      int save_line = line_, save_col = column_;
      next();
      char32_t after = peek();
      if (after == kEof || is_ws(after) || after == '<' || after == '[' || after == '(' ||
          after == '#' || after == '"' || after == '\'' || after == '_')
        return Term::iri(vocab::rdf_type);
      pos_ = save_pos;
      line_ = save_line;
      column_ = save_col;
    }
    if (c == kEof) fail("unexpected end of file", "predicate");
    Term t = prefixed_name_term();
    return t;
  }

  void object_list(const Term& subj, const Term& pred) {
    while (true) {
      Term obj = object();
      emit(subj, pred, obj);
      skip_ws();
      if (peek() != ',') return;
      next();
      skip_ws();
    }
  }

  Term object() {
    skip_ws();
    char32_t c = peek();
    if (c == '<') return Term::iri(iriref());
    if (c == '_') return blank_node_label();
    if (c == '(') return collection();
    if (c == '[') return blank_node_property_list();
    if (c == '"' || c == '\'') return rdf_literal();
    if (c == '+' || c == '-' || c == '.' || is_digit(c)) return numeric_literal();
    if (c == kEof) fail("unexpected end of file", "object");
    // true / false / prefixed name
    if (c == 't' || c == 'f') {
      std::size_t save_pos = pos_;
      int save_line = line_, save_col = column_;
      std::string word;
      while (is_alpha(peek())) append_utf8(word, next());
      char32_t after = peek();
      bool delimited = after == kEof || is_ws(after) || after == '.' || after == ';' ||
                       after == ',' || after == ')' || after == ']' || after == '#';
      if ((word == "true" || word == "false") && delimited)
        return Term::literal(word, vocab::xsd_boolean);
      pos_ = save_pos;
      line_ = save_line;
      column_ = save_col;
    }
    return prefixed_name_term();
  }

  Term blank_node_property_list() {
    next();  // '['
    skip_ws();
    if (peek() == ']') {
      next();
      return fresh_blank();
    }
    Term node = fresh_blank();
    predicate_object_list(node);
    expect(']', "end of blank node property list");
    return node;
  }

  Term collection() {
    next();  // '('
    skip_ws();
    std::vector<Term> items;
    while (peek() != ')') {
      if (at_eof()) fail("unterminated collection", "collection");
      items.push_back(object());
      skip_ws();
    }
    next();  // ')'
    if (items.empty()) return Term::iri(vocab::rdf_nil);
    Term head = fresh_blank();
    Term cur = head;
    for (std::size_t i = 0; i < items.size(); ++i) {
      emit(cur, Term::iri(vocab::rdf_first), items[i]);
      if (i + 1 < items.size()) {
        Term nxt = fresh_blank();
        emit(cur, Term::iri(vocab::rdf_rest), nxt);
        cur = nxt;
      } else {
        emit(cur, Term::iri(vocab::rdf_rest), Term::iri(vocab::rdf_nil));
      }
    }
    return head;
  }

  // --- terminals ----------------------------------------------------------

  std::string iriref() {
    skip_ws();
    if (peek() != '<') fail("expected IRI", "IRIREF");
    next();
    std::string out;
    while (true) {
      char32_t c = peek();
      if (c == kEof) fail("unterminated IRI", "IRIREF");
      if (c == '>') {
        next();
        break;
      }
      if (c == '\\') {
        next();
        char32_t e = peek();
        if (e == 'u') {
          next();
          append_utf8(out, uchar(4));
        } else if (e == 'U') {
          next();
          append_utf8(out, uchar(8));
        } else {
          fail("invalid escape in IRI", "UCHAR");
        }
        continue;
      }
      if (c <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
          c == '`')
        fail("character not allowed in IRI", "IRIREF");
      append_utf8(out, next());
    }
    return resolve_iri(base_, out);
  }

  char32_t uchar(int digits) {
    char32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      char32_t c = peek();
      if (!is_hex(c)) fail("invalid \\u escape", "HEX");
      next();
      cp = cp * 16 + (is_digit(c) ? c - '0' : (c | 0x20) - 'a' + 10);
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      fail("escape is not a Unicode scalar value", "UCHAR");
    return cp;
  }

  // PNAME_NS: PN_PREFIX? ':'. Returns (prefix, matched).
  std::pair<std::string, bool> pname_ns() {
    std::string prefix;
    char32_t c = peek();
    if (is_pn_chars_base(c)) {
      append_utf8(prefix, next());
      std::string pending;
      while (true) {
        c = peek();
        if (is_pn_chars(c)) {
          prefix += pending;
          pending.clear();
          append_utf8(prefix, next());
        } else if (c == '.') {
          append_utf8(pending, next());
        } else {
          break;
        }
      }
      if (!pending.empty()) fail("prefix name may not end with '.'", "PN_PREFIX");
    }
    if (peek() != ':') return {prefix, false};
    next();
    return {prefix, true};
  }

  Term prefixed_name_term() {
    int start_line = line_, start_col = column_;
    auto [prefix, ok] = pname_ns();
    if (!ok)
      throw ParseError{start_line, start_col, "expected IRI, blank node or prefixed name",
                       "PrefixedName"};
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end())
      throw ParseError{start_line, start_col, "prefix '" + prefix + ":' is not declared",
                       "PrefixedName"};
    std::string local = pn_local();
    return Term::iri(it->second + local);
  }

  std::string pn_local() {
    std::string out;
    char32_t c = peek();
    auto plx = [&]() -> bool {
      char32_t h = peek();
      if (h == '%') {
        next();
        char32_t h1 = peek();
        if (!is_hex(h1)) fail("invalid %-escape in local name", "PERCENT");
        next();
        char32_t h2 = peek();
        if (!is_hex(h2)) fail("invalid %-escape in local name", "PERCENT");
        next();
        out += '%';
        append_utf8(out, h1);
        append_utf8(out, h2);
        return true;
      }
      if (h == '\\') {
        next();
        char32_t e = peek();
        if (!is_pn_local_esc(e)) fail("invalid escape in local name", "PN_LOCAL_ESC");
        next();
        append_utf8(out, e);
        return true;
      }
      return false;
    };

    if (is_pn_chars_u(c) || c == ':' || is_digit(c)) {
      append_utf8(out, next());
    } else if (c == '%' || c == '\\') {
      plx();
    } else {
      return out;  // empty local name is valid
    }
    std::string pending;
    while (true) {
      c = peek();
      if (is_pn_chars(c) || c == ':') {
        out += pending;
        pending.clear();
        append_utf8(out, next());
      } else if (c == '.') {
        append_utf8(pending, next());
      } else if (c == '%' || c == '\\') {
        out += pending;
        pending.clear();
        plx();
      } else {
        break;
      }
    }
    if (!pending.empty()) {
      // dots cannot end a local name; put them back
      for (std::size_t i = 0; i < pending.size(); ++i) {
        --pos_;
        --column_;
      }
    }
    return out;
  }

  Term blank_node_label() {
    next();  // '_'
    if (peek() != ':') fail("expected ':' after '_'", "BLANK_NODE_LABEL");
    next();
    std::string label;
    char32_t c = peek();
    if (!is_pn_chars_u(c) && !is_digit(c)) fail("invalid blank node label", "BLANK_NODE_LABEL");
    append_utf8(label, next());
    std::string pending;
    while (true) {
      c = peek();
      if (is_pn_chars(c)) {
        label += pending;
        pending.clear();
        append_utf8(label, next());
      } else if (c == '.') {
        append_utf8(pending, next());
      } else {
        break;
      }
    }
    if (!pending.empty()) {
      for (std::size_t i = 0; i < pending.size(); ++i) {
        --pos_;
        --column_;
      }
    }
    auto it = doc_blanks_.find(label);
    if (it != doc_blanks_.end()) return Term::blank(it->second);
    std::string fresh = "b" + std::to_string(blank_counter_++);
    doc_blanks_.emplace(label, fresh);
    return Term::blank(fresh);
  }

  Term fresh_blank() { return Term::blank("b" + std::to_string(blank_counter_++)); }

  Term rdf_literal() {
    std::string lexical = string_token();
    char32_t c = peek();
    if (c == '@') {
      next();
      std::string tag = langtag();
      return Term::lang_literal(lexical, tag);
    }
    if (c == '^') {
      next();
      if (peek() != '^') fail("expected '^^'", "datatype");
      next();
      skip_ws();
      char32_t d = peek();
      std::string dt;
      if (d == '<')
        dt = iriref();
      else
        dt = prefixed_name_term().value;
      return Term::literal(lexical, dt);
    }
    return Term::literal(lexical, vocab::xsd_string);
  }

  std::string langtag() {
    std::string tag;
    if (!is_alpha(peek())) fail("invalid language tag", "LANGTAG");
    while (is_alpha(peek())) append_utf8(tag, next());
    while (peek() == '-') {
      append_utf8(tag, next());
      if (!is_alpha(peek()) && !is_digit(peek())) fail("invalid language tag", "LANGTAG");
      while (is_alpha(peek()) || is_digit(peek())) append_utf8(tag, next());
    }
    return tag;
  }

  std::string string_token() {
    char32_t quote = next();  // '"' or '\''
    bool long_form = false;
    if (peek() == quote) {
      next();
      if (peek() == quote) {
        next();
        long_form = true;
      } else {
        return "";  // empty short string
      }
    }
    std::string out;
    while (true) {
      char32_t c = peek();
      if (c == kEof) fail("unterminated string", "STRING");
      if (!long_form && (c == '\n' || c == '\r'))
        fail("newline in single-line string", "STRING");
      if (c == quote) {
        if (!long_form) {
          next();
          return out;
        }
        // need three closing quotes
        next();
        if (peek() == quote) {
          next();
          if (peek() == quote) {
            next();
            return out;
          }
          append_utf8(out, quote);
          append_utf8(out, quote);
          continue;
        }
        append_utf8(out, quote);
        continue;
      }
      if (c == '\\') {
        next();
        char32_t e = peek();
        switch (e) {
          case 't': out += '\t'; next(); break;
          case 'b': out += '\b'; next(); break;
          case 'n': out += '\n'; next(); break;
          case 'r': out += '\r'; next(); break;
          case 'f': out += '\f'; next(); break;
          case '"': out += '"'; next(); break;
          case '\'': out += '\''; next(); break;
          case '\\': out += '\\'; next(); break;
          case 'u': next(); append_utf8(out, uchar(4)); break;
          case 'U': next(); append_utf8(out, uchar(8)); break;
          default: fail("invalid string escape", "ECHAR");
        }
        continue;
      }
      append_utf8(out, next());
    }
  }

  Term numeric_literal() {
    int start_line = line_, start_col = column_;
    std::string lex;
    char32_t c = peek();
    if (c == '+' || c == '-') append_utf8(lex, next());
    bool digits_before = false, digits_after = false, has_dot = false, has_exp = false;
    while (is_digit(peek())) {
      digits_before = true;
      append_utf8(lex, next());
    }
    if (peek() == '.') {
      // a '.' not followed by a digit or exponent is the statement terminator
      std::size_t save_pos = pos_;
      int save_line = line_, save_col = column_;
      next();
      if (is_digit(peek())) {
        has_dot = true;
        lex += '.';
        while (is_digit(peek())) {
          digits_after = true;
          append_utf8(lex, next());
        }
      } else {
        pos_ = save_pos;
        line_ = save_line;
        column_ = save_col;
      }
    }
    char32_t e = peek();
    if (e == 'e' || e == 'E') {
      has_exp = true;
      append_utf8(lex, next());
      if (peek() == '+' || peek() == '-') append_utf8(lex, next());
      if (!is_digit(peek()))
        throw ParseError{line_, column_, "malformed exponent", "DOUBLE"};
      while (is_digit(peek())) append_utf8(lex, next());
    }
    if (!digits_before && !digits_after)
      throw ParseError{start_line, start_col, "malformed numeric literal", "NumericLiteral"};
    if (has_exp) return Term::literal(lex, vocab::xsd_double);
    if (has_dot) return Term::literal(lex, vocab::xsd_decimal);
    return Term::literal(lex, vocab::xsd_integer);
  }

  void emit(Term s, Term p, Term o) {
    result_.graph.insert(std::move(s), std::move(p), std::move(o));
  }

  std::string_view text_;
  std::string base_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  std::map<std::string, std::string> prefixes_;
  std::map<std::string, std::string> doc_blanks_;
  std::size_t blank_counter_ = 0;
  ParseResult result_;
};

// --- serializer -----------------------------------------------------------

bool safe_pn_local(std::string_view s) {
  if (s.empty()) return false;
  char c0 = s[0];
  if (!(is_alpha(static_cast<unsigned char>(c0)) || c0 == '_')) return false;
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (!(is_alpha(u) || is_digit(u) || c == '_' || c == '-')) return false;
  }
  return true;
}

bool safe_pn_prefix(std::string_view s) {
  if (s.empty()) return true;  // default prefix ':'
  if (!is_alpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (!(is_alpha(u) || is_digit(u) || c == '_' || c == '-')) return false;
  }
  return true;
}

std::string escape_literal(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

class Serializer {
 public:
  explicit Serializer(const Graph& g) : g_(g) {
    // longest-namespace-first so the most specific prefix wins
    for (const auto& [prefix, ns] : g.prefixes())
      if (safe_pn_prefix(prefix)) by_ns_[ns] = prefix;
  }

  std::string run() {
    std::ostringstream out;
    for (const auto& [prefix, ns] : g_.prefixes())
      out << "@prefix " << prefix << ": <" << escape_iri(ns) << "> .\n";
    if (!g_.prefixes().empty() && !g_.triples().empty()) out << "\n";

    // std::set iteration is already (subject, predicate, object) sorted
    const Term* current_subject = nullptr;
    bool first = true;
    for (const Triple& t : g_.triples()) {
      if (current_subject && t.subject == *current_subject) {
        out << " ;\n    " << render_predicate(t.predicate) << " " << render(t.object);
      } else {
        if (!first) out << " .\n";
        out << render(t.subject) << " " << render_predicate(t.predicate) << " "
            << render(t.object);
        current_subject = &t.subject;
        first = false;
      }
    }
    if (!first) out << " .\n";
    return out.str();
  }

 private:
  static std::string escape_iri(std::string_view iri) {
    std::string out;
    for (unsigned char c : iri) {
      if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
          c == '^' || c == '`' || c == '\\') {
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\u%04X", c);
        out += buf;
      } else {
        out += static_cast<char>(c);
      }
    }
    return out;
  }

  std::string render_predicate(const Term& p) const {
    if (p.value == vocab::rdf_type) return "a";
    return render(p);
  }

  std::string render(const Term& t) const {
    switch (t.kind) {
      case Term::Kind::Blank:
        return "_:" + t.value;
      case Term::Kind::Iri: {
        auto ns = namespace_of(t.value);
        if (!ns.empty()) {
          auto it = by_ns_.find(std::string(ns));
          if (it != by_ns_.end() && safe_pn_local(t.value.substr(ns.size())))
            return it->second + ":" + t.value.substr(ns.size());
        }
        return "<" + escape_iri(t.value) + ">";
      }
      case Term::Kind::Literal:
      default: {
        std::string out = "\"" + escape_literal(t.value) + "\"";
        if (!t.lang.empty())
          out += "@" + t.lang;
        else if (t.datatype != vocab::xsd_string)
          out += "^^" + render(Term::iri(t.datatype));
        return out;
      }
    }
  }

  const Graph& g_;
  std::map<std::string, std::string> by_ns_;
};

}  // namespace

std::variant<ParseResult, ParseError> parse_turtle(std::string_view text,
                                                   const std::string& base) {
  try {
    return Parser(text, base).run();
  } catch (ParseError& e) {
    return e;
  }
}

std::variant<ParseResult, ParseError> parse_turtle_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return ParseError{1, 1, "cannot read file: " + path, "file"};
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string base = path;
  if (!base.empty() && base[0] == '/')
    base = "file://" + base;
  else
    base = "file:///" + base;
  return parse_turtle(buf.str(), base);
}

std::string serialize_turtle(const Graph& g) { return Serializer(g).run(); }

}  // namespace ontolint
