#pragma once
// W3C Turtle (RDF 1.1) parser and deterministic serializer. The parser is
// strict: it stops at the first error and reports its exact position, since
// everything downstream of a syntax failure is demoted to NotTested anyway.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ontolint/rdf.hpp"

namespace ontolint {

struct ParseError {
  int line = 1;    // 1-based, first character the parser could not accept
  int column = 1;  // 1-based, counted in code points
  std::string message;
  std::string expected;  // token-class name when known
};

struct PrefixDirective {
  std::string prefix;
  std::string iri;
};

struct ParseResult {
  Graph graph;
  std::optional<std::string> base;
  std::vector<PrefixDirective> prefix_directives;
};

// `base` resolves relative IRIs; empty means references stay as written.
std::variant<ParseResult, ParseError> parse_turtle(std::string_view text,
                                                   const std::string& base = "");

// Reads the file as UTF-8 and parses with its path as file: base IRI.
// unreadable files yield a ParseError at 1:1.
std::variant<ParseResult, ParseError> parse_turtle_file(const std::string& path);

// Deterministic output: sorted @prefix directives, subject-grouped triples
// one per line joined with ';', objects in sorted order, single trailing
// newline. parse(serialize(g)) equals g up to blank relabelling.
std::string serialize_turtle(const Graph& g);

}  // namespace ontolint
