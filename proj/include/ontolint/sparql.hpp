#pragma once
// Syntactic validator for competency-question files (.rq). Parses the
// SPARQL 1.1 query grammar, collects prefixes and IRIs, and never
// evaluates anything.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "ontolint/turtle.hpp"  // ParseError

namespace ontolint {

enum class QueryForm { Select, Ask, Construct, Describe };

std::string_view to_string(QueryForm f);

struct QueryInfo {
  QueryForm form = QueryForm::Select;
  std::map<std::string, std::string> prefixes;
  std::set<std::string> iris;  // every IRI occurring anywhere in the query
  std::string source_path;
  bool uses_service = false;  // federation is parsed but flagged CannotTell
};

std::variant<QueryInfo, ParseError> parse_query(std::string_view text);

// Competency questions are open (SELECT) or closed (ASK) questions.
struct FormViolation {
  QueryForm form;
};
std::optional<FormViolation> query_form_allowed(const QueryInfo& info);

}  // namespace ontolint
