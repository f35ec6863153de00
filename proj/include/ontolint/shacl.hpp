#pragma once
// Declarative custom tests: a SHACL-core subset (targets, one path per
// shape, eight constraint kinds). Unsupported SHACL features are surfaced
// as load-time diagnostics so authors know the test did not run.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ontolint/rdf.hpp"

namespace ontolint {

struct ShapeTarget {
  enum class Kind { Class, Node, SubjectsOf, ObjectsOf };
  Kind kind;
  Term term;
};

struct ShapePath {
  std::string predicate;
  bool inverse = false;
};

struct ShapeConstraint {
  enum class Kind { MinCount, MaxCount, Class, Datatype, NodeKind, Pattern, In, HasValue };
  Kind kind;
  long long count = 0;          // MinCount / MaxCount
  Term term;                    // Class / Datatype / HasValue
  Term::Kind node_kind = Term::Kind::Iri;
  std::string pattern;          // Pattern (ECMAScript regex)
  std::vector<Term> in_values;  // In
};

std::string_view to_string(ShapeConstraint::Kind k);

enum class ShapeSeverity { Violation, Warning, Info };  // Fail / CannotTell / Pass-with-pointer

struct Shape {
  Term id;  // the node shape the property shape belongs to
  std::vector<ShapeTarget> targets;
  ShapePath path;
  std::vector<ShapeConstraint> constraints;
  std::string message;
  ShapeSeverity severity = ShapeSeverity::Violation;
};

struct ShapeLoad {
  std::vector<Shape> shapes;
  // One entry per unsupported SHACL feature found; reported as CannotTell.
  std::vector<std::string> unsupported;
};

// Error string = shape-file-invalid (bad minCount literal, invalid regex, ...).
std::variant<ShapeLoad, std::string> load_shapes(const Graph& g);

struct ShapeViolation {
  Term shape;
  Term focus;
  std::optional<Term> value;
  std::string constraint;
  std::string message;
  ShapeSeverity severity = ShapeSeverity::Violation;
};

// Focus nodes from targets, value set from the path, one violation per
// failing (focus, constraint) — value-level constraints carry the value.
std::vector<ShapeViolation> validate(const Graph& data, const std::vector<Shape>& shapes);

// Follows rdf:first/rdf:rest from `head`; empty when not a well-formed list.
std::vector<Term> read_rdf_list(const Graph& g, const Term& head);

}  // namespace ontolint
