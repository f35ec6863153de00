#pragma once
// OWL 2 profile compatibility checking (EL/QL/RL) over the RDF encoding of
// axioms, and OWL RL consistency via a forward-chaining rule subset.
// Profile checks and consistency checks are independent: an ontology can be
// RL-consistent yet RL-incompatible.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ontolint/rdf.hpp"

namespace ontolint {

enum class Profile { EL, QL, RL };

std::string_view to_string(Profile p);
std::optional<Profile> profile_from_string(std::string_view s);

// One disallowed construct, matched syntactically.
struct ProfileViolation {
  Profile profile;
  std::string construct;  // IRI or short description of the construct
  Term focus;
  std::string explanation;
};

// Restriction kinds a profile allows in superclass position.
enum class RestrictionKind {
  SomeValuesFrom,
  AllValuesFrom,
  HasValue,
  HasSelf,
  MaxCardinality01,  // maxCardinality / maxQualifiedCardinality with n <= 1
  OtherCardinality,
  Unknown,
};

// A single record of the violation table. The table ships as a data file so
// projects can extend it; see default_profile_rules() for the built-in copy.
struct ProfileRule {
  enum class Match {
    Predicate,              // any triple with this predicate
    ClassInstance,          // any x rdf:type <iri>
    SuperclassPredicate,    // object of subClassOf/domain/range carries <iri>
    SubclassPredicate,      // subject of subClassOf carries <iri>
    RestrictionSuperclass,  // restriction kind not in `allowed`
    CardinalityAbove,       // any cardinality restriction with n > max_cardinality
  };

  std::string id;
  std::vector<Profile> profiles;
  std::string message;
  Match match = Match::Predicate;
  std::string iri;                              // Predicate/ClassInstance/...Predicate
  std::vector<RestrictionKind> allowed;         // RestrictionSuperclass
  long long max_cardinality = 1;                // CardinalityAbove
};

const std::vector<ProfileRule>& default_profile_rules();

// Parses the JSON table; returns an error string on malformed input.
std::variant<std::vector<ProfileRule>, std::string> parse_profile_rules(const std::string& json_text);

std::vector<ProfileViolation> check_profile(const Graph& g, Profile p,
                                            const std::vector<ProfileRule>& rules =
                                                default_profile_rules());

// --- OWL RL consistency ----------------------------------------------------

struct SaturationResult {
  Graph closure;
  bool reached_fixpoint = true;
  std::size_t passes = 0;
};

// Fixpoint closure under the implemented OWL RL rule subset; monotone and
// idempotent. `max_iterations` bounds the number of rule-firing passes.
SaturationResult saturate_rl(const Graph& g, std::size_t max_iterations = 10000);

struct InconsistencyEvidence {
  std::string rule_id;           // e.g. "eq-diff1", "cax-dw"
  std::vector<Triple> premises;  // original or inferred triples entailing falsity
};

struct ConsistencyReport {
  bool consistent = true;
  bool complete = true;  // false when the iteration limit was hit (CannotTell)
  std::vector<InconsistencyEvidence> evidence;
};

ConsistencyReport check_consistency(const Graph& g, std::size_t max_iterations = 10000);

// Falsity scan over an already-computed closure.
ConsistencyReport check_consistency(const SaturationResult& sat);

}  // namespace ontolint
