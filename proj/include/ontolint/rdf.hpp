#pragma once
// RDF term/triple/graph data model shared by every other component.
// Graphs are immutable by convention once built: construction is
// single-threaded, afterwards they may be shared read-only.

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ontolint {

// Well-known namespaces and terms.
namespace vocab {
inline constexpr std::string_view rdf_ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs_ns = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view owl_ns = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view xsd_ns = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view sh_ns = "http://www.w3.org/ns/shacl#";
inline constexpr std::string_view earl_ns = "http://www.w3.org/ns/earl#";
inline constexpr std::string_view prov_ns = "http://www.w3.org/ns/prov#";
inline constexpr std::string_view dcterms_ns = "http://purl.org/dc/terms/";

inline const std::string rdf_type = std::string(rdf_ns) + "type";
inline const std::string rdf_first = std::string(rdf_ns) + "first";
inline const std::string rdf_rest = std::string(rdf_ns) + "rest";
inline const std::string rdf_nil = std::string(rdf_ns) + "nil";
inline const std::string rdf_lang_string = std::string(rdf_ns) + "langString";
inline const std::string rdf_property = std::string(rdf_ns) + "Property";

inline const std::string rdfs_class = std::string(rdfs_ns) + "Class";
inline const std::string rdfs_label = std::string(rdfs_ns) + "label";
inline const std::string rdfs_comment = std::string(rdfs_ns) + "comment";
inline const std::string rdfs_is_defined_by = std::string(rdfs_ns) + "isDefinedBy";
inline const std::string rdfs_sub_class_of = std::string(rdfs_ns) + "subClassOf";
inline const std::string rdfs_sub_property_of = std::string(rdfs_ns) + "subPropertyOf";
inline const std::string rdfs_domain = std::string(rdfs_ns) + "domain";
inline const std::string rdfs_range = std::string(rdfs_ns) + "range";

inline const std::string xsd_string = std::string(xsd_ns) + "string";
inline const std::string xsd_integer = std::string(xsd_ns) + "integer";
inline const std::string xsd_decimal = std::string(xsd_ns) + "decimal";
inline const std::string xsd_double = std::string(xsd_ns) + "double";
inline const std::string xsd_boolean = std::string(xsd_ns) + "boolean";
inline const std::string xsd_date_time = std::string(xsd_ns) + "dateTime";
inline const std::string xsd_any_uri = std::string(xsd_ns) + "anyURI";
}  // namespace vocab

// A single RDF term: IRI, literal or blank node. Equality is structural.
struct Term {
  enum class Kind : std::uint8_t { Iri, Literal, Blank };

  Kind kind = Kind::Iri;
  std::string value;     // IRI string, literal lexical form, or blank label
  std::string datatype;  // literals only: datatype IRI
  std::string lang;      // literals only: BCP-47 tag, empty unless langString

  static Term iri(std::string v) { return {Kind::Iri, std::move(v), {}, {}}; }
  static Term literal(std::string lexical, std::string datatype_iri = vocab::xsd_string) {
    return {Kind::Literal, std::move(lexical), std::move(datatype_iri), {}};
  }
  static Term lang_literal(std::string lexical, std::string tag) {
    return {Kind::Literal, std::move(lexical), vocab::rdf_lang_string, std::move(tag)};
  }
  static Term blank(std::string label) { return {Kind::Blank, std::move(label), {}, {}}; }

  bool is_iri() const { return kind == Kind::Iri; }
  bool is_literal() const { return kind == Kind::Literal; }
  bool is_blank() const { return kind == Kind::Blank; }

  auto operator<=>(const Term&) const = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
};

// A set of triples plus the prefix map seen while parsing. Set semantics:
// inserting a duplicate triple is a no-op.
class Graph {
 public:
  // Throws std::invalid_argument on a literal subject or non-IRI predicate.
  // Returns false when the triple was already present.
  bool insert(Triple t);
  bool insert(Term s, Term p, Term o) { return insert(Triple{std::move(s), std::move(p), std::move(o)}); }

  // Last binding wins; returns false when an existing different binding was replaced.
  bool set_prefix(const std::string& prefix, const std::string& ns);

  const std::set<Triple>& triples() const { return triples_; }
  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  bool contains(const Triple& t) const { return triples_.count(t) > 0; }

  // Pattern match; null pointer means wildcard. Linear scan, adequate for
  // lint-sized graphs; the reasoner keeps its own indexes.
  std::vector<Triple> match(const Term* s, const Term* p, const Term* o) const;

  // Objects o of (s, p, o); convenience for vocabulary walks.
  std::vector<Term> objects_of(const Term& s, const std::string& predicate_iri) const;
  bool has(const Term& s, const std::string& predicate_iri, const Term& o) const;

 private:
  std::set<Triple> triples_;
  std::map<std::string, std::string> prefixes_;
};

// Union with blank nodes standardized apart: blank labels are rewritten per
// source graph so two sources can never share a label. Later prefix bindings
// override earlier ones; a conflict appends a diagnostic to `warnings`.
Graph merge_graphs(const std::vector<Graph>& graphs, std::vector<std::string>* warnings = nullptr);

// Every IRI appearing in any position whose string value starts with `ns`.
std::set<std::string> terms_in_namespace(const Graph& g, std::string_view ns);

// IRI suffix after the last '#' or '/', the whole IRI when neither occurs.
std::string_view local_name(std::string_view iri);

// Longest prefix of the IRI ending at the last '#' or '/'.
std::string_view namespace_of(std::string_view iri);

}  // namespace ontolint
