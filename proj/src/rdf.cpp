#include "ontolint/rdf.hpp"

#include <algorithm>

namespace ontolint {

bool Graph::insert(Triple t) {
  if (t.subject.is_literal())
    throw std::invalid_argument("triple subject must be an IRI or blank node");
  if (!t.predicate.is_iri())
    throw std::invalid_argument("triple predicate must be an IRI");
  return triples_.insert(std::move(t)).second;
}

bool Graph::set_prefix(const std::string& prefix, const std::string& ns) {
  auto it = prefixes_.find(prefix);
  if (it != prefixes_.end() && it->second != ns) {
    it->second = ns;
    return false;
  }
  prefixes_[prefix] = ns;
  return true;
}

std::vector<Triple> Graph::match(const Term* s, const Term* p, const Term* o) const {
  std::vector<Triple> out;
  for (const Triple& t : triples_) {
    if (s && t.subject != *s) continue;
    if (p && t.predicate != *p) continue;
    if (o && t.object != *o) continue;
    out.push_back(t);
  }
  return out;
}

std::vector<Term> Graph::objects_of(const Term& s, const std::string& predicate_iri) const {
  Term p = Term::iri(predicate_iri);
  std::vector<Term> out;
  for (const Triple& t : match(&s, &p, nullptr)) out.push_back(t.object);
  return out;
}

bool Graph::has(const Term& s, const std::string& predicate_iri, const Term& o) const {
  return contains(Triple{s, Term::iri(predicate_iri), o});
}

Graph merge_graphs(const std::vector<Graph>& graphs, std::vector<std::string>* warnings) {
  Graph merged;
  std::size_t source = 0;
  for (const Graph& g : graphs) {
    // Standardize blank nodes apart: a per-source label prefix keeps labels
    // from distinct sources disjoint while staying deterministic.
    const std::string tag = "m" + std::to_string(source) + "_";
    auto rename = [&](const Term& t) {
      if (!t.is_blank()) return t;
      return Term::blank(tag + t.value);
    };
    for (const Triple& t : g.triples())
      merged.insert(rename(t.subject), t.predicate, rename(t.object));
    for (const auto& [prefix, ns] : g.prefixes()) {
      if (!merged.set_prefix(prefix, ns) && warnings)
        warnings->push_back("prefix '" + prefix + ":' rebound to <" + ns + ">");
    }
    ++source;
  }
  return merged;
}

std::set<std::string> terms_in_namespace(const Graph& g, std::string_view ns) {
  std::set<std::string> out;
  if (ns.empty()) return out;
  auto consider = [&](const Term& t) {
    if (t.is_iri() && t.value.size() >= ns.size() &&
        std::string_view(t.value).substr(0, ns.size()) == ns)
      out.insert(t.value);
  };
  for (const Triple& t : g.triples()) {
    consider(t.subject);
    consider(t.predicate);
    consider(t.object);
  }
  return out;
}

std::string_view local_name(std::string_view iri) {
  auto pos = iri.find_last_of("#/");
  if (pos == std::string_view::npos) return iri;
  return iri.substr(pos + 1);
}

std::string_view namespace_of(std::string_view iri) {
  auto pos = iri.find_last_of("#/");
  if (pos == std::string_view::npos) return std::string_view{};
  return iri.substr(0, pos + 1);
}

}  // namespace ontolint
