#include "ontolint/owl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "embedded_data.hpp"

namespace ontolint {
namespace {

const std::string owl = std::string(vocab::owl_ns);

const std::string owl_disjoint_union = owl + "disjointUnionOf";
const std::string owl_reflexive = owl + "ReflexiveProperty";
const std::string owl_irreflexive = owl + "IrreflexiveProperty";
const std::string owl_symmetric = owl + "SymmetricProperty";
const std::string owl_asymmetric = owl + "AsymmetricProperty";
const std::string owl_transitive = owl + "TransitiveProperty";
const std::string owl_functional = owl + "FunctionalProperty";
const std::string owl_inverse_functional = owl + "InverseFunctionalProperty";
const std::string owl_union_of = owl + "unionOf";
const std::string owl_complement_of = owl + "complementOf";
const std::string owl_restriction = owl + "Restriction";
const std::string owl_on_property = owl + "onProperty";
const std::string owl_some_values = owl + "someValuesFrom";
const std::string owl_all_values = owl + "allValuesFrom";
const std::string owl_has_value = owl + "hasValue";
const std::string owl_has_self = owl + "hasSelf";
const std::string owl_cardinality = owl + "cardinality";
const std::string owl_min_cardinality = owl + "minCardinality";
const std::string owl_max_cardinality = owl + "maxCardinality";
const std::string owl_q_cardinality = owl + "qualifiedCardinality";
const std::string owl_min_q_cardinality = owl + "minQualifiedCardinality";
const std::string owl_max_q_cardinality = owl + "maxQualifiedCardinality";
const std::string owl_has_key = owl + "hasKey";
const std::string owl_property_chain = owl + "propertyChainAxiom";
const std::string owl_same_as = owl + "sameAs";
const std::string owl_different_from = owl + "differentFrom";
const std::string owl_disjoint_with = owl + "disjointWith";
const std::string owl_equivalent_class = owl + "equivalentClass";
const std::string owl_inverse_of = owl + "inverseOf";
const std::string owl_nothing = owl + "Nothing";

bool is_superclass_predicate(const std::string& p) {
  return p == vocab::rdfs_sub_class_of || p == vocab::rdfs_domain || p == vocab::rdfs_range;
}

RestrictionKind restriction_kind_from_name(std::string_view name) {
  if (name == "someValuesFrom") return RestrictionKind::SomeValuesFrom;
  if (name == "allValuesFrom") return RestrictionKind::AllValuesFrom;
  if (name == "hasValue") return RestrictionKind::HasValue;
  if (name == "hasSelf") return RestrictionKind::HasSelf;
  if (name == "maxCardinality01") return RestrictionKind::MaxCardinality01;
  if (name == "otherCardinality") return RestrictionKind::OtherCardinality;
  return RestrictionKind::Unknown;
}

long long literal_int(const Term& t) {
  if (!t.is_literal()) return -1;
  try {
    return std::stoll(t.value);
  } catch (...) {
    return -1;
  }
}

// Is `node` an anonymous restriction, and of which kind?
std::optional<RestrictionKind> restriction_kind(const Graph& g, const Term& node) {
  if (!node.is_blank()) return std::nullopt;
  bool is_restriction = g.has(node, vocab::rdf_type, Term::iri(owl_restriction)) ||
                        !g.objects_of(node, owl_on_property).empty();
  if (!is_restriction) return std::nullopt;
  if (!g.objects_of(node, owl_some_values).empty()) return RestrictionKind::SomeValuesFrom;
  if (!g.objects_of(node, owl_all_values).empty()) return RestrictionKind::AllValuesFrom;
  if (!g.objects_of(node, owl_has_value).empty()) return RestrictionKind::HasValue;
  if (!g.objects_of(node, owl_has_self).empty()) return RestrictionKind::HasSelf;
  for (const auto& card : {owl_max_cardinality, owl_max_q_cardinality}) {
    for (const Term& v : g.objects_of(node, card)) {
      long long n = literal_int(v);
      return n >= 0 && n <= 1 ? RestrictionKind::MaxCardinality01
                              : RestrictionKind::OtherCardinality;
    }
  }
  for (const auto& card :
       {owl_cardinality, owl_min_cardinality, owl_q_cardinality, owl_min_q_cardinality}) {
    if (!g.objects_of(node, card).empty()) return RestrictionKind::OtherCardinality;
  }
  return RestrictionKind::Unknown;
}

void match_rule(const Graph& g, Profile p, const ProfileRule& rule,
                std::vector<ProfileViolation>& out) {
  switch (rule.match) {
    case ProfileRule::Match::Predicate: {
      Term pred = Term::iri(rule.iri);
      for (const Triple& t : g.match(nullptr, &pred, nullptr))
        out.push_back({p, rule.iri, t.subject, rule.message});
      break;
    }
    case ProfileRule::Match::ClassInstance: {
      Term type = Term::iri(vocab::rdf_type);
      Term cls = Term::iri(rule.iri);
      for (const Triple& t : g.match(nullptr, &type, &cls))
        out.push_back({p, rule.iri, t.subject, rule.message});
      break;
    }
    case ProfileRule::Match::SuperclassPredicate: {
      for (const Triple& t : g.triples()) {
        if (!t.predicate.is_iri() || !is_superclass_predicate(t.predicate.value)) continue;
        if (t.object.is_literal()) continue;
        if (!g.objects_of(t.object, rule.iri).empty())
          out.push_back({p, rule.iri, t.subject, rule.message});
      }
      break;
    }
    case ProfileRule::Match::SubclassPredicate: {
      Term sco = Term::iri(vocab::rdfs_sub_class_of);
      for (const Triple& t : g.match(nullptr, &sco, nullptr)) {
        if (!g.objects_of(t.subject, rule.iri).empty())
          out.push_back({p, rule.iri, t.subject, rule.message});
      }
      break;
    }
    case ProfileRule::Match::RestrictionSuperclass: {
      for (const Triple& t : g.triples()) {
        if (!t.predicate.is_iri() || !is_superclass_predicate(t.predicate.value)) continue;
        auto kind = restriction_kind(g, t.object);
        if (!kind) continue;
        if (std::find(rule.allowed.begin(), rule.allowed.end(), *kind) != rule.allowed.end())
          continue;
        out.push_back({p, "owl:Restriction as object of " + std::string(local_name(t.predicate.value)),
                       t.subject, rule.message});
      }
      break;
    }
    case ProfileRule::Match::CardinalityAbove: {
      for (const auto& card :
           {owl_cardinality, owl_min_cardinality, owl_max_cardinality, owl_q_cardinality,
            owl_min_q_cardinality, owl_max_q_cardinality}) {
        Term pred = Term::iri(card);
        for (const Triple& t : g.match(nullptr, &pred, nullptr)) {
          if (literal_int(t.object) > rule.max_cardinality)
            out.push_back({p, card, t.subject, rule.message});
        }
      }
      break;
    }
  }
}

}  // namespace

std::string_view to_string(Profile p) {
  switch (p) {
    case Profile::EL: return "EL";
    case Profile::QL: return "QL";
    case Profile::RL: return "RL";
  }
  return "RL";
}

std::optional<Profile> profile_from_string(std::string_view s) {
  if (s == "EL") return Profile::EL;
  if (s == "QL") return Profile::QL;
  if (s == "RL") return Profile::RL;
  return std::nullopt;
}

const std::vector<ProfileRule>& default_profile_rules() {
  // The built-in table is the embedded copy of share/profile-rules.json.
  static const std::vector<ProfileRule> rules = [] {
    auto parsed = parse_profile_rules(std::string(embedded::profile_rules_json));
    if (auto* ok = std::get_if<std::vector<ProfileRule>>(&parsed)) return std::move(*ok);
    throw std::logic_error("built-in profile rule table is invalid: " +
                           std::get<std::string>(parsed));
  }();
  return rules;
}

std::variant<std::vector<ProfileRule>, std::string> parse_profile_rules(
    const std::string& json_text) {
  nlohmann::json doc = nlohmann::json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) return std::string("profile rule table is not valid JSON");
  if (!doc.is_array()) return std::string("profile rule table must be a JSON array");
  std::vector<ProfileRule> rules;
  for (const auto& rec : doc) {
    ProfileRule r;
    if (!rec.is_object() || !rec.contains("id") || !rec.contains("profiles") ||
        !rec.contains("match"))
      return std::string("each rule needs id, profiles and match");
    r.id = rec["id"].get<std::string>();
    for (const auto& p : rec["profiles"]) {
      auto prof = profile_from_string(p.get<std::string>());
      if (!prof) return std::string("unknown profile in rule '" + r.id + "'");
      r.profiles.push_back(*prof);
    }
    r.message = rec.value("message", std::string{});
    const auto& m = rec["match"];
    std::string type = m.value("type", std::string{});
    if (type == "predicate")
      r.match = ProfileRule::Match::Predicate;
    else if (type == "class-instance")
      r.match = ProfileRule::Match::ClassInstance;
    else if (type == "superclass-predicate")
      r.match = ProfileRule::Match::SuperclassPredicate;
    else if (type == "subclass-predicate")
      r.match = ProfileRule::Match::SubclassPredicate;
    else if (type == "restriction-superclass")
      r.match = ProfileRule::Match::RestrictionSuperclass;
    else if (type == "cardinality-above")
      r.match = ProfileRule::Match::CardinalityAbove;
    else
      return std::string("unknown match type in rule '" + r.id + "'");
    r.iri = m.value("iri", std::string{});
    if (m.contains("allowed"))
      for (const auto& a : m["allowed"]) {
        auto kind = restriction_kind_from_name(a.get<std::string>());
        if (kind == RestrictionKind::Unknown)
          return std::string("unknown restriction kind in rule '" + r.id + "'");
        r.allowed.push_back(kind);
      }
    r.max_cardinality = m.value("max", 1);
    rules.push_back(std::move(r));
  }
  return rules;
}

std::vector<ProfileViolation> check_profile(const Graph& g, Profile p,
                                            const std::vector<ProfileRule>& rules) {
  std::vector<ProfileViolation> out;
  for (const ProfileRule& rule : rules) {
    if (std::find(rule.profiles.begin(), rule.profiles.end(), p) == rule.profiles.end())
      continue;
    match_rule(g, p, rule, out);
  }
  return out;
}

// --- saturation -------------------------------------------------------------

namespace {

// Predicate-indexed view rebuilt once per pass; graphs at lint scale make
// this cheap and it keeps rule bodies readable.
struct Index {
  std::map<std::string, std::vector<const Triple*>> by_predicate;
  std::set<std::string> symmetric, transitive, functional, inverse_functional;

  explicit Index(const Graph& g) {
    for (const Triple& t : g.triples()) by_predicate[t.predicate.value].push_back(&t);
    for (const Triple* t : of(vocab::rdf_type)) {
      if (!t->object.is_iri()) continue;
      if (t->object.value == owl_symmetric) symmetric.insert(t->subject.value);
      if (t->object.value == owl_transitive) transitive.insert(t->subject.value);
      if (t->object.value == owl_functional) functional.insert(t->subject.value);
      if (t->object.value == owl_inverse_functional) inverse_functional.insert(t->subject.value);
    }
  }

  const std::vector<const Triple*>& of(const std::string& p) const {
    static const std::vector<const Triple*> empty;
    auto it = by_predicate.find(p);
    return it == by_predicate.end() ? empty : it->second;
  }
};

bool emit(Graph& g, std::vector<Triple>& fresh, Term s, Term p, Term o) {
  if (s.is_literal() || !p.is_iri()) return false;  // sameAs with literals
  Triple t{std::move(s), std::move(p), std::move(o)};
  if (g.contains(t)) return false;
  fresh.push_back(std::move(t));
  return true;
}

}  // namespace

SaturationResult saturate_rl(const Graph& g, std::size_t max_iterations) {
  SaturationResult result;
  result.closure = g;
  Graph& c = result.closure;

  for (std::size_t pass = 0; pass < max_iterations; ++pass) {
    Index idx(c);
    std::vector<Triple> fresh;
    const Term same_as = Term::iri(owl_same_as);
    const Term type = Term::iri(vocab::rdf_type);

    // eq-sym / eq-trans
    for (const Triple* t : idx.of(owl_same_as)) {
      emit(c, fresh, t->object, same_as, t->subject);
      for (const Triple* u : idx.of(owl_same_as))
        if (t->object == u->subject) emit(c, fresh, t->subject, same_as, u->object);
    }
    // eq-rep-s / eq-rep-p / eq-rep-o
    for (const Triple* eq : idx.of(owl_same_as)) {
      if (eq->subject == eq->object) continue;
      for (const Triple& t : c.triples()) {
        if (t.subject == eq->subject) emit(c, fresh, eq->object, t.predicate, t.object);
        if (t.predicate == eq->subject) emit(c, fresh, t.subject, eq->object, t.object);
        if (t.object == eq->subject) emit(c, fresh, t.subject, t.predicate, eq->object);
      }
    }
    // prp-dom / prp-rng
    for (const Triple* dom : idx.of(vocab::rdfs_domain))
      for (const Triple* t : idx.of(dom->subject.value))
        emit(c, fresh, t->subject, type, dom->object);
    for (const Triple* rng : idx.of(vocab::rdfs_range))
      for (const Triple* t : idx.of(rng->subject.value))
        emit(c, fresh, t->object, type, rng->object);
    // prp-symp / prp-trp
    for (const auto& p : idx.symmetric)
      for (const Triple* t : idx.of(p)) emit(c, fresh, t->object, t->predicate, t->subject);
    for (const auto& p : idx.transitive)
      for (const Triple* t : idx.of(p))
        for (const Triple* u : idx.of(p))
          if (t->object == u->subject) emit(c, fresh, t->subject, t->predicate, u->object);
    // prp-inv1 / prp-inv2
    for (const Triple* inv : idx.of(owl_inverse_of)) {
      if (!inv->object.is_iri()) continue;
      for (const Triple* t : idx.of(inv->subject.value))
        emit(c, fresh, t->object, inv->object, t->subject);
      for (const Triple* t : idx.of(inv->object.value))
        emit(c, fresh, t->object, Term::iri(inv->subject.value), t->subject);
    }
    // prp-fp / prp-ifp
    for (const auto& p : idx.functional)
      for (const Triple* t : idx.of(p))
        for (const Triple* u : idx.of(p))
          if (t->subject == u->subject && t->object != u->object)
            emit(c, fresh, t->object, same_as, u->object);
    for (const auto& p : idx.inverse_functional)
      for (const Triple* t : idx.of(p))
        for (const Triple* u : idx.of(p))
          if (t->object == u->object && t->subject != u->subject)
            emit(c, fresh, t->subject, same_as, u->subject);
    // cax-sco / cax-eqc1 / cax-eqc2
    for (const Triple* sco : idx.of(vocab::rdfs_sub_class_of))
      for (const Triple* t : idx.of(vocab::rdf_type))
        if (t->object == sco->subject) emit(c, fresh, t->subject, type, sco->object);
    for (const Triple* eqc : idx.of(owl_equivalent_class)) {
      for (const Triple* t : idx.of(vocab::rdf_type)) {
        if (t->object == eqc->subject) emit(c, fresh, t->subject, type, eqc->object);
        if (t->object == eqc->object) emit(c, fresh, t->subject, type, eqc->subject);
      }
    }
    // scm-sco / scm-spo
    for (const Triple* a : idx.of(vocab::rdfs_sub_class_of))
      for (const Triple* b : idx.of(vocab::rdfs_sub_class_of))
        if (a->object == b->subject)
          emit(c, fresh, a->subject, Term::iri(vocab::rdfs_sub_class_of), b->object);
    for (const Triple* a : idx.of(vocab::rdfs_sub_property_of))
      for (const Triple* b : idx.of(vocab::rdfs_sub_property_of))
        if (a->object == b->subject)
          emit(c, fresh, a->subject, Term::iri(vocab::rdfs_sub_property_of), b->object);
    // prp-spo1 (companion of scm-spo; documented extension over the floor)
    for (const Triple* spo : idx.of(vocab::rdfs_sub_property_of)) {
      if (!spo->object.is_iri()) continue;
      for (const Triple* t : idx.of(spo->subject.value))
        emit(c, fresh, t->subject, Term::iri(spo->object.value), t->object);
    }

    result.passes = pass + 1;
    if (fresh.empty()) {
      result.reached_fixpoint = true;
      return result;
    }
    for (Triple& t : fresh) c.insert(std::move(t));
  }
  result.reached_fixpoint = false;
  return result;
}

ConsistencyReport check_consistency(const Graph& g, std::size_t max_iterations) {
  return check_consistency(saturate_rl(g, max_iterations));
}

ConsistencyReport check_consistency(const SaturationResult& sat) {
  ConsistencyReport report;
  report.complete = sat.reached_fixpoint;
  const Graph& c = sat.closure;

  const Term type = Term::iri(vocab::rdf_type);

  // eq-diff1: x sameAs y and x differentFrom y
  {
    Term diff = Term::iri(owl_different_from);
    for (const Triple& d : c.match(nullptr, &diff, nullptr)) {
      Triple same{d.subject, Term::iri(owl_same_as), d.object};
      if (c.contains(same)) report.evidence.push_back({"eq-diff1", {same, d}});
    }
  }
  // cax-dw: disjoint classes with a shared member
  {
    Term dw = Term::iri(owl_disjoint_with);
    for (const Triple& d : c.match(nullptr, &dw, nullptr)) {
      for (const Triple& t1 : c.match(nullptr, &type, &d.subject)) {
        Triple t2{t1.subject, type, d.object};
        if (c.contains(t2)) report.evidence.push_back({"cax-dw", {d, t1, t2}});
      }
    }
  }
  // cls-nothing2: membership in owl:Nothing
  {
    Term nothing = Term::iri(owl_nothing);
    for (const Triple& t : c.match(nullptr, &type, &nothing))
      report.evidence.push_back({"cls-nothing2", {t}});
  }
  // prp-irp: irreflexive property used reflexively
  {
    Term irr = Term::iri(owl_irreflexive);
    for (const Triple& decl : c.match(nullptr, &type, &irr)) {
      if (!decl.subject.is_iri()) continue;
      Term p = decl.subject;
      for (const Triple& t : c.match(nullptr, &p, nullptr))
        if (t.subject == t.object) report.evidence.push_back({"prp-irp", {decl, t}});
    }
  }
  // prp-asyp: asymmetric property with a pair in both directions
  {
    Term asym = Term::iri(owl_asymmetric);
    for (const Triple& decl : c.match(nullptr, &type, &asym)) {
      if (!decl.subject.is_iri()) continue;
      Term p = decl.subject;
      for (const Triple& t : c.match(nullptr, &p, nullptr)) {
        if (t.object.is_literal() || t.object < t.subject) continue;  // report one direction
        Triple back{t.object, t.predicate, t.subject};
        if (c.contains(back)) report.evidence.push_back({"prp-asyp", {decl, t, back}});
      }
    }
  }

  report.consistent = report.evidence.empty();
  return report;
}

}  // namespace ontolint
