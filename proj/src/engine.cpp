#include "ontolint/engine.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "ontolint/iri.hpp"
#include "ontolint/levenshtein.hpp"
#include "ontolint/sparql.hpp"

namespace ontolint {

std::string_view to_string(OutcomeType t) {
  switch (t) {
    case OutcomeType::Pass: return "Pass";
    case OutcomeType::Fail: return "Fail";
    case OutcomeType::MinorFail: return "MinorFail";
    case OutcomeType::MajorFail: return "MajorFail";
    case OutcomeType::CannotTell: return "CannotTell";
    case OutcomeType::NotTested: return "NotTested";
  }
  return "Pass";
}

namespace {

const std::set<SubjectKind> model_kinds = {
    SubjectKind::Module, SubjectKind::Modelet, SubjectKind::ModuleModeletMerge,
    SubjectKind::ModulesMerge, SubjectKind::WholeMerge};
const std::set<SubjectKind> data_kinds = {SubjectKind::Dataset, SubjectKind::UseCase};
const std::set<SubjectKind> query_kinds = {SubjectKind::Query};

std::set<SubjectKind> merge_kinds(std::initializer_list<std::set<SubjectKind>> sets) {
  std::set<SubjectKind> out;
  for (const auto& s : sets) out.insert(s.begin(), s.end());
  return out;
}

std::vector<TestCriterion> build_registry() {
  std::vector<TestCriterion> reg;
  auto add = [&](std::string id, std::string title, std::string description,
                 std::set<SubjectKind> kinds, std::set<std::string> prereq) {
    reg.push_back({std::move(id), std::move(title), std::move(description), std::move(kinds),
                   std::move(prereq)});
  };

  add("syntax-error", "RDF syntax validity",
      "The test subject parses as Turtle without any syntax error.",
      merge_kinds({model_kinds, data_kinds}), {});
  add("term-referencing", "Terms are linked to their ontology",
      "Every ontology term carries an rdfs:isDefinedBy property.", model_kinds,
      {"syntax-error"});
  add("domain-range-vocabulary", "Domain or range out of vocabulary",
      "Every rdfs:domain or rdfs:range triple on an ontology term has an IRI object.",
      model_kinds, {"syntax-error"});
  add("subset-property-misuse", "Proper use of subset properties",
      "rdfs:subClassOf never links properties and rdfs:subPropertyOf never links classes.",
      model_kinds, {"syntax-error"});
  add("term-differentiation", "Differentiation of terms",
      "No pair of ontology terms sits under the configured Levenshtein distance threshold.",
      model_kinds, {"syntax-error"});
  add("english-labels", "English labels are provided",
      "Every ontology term has an rdfs:label tagged as English (@en).", model_kinds,
      {"syntax-error"});
  add("owl-rl-consistency", "OWL RL consistency",
      "The subject is logically consistent under the OWL RL rule subset.",
      merge_kinds({model_kinds, data_kinds}), {"syntax-error"});
  add("profile-compatibility-EL", "OWL EL profile compatibility",
      "The subject uses no construct outside the OWL 2 EL profile.", model_kinds,
      {"syntax-error"});
  add("profile-compatibility-QL", "OWL QL profile compatibility",
      "The subject uses no construct outside the OWL 2 QL profile.", model_kinds,
      {"syntax-error"});
  add("profile-compatibility-RL", "OWL RL profile compatibility",
      "The subject uses no construct outside the OWL 2 RL profile.", model_kinds,
      {"syntax-error"});
  add("custom-model", "Custom model tests",
      "The project's custom model shapes hold on the subject.", model_kinds,
      {"syntax-error"});
  add("known-terms", "Known terms",
      "Every subject term in the ontology namespace is defined in the ontology.", data_kinds,
      {"syntax-error"});
  add("namespace-typo", "Namespace typo detection",
      "No subject namespace sits within editing distance of a known namespace.",
      merge_kinds({data_kinds, query_kinds}), {"syntax-error"});
  add("custom-data", "Custom data tests",
      "The project's custom data shapes hold on the subject.", data_kinds, {"syntax-error"});
  add("query-syntax", "SPARQL syntax validity",
      "The competency question parses against the SPARQL 1.1 query grammar.", query_kinds, {});
  add("query-form", "Query form",
      "Competency questions use SELECT for open or ASK for closed questions.", query_kinds,
      {"query-syntax"});
  add("uri-validity", "URI validity",
      "Every URI in the query conforms to RFC 3986.", query_kinds, {"query-syntax"});
  return reg;
}

std::string term_str(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Iri: return "<" + t.value + ">";
    case Term::Kind::Blank: return "_:" + t.value;
    default: {
      std::string s = "\"" + t.value + "\"";
      if (!t.lang.empty())
        s += "@" + t.lang;
      else if (t.datatype != vocab::xsd_string)
        s += "^^<" + t.datatype + ">";
      return s;
    }
  }
}

std::string triple_str(const Triple& t) {
  return term_str(t.subject) + " " + term_str(t.predicate) + " " + term_str(t.object) + " .";
}

Outcome pass_outcome(std::string title, std::string description,
                     std::vector<std::string> pointers = {}) {
  return {OutcomeType::Pass, std::move(title), std::move(description), std::move(pointers)};
}

Outcome not_tested_outcome(const std::string& prerequisite) {
  return {OutcomeType::NotTested, "Not tested",
          "A prerequisite test was not validated on this subject.", {prerequisite}};
}

bool english_tag(const std::string& lang) {
  std::string lower;
  for (char c : lang) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lower == "en" || lower.rfind("en-", 0) == 0;
}

// Suite executor shared by the three suites. Evaluation of one subject is
// independent of every other subject, so the loop may run under OpenMP; the
// final sort restores the canonical order either way.
template <typename Fn>
std::vector<Assertion> run_subjects(const std::vector<TestSubject>& subjects, bool parallel,
                                    Fn&& per_subject) {
  std::vector<std::vector<Assertion>> slots(subjects.size());
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long i = 0; i < static_cast<long long>(subjects.size()); ++i)
      slots[static_cast<std::size_t>(i)] = per_subject(subjects[static_cast<std::size_t>(i)]);
  } else {
    for (std::size_t i = 0; i < subjects.size(); ++i) slots[i] = per_subject(subjects[i]);
  }
  std::vector<Assertion> out;
  for (auto& slot : slots)
    for (auto& a : slot) out.push_back(std::move(a));
  std::sort(out.begin(), out.end(), [](const Assertion& a, const Assertion& b) {
    if (a.subject_id != b.subject_id) return a.subject_id < b.subject_id;
    return a.criterion_id < b.criterion_id;
  });
  return out;
}

class SubjectEvaluator {
 public:
  SubjectEvaluator(const TestSubject& subject, const EngineContext& ctx)
      : s_(subject), ctx_(ctx) {}

  bool skipped(const std::string& criterion_id) const {
    for (const SkippedTest& skip : ctx_.params.skipped_tests) {
      if (skip.criterion != criterion_id) continue;
      if (skip.glob.empty()) return true;
      for (const auto& f : s_.files)
        if (glob_match(skip.glob, f)) return true;
    }
    return false;
  }

  void push(const std::string& criterion_id, std::vector<Outcome> outcomes) {
    if (skipped(criterion_id)) return;
    if (outcomes.empty())
      outcomes.push_back(pass_outcome("Passed", "No violation detected."));
    Assertion a;
    a.subject_id = s_.id;
    a.subject_title = s_.title();
    a.subject_files = s_.files;
    a.subject_kind = s_.kind;
    a.criterion_id = criterion_id;
    a.outcomes = std::move(outcomes);
    out_.push_back(std::move(a));
  }

  // Evaluate a gated criterion, demoting engine failures to CannotTell.
  template <typename Fn>
  void gated(const std::string& criterion_id, Fn&& eval) {
    if (skipped(criterion_id)) return;
    if (!s_.graph) {
      push(criterion_id, {not_tested_outcome("syntax-error")});
      return;
    }
    try {
      push(criterion_id, eval(*s_.graph));
    } catch (const std::exception& e) {
      push(criterion_id,
           {{OutcomeType::CannotTell, "Test engine failure",
             "The test did not run to completion; a human needs to look at this.",
             {e.what()}}});
    }
  }

  void syntax_criterion() {
    std::vector<Outcome> outcomes;
    if (s_.graph) {
      outcomes.push_back(pass_outcome(
          "Valid RDF syntax", "The subject parsed without errors.",
          {std::to_string(s_.graph->size()) + " triples"}));
      const std::string owl_imports = std::string(vocab::owl_ns) + "imports";
      Term imports = Term::iri(owl_imports);
      for (const Triple& t : s_.graph->match(nullptr, &imports, nullptr))
        outcomes.push_back({OutcomeType::CannotTell, "owl:imports is not resolved",
                            "Imported axioms are not fetched; checks run on the local "
                            "triples only.",
                            {term_str(t.object)}});
    } else {
      std::string where = s_.parse_error_file;
      std::vector<std::string> pointers = {where};
      std::string description = "The subject could not be parsed.";
      if (s_.parse_error) {
        pointers.push_back("line " + std::to_string(s_.parse_error->line) + ", column " +
                           std::to_string(s_.parse_error->column));
        pointers.push_back(s_.parse_error->message);
      }
      outcomes.push_back(
          {OutcomeType::Fail, "Syntax error", std::move(description), std::move(pointers)});
    }
    push("syntax-error", std::move(outcomes));
  }

  std::vector<Assertion> take() { return std::move(out_); }

 protected:
  const TestSubject& s_;
  const EngineContext& ctx_;
  std::vector<Assertion> out_;
};

std::vector<Outcome> namespace_typo_outcomes(const std::set<std::string>& namespaces,
                                             const EngineContext& ctx) {
  std::set<std::string> known(ctx.registry_namespaces.begin(), ctx.registry_namespaces.end());
  known.insert(ctx.project_namespaces.begin(), ctx.project_namespaces.end());
  std::vector<Outcome> outcomes;
  for (const std::string& ns : namespaces) {
    if (known.count(ns)) continue;
    std::size_t best = static_cast<std::size_t>(-1);
    std::string best_match;
    for (const std::string& k : known) {
      std::size_t d = levenshtein(ns, k);
      if (d < best) {
        best = d;
        best_match = k;
      }
    }
    if (best >= 1 && best <= static_cast<std::size_t>(ctx.params.namespace_distance_max)) {
      outcomes.push_back(
          {OutcomeType::CannotTell, "Possible namespace typo",
           "The namespace is close to a known one; it could be correct yet unknown.",
           {"<" + ns + ">", "close to <" + best_match + ">",
            "Levenshtein distance " + std::to_string(best)}});
    }
  }
  if (outcomes.empty())
    outcomes.push_back(pass_outcome("No namespace typo suspected",
                                    "No subject namespace sits close to a known namespace."));
  return outcomes;
}

std::vector<Outcome> shape_outcomes(const Graph& data, const std::vector<Shape>& shapes,
                                    const std::vector<std::string>& diagnostics) {
  std::vector<Outcome> outcomes;
  for (const std::string& d : diagnostics)
    outcomes.push_back({OutcomeType::CannotTell, "Unsupported custom-test feature",
                        "The shape uses a SHACL feature this engine does not evaluate.",
                        {d}});
  for (const ShapeViolation& v : validate(data, shapes)) {
    std::vector<std::string> pointers = {"shape " + term_str(v.shape),
                                         "focus " + term_str(v.focus)};
    if (v.value) pointers.push_back("value " + term_str(*v.value));
    pointers.push_back(v.message);
    switch (v.severity) {
      case ShapeSeverity::Violation:
        outcomes.push_back({OutcomeType::Fail, "Shape violation (" + v.constraint + ")",
                            "A custom shape constraint does not hold.", std::move(pointers)});
        break;
      case ShapeSeverity::Warning:
        outcomes.push_back({OutcomeType::CannotTell, "Shape warning (" + v.constraint + ")",
                            "A custom shape flagged this for human review.",
                            std::move(pointers)});
        break;
      case ShapeSeverity::Info:
        outcomes.push_back(pass_outcome("Shape note (" + v.constraint + ")",
                                        "A custom shape reports informative findings.",
                                        std::move(pointers)));
        break;
    }
  }
  if (outcomes.empty())
    outcomes.push_back(
        pass_outcome("Custom shapes hold", "Every custom shape conforms on this subject."));
  return outcomes;
}

class ModelEvaluator : public SubjectEvaluator {
 public:
  using SubjectEvaluator::SubjectEvaluator;

  std::vector<Assertion> run() {
    syntax_criterion();
    gated("term-referencing", [&](const Graph& g) { return term_referencing(g); });
    gated("domain-range-vocabulary", [&](const Graph& g) { return domain_range(g); });
    gated("subset-property-misuse", [&](const Graph& g) { return subset_misuse(g); });
    gated("term-differentiation", [&](const Graph& g) { return term_differentiation(g); });
    gated("english-labels", [&](const Graph& g) { return english_labels(g); });
    gated("owl-rl-consistency", [&](const Graph& g) { return consistency(g); });
    gated("profile-compatibility-EL", [&](const Graph& g) { return profile(g, Profile::EL); });
    gated("profile-compatibility-QL", [&](const Graph& g) { return profile(g, Profile::QL); });
    gated("profile-compatibility-RL", [&](const Graph& g) { return profile(g, Profile::RL); });
    if (ctx_.have_custom_model_tests)
      gated("custom-model", [&](const Graph& g) {
        return shape_outcomes(saturation(g).closure, ctx_.custom_model_shapes,
                              ctx_.custom_model_diagnostics);
      });
    return take();
  }

 private:
  std::set<std::string> ns_terms(const Graph& g) const {
    return terms_in_namespace(g, ctx_.params.ontology_namespace);
  }

  const SaturationResult& saturation(const Graph& g) {
    if (!saturation_)
      saturation_ = saturate_rl(g, static_cast<std::size_t>(ctx_.params.max_iterations));
    return *saturation_;
  }

  std::vector<Outcome> term_referencing(const Graph& g) {
    std::vector<Outcome> outcomes;
    for (const std::string& term : ns_terms(g)) {
      if (g.objects_of(Term::iri(term), vocab::rdfs_is_defined_by).empty())
        outcomes.push_back({OutcomeType::Fail, "Term missing rdfs:isDefinedBy",
                            "The ontology term is not linked to its defining resource.",
                            {"<" + term + ">"}});
    }
    if (outcomes.empty())
      outcomes.push_back(pass_outcome("All terms are linked to their ontology",
                                      "Every ontology term carries rdfs:isDefinedBy."));
    return outcomes;
  }

  std::vector<Outcome> domain_range(const Graph& g) {
    std::vector<Outcome> outcomes;
    const std::string& ns = ctx_.params.ontology_namespace;
    for (const Triple& t : g.triples()) {
      if (t.predicate.value != vocab::rdfs_domain && t.predicate.value != vocab::rdfs_range)
        continue;
      if (ns.empty() || !t.subject.is_iri() || t.subject.value.rfind(ns, 0) != 0) continue;
      if (!t.object.is_iri())
        outcomes.push_back({OutcomeType::Fail, "Domain or range out of vocabulary",
                            "The domain/range object is not an IRI.",
                            {triple_str(t)}});
    }
    if (outcomes.empty())
      outcomes.push_back(pass_outcome("Domains and ranges point to vocabulary terms",
                                      "Every rdfs:domain/rdfs:range object is an IRI."));
    return outcomes;
  }

  std::vector<Outcome> subset_misuse(const Graph& g) {
    std::vector<Outcome> outcomes;
    const Term rdf_property = Term::iri(vocab::rdf_property);
    const Term rdfs_class = Term::iri(vocab::rdfs_class);
    for (const Triple& t : g.triples()) {
      if (t.predicate.value == vocab::rdfs_sub_class_of) {
        for (const Term* side : {&t.subject, &t.object}) {
          if (!side->is_literal() && g.has(*side, vocab::rdf_type, rdf_property))
            outcomes.push_back({OutcomeType::Fail, "rdfs:subClassOf links a property",
                                "rdfs:subClassOf must relate classes, not properties.",
                                {triple_str(t), term_str(*side)}});
        }
      } else if (t.predicate.value == vocab::rdfs_sub_property_of) {
        for (const Term* side : {&t.subject, &t.object}) {
          if (!side->is_literal() && g.has(*side, vocab::rdf_type, rdfs_class))
            outcomes.push_back({OutcomeType::Fail, "rdfs:subPropertyOf links a class",
                                "rdfs:subPropertyOf must relate properties, not classes.",
                                {triple_str(t), term_str(*side)}});
        }
      }
    }
    if (outcomes.empty())
      outcomes.push_back(pass_outcome("Subset properties are used properly",
                                      "No class/property mixup on subClassOf/subPropertyOf."));
    return outcomes;
  }

  std::vector<Outcome> term_differentiation(const Graph& g) {
    std::set<std::string> terms = ns_terms(g);
    std::vector<std::string> iris(terms.begin(), terms.end());
    std::vector<std::string> locals;
    locals.reserve(iris.size());
    for (const auto& iri : iris) locals.emplace_back(local_name(iri));

    const auto max_distance =
        static_cast<std::size_t>(ctx_.params.term_distance_threshold - 1);
    std::vector<ClosePair> pairs = ctx_.parallel ? close_pairs(locals, max_distance)
                                                 : close_pairs_serial(locals, max_distance);
    std::vector<Outcome> outcomes;
    for (const ClosePair& p : pairs) {
      outcomes.push_back(
          {OutcomeType::Fail, "Confusable term pair",
           "Two ontology terms are close enough to cause downstream confusion.",
           {"<" + iris[p.i] + ">", "<" + iris[p.j] + ">",
            "Levenshtein distance " + std::to_string(p.distance)}});
    }
    if (outcomes.empty())
      outcomes.push_back(pass_outcome("Terms are well differentiated",
                                      "No term pair sits under the distance threshold."));
    return outcomes;
  }

  std::vector<Outcome> english_labels(const Graph& g) {
    std::vector<Outcome> outcomes;
    for (const std::string& term : ns_terms(g)) {
      bool has_english = false;
      for (const Term& label : g.objects_of(Term::iri(term), vocab::rdfs_label))
        if (label.is_literal() && english_tag(label.lang)) has_english = true;
      if (!has_english)
        outcomes.push_back({OutcomeType::Fail, "Term missing an English label",
                            "The ontology term has no rdfs:label tagged @en.",
                            {"<" + term + ">"}});
    }
    if (outcomes.empty())
      outcomes.push_back(pass_outcome("English labels are provided",
                                      "Every ontology term has an @en rdfs:label."));
    return outcomes;
  }

  std::vector<Outcome> consistency(const Graph& g) {
    ConsistencyReport report = check_consistency(saturation(g));
    std::vector<Outcome> outcomes;
    for (const InconsistencyEvidence& e : report.evidence) {
      std::vector<std::string> pointers;
      for (const Triple& t : e.premises) pointers.push_back(triple_str(t));
      outcomes.push_back({OutcomeType::Fail, "Inconsistency (" + e.rule_id + ")",
                          "The premises below entail falsity under OWL RL.",
                          std::move(pointers)});
    }
    if (outcomes.empty() && !report.complete)
      outcomes.push_back({OutcomeType::CannotTell, "Saturation incomplete",
                          "The rule engine hit its iteration limit before a fixpoint.",
                          {"max_iterations = " +
                           std::to_string(ctx_.params.max_iterations)}});
    if (outcomes.empty())
      outcomes.push_back(pass_outcome("Consistent under OWL RL",
                                      "No falsity pattern fired after saturation."));
    return outcomes;
  }

  std::vector<Outcome> profile(const Graph& g, Profile p) {
    std::vector<Outcome> outcomes;
    for (const ProfileViolation& v : check_profile(g, p, ctx_.profile_rules)) {
      outcomes.push_back(
          {OutcomeType::Fail,
           "Incompatible with OWL " + std::string(to_string(p)),
           v.explanation,
           {v.construct, "on " + term_str(v.focus)}});
    }
    if (outcomes.empty())
      outcomes.push_back(pass_outcome("Compatible with OWL " + std::string(to_string(p)),
                                      "No profile violation detected."));
    return outcomes;
  }

  std::optional<SaturationResult> saturation_;
};

class DataEvaluator : public SubjectEvaluator {
 public:
  DataEvaluator(const TestSubject& subject, const EngineContext& ctx,
                const std::optional<Graph>& ontology)
      : SubjectEvaluator(subject, ctx), ontology_(ontology) {}

  std::vector<Assertion> run() {
    syntax_criterion();
    gated("owl-rl-consistency", [&](const Graph& g) {
      Graph unioned = ontology_ ? merge_graphs({g, *ontology_}) : g;
      ConsistencyReport report = check_consistency(
          unioned, static_cast<std::size_t>(ctx_.params.max_iterations));
      std::vector<Outcome> outcomes;
      for (const InconsistencyEvidence& e : report.evidence) {
        std::vector<std::string> pointers;
        for (const Triple& t : e.premises) pointers.push_back(triple_str(t));
        outcomes.push_back({OutcomeType::Fail, "Inconsistency (" + e.rule_id + ")",
                            "The data is inconsistent with the ontology under OWL RL.",
                            std::move(pointers)});
      }
      if (outcomes.empty() && !report.complete)
        outcomes.push_back({OutcomeType::CannotTell, "Saturation incomplete",
                            "The rule engine hit its iteration limit before a fixpoint.",
                            {}});
      if (outcomes.empty())
        outcomes.push_back(pass_outcome("Consistent with the ontology",
                                        "No falsity pattern fired after saturation."));
      return outcomes;
    });
    known_terms();
    gated("namespace-typo", [&](const Graph& g) {
      std::set<std::string> namespaces;
      for (const auto& [prefix, ns] : g.prefixes()) namespaces.insert(ns);
      return namespace_typo_outcomes(namespaces, ctx_);
    });
    if (ctx_.have_custom_data_tests)
      gated("custom-data", [&](const Graph& g) {
        return shape_outcomes(g, ctx_.custom_data_shapes, ctx_.custom_data_diagnostics);
      });
    return take();
  }

 private:
  void known_terms() {
    if (skipped("known-terms")) return;
    if (!s_.graph) {
      push("known-terms", {not_tested_outcome("syntax-error")});
      return;
    }
    if (!ontology_) {
      push("known-terms", {not_tested_outcome("ontology-merge")});
      return;
    }
    std::vector<Outcome> outcomes;
    for (const std::string& term : terms_in_namespace(*s_.graph,
                                                      ctx_.params.ontology_namespace)) {
      Term t = Term::iri(term);
      if (ontology_->match(&t, nullptr, nullptr).empty())
        outcomes.push_back({OutcomeType::Fail, "Unknown ontology term",
                            "The term is in the ontology namespace but the ontology does "
                            "not define it.",
                            {"<" + term + ">"}});
    }
    if (outcomes.empty())
      outcomes.push_back(pass_outcome("All ontology-namespace terms are known",
                                      "Every such term is defined in the ontology."));
    push("known-terms", std::move(outcomes));
  }

  const std::optional<Graph>& ontology_;
};

class QueryEvaluator : public SubjectEvaluator {
 public:
  using SubjectEvaluator::SubjectEvaluator;

  std::vector<Assertion> run() {
    auto parsed = parse_query(s_.source_text);
    const QueryInfo* info = std::get_if<QueryInfo>(&parsed);

    {
      std::vector<Outcome> outcomes;
      if (info) {
        outcomes.push_back(pass_outcome("Valid SPARQL syntax",
                                        "The query parses against the SPARQL 1.1 grammar."));
        if (info->uses_service)
          outcomes.push_back({OutcomeType::CannotTell, "Federated query",
                              "SERVICE clauses are parsed but never evaluated here.",
                              {"SERVICE"}});
      } else {
        const ParseError& e = std::get<ParseError>(parsed);
        outcomes.push_back({OutcomeType::Fail, "SPARQL syntax error",
                            "The query does not parse.",
                            {s_.files.empty() ? "" : s_.files.front(),
                             "line " + std::to_string(e.line) + ", column " +
                                 std::to_string(e.column),
                             e.message}});
      }
      push("query-syntax", std::move(outcomes));
    }

    auto gated_query = [&](const std::string& criterion_id, auto&& eval) {
      if (skipped(criterion_id)) return;
      if (!info) {
        push(criterion_id, {not_tested_outcome("query-syntax")});
        return;
      }
      push(criterion_id, eval(*info));
    };

    gated_query("query-form", [&](const QueryInfo& q) {
      std::vector<Outcome> outcomes;
      if (auto v = query_form_allowed(q)) {
        outcomes.push_back({OutcomeType::Fail, "Disallowed query form",
                            "Competency questions must be SELECT (open) or ASK (closed).",
                            {std::string(to_string(v->form))}});
      } else {
        outcomes.push_back(pass_outcome("Allowed query form",
                                        std::string(to_string(q.form)) + " matches an open or "
                                                                         "closed question."));
      }
      return outcomes;
    });

    gated_query("uri-validity", [&](const QueryInfo& q) {
      std::vector<Outcome> outcomes;
      for (const std::string& iri : q.iris) {
        if (auto v = validate_iri(iri))
          outcomes.push_back({OutcomeType::Fail, "Invalid URI",
                              "The URI does not conform to RFC 3986.",
                              {"<" + iri + ">",
                               "offending index " + std::to_string(v->index) + " (" + v->rule +
                                   ")"}});
      }
      if (outcomes.empty())
        outcomes.push_back(pass_outcome("All URIs are valid",
                                        "Every URI conforms to RFC 3986."));
      return outcomes;
    });

    gated_query("namespace-typo", [&](const QueryInfo& q) {
      std::set<std::string> namespaces;
      for (const auto& [prefix, ns] : q.prefixes) namespaces.insert(ns);
      return namespace_typo_outcomes(namespaces, ctx_);
    });

    return take();
  }
};

}  // namespace

const std::vector<TestCriterion>& criterion_registry() {
  static const std::vector<TestCriterion> registry = build_registry();
  return registry;
}

const TestCriterion* find_criterion(std::string_view id) {
  for (const TestCriterion& c : criterion_registry())
    if (c.id == id) return &c;
  return nullptr;
}

std::vector<Assertion> run_model_suite(const std::vector<TestSubject>& subjects,
                                       const EngineContext& ctx) {
  return run_subjects(subjects, ctx.parallel, [&](const TestSubject& s) {
    return ModelEvaluator(s, ctx).run();
  });
}

std::vector<Assertion> run_data_suite(const std::vector<TestSubject>& subjects,
                                      const EngineContext& ctx,
                                      const std::optional<Graph>& ontology) {
  return run_subjects(subjects, ctx.parallel, [&](const TestSubject& s) {
    return DataEvaluator(s, ctx, ontology).run();
  });
}

std::vector<Assertion> run_query_suite(const std::vector<TestSubject>& subjects,
                                       const EngineContext& ctx) {
  return run_subjects(subjects, ctx.parallel, [&](const TestSubject& s) {
    return QueryEvaluator(s, ctx).run();
  });
}

void apply_severity(std::vector<Assertion>& assertions, const Parameters& params) {
  for (Assertion& a : assertions) {
    const bool blocking = params.blocking_errors.count(a.criterion_id) > 0;
    for (Outcome& o : a.outcomes)
      if (o.type == OutcomeType::Fail)
        o.type = blocking ? OutcomeType::MajorFail : OutcomeType::MinorFail;
  }
}

std::vector<std::string> load_prefix_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) return default_prefix_registry();
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  return out;
}

}  // namespace ontolint
