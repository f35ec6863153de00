#pragma once
// Criterion registry and suite execution. Subjects are independent, so the
// engine can evaluate them in parallel; results are always merged back in
// deterministic (subject id, criterion id) order. A serial path is kept and
// must produce identical output.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ontolint/owl.hpp"
#include "ontolint/project.hpp"
#include "ontolint/shacl.hpp"

namespace ontolint {

enum class OutcomeType { Pass, Fail, MinorFail, MajorFail, CannotTell, NotTested };

std::string_view to_string(OutcomeType t);

struct Outcome {
  OutcomeType type = OutcomeType::Pass;
  std::string title;
  std::string description;
  std::vector<std::string> pointers;  // URIs, snippets or messages
};

struct TestCriterion {
  std::string id;
  std::string title;
  std::string description;
  std::set<SubjectKind> applicable_kinds;
  std::set<std::string> prerequisites;
};

const std::vector<TestCriterion>& criterion_registry();
const TestCriterion* find_criterion(std::string_view id);

struct Assertion {
  std::string subject_id;
  std::string subject_title;
  std::vector<std::string> subject_files;
  SubjectKind subject_kind = SubjectKind::Module;
  std::string criterion_id;
  std::vector<Outcome> outcomes;  // never empty
};

// Everything a suite needs besides its subjects.
struct EngineContext {
  Parameters params;
  std::vector<std::string> registry_namespaces;  // bundled prefix snapshot
  std::vector<std::string> project_namespaces;   // declared across the project
  std::vector<ProfileRule> profile_rules = default_profile_rules();
  std::vector<Shape> custom_model_shapes;
  std::vector<std::string> custom_model_diagnostics;
  bool have_custom_model_tests = false;
  std::vector<Shape> custom_data_shapes;
  std::vector<std::string> custom_data_diagnostics;
  bool have_custom_data_tests = false;
  bool parallel = true;
};

std::vector<Assertion> run_model_suite(const std::vector<TestSubject>& subjects,
                                       const EngineContext& ctx);

// `ontology` is the whole-merge graph; when absent, known-terms is NotTested.
std::vector<Assertion> run_data_suite(const std::vector<TestSubject>& subjects,
                                      const EngineContext& ctx,
                                      const std::optional<Graph>& ontology);

std::vector<Assertion> run_query_suite(const std::vector<TestSubject>& subjects,
                                       const EngineContext& ctx);

// Fail becomes MajorFail when its criterion is in the blocking list,
// MinorFail otherwise; every other outcome type is left alone.
void apply_severity(std::vector<Assertion>& assertions, const Parameters& params);

// The bundled prefix.cc-style namespace snapshot.
const std::vector<std::string>& default_prefix_registry();

// One namespace per line, '#' comments; missing file falls back to the
// bundled snapshot.
std::vector<std::string> load_prefix_registry(const std::string& path);

}  // namespace ontolint
