#pragma once
// Repository scanning, configuration, test-subject assembly and versioned
// entity hashing. The layout follows the modular-ontology convention:
// modules under src/, per-domain motivating scenarios under domains/ (a
// modelet onto.ttl, datasets, .rq competency questions), data fragments
// under use-cases/, and project files under .acimov/.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ontolint/rdf.hpp"
#include "ontolint/turtle.hpp"

namespace ontolint {

struct ScenarioFile {
  std::string domain;
  std::string scenario;
  std::string path;  // repository-relative

  auto operator<=>(const ScenarioFile&) const = default;
};

struct UseCaseFile {
  std::string use_case;
  std::string path;

  auto operator<=>(const UseCaseFile&) const = default;
};

struct ProjectLayout {
  std::string root;
  std::vector<std::string> modules;
  std::vector<ScenarioFile> modelets;
  std::vector<ScenarioFile> datasets;
  std::vector<ScenarioFile> questions;
  std::vector<UseCaseFile> use_cases;
  std::vector<std::string> custom_model_tests;
  std::vector<std::string> custom_data_tests;

  std::vector<std::string> all_files() const;  // sorted, deduplicated
};

struct SkippedTest {
  std::string criterion;
  std::string glob;  // empty = every file
};

struct Parameters {
  std::string ontology_namespace;
  std::set<std::string> blocking_errors{"syntax-error"};
  std::vector<SkippedTest> skipped_tests;
  std::vector<std::string> tested_files_exclude;
  long long term_distance_threshold = 3;  // distances 1..threshold-1 are flagged
  long long namespace_distance_max = 2;
  std::string prefix_registry_path;
  long long max_iterations = 10000;
  std::map<std::string, std::string> layout_overrides;
};

struct ConfigError {
  int line = 0;
  std::string message;
};

// Absent path or missing file yields all defaults; present files override
// field-wise; unknown keys are collected as warnings, not errors.
std::variant<Parameters, ConfigError> load_parameters(const std::optional<std::string>& path,
                                                      std::vector<std::string>* warnings = nullptr);

struct ScanError {
  std::string message;
};

std::variant<ProjectLayout, ScanError> scan_repository(const std::string& root,
                                                       const Parameters& params);

enum class SubjectKind {
  Module,
  Modelet,
  ModuleModeletMerge,
  ModulesMerge,
  WholeMerge,
  Dataset,
  UseCase,
  Query,
};

std::string_view to_string(SubjectKind k);
bool is_model_kind(SubjectKind k);
bool is_data_kind(SubjectKind k);

struct TestSubject {
  std::string id;  // deterministic function of kind + files
  SubjectKind kind;
  std::vector<std::string> files;        // repository-relative
  std::optional<Graph> graph;            // absent when a file failed to parse
  std::optional<ParseError> parse_error;
  std::string parse_error_file;
  std::string source_text;  // query subjects carry their file content

  std::string title() const;
};

// The five assembly levels: each module, each modelet, each (module,
// modelet) pair merged, the merge of all valid modules, and the merge of
// everything. Parse-invalid files appear as individual subjects with no
// graph and are excluded from merges.
std::vector<TestSubject> assemble_model_subjects(const ProjectLayout& layout);

// Datasets and use-case fragments, each individually.
std::vector<TestSubject> assemble_data_subjects(const ProjectLayout& layout);

// One subject per .rq file, carrying the raw query text.
std::vector<TestSubject> assemble_query_subjects(const ProjectLayout& layout);

struct VersionDescriptor {
  std::string host_url;  // origin remote URL or local path
  std::string version;   // commit hash or hash of file hashes
  std::optional<std::string> derived_from_commit;
};

// Clean tracked tree -> HEAD commit hash; otherwise SHA-256 over the sorted
// "path\tSHA-256(bytes)\n" lines of the scanned files.
VersionDescriptor compute_version(const std::string& root, const ProjectLayout& layout,
                                  const Parameters& params);

// Shell-style matching: '*' and '?' stay inside one path segment, '**'
// crosses segments. Paths compare repository-relative with '/' separators.
bool glob_match(std::string_view glob, std::string_view path);

std::string sha256_hex(std::string_view bytes);

}  // namespace ontolint
