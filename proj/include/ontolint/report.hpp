#pragma once
// Report generation: the machine-readable EARL+PROV Turtle report, the
// navigable GitHub-flavored Markdown version derived from it, and the
// badge endpoint JSON documents.

#include <map>
#include <string>
#include <vector>

#include "ontolint/engine.hpp"
#include "ontolint/owl.hpp"

namespace ontolint {

enum class Trigger { Manual, PreCommit, Ci };

std::string_view to_string(Trigger t);

struct ReportContext {
  VersionDescriptor project;
  VersionDescriptor test_suite;
  std::string developer;
  Trigger trigger = Trigger::Manual;
  std::string timestamp_utc;  // ISO-8601, e.g. 2026-01-31T08:59:52Z
  std::vector<std::string> suites;  // e.g. {"model", "data"}
  std::string root;                 // absolute project root, for local file IRIs
  std::string turtle_report_ref;    // path or URL of the Turtle report
  std::string markdown_report_ref;
  std::string vocab_ns = "https://w3id.org/ontolint#";
};

struct Statistics {
  std::size_t total = 0;
  std::map<OutcomeType, std::size_t> per_type;
};

Statistics compute_statistics(const std::vector<Assertion>& assertions);

// "{suites}-test-{trigger}-{developer}-{timestamp}" with ':' replaced by '-'.
std::string report_basename(const ReportContext& ctx);

// One activity with qualified associations/usages/generations, one
// assertion node per input assertion. Severity must already be applied.
Graph emit_earl(const std::vector<Assertion>& assertions, const ReportContext& ctx);

std::string emit_markdown(const std::vector<Assertion>& assertions, const ReportContext& ctx);

struct Badge {
  std::string name;  // file stem, e.g. "badge-minorfail"
  std::string json;  // shields endpoint document
};

// One badge per outcome type plus one per OWL profile (of the merged
// modules); green when clean, red/orange/yellow/grey otherwise.
std::vector<Badge> emit_badges(const Statistics& stats,
                               const std::map<Profile, bool>& profile_results);

// GitHub-style heading slug; used for intra-document links.
std::string heading_slug(std::string_view heading);

// The compatibility map fed to emit_badges, read off the modules-merge
// subject's profile assertions.
std::map<Profile, bool> profile_results_from(const std::vector<Assertion>& assertions);

}  // namespace ontolint
