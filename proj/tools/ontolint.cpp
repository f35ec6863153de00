// Command-line entry point: repository initialization, the three test
// suites (manual, pre-commit or ci mode), and report-folder flushing.
// Exit codes: 0 = no blocking error, 1 = at least one MajorFail,
// 2 = usage or internal error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ontolint/engine.hpp"
#include "ontolint/report.hpp"
#include "ontolint/turtle.hpp"

namespace fs = std::filesystem;
using namespace ontolint;

namespace {

constexpr const char* kToolName = "ontolint";
constexpr const char* kToolVersion = "0.1.0";

std::string utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<std::string> git_user_name(const std::string& root) {
  std::string cmd = "git -C '" + root + "' config user.name 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return std::nullopt;
  char buf[256];
  std::string out;
  while (fgets(buf, sizeof buf, pipe)) out += buf;
  if (pclose(pipe) != 0) return std::nullopt;
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  if (out.empty()) return std::nullopt;
  return out;
}

std::string resolve_developer(const std::string& flag, const std::string& root) {
  if (!flag.empty()) return flag;
  if (auto name = git_user_name(root)) return *name;
  if (const char* user = std::getenv("USER")) return user;
  if (const char* user = std::getenv("LOGNAME")) return user;
  return "unknown";
}

bool write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return true;
}

int cmd_init(const std::string& root) {
  fs::path r(root);
  std::error_code ec;
  for (const char* dir :
       {"src", "domains", "use-cases", ".acimov", ".acimov/output",
        ".acimov/custom-tests", ".acimov/custom-tests/model", ".acimov/custom-tests/data"}) {
    fs::create_directories(r / dir, ec);
    if (ec) {
      std::cerr << "error: cannot create " << (r / dir) << ": " << ec.message() << "\n";
      return 2;
    }
  }
  fs::path params = r / ".acimov" / "parameters.json";
  if (!fs::exists(params)) {
    write_file(params,
               "{\n"
               "  \"ontology_namespace\": \"\",\n"
               "  \"blocking_errors\": [\"syntax-error\"],\n"
               "  \"skipped_tests\": [],\n"
               "  \"tested_files_exclude\": [],\n"
               "  \"term_distance_threshold\": 3,\n"
               "  \"namespace_distance_max\": 2\n"
               "}\n");
  }
  std::cout << "initialized project skeleton under " << r << "\n";
  return 0;
}

int cmd_flush(const std::string& root, const std::string& output_override) {
  fs::path out = output_override.empty() ? fs::path(root) / ".acimov" / "output"
                                         : fs::path(output_override);
  if (!fs::exists(out)) return 0;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(out)) {
    fs::remove_all(e.path(), ec);
    if (ec) {
      std::cerr << "error: cannot remove " << e.path() << ": " << ec.message() << "\n";
      return 2;
    }
  }
  std::cout << "flushed " << out << "\n";
  return 0;
}

struct TestOptions {
  std::string root = ".";
  std::string mode = "manual";
  std::string developer;
  std::string output;
  std::vector<std::string> staged;
  bool model = false, data = false, query = false;
  bool serial = false;
};

std::string norm_rel(const std::string& root, const std::string& path) {
  fs::path p(path);
  std::error_code ec;
  fs::path abs = fs::absolute(p, ec);
  fs::path rel = fs::relative(abs, fs::path(root), ec);
  if (ec || rel.empty()) return p.generic_string();
  std::string s = rel.generic_string();
  return s.rfind("..", 0) == 0 ? p.generic_string() : s;
}

int cmd_test(const TestOptions& opt) {
  const std::string root = fs::absolute(opt.root).lexically_normal().string();

  Trigger trigger = Trigger::Manual;
  if (opt.mode == "pre-commit")
    trigger = Trigger::PreCommit;
  else if (opt.mode == "ci")
    trigger = Trigger::Ci;
  else if (opt.mode != "manual") {
    std::cerr << "error: unknown mode '" << opt.mode << "'\n";
    return 2;
  }
  if (trigger == Trigger::PreCommit && opt.staged.empty()) {
    std::cerr << "error: pre-commit mode needs --staged FILE...\n";
    return 2;
  }

  // Parameters: explicit env override, then the project file.
  std::optional<std::string> params_path;
  if (const char* env = std::getenv("ACIMOV_LINT_CONFIG"))
    params_path = env;
  else
    params_path = (fs::path(root) / ".acimov" / "parameters.json").string();
  std::vector<std::string> config_warnings;
  auto params_or = load_parameters(params_path, &config_warnings);
  if (auto* err = std::get_if<ConfigError>(&params_or)) {
    std::cerr << "error: malformed configuration (" << *params_path << " line " << err->line
              << "): " << err->message << "\n";
    return 2;
  }
  Parameters params = std::get<Parameters>(params_or);
  for (const auto& w : config_warnings) std::cerr << "warning: " << w << "\n";

  auto layout_or = scan_repository(root, params);
  if (auto* err = std::get_if<ScanError>(&layout_or)) {
    std::cerr << "error: " << err->message << "\n";
    return 2;
  }
  const ProjectLayout& layout = std::get<ProjectLayout>(layout_or);

  // Model subjects are always assembled: the data suite needs the merged
  // ontology even when the model suite itself is not requested.
  std::vector<TestSubject> model_subjects = assemble_model_subjects(layout);
  std::optional<Graph> ontology;
  for (const TestSubject& s : model_subjects)
    if (s.kind == SubjectKind::WholeMerge && s.graph) ontology = s.graph;
  if (!ontology)
    for (const TestSubject& s : model_subjects)
      if (s.kind == SubjectKind::ModulesMerge && s.graph) ontology = s.graph;

  EngineContext ctx;
  ctx.params = params;
  ctx.parallel = !opt.serial;
  ctx.registry_namespaces =
      params.prefix_registry_path.empty()
          ? default_prefix_registry()
          : load_prefix_registry((fs::path(root) / params.prefix_registry_path).string());
  ctx.project_namespaces.push_back(params.ontology_namespace);
  for (const TestSubject& s : model_subjects) {
    if (!s.graph || s.files.size() != 1) continue;
    for (const auto& [prefix, ns] : s.graph->prefixes()) ctx.project_namespaces.push_back(ns);
  }

  // Project-extended profile rules, when present.
  fs::path rules_path = fs::path(root) / ".acimov" / "profile-rules.json";
  if (fs::exists(rules_path)) {
    std::ifstream in(rules_path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto rules_or = parse_profile_rules(buf.str());
    if (auto* err = std::get_if<std::string>(&rules_or)) {
      std::cerr << "error: " << rules_path << ": " << *err << "\n";
      return 2;
    }
    ctx.profile_rules = std::get<std::vector<ProfileRule>>(rules_or);
  }

  auto load_custom = [&](const std::vector<std::string>& files, std::vector<Shape>& shapes,
                         std::vector<std::string>& diagnostics, bool& have) {
    have = !files.empty();
    for (const std::string& f : files) {
      auto parsed = parse_turtle_file((fs::path(root) / f).string());
      if (auto* err = std::get_if<ParseError>(&parsed)) {
        diagnostics.push_back("custom test " + f + " failed to parse: line " +
                              std::to_string(err->line) + ": " + err->message);
        continue;
      }
      auto loaded = load_shapes(std::get<ParseResult>(parsed).graph);
      if (auto* err = std::get_if<std::string>(&loaded)) {
        diagnostics.push_back("custom test " + f + " is invalid: " + *err);
        continue;
      }
      auto& ok = std::get<ShapeLoad>(loaded);
      shapes.insert(shapes.end(), ok.shapes.begin(), ok.shapes.end());
      for (const auto& d : ok.unsupported) diagnostics.push_back(f + ": " + d);
    }
  };
  load_custom(layout.custom_model_tests, ctx.custom_model_shapes,
              ctx.custom_model_diagnostics, ctx.have_custom_model_tests);
  load_custom(layout.custom_data_tests, ctx.custom_data_shapes, ctx.custom_data_diagnostics,
              ctx.have_custom_data_tests);

  std::vector<TestSubject> data_subjects = assemble_data_subjects(layout);
  std::vector<TestSubject> query_subjects = assemble_query_subjects(layout);

  // Pre-commit mode tests only subjects touching a staged file.
  if (trigger == Trigger::PreCommit) {
    std::set<std::string> staged;
    for (const std::string& s : opt.staged) staged.insert(norm_rel(root, s));
    auto touches = [&](const TestSubject& s) {
      for (const std::string& f : s.files)
        if (staged.count(f)) return true;
      return false;
    };
    auto filter = [&](std::vector<TestSubject>& subjects) {
      std::vector<TestSubject> kept;
      for (TestSubject& s : subjects)
        if (touches(s)) kept.push_back(std::move(s));
      subjects = std::move(kept);
    };
    filter(model_subjects);
    filter(data_subjects);
    filter(query_subjects);
  }

  std::vector<Assertion> assertions;
  std::vector<std::string> suite_names;
  if (opt.model) {
    suite_names.push_back("model");
    auto a = run_model_suite(model_subjects, ctx);
    assertions.insert(assertions.end(), a.begin(), a.end());
  }
  if (opt.data) {
    suite_names.push_back("data");
    auto a = run_data_suite(data_subjects, ctx, ontology);
    assertions.insert(assertions.end(), a.begin(), a.end());
  }
  if (opt.query) {
    suite_names.push_back("query");
    auto a = run_query_suite(query_subjects, ctx);
    assertions.insert(assertions.end(), a.begin(), a.end());
  }
  apply_severity(assertions, params);
  std::sort(assertions.begin(), assertions.end(), [](const Assertion& a, const Assertion& b) {
    if (a.subject_id != b.subject_id) return a.subject_id < b.subject_id;
    return a.criterion_id < b.criterion_id;
  });

  // Reports.
  ReportContext rctx;
  rctx.project = compute_version(root, layout, params);
  rctx.test_suite = {kToolName, kToolVersion, std::nullopt};
  rctx.developer = resolve_developer(opt.developer, root);
  rctx.trigger = trigger;
  rctx.timestamp_utc = utc_now();
  rctx.suites = suite_names;
  rctx.root = root;

  fs::path out_dir = opt.output.empty() ? fs::path(root) / ".acimov" / "output"
                                        : fs::path(opt.output);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  const std::string base = report_basename(rctx);
  rctx.turtle_report_ref = ".acimov/output/" + base + ".ttl";
  rctx.markdown_report_ref = ".acimov/output/" + base + ".md";
  if (!opt.output.empty()) {
    rctx.turtle_report_ref = (out_dir / (base + ".ttl")).string();
    rctx.markdown_report_ref = (out_dir / (base + ".md")).string();
  }

  Graph earl = emit_earl(assertions, rctx);
  write_file(out_dir / (base + ".ttl"), serialize_turtle(earl));
  write_file(out_dir / (base + ".md"), emit_markdown(assertions, rctx));

  Statistics stats = compute_statistics(assertions);
  if (trigger == Trigger::Ci) {
    for (const Badge& b : emit_badges(stats, profile_results_from(assertions)))
      write_file(out_dir / (b.name + ".json"), b.json);
  }

  // Console summary.
  std::cout << "tested " << (model_subjects.size() + data_subjects.size() +
                             query_subjects.size())
            << " subjects, " << assertions.size() << " assertions\n";
  for (OutcomeType t : {OutcomeType::MajorFail, OutcomeType::MinorFail, OutcomeType::CannotTell,
                        OutcomeType::NotTested, OutcomeType::Pass}) {
    auto it = stats.per_type.find(t);
    if (it != stats.per_type.end() && it->second > 0)
      std::cout << "  " << to_string(t) << ": " << it->second << "\n";
  }
  std::cout << "reports written to " << out_dir << "\n";

  bool blocking = false;
  for (const Assertion& a : assertions) {
    for (const Outcome& o : a.outcomes) {
      if (o.type != OutcomeType::MajorFail) continue;
      blocking = true;
      if (trigger == Trigger::PreCommit) {
        std::string file = a.subject_files.empty() ? a.subject_id : a.subject_files.front();
        std::string pointer = o.pointers.empty() ? o.title : o.pointers.front();
        std::cout << "BLOCKING " << file << " [" << a.criterion_id << "] " << pointer << "\n";
      }
    }
  }
  if (blocking && trigger == Trigger::PreCommit)
    std::cout << "commit blocked: fix the errors above or adjust blocking_errors\n";
  return blocking ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-integration linter for modular ontology repositories"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  std::string init_root = ".";
  CLI::App* init = app.add_subcommand("init", "create the project skeleton");
  init->add_option("--root", init_root, "project root")->capture_default_str();

  TestOptions opt;
  CLI::App* test = app.add_subcommand("test", "run test suites and write reports");
  test->add_flag("--model", opt.model, "run the model suite");
  test->add_flag("--data", opt.data, "run the data suite");
  test->add_flag("--query", opt.query, "run the query suite");
  test->add_option("--mode", opt.mode, "manual, pre-commit or ci")->capture_default_str();
  test->add_option("--root", opt.root, "project root")->capture_default_str();
  test->add_option("--developer", opt.developer, "developer name for the report");
  test->add_option("--staged", opt.staged, "files staged for commit (pre-commit mode)");
  test->add_option("--output", opt.output, "override the report output directory");
  test->add_flag("--serial", opt.serial, "disable parallel subject evaluation");

  std::string flush_root = ".", flush_output;
  CLI::App* flush = app.add_subcommand("flush", "empty the report output folder");
  flush->add_option("--root", flush_root, "project root")->capture_default_str();
  flush->add_option("--output", flush_output, "override the report output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (init->parsed()) return cmd_init(init_root);
    if (flush->parsed()) return cmd_flush(flush_root, flush_output);
    if (test->parsed()) {
      if (!opt.model && !opt.data && !opt.query) {
        std::cerr << "error: test needs at least one of --model --data --query\n";
        return 2;
      }
      return cmd_test(opt);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
