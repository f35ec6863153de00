#include "ontolint/project.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

namespace fs = std::filesystem;

namespace ontolint {

std::vector<std::string> ProjectLayout::all_files() const {
  std::set<std::string> files(modules.begin(), modules.end());
  for (const auto& f : modelets) files.insert(f.path);
  for (const auto& f : datasets) files.insert(f.path);
  for (const auto& f : questions) files.insert(f.path);
  for (const auto& f : use_cases) files.insert(f.path);
  files.insert(custom_model_tests.begin(), custom_model_tests.end());
  files.insert(custom_data_tests.begin(), custom_data_tests.end());
  return {files.begin(), files.end()};
}

bool glob_match(std::string_view glob, std::string_view path) {
  std::string re;
  for (std::size_t i = 0; i < glob.size(); ++i) {
    char c = glob[i];
    if (c == '*') {
      if (i + 1 < glob.size() && glob[i + 1] == '*') {
        re += ".*";
        ++i;
      } else {
        re += "[^/]*";
      }
    } else if (c == '?') {
      re += "[^/]";
    } else if (std::string_view("\\^$.|+()[]{}").find(c) != std::string_view::npos) {
      re += '\\';
      re += c;
    } else {
      re += c;
    }
  }
  return std::regex_match(path.begin(), path.end(), std::regex(re));
}

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

int line_of_key(const std::string& text, const std::string& key) {
  auto pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  return line_of_offset(text, pos);
}

}  // namespace

std::variant<Parameters, ConfigError> load_parameters(const std::optional<std::string>& path,
                                                      std::vector<std::string>* warnings) {
  Parameters params;
  if (!path) return params;
  std::ifstream in(*path, std::ios::binary);
  if (!in) return params;  // absent file: all defaults
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    return ConfigError{line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), e.what()};
  }
  if (!doc.is_object())
    return ConfigError{1, "parameters file must hold a JSON object"};

  auto type_error = [&](const std::string& key, const std::string& want) {
    return ConfigError{line_of_key(text, key), "'" + key + "' must be " + want};
  };

  static const std::set<std::string> known = {
      "ontology_namespace",  "blocking_errors",       "skipped_tests",
      "tested_files_exclude", "term_distance_threshold", "namespace_distance_max",
      "prefix_registry_path", "max_iterations",        "layout_overrides"};

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!known.count(it.key()) && warnings)
      warnings->push_back("unknown parameter '" + it.key() + "' ignored");
  }

  try {
    if (doc.contains("ontology_namespace")) {
      if (!doc["ontology_namespace"].is_string())
        return type_error("ontology_namespace", "a string");
      params.ontology_namespace = doc["ontology_namespace"].get<std::string>();
    }
    if (doc.contains("blocking_errors")) {
      if (!doc["blocking_errors"].is_array())
        return type_error("blocking_errors", "an array of criterion ids");
      params.blocking_errors.clear();
      for (const auto& e : doc["blocking_errors"]) {
        if (!e.is_string()) return type_error("blocking_errors", "an array of criterion ids");
        params.blocking_errors.insert(e.get<std::string>());
      }
    }
    if (doc.contains("skipped_tests")) {
      if (!doc["skipped_tests"].is_array())
        return type_error("skipped_tests", "an array");
      for (const auto& e : doc["skipped_tests"]) {
        if (e.is_string()) {
          params.skipped_tests.push_back({e.get<std::string>(), ""});
        } else if (e.is_object() && e.contains("criterion")) {
          params.skipped_tests.push_back(
              {e["criterion"].get<std::string>(), e.value("glob", std::string{})});
        } else {
          return type_error("skipped_tests", "criterion ids or {criterion, glob} objects");
        }
      }
    }
    if (doc.contains("tested_files_exclude")) {
      if (!doc["tested_files_exclude"].is_array())
        return type_error("tested_files_exclude", "an array of globs");
      for (const auto& e : doc["tested_files_exclude"])
        params.tested_files_exclude.push_back(e.get<std::string>());
    }
    if (doc.contains("term_distance_threshold")) {
      if (!doc["term_distance_threshold"].is_number_integer() ||
          doc["term_distance_threshold"].get<long long>() < 1)
        return type_error("term_distance_threshold", "an integer >= 1");
      params.term_distance_threshold = doc["term_distance_threshold"].get<long long>();
    }
    if (doc.contains("namespace_distance_max")) {
      if (!doc["namespace_distance_max"].is_number_integer() ||
          doc["namespace_distance_max"].get<long long>() < 1)
        return type_error("namespace_distance_max", "an integer >= 1");
      params.namespace_distance_max = doc["namespace_distance_max"].get<long long>();
    }
    if (doc.contains("prefix_registry_path")) {
      if (!doc["prefix_registry_path"].is_string())
        return type_error("prefix_registry_path", "a path string");
      params.prefix_registry_path = doc["prefix_registry_path"].get<std::string>();
    }
    if (doc.contains("max_iterations")) {
      if (!doc["max_iterations"].is_number_integer() ||
          doc["max_iterations"].get<long long>() < 1)
        return type_error("max_iterations", "an integer >= 1");
      params.max_iterations = doc["max_iterations"].get<long long>();
    }
    if (doc.contains("layout_overrides")) {
      if (!doc["layout_overrides"].is_object())
        return type_error("layout_overrides", "an object mapping roles to folders");
      for (auto it = doc["layout_overrides"].begin(); it != doc["layout_overrides"].end(); ++it)
        params.layout_overrides[it.key()] = it.value().get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    return ConfigError{0, e.what()};
  }
  return params;
}

namespace {

bool excluded(const std::string& rel_path, const Parameters& params) {
  for (const auto& glob : params.tested_files_exclude)
    if (glob_match(glob, rel_path)) return true;
  return false;
}

std::string role_dir(const Parameters& params, const std::string& role,
                     const std::string& fallback) {
  auto it = params.layout_overrides.find(role);
  return it == params.layout_overrides.end() ? fallback : it->second;
}

std::string rel(const fs::path& root, const fs::path& p) {
  return fs::relative(p, root).generic_string();
}

bool has_extension(const fs::path& p, const char* ext) {
  return p.extension() == ext;
}

std::vector<fs::path> sorted_entries(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::exists(dir) || !fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::variant<ProjectLayout, ScanError> scan_repository(const std::string& root,
                                                       const Parameters& params) {
  fs::path root_path(root);
  if (!fs::exists(root_path) || !fs::is_directory(root_path))
    return ScanError{"project root not found: " + root};

  ProjectLayout layout;
  layout.root = root;

  const fs::path src = root_path / role_dir(params, "modules", "src");
  for (const auto& p : sorted_entries(src)) {
    if (!fs::is_regular_file(p) || !has_extension(p, ".ttl")) continue;
    std::string r = rel(root_path, p);
    if (!excluded(r, params)) layout.modules.push_back(r);
  }

  const fs::path domains = root_path / role_dir(params, "domains", "domains");
  for (const auto& domain_dir : sorted_entries(domains)) {
    if (!fs::is_directory(domain_dir)) continue;
    const std::string domain = domain_dir.filename().string();
    for (const auto& scenario_dir : sorted_entries(domain_dir)) {
      if (!fs::is_directory(scenario_dir)) continue;
      const std::string scenario = scenario_dir.filename().string();
      for (const auto& p : sorted_entries(scenario_dir)) {
        if (!fs::is_regular_file(p)) continue;
        std::string r = rel(root_path, p);
        if (excluded(r, params)) continue;
        if (has_extension(p, ".rq")) {
          layout.questions.push_back({domain, scenario, r});
        } else if (has_extension(p, ".ttl")) {
          // the modelet is the scenario's onto.ttl; other graphs are datasets
          if (p.filename() == "onto.ttl")
            layout.modelets.push_back({domain, scenario, r});
          else
            layout.datasets.push_back({domain, scenario, r});
        }
      }
    }
  }

  const fs::path use_cases = root_path / role_dir(params, "use_cases", "use-cases");
  for (const auto& uc_dir : sorted_entries(use_cases)) {
    if (!fs::is_directory(uc_dir)) continue;
    const std::string name = uc_dir.filename().string();
    for (const auto& p : sorted_entries(uc_dir)) {
      if (!fs::is_regular_file(p) || !has_extension(p, ".ttl")) continue;
      std::string r = rel(root_path, p);
      if (!excluded(r, params)) layout.use_cases.push_back({name, r});
    }
  }

  const fs::path custom_model =
      root_path / role_dir(params, "custom_model_tests", ".acimov/custom-tests/model");
  for (const auto& p : sorted_entries(custom_model)) {
    if (!fs::is_regular_file(p) || !has_extension(p, ".ttl")) continue;
    std::string r = rel(root_path, p);
    if (!excluded(r, params)) layout.custom_model_tests.push_back(r);
  }
  const fs::path custom_data =
      root_path / role_dir(params, "custom_data_tests", ".acimov/custom-tests/data");
  for (const auto& p : sorted_entries(custom_data)) {
    if (!fs::is_regular_file(p) || !has_extension(p, ".ttl")) continue;
    std::string r = rel(root_path, p);
    if (!excluded(r, params)) layout.custom_data_tests.push_back(r);
  }

  std::sort(layout.modules.begin(), layout.modules.end());
  std::sort(layout.modelets.begin(), layout.modelets.end());
  std::sort(layout.datasets.begin(), layout.datasets.end());
  std::sort(layout.questions.begin(), layout.questions.end());
  std::sort(layout.use_cases.begin(), layout.use_cases.end());
  std::sort(layout.custom_model_tests.begin(), layout.custom_model_tests.end());
  std::sort(layout.custom_data_tests.begin(), layout.custom_data_tests.end());
  return layout;
}

std::string_view to_string(SubjectKind k) {
  switch (k) {
    case SubjectKind::Module: return "module";
    case SubjectKind::Modelet: return "modelet";
    case SubjectKind::ModuleModeletMerge: return "module-modelet-merge";
    case SubjectKind::ModulesMerge: return "modules-merge";
    case SubjectKind::WholeMerge: return "whole-merge";
    case SubjectKind::Dataset: return "dataset";
    case SubjectKind::UseCase: return "use-case";
    case SubjectKind::Query: return "query";
  }
  return "subject";
}

bool is_model_kind(SubjectKind k) {
  switch (k) {
    case SubjectKind::Module:
    case SubjectKind::Modelet:
    case SubjectKind::ModuleModeletMerge:
    case SubjectKind::ModulesMerge:
    case SubjectKind::WholeMerge:
      return true;
    default:
      return false;
  }
}

bool is_data_kind(SubjectKind k) {
  return k == SubjectKind::Dataset || k == SubjectKind::UseCase;
}

std::string TestSubject::title() const {
  std::string t = std::string(to_string(kind)) + " ";
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (i) t += " + ";
    t += files[i];
  }
  return t;
}

namespace {

std::string subject_id(SubjectKind kind, const std::vector<std::string>& files) {
  std::string id = std::string(to_string(kind)) + ":";
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (i) id += "+";
    id += files[i];
  }
  return id;
}

struct ParsedFile {
  std::optional<Graph> graph;
  std::optional<ParseError> error;
};

ParsedFile parse_one(const std::string& root, const std::string& rel_path) {
  auto result = parse_turtle_file((fs::path(root) / rel_path).string());
  if (auto* ok = std::get_if<ParseResult>(&result)) return {std::move(ok->graph), {}};
  return {{}, std::get<ParseError>(result)};
}

TestSubject single_file_subject(SubjectKind kind, const std::string& root,
                                const std::string& rel_path) {
  TestSubject s;
  s.kind = kind;
  s.files = {rel_path};
  s.id = subject_id(kind, s.files);
  ParsedFile parsed = parse_one(root, rel_path);
  s.graph = std::move(parsed.graph);
  if (parsed.error) {
    s.parse_error = parsed.error;
    s.parse_error_file = rel_path;
  }
  return s;
}

}  // namespace

std::vector<TestSubject> assemble_model_subjects(const ProjectLayout& layout) {
  std::vector<TestSubject> subjects;
  std::vector<std::pair<std::string, Graph>> valid_modules, valid_modelets;

  for (const auto& path : layout.modules) {
    TestSubject s = single_file_subject(SubjectKind::Module, layout.root, path);
    if (s.graph) valid_modules.emplace_back(path, *s.graph);
    subjects.push_back(std::move(s));
  }
  for (const auto& f : layout.modelets) {
    TestSubject s = single_file_subject(SubjectKind::Modelet, layout.root, f.path);
    if (s.graph) valid_modelets.emplace_back(f.path, *s.graph);
    subjects.push_back(std::move(s));
  }

  // level 3: each module merged with each modelet
  for (const auto& [mpath, mgraph] : valid_modules) {
    for (const auto& [dpath, dgraph] : valid_modelets) {
      TestSubject s;
      s.kind = SubjectKind::ModuleModeletMerge;
      s.files = {mpath, dpath};
      s.id = subject_id(s.kind, s.files);
      s.graph = merge_graphs({mgraph, dgraph});
      subjects.push_back(std::move(s));
    }
  }

  // level 4: all syntactically correct modules
  if (!valid_modules.empty()) {
    TestSubject s;
    s.kind = SubjectKind::ModulesMerge;
    std::vector<Graph> graphs;
    for (const auto& [path, graph] : valid_modules) {
      s.files.push_back(path);
      graphs.push_back(graph);
    }
    s.id = subject_id(s.kind, s.files);
    s.graph = merge_graphs(graphs);
    subjects.push_back(std::move(s));
  }

  // level 5: everything together; omitted when there are no modelets since
  // it would duplicate level 4 exactly
  if (!valid_modelets.empty()) {
    TestSubject s;
    s.kind = SubjectKind::WholeMerge;
    std::vector<Graph> graphs;
    for (const auto& [path, graph] : valid_modules) {
      s.files.push_back(path);
      graphs.push_back(graph);
    }
    for (const auto& [path, graph] : valid_modelets) {
      s.files.push_back(path);
      graphs.push_back(graph);
    }
    s.id = subject_id(s.kind, s.files);
    s.graph = merge_graphs(graphs);
    subjects.push_back(std::move(s));
  }

  return subjects;
}

std::vector<TestSubject> assemble_data_subjects(const ProjectLayout& layout) {
  std::vector<TestSubject> subjects;
  for (const auto& f : layout.datasets)
    subjects.push_back(single_file_subject(SubjectKind::Dataset, layout.root, f.path));
  for (const auto& f : layout.use_cases)
    subjects.push_back(single_file_subject(SubjectKind::UseCase, layout.root, f.path));
  return subjects;
}

std::vector<TestSubject> assemble_query_subjects(const ProjectLayout& layout) {
  std::vector<TestSubject> subjects;
  for (const auto& f : layout.questions) {
    TestSubject s;
    s.kind = SubjectKind::Query;
    s.files = {f.path};
    s.id = subject_id(s.kind, s.files);
    std::ifstream in(fs::path(layout.root) / f.path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    s.source_text = buf.str();
    subjects.push_back(std::move(s));
  }
  return subjects;
}

// --- versioning --------------------------------------------------------------

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

namespace {

std::optional<std::string> run_command(const std::string& cmd) {
  std::array<char, 256> buffer;
  std::string out;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return std::nullopt;
  while (fgets(buffer.data(), buffer.size(), pipe)) out += buffer.data();
  int status = pclose(pipe);
  if (status != 0) return std::nullopt;
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  return out;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

}  // namespace

VersionDescriptor compute_version(const std::string& root, const ProjectLayout& layout,
                                  const Parameters& params) {
  VersionDescriptor v;
  const std::string git = "git -C " + shell_quote(root) + " ";

  auto head = run_command(git + "rev-parse HEAD");
  auto origin = run_command(git + "config --get remote.origin.url");
  v.host_url = origin && !origin->empty() ? *origin : root;

  bool clean = false;
  if (head && !head->empty()) {
    auto status = run_command(git + "status --porcelain -uno");
    if (status) {
      clean = true;
      std::istringstream lines(*status);
      std::string line;
      while (std::getline(lines, line)) {
        if (line.size() < 4) continue;
        std::string path = line.substr(3);
        bool ignored = false;
        for (const auto& glob : params.tested_files_exclude)
          if (glob_match(glob, path)) ignored = true;
        if (!ignored) {
          clean = false;
          break;
        }
      }
    }
  }

  if (head && clean) {
    v.version = *head;
    return v;
  }

  // Uncommitted state: hash of file hashes over exactly the scanned files.
  std::string manifest;
  for (const auto& rel_path : layout.all_files()) {
    std::ifstream in(fs::path(root) / rel_path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    manifest += rel_path;
    manifest += '\t';
    manifest += sha256_hex(buf.str());
    manifest += '\n';
  }
  v.version = sha256_hex(manifest);
  if (head && !head->empty()) v.derived_from_commit = *head;
  return v;
}

}  // namespace ontolint
