#include "ontolint/report.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace ontolint {

std::string_view to_string(Trigger t) {
  switch (t) {
    case Trigger::Manual: return "manual";
    case Trigger::PreCommit: return "pre-commit";
    case Trigger::Ci: return "ci";
  }
  return "manual";
}

Statistics compute_statistics(const std::vector<Assertion>& assertions) {
  Statistics stats;
  for (const Assertion& a : assertions)
    for (const Outcome& o : a.outcomes) {
      ++stats.total;
      ++stats.per_type[o.type];
    }
  return stats;
}

std::string report_basename(const ReportContext& ctx) {
  std::string suites;
  for (std::size_t i = 0; i < ctx.suites.size(); ++i) {
    if (i) suites += "-";
    suites += ctx.suites[i];
  }
  if (suites.empty()) suites = "lint";
  std::string name =
      suites + "-test-" + std::string(to_string(ctx.trigger)) + "-" + ctx.developer + "-" +
      ctx.timestamp_utc;
  for (char& c : name) {
    if (c == ':') c = '-';
    if (c == ' ' || c == '/' || c == '\\') c = '_';
  }
  return name;
}

namespace {

bool looks_like_url(const std::string& s) {
  return s.rfind("http://", 0) == 0 || s.rfind("https://", 0) == 0 ||
         s.rfind("git@", 0) == 0;
}

// Strip a trailing ".git" and normalize git@host:org/repo to https.
std::string host_web_url(const std::string& remote) {
  std::string url = remote;
  if (url.rfind("git@", 0) == 0) {
    auto colon = url.find(':');
    if (colon != std::string::npos)
      url = "https://" + url.substr(4, colon - 4) + "/" + url.substr(colon + 1);
  }
  if (url.size() > 4 && url.compare(url.size() - 4, 4, ".git") == 0)
    url = url.substr(0, url.size() - 4);
  return url;
}

// File reference for reports: repository-host URL in ci mode, local path
// otherwise.
std::string file_ref(const ReportContext& ctx, const std::string& rel_path, bool as_iri) {
  if (ctx.trigger == Trigger::Ci && looks_like_url(ctx.project.host_url))
    return host_web_url(ctx.project.host_url) + "/blob/" + ctx.project.version + "/" + rel_path;
  if (as_iri) {
    std::string root = ctx.root;
    if (root.empty()) root = ".";
    while (root.size() > 1 && root.back() == '/') root.pop_back();
    if (root.front() != '/') return "file:///" + root + "/" + rel_path;
    return "file://" + root + "/" + rel_path;
  }
  return rel_path;
}

std::string outcome_class(const ReportContext& ctx, OutcomeType t) {
  switch (t) {
    case OutcomeType::Pass: return std::string(vocab::earl_ns) + "Pass";
    case OutcomeType::Fail: return std::string(vocab::earl_ns) + "Fail";
    case OutcomeType::MinorFail: return ctx.vocab_ns + "MinorFail";
    case OutcomeType::MajorFail: return ctx.vocab_ns + "MajorFail";
    case OutcomeType::CannotTell: return std::string(vocab::earl_ns) + "CannotTell";
    case OutcomeType::NotTested: return std::string(vocab::earl_ns) + "NotTested";
  }
  return std::string(vocab::earl_ns) + "Pass";
}

}  // namespace

Graph emit_earl(const std::vector<Assertion>& assertions, const ReportContext& ctx) {
  Graph g;
  const std::string earl = std::string(vocab::earl_ns);
  const std::string prov = std::string(vocab::prov_ns);
  const std::string dct = std::string(vocab::dcterms_ns);
  const std::string lint = ctx.vocab_ns;

  g.set_prefix("earl", earl);
  g.set_prefix("prov", prov);
  g.set_prefix("dct", dct);
  g.set_prefix("lint", lint);
  g.set_prefix("rdf", std::string(vocab::rdf_ns));
  g.set_prefix("rdfs", std::string(vocab::rdfs_ns));
  g.set_prefix("xsd", std::string(vocab::xsd_ns));

  std::size_t blank_counter = 0;
  auto fresh = [&]() { return Term::blank("n" + std::to_string(blank_counter++)); };
  auto type = [&](const Term& node, const std::string& cls) {
    g.insert(node, Term::iri(vocab::rdf_type), Term::iri(cls));
  };
  auto lit = [&](const Term& node, const std::string& pred, const std::string& value) {
    g.insert(node, Term::iri(pred), Term::literal(value));
  };

  // Activity / assertor skeleton.
  Term activity = fresh();
  type(activity, prov + "Activity");
  type(activity, earl + "Assertor");
  g.insert(activity, Term::iri(prov + "startedAtTime"),
           Term::literal(ctx.timestamp_utc, vocab::xsd_date_time));
  lit(activity, lint + "trigger", std::string(to_string(ctx.trigger)));

  Term developer = fresh();
  type(developer, prov + "Agent");
  type(developer, prov + "Person");
  lit(developer, std::string(vocab::rdfs_ns) + "label", ctx.developer);
  g.insert(activity, Term::iri(prov + "wasAssociatedWith"), developer);
  Term association = fresh();
  type(association, prov + "Association");
  g.insert(association, Term::iri(prov + "agent"), developer);
  g.insert(association, Term::iri(prov + "hadRole"), Term::iri(lint + "developerRole"));
  g.insert(activity, Term::iri(prov + "qualifiedAssociation"), association);

  auto versioned_entity = [&](const VersionDescriptor& v, const std::string& role) {
    Term entity = fresh();
    type(entity, prov + "Entity");
    type(entity, lint + "VersionedEntity");
    lit(entity, lint + "hostUrl", v.host_url);
    lit(entity, lint + "version", v.version);
    if (v.derived_from_commit) lit(entity, lint + "derivedFromCommit", *v.derived_from_commit);
    g.insert(activity, Term::iri(prov + "used"), entity);
    Term usage = fresh();
    type(usage, prov + "Usage");
    g.insert(usage, Term::iri(prov + "entity"), entity);
    g.insert(usage, Term::iri(prov + "hadRole"), Term::iri(lint + role));
    g.insert(activity, Term::iri(prov + "qualifiedUsage"), usage);
    return entity;
  };
  versioned_entity(ctx.project, "testedProjectRole");
  versioned_entity(ctx.test_suite, "testSuiteRole");

  auto generation = [&](const std::string& ref, const std::string& role) {
    Term report = Term::iri(looks_like_url(ref) ? ref : file_ref(ctx, ref, true));
    type(report, prov + "Entity");
    g.insert(report, Term::iri(prov + "wasGeneratedBy"), activity);
    g.insert(report, Term::iri(lint + "generationQualifier"), Term::iri(lint + role));
    g.insert(activity, Term::iri(prov + "generated"), report);
  };
  if (!ctx.turtle_report_ref.empty()) generation(ctx.turtle_report_ref, "turtleReportRole");
  if (!ctx.markdown_report_ref.empty())
    generation(ctx.markdown_report_ref, "markdownReportRole");

  // Criterion and subject nodes are shared across assertions.
  std::map<std::string, Term> criterion_nodes;
  std::map<std::string, Term> subject_nodes;

  for (const Assertion& a : assertions) {
    auto crit_it = criterion_nodes.find(a.criterion_id);
    if (crit_it == criterion_nodes.end()) {
      Term node = Term::iri(lint + a.criterion_id);
      type(node, earl + "TestCriterion");
      if (const TestCriterion* c = find_criterion(a.criterion_id)) {
        lit(node, dct + "title", c->title);
        lit(node, dct + "description", c->description);
      }
      crit_it = criterion_nodes.emplace(a.criterion_id, node).first;
    }
    auto subj_it = subject_nodes.find(a.subject_id);
    if (subj_it == subject_nodes.end()) {
      Term node = fresh();
      type(node, earl + "TestSubject");
      lit(node, dct + "title", a.subject_title);
      for (const std::string& f : a.subject_files)
        g.insert(node, Term::iri(dct + "hasPart"), Term::iri(file_ref(ctx, f, true)));
      subj_it = subject_nodes.emplace(a.subject_id, node).first;
    }

    Term assertion = fresh();
    type(assertion, earl + "Assertion");
    g.insert(assertion, Term::iri(earl + "assertedBy"), activity);
    g.insert(assertion, Term::iri(earl + "subject"), subj_it->second);
    g.insert(assertion, Term::iri(earl + "test"), crit_it->second);
    Term result = fresh();
    type(result, earl + "TestResult");
    g.insert(assertion, Term::iri(earl + "result"), result);
    for (const Outcome& o : a.outcomes) {
      Term outcome = fresh();
      type(outcome, outcome_class(ctx, o.type));
      lit(outcome, dct + "title", o.title);
      lit(outcome, dct + "description", o.description);
      for (const std::string& p : o.pointers) lit(outcome, lint + "pointer", p);
      g.insert(result, Term::iri(lint + "outcome"), outcome);
    }
  }
  return g;
}

// --- markdown ----------------------------------------------------------------

std::string heading_slug(std::string_view heading) {
  std::string slug;
  for (char c : heading) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      slug += static_cast<char>(std::tolower(u));
    } else if (c == ' ' || c == '-') {
      slug += '-';
    } else if (u >= 0x80) {
      slug += c;  // non-ASCII survives slugging
    }
    // other punctuation is dropped
  }
  return slug;
}

namespace {

std::string md_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|')
      out += "\\|";
    else if (c == '\n' || c == '\r')
      out += ' ';
    else
      out += c;
  }
  return out;
}

std::string md_file_link(const ReportContext& ctx, const std::string& rel_path) {
  if (ctx.trigger == Trigger::Ci)
    return "[" + md_escape(rel_path) + "](" + file_ref(ctx, rel_path, false) + ")";
  // reports live in .acimov/output/, two levels below the project root
  return "[" + md_escape(rel_path) + "](../../" + rel_path + ")";
}

const std::vector<OutcomeType> section_order = {OutcomeType::MajorFail, OutcomeType::MinorFail,
                                                OutcomeType::CannotTell, OutcomeType::NotTested,
                                                OutcomeType::Pass};

std::string severity_explanation(OutcomeType t) {
  switch (t) {
    case OutcomeType::MajorFail:
      return "a blocking error; the project should not be deployed until it is fixed";
    case OutcomeType::MinorFail: return "an error that does not block deployment";
    case OutcomeType::CannotTell:
      return "the automated test found something a human has to judge";
    case OutcomeType::NotTested: return "a prerequisite failed, so this test did not run";
    case OutcomeType::Pass: return "the subject passed the test";
    default: return "";
  }
}

}  // namespace

std::string emit_markdown(const std::vector<Assertion>& assertions, const ReportContext& ctx) {
  Statistics stats = compute_statistics(assertions);
  std::ostringstream out;

  out << "# Test report\n\n";

  out << "## About this report\n\n";
  out << "This document is the human-readable version of the machine-readable Turtle "
         "report `"
      << md_escape(ctx.turtle_report_ref)
      << "`. It was derived from that EARL graph: every assertion below corresponds to one "
         "`earl:Assertion` there. Outcomes are grouped by severity; each summary row links "
         "to the matching detail block and every detail block links back to its summary.\n\n";

  out << "## Assertor\n\n";
  out << "| Field | Value |\n|---|---|\n";
  out << "| Developer | " << md_escape(ctx.developer) << " |\n";
  out << "| Trigger | " << to_string(ctx.trigger) << " |\n";
  std::string suites;
  for (std::size_t i = 0; i < ctx.suites.size(); ++i) {
    if (i) suites += ", ";
    suites += ctx.suites[i];
  }
  out << "| Test suites | " << md_escape(suites) << " |\n";
  out << "| Test tool | " << md_escape(ctx.test_suite.host_url) << " version "
      << md_escape(ctx.test_suite.version) << " |\n";
  out << "| Project | " << md_escape(ctx.project.host_url) << " |\n";
  out << "| Project version | " << md_escape(ctx.project.version);
  if (ctx.project.derived_from_commit)
    out << " (uncommitted state derived from commit " << *ctx.project.derived_from_commit
        << ")";
  out << " |\n";
  out << "| Date | " << ctx.timestamp_utc << " |\n\n";

  out << "## Statistics\n\n";
  out << "Total entries: **" << stats.total << "**\n\n";
  out << "| Outcome | Count |\n|---|---|\n";
  for (OutcomeType t : section_order) {
    auto it = stats.per_type.find(t);
    std::size_t n = it == stats.per_type.end() ? 0 : it->second;
    out << "| " << to_string(t) << " | " << n << " |\n";
  }
  out << "\n```\n";
  for (OutcomeType t : section_order) {
    auto it = stats.per_type.find(t);
    std::size_t n = it == stats.per_type.end() ? 0 : it->second;
    std::string bar;
    for (std::size_t i = 0; i < std::min<std::size_t>(n, 40); ++i) bar += "█";
    if (n > 40) bar += "+" + std::to_string(n - 40);
    out << to_string(t);
    for (std::size_t i = to_string(t).size(); i < 11; ++i) out << ' ';
    out << "| " << bar << (n ? " " : "") << n << "\n";
  }
  out << "```\n\n";
  for (OutcomeType t : section_order)
    out << "- **" << to_string(t) << "**: " << severity_explanation(t) << "\n";
  out << "\n";

  // Outcome sections, fixed order, only for types present.
  for (OutcomeType t : section_order) {
    struct Row {
      const Assertion* assertion;
      const Outcome* outcome;
    };
    std::vector<Row> rows;
    for (const Assertion& a : assertions)
      for (const Outcome& o : a.outcomes)
        if (o.type == t) rows.push_back({&a, &o});
    if (rows.empty()) continue;

    const std::string section = std::string(to_string(t));
    out << "## " << section << "\n\n";
    out << "| Subject | Criterion | Outcome | Details |\n|---|---|---|---|\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const TestCriterion* c = find_criterion(rows[i].assertion->criterion_id);
      out << "| " << md_escape(rows[i].assertion->subject_title) << " | "
          << md_escape(c ? c->title : rows[i].assertion->criterion_id) << " | "
          << md_escape(rows[i].outcome->title) << " | [details](#"
          << heading_slug(section + " " + std::to_string(i + 1)) << ") |\n";
    }
    out << "\n";

    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Assertion& a = *rows[i].assertion;
      const Outcome& o = *rows[i].outcome;
      const TestCriterion* c = find_criterion(a.criterion_id);
      out << "### " << section << " " << (i + 1) << "\n\n";
      out << "[Back to the " << section << " summary](#" << heading_slug(section) << ")\n\n";
      out << "**Subject**\n\n";
      out << "| Title | Files |\n|---|---|\n";
      out << "| " << md_escape(a.subject_title) << " | ";
      for (std::size_t f = 0; f < a.subject_files.size(); ++f) {
        if (f) out << "<br>";
        out << md_file_link(ctx, a.subject_files[f]);
      }
      out << " |\n\n";
      out << "**Criterion**\n\n";
      out << "| Id | Title | Description |\n|---|---|---|\n";
      out << "| " << md_escape(a.criterion_id) << " | " << md_escape(c ? c->title : "") << " | "
          << md_escape(c ? c->description : "") << " |\n\n";
      out << "**Outcome**\n\n";
      out << "| Title | Description | Pointers |\n|---|---|---|\n";
      out << "| " << md_escape(o.title) << " | " << md_escape(o.description) << " | ";
      for (std::size_t p = 0; p < o.pointers.size(); ++p) {
        if (p) out << "<br>";
        out << "`" << md_escape(o.pointers[p]) << "`";
      }
      out << " |\n\n";
    }
  }
  return out.str();
}

// --- badges -------------------------------------------------------------------

namespace {

std::string badge_color(OutcomeType t, std::size_t count) {
  if (t == OutcomeType::Pass) return "green";
  if (count == 0) return "green";
  switch (t) {
    case OutcomeType::MajorFail: return "red";
    case OutcomeType::MinorFail: return "orange";
    case OutcomeType::CannotTell: return "yellow";
    case OutcomeType::NotTested: return "grey";
    default: return "green";
  }
}

std::string ascii_lower(std::string_view s) {
  std::string out;
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::vector<Badge> emit_badges(const Statistics& stats,
                               const std::map<Profile, bool>& profile_results) {
  std::vector<Badge> badges;
  for (OutcomeType t : section_order) {
    auto it = stats.per_type.find(t);
    std::size_t n = it == stats.per_type.end() ? 0 : it->second;
    nlohmann::json doc = {
        {"schemaVersion", 1},
        {"label", std::string(to_string(t))},
        {"message", std::to_string(n)},
        {"color", badge_color(t, n)},
    };
    badges.push_back({"badge-" + ascii_lower(to_string(t)), doc.dump(2) + "\n"});
  }
  for (const auto& [profile, compatible] : profile_results) {
    nlohmann::json doc = {
        {"schemaVersion", 1},
        {"label", "OWL " + std::string(to_string(profile))},
        {"message", compatible ? "compatible" : "incompatible"},
        {"color", compatible ? "green" : "red"},
    };
    badges.push_back({"badge-profile-" + ascii_lower(to_string(profile)), doc.dump(2) + "\n"});
  }
  return badges;
}

std::map<Profile, bool> profile_results_from(const std::vector<Assertion>& assertions) {
  std::map<Profile, bool> results;
  for (const Assertion& a : assertions) {
    if (a.subject_kind != SubjectKind::ModulesMerge) continue;
    for (Profile p : {Profile::EL, Profile::QL, Profile::RL}) {
      if (a.criterion_id != "profile-compatibility-" + std::string(to_string(p))) continue;
      bool compatible = true;
      for (const Outcome& o : a.outcomes)
        if (o.type == OutcomeType::Fail || o.type == OutcomeType::MinorFail ||
            o.type == OutcomeType::MajorFail)
          compatible = false;
      results[p] = compatible;
    }
  }
  return results;
}

}  // namespace ontolint
