// Benchmark comparing the serial reference implementations against the
// OpenMP paths: the all-pairs Levenshtein scan and whole-suite execution
// over many independent subjects. Results must be identical; only the
// timings differ.

#include <chrono>
#include <iostream>
#include <random>

#include "ontolint/engine.hpp"
#include "ontolint/levenshtein.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace ontolint;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<std::string> synth_terms(std::size_t n, std::mt19937& rng) {
  static const char* stems[] = {"has",  "is",   "get",   "set",  "link", "part",
                                "member", "unit", "agent", "site", "zone", "node"};
  static const char* roots[] = {"Name",   "Value",  "Member", "Owner",  "State",
                                "Config", "Signal", "Sensor", "Device", "Record"};
  static const char* tails[] = {"", "Of", "In", "At", "By", "For", "s", "Id"};
  std::vector<std::string> out;
  out.reserve(n);
  std::uniform_int_distribution<std::size_t> stem(0, std::size(stems) - 1);
  std::uniform_int_distribution<std::size_t> root(0, std::size(roots) - 1);
  std::uniform_int_distribution<std::size_t> tail(0, std::size(tails) - 1);
  std::uniform_int_distribution<int> num(0, 99);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(std::string(stems[stem(rng)]) + roots[root(rng)] + tails[tail(rng)] +
                  std::to_string(num(rng)));
  return out;
}

TestSubject synth_subject(std::size_t index, std::size_t terms_per_subject, std::mt19937& rng) {
  const std::string ns = "http://bench.example/ns#";
  Graph g;
  g.set_prefix("ex", ns);
  for (const std::string& name : synth_terms(terms_per_subject, rng)) {
    Term t = Term::iri(ns + name + std::to_string(index));
    g.insert(t, Term::iri(vocab::rdf_type), Term::iri(std::string(vocab::owl_ns) + "Class"));
    g.insert(t, Term::iri(vocab::rdfs_is_defined_by), Term::iri("http://bench.example/onto"));
    g.insert(t, Term::iri(vocab::rdfs_label), Term::lang_literal(name, "en"));
    g.insert(t, Term::iri(vocab::rdfs_sub_class_of),
             Term::iri(ns + "Base" + std::to_string(index % 7)));
  }
  TestSubject s;
  s.kind = SubjectKind::Module;
  s.files = {"src/bench-" + std::to_string(index) + ".ttl"};
  s.id = "module:src/bench-" + std::to_string(index) + ".ttl";
  s.graph = std::move(g);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n_terms = argc > 1 ? std::stoul(argv[1]) : 3000;
  std::size_t n_subjects = argc > 2 ? std::stoul(argv[2]) : 64;

#ifdef _OPENMP
  std::cout << "OpenMP enabled, max threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "OpenMP disabled; parallel paths run serially\n";
#endif

  std::mt19937 rng(42);

  // 1. all-pairs Levenshtein scan
  {
    std::vector<std::string> terms = synth_terms(n_terms, rng);
    auto t0 = Clock::now();
    auto serial = close_pairs_serial(terms, 2);
    double serial_ms = ms_since(t0);
    t0 = Clock::now();
    auto parallel = close_pairs(terms, 2);
    double parallel_ms = ms_since(t0);
    std::cout << "close_pairs over " << n_terms << " terms: serial " << serial_ms
              << " ms, parallel " << parallel_ms << " ms, speedup "
              << (parallel_ms > 0 ? serial_ms / parallel_ms : 0) << "x, pairs found "
              << serial.size() << "\n";
    if (serial != parallel) {
      std::cerr << "MISMATCH between serial and parallel pair scans\n";
      return 1;
    }
  }

  // 2. model suite over independent subjects
  {
    std::vector<TestSubject> subjects;
    for (std::size_t i = 0; i < n_subjects; ++i) subjects.push_back(synth_subject(i, 60, rng));

    EngineContext ctx;
    ctx.params.ontology_namespace = "http://bench.example/ns#";
    ctx.registry_namespaces = default_prefix_registry();

    ctx.parallel = false;
    auto t0 = Clock::now();
    auto serial = run_model_suite(subjects, ctx);
    double serial_ms = ms_since(t0);

    ctx.parallel = true;
    t0 = Clock::now();
    auto parallel = run_model_suite(subjects, ctx);
    double parallel_ms = ms_since(t0);

    std::cout << "model suite over " << n_subjects << " subjects: serial " << serial_ms
              << " ms, parallel " << parallel_ms << " ms, speedup "
              << (parallel_ms > 0 ? serial_ms / parallel_ms : 0) << "x, assertions "
              << serial.size() << "\n";

    bool equal = serial.size() == parallel.size();
    for (std::size_t i = 0; equal && i < serial.size(); ++i) {
      equal = serial[i].subject_id == parallel[i].subject_id &&
              serial[i].criterion_id == parallel[i].criterion_id &&
              serial[i].outcomes.size() == parallel[i].outcomes.size();
    }
    if (!equal) {
      std::cerr << "MISMATCH between serial and parallel suite runs\n";
      return 1;
    }
  }

  std::cout << "serial and parallel paths agree\n";
  return 0;
}
