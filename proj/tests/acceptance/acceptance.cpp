// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "sdgon/errors.hpp"
#include "sdgon/expansion.hpp"
#include "sdgon/gonality.hpp"
#include "sdgon/json_io.hpp"
#include "support/mutations.hpp"
#include "support/oracles.hpp"
#include "support/random_witness.hpp"
#include "support/small_graphs.hpp"

using namespace sdgon;
namespace ts = testing_support;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

Multigraph banana() { return graph_from_json(load_json_file(SDGON_FIXTURE_DIR "/banana_graph.json")); }
PartialCertificate worked_certificate() {
  return certificate_from_json(load_json_file(SDGON_FIXTURE_DIR "/worked_certificate.json"));
}
IlpAssignment worked_solution() {
  return assignment_from_json(load_json_file(SDGON_FIXTURE_DIR "/worked_solution.json"));
}

Outcome displayed_program() {
  auto got = build_ilp(banana(), worked_certificate()).constraints;
  auto want = ts::displayed_program();
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  const bool same = got == want;
  const bool sat = check_assignment(build_ilp(banana(), worked_certificate()), worked_solution());
  return {same && sat, std::to_string(got.size()) + " constraints, " + (same ? "identical" : "DIFFERENT") +
                           "; l_e1=3, l_e2=4, t_v4=5 " + (sat ? "accepted" : "REJECTED")};
}

Outcome worked_expansion() {
  const Witness w = expand_certificate(banana(), worked_certificate(), worked_solution());
  const FiringScript want =
      script_from_json(w.h.derived, load_json_file(SDGON_FIXTURE_DIR "/worked_sets.json"));
  const auto it = w.scripts.find("v");
  const bool same = it != w.scripts.end() && it->second == want;
  const auto report = verify_expansion(w);
  return {same && report.ok(), std::to_string(want.sets().size()) + " sets " + (same ? "identical" : "DIFFERENT") +
                                   ", replay " + (report.ok() ? "verified" : "FAILED: " + report.reason)};
}

Outcome reduction_oracle() {
  const auto graphs = ts::connected_multigraphs(5, 7);
  std::size_t triples = 0, disagreements = 0;
  for (const auto& sg : graphs) {
    const Multigraph& g = sg.graph;
    for (int k = 0; k <= 3; ++k) {
      for_each_composition(g.vertex_count(), k, [&](const std::vector<int>& c) {
        const Divisor d(c);
        for (VertexIndex q = 0; q < g.vertex_count(); ++q) {
          ++triples;
          if (reaches(g, d, q) != reaches_bruteforce(g, d, q)) ++disagreements;
        }
        return false;
      });
    }
  }
  return {disagreements == 0, std::to_string(graphs.size()) + " graphs, " + std::to_string(triples) +
                                  " (graph, divisor, target) triples, " + std::to_string(disagreements) +
                                  " disagreements"};
}

Outcome gonality_table() {
  std::ostringstream out;
  bool ok = true;
  std::size_t trees = 0;
  for (const auto& sg : ts::connected_multigraphs(6, 5, false)) {
    if (static_cast<int>(sg.pairs.size()) != sg.n - 1) continue;
    ++trees;
    ok = ok && dgon(sg.graph, 3).value == 1 && ts::dgon_oracle(sg.graph, 3) == 1;
  }
  out << "dgon=1 on " << trees << " trees";
  for (int n = 3; n <= 6; ++n) ok = ok && dgon(ts::cycle(n), 3).value == 2 && ts::dgon_oracle(ts::cycle(n), 3) == 2;
  out << "; dgon(C3..C6)=2";
  const auto k4 = dgon(ts::complete(4), 4).value;
  ok = ok && k4 == 3 && ts::dgon_oracle(ts::complete(4), 4) == 3;
  out << "; dgon(K4)=" << (k4 ? std::to_string(*k4) : "none");
  const auto search = sdgon_search(banana(), 3, 3).value;
  const auto oracle = ts::sdgon_oracle(banana(), 3, 3);
  ok = ok && search == 2 && oracle == 2;
  out << "; sdgon(two parallel edges)=" << (search ? std::to_string(*search) : "none")
      << " (all length vectors up to 3, brute force agrees)";
  return {ok, out.str()};
}

Outcome relevant_bound() {
  std::mt19937 rng(2024);
  const auto pool = ts::connected_multigraphs(5, 6);
  std::size_t witnesses = 0, scripts = 0, violations = 0;
  double worst = 0;
  for (int tries = 0; witnesses < 500 && tries < 20000; ++tries) {
    const auto& sg = pool[rng() % pool.size()];
    ts::WitnessOptions opt;
    opt.k_max = 3;
    opt.l_max = 3;
    opt.g1_base = tries % 3 != 0;
    auto w = ts::random_witness(rng, sg.graph, opt);
    if (!w) continue;
    ++witnesses;
    const std::size_t k = static_cast<std::size_t>(w->start.degree());
    const std::size_t n = w->h.origin.vertex_count();
    for (const auto& [target, s] : w->scripts) {
      ++scripts;
      const std::size_t count = extract_relevant(w->h, w->start, s).size();
      const std::size_t bound = 2 * k * n + n;
      if (count > bound) ++violations;
      worst = std::max(worst, static_cast<double>(count) / static_cast<double>(bound));
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", worst);
  return {witnesses == 500 && violations == 0,
          std::to_string(witnesses) + " witnesses, " + std::to_string(scripts) + " scripts, " +
              std::to_string(violations) + " over 2kn+n, largest count/bound " + buf};
}

Outcome requirement_fuzzing() {
  const auto g = banana();
  const auto mutations = ts::worked_mutations();
  std::size_t hit = 0;
  std::set<Requirement> targets;
  std::string misses;
  for (const auto& m : mutations) {
    targets.insert(m.target);
    try {
      auto c = worked_certificate();
      m.apply(c);
      const auto got = violated_requirements(validate(g, c));
      if (got.contains(m.target) && got == m.expected) {
        ++hit;
      } else {
        misses += " " + std::string(requirement_name(m.target));
      }
    } catch (const std::exception& e) {
      misses += " " + std::string(requirement_name(m.target)) + "(threw)";
    }
  }
  return {hit == 14 && targets.size() == 14 && mutations.size() == 14,
          std::to_string(hit) + "/14 requirements triggered" + (misses.empty() ? "" : "; missed:" + misses)};
}

Outcome pipeline_corpus() {
  const auto graphs = ts::connected_multigraphs(4, 5);
  std::size_t witnesses = 0, accepted = 0, expanded = 0, fallback = 0, bad = 0;
  std::string first;
  for (const auto& sg : graphs) {
    const PipelineReport r = pipeline_selftest(sg.graph, 3, 3);
    witnesses += r.witnesses;
    accepted += r.accepted;
    expanded += r.expanded;
    fallback += r.by_reduction;
    bad += r.counterexamples.size();
    if (first.empty() && !r.counterexamples.empty()) first = r.counterexamples.front().dump();
  }
  return {bad == 0 && accepted == witnesses && expanded == witnesses,
          std::to_string(graphs.size()) + " graphs, " + std::to_string(witnesses) + " witnesses, " +
              std::to_string(accepted) + " accepted, " + std::to_string(expanded) + " expanded, " +
              std::to_string(bad) + " counterexamples, " + std::to_string(fallback) +
              " expansions confirmed an interior vertex by reduction" + (first.empty() ? "" : "; first: " + first)};
}

Outcome magnitude_formula() {
  std::mt19937 rng(8);
  std::size_t agree = 0;
  for (int i = 0; i < 100; ++i) {
    const auto inst = ts::random_instance(rng, 1 + i % 7, 1 + i % 11, 60, 2000);
    if (magnitude_bound(inst).value.str() == ts::gmp_bound(inst).get_str()) ++agree;
  }
  const bool example = magnitude_bound(build_ilp(banana(), worked_certificate())).value.str() ==
                       ts::gmp_bound(build_ilp(banana(), worked_certificate())).get_str();
  return {agree == 100 && example, std::to_string(agree) + "/100 random instances and the worked program agree " +
                                       "exactly; the asymptotic subdivision count is not checked quantitatively"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "worked program", 1, displayed_program},
      {2, "worked expansion", 1, worked_expansion},
      {3, "reduction vs exhaustive reachability", 600, reduction_oracle},
      {4, "gonality table", 300, gonality_table},
      {5, "relevant-set bound", 600, relevant_bound},
      {6, "requirement fuzzing", 60, requirement_fuzzing},
      {7, "pipeline round trip", 1800, pipeline_corpus},
      {8, "magnitude bound formula", 60, magnitude_formula},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.ok && in_time;
    if (!pass) ++failed;
    std::printf("criterion %d %s: %s (%.2fs, limit %.0fs) %s\n", c.id, pass ? "PASS" : "FAIL", c.name, secs,
                c.limit_seconds, o.detail.c_str());
    if (o.ok && !in_time) std::printf("  over the time limit\n");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
