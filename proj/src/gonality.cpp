#include "sdgon/gonality.hpp"

#include <chrono>

#include "sdgon/errors.hpp"
#include "sdgon/expansion.hpp"
#include "sdgon/json_io.hpp"

namespace sdgon {

std::string_view stage_name(NpVerdict::Stage s) {
  switch (s) {
    case NpVerdict::Stage::Accepted: return "accepted";
    case NpVerdict::Stage::Degree: return "degree";
    case NpVerdict::Stage::Structure: return "structure";
    case NpVerdict::Stage::Validation: return "validation";
    case NpVerdict::Stage::Program: return "program";
    case NpVerdict::Stage::Audit: return "audit";
  }
  return "?";
}

NpVerdict verify_np(const Multigraph& g, int k, const PartialCertificate& c, const IlpAssignment& a,
                    const NpOptions& options) {
  using Stage = NpVerdict::Stage;
  NpVerdict v;
  if (c.degree() > k) {
    v.stage = Stage::Degree;
    v.reason = "divisor has degree " + std::to_string(c.degree()) + " > " + std::to_string(k);
    return v;
  }
  const Multigraph base = options.certificate_on_g1 ? build_g1(g).derived : g;
  try {
    v.violations = validate(base, c);
  } catch (const Error& e) {
    v.stage = Stage::Structure;
    v.reason = e.what();
    return v;
  }
  if (!v.violations.empty()) {
    v.stage = Stage::Validation;
    v.reason = std::string(requirement_name(v.violations.front().requirement)) + " fails for target '" +
               v.violations.front().target + "'";
    return v;
  }
  const IlpInstance inst = build_ilp(base, c);
  try {
    for (const auto& lc : inst.constraints) {
      if (!check_assignment(IlpInstance{{}, {lc}}, a)) {
        v.stage = Stage::Program;
        v.reason = "violated " + std::string(rule_tag(lc.rule)) + " constraint " +
                   instance_to_json(IlpInstance{{}, {lc}})["constraints"][0].dump();
        return v;
      }
    }
    check_assignment(inst, a);  // every variable must be assigned
  } catch (const MissingVariableError& e) {
    v.stage = Stage::Program;
    v.reason = e.what();
    return v;
  }
  if (options.audit) {
    try {
      const auto report = verify_expansion(expand_certificate(base, c, a));
      if (!report.ok()) {
        v.stage = Stage::Audit;
        v.reason = report.reason + " (" + report.where + ")";
      }
    } catch (const Error& e) {
      v.stage = Stage::Audit;
      v.reason = e.what();
    }
  }
  return v;
}

std::vector<std::map<std::string, int>> length_grid(const Multigraph& g, int l_max) {
  if (l_max < 1) throw PreconditionError("l_max must be at least 1");
  const SubdivisionMap g1 = build_g1(g);
  const std::size_t m = g.edge_count();
  std::vector<int> totals(m, 2);
  std::vector<std::map<std::string, int>> out;
  while (true) {
    std::map<std::string, int> lengths;
    for (EdgeIndex e = 0; e < m; ++e) {
      const int la = std::max(1, totals[e] - l_max);
      lengths[g1.derived.edge(g1.path_edges[e][0]).id] = la;
      lengths[g1.derived.edge(g1.path_edges[e][1]).id] = totals[e] - la;
    }
    out.push_back(std::move(lengths));
    std::size_t i = m;
    while (i > 0 && totals[i - 1] == 2 * l_max) totals[--i] = 2;
    if (i == 0) break;
    ++totals[i - 1];
  }
  return out;
}

namespace {

DgonOptions anchored(const Multigraph& g, const SubdivisionMap& h, std::size_t state_cap) {
  DgonOptions o;
  o.state_cap = state_cap;
  if (g.vertex_count() > 0) o.anchor = h.derived.vertex(g.name(0));
  return o;
}

}  // namespace

SdgonResult sdgon_search(const Multigraph& g, int k_max, int l_max, const SdgonOptions& options) {
  if (k_max < 1) throw PreconditionError("k_max must be at least 1");
  const SubdivisionMap g1 = build_g1(g);
  SdgonResult best;
  int cap = k_max;
  for (const auto& lengths : length_grid(g, l_max)) {
    ++best.subdivisions_checked;
    SubdivisionMap h = expand_by_lengths(g1.derived, lengths);
    const DgonResult r = dgon(h.derived, cap, anchored(g, h, options.state_cap));
    if (!r.value) continue;
    best.value = r.value;
    best.lengths = lengths;
    best.h = std::move(h);
    best.divisor = r.witness;
    cap = *r.value - 1;
    if (cap == 0) break;
  }
  if (!best.value) {
    best.binding = {"k_max", "l_max"};
  } else if (*best.value > 1) {
    best.binding = {"l_max"};
  }
  return best;
}

Witness witness_on_g1(const Multigraph& g, const SubdivisionMap& h, const Divisor& d) {
  const SubdivisionMap g1 = build_g1(g);
  const SubdivisionMap hg = compose(g1, h);
  const auto [moved, script] = consolidate_chips(hg, d);
  std::map<std::string, int> lengths;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& path = hg.path_vertices[e];
    const int total = static_cast<int>(path.size()) - 1;
    int split = static_cast<int>(h.length(g1.path_edges[e][0]));
    for (int x = 1; x < total; ++x) {
      if (moved[path[static_cast<std::size_t>(x)]] > 0) {
        split = x;
        break;
      }
    }
    lengths[g1.derived.edge(g1.path_edges[e][0]).id] = split;
    lengths[g1.derived.edge(g1.path_edges[e][1]).id] = total - split;
  }
  Witness w;
  w.h = expand_by_lengths(g1.derived, lengths);
  const SubdivisionMap hg2 = compose(g1, w.h);
  w.start = Divisor::zero(w.h.derived.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    w.start.chips[hg2.vertex_image[v]] = moved[hg.vertex_image[v]];
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    for (std::size_t x = 1; x + 1 < hg.path_vertices[e].size(); ++x) {
      w.start.chips[hg2.path_vertices[e][x]] = moved[hg.path_vertices[e][x]];
    }
  }
  for (VertexIndex t = 0; t < g1.derived.vertex_count(); ++t) {
    const VertexIndex image = w.h.vertex_image[t];
    if (w.start[image] > 0) continue;
    auto s = script_to_reach(w.h.derived, w.start, image);
    if (!s) throw PreconditionError("divisor does not reach '" + g1.derived.name(t) + "'");
    w.scripts[g1.derived.name(t)] = std::move(*s);
  }
  return w;
}

PipelineReport pipeline_selftest(const Multigraph& g, int k, int l_max, std::int64_t solve_cap) {
  using Clock = std::chrono::steady_clock;
  PipelineReport report;
  const SubdivisionMap g1 = build_g1(g);
  auto timed = [&](const char* stage, auto&& f) {
    const auto t0 = Clock::now();
    auto result = f();
    report.seconds[stage] += std::chrono::duration<double>(Clock::now() - t0).count();
    return result;
  };
  for (const auto& lengths : length_grid(g, l_max)) {
    const SubdivisionMap h = expand_by_lengths(g1.derived, lengths);
    const DgonResult r = timed("search", [&] { return dgon(h.derived, k, anchored(g, h, 1'000'000)); });
    if (!r.value) continue;
    ++report.witnesses;
    Witness w;
    auto fail = [&](const std::string& stage, const std::string& detail) {
      report.counterexamples.push_back({{"stage", stage},
                                        {"detail", detail},
                                        {"lengths", lengths},
                                        {"divisor", divisor_to_json(h.derived, r.witness)},
                                        {"witness", w.scripts.empty() && w.start.size() == 0
                                                        ? nlohmann::json()
                                                        : witness_to_json(w)}});
    };
    try {
      w = timed("witness", [&] { return witness_on_g1(g, h, r.witness); });
      const auto c = timed("certificate", [&] { return build_certificate(w, k); });
      const auto inst = timed("program", [&] { return build_ilp(g1.derived, c); });
      const auto truth = ground_truth(w);
      if (!check_assignment(inst, truth)) {
        fail("ground-truth", "ground truth violates the program");
        continue;
      }
      const auto sol = timed("solve", [&] { return solve(inst, solve_cap); });
      if (!sol) {
        fail("solve", "no solution within the cap");
        continue;
      }
      const auto verdict = timed("verify", [&] { return verify_np(g, k, c, *sol); });
      if (!verdict.accepted()) {
        fail("verify", verdict.reason);
        continue;
      }
      ++report.accepted;
      bool expanded = true;
      for (const auto* a : {&*sol, &truth}) {
        const auto rep = timed("expand", [&] { return verify_expansion(expand_certificate(g1.derived, c, *a)); });
        if (!rep.ok()) {
          fail("expand", rep.reason + " (" + rep.where + ")");
          expanded = false;
          break;
        }
        if (!rep.by_reduction.empty()) ++report.by_reduction;
      }
      if (expanded) ++report.expanded;
    } catch (const std::exception& e) {
      fail("exception", e.what());
    }
  }
  return report;
}

}  // namespace sdgon
