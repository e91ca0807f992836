#include "sdgon/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sdgon/errors.hpp"

namespace sdgon {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

Json parse_json_text(const std::string& text) {
  return guarded("invalid JSON", [&] { return Json::parse(text); });
}

Multigraph graph_from_json(const Json& j, std::vector<std::string>* dropped_loops) {
  auto [vertices, edges] = guarded("graph", [&] {
    auto vs = member(j, "vertices").get<std::vector<std::string>>();
    std::vector<EdgeSpec> es;
    for (const auto& e : member(j, "edges")) {
      auto ends = member(e, "ends").get<std::vector<std::string>>();
      if (ends.size() != 2) throw ParseError("edge needs exactly two ends");
      es.push_back(EdgeSpec{member(e, "id").get<std::string>(), ends[0], ends[1]});
    }
    return std::pair{vs, es};
  });
  return Multigraph::build(std::move(vertices), edges, dropped_loops);
}

Json graph_to_json(const Multigraph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back({{"id", e.id}, {"ends", {g.name(e.first), g.name(e.second)}}});
  }
  return {{"vertices", g.names()}, {"edges", edges}};
}

std::vector<std::string> labeled_from_json(const Json& j) {
  return guarded("divisor", [&] {
    std::vector<std::string> start;
    if (j.is_object() && j.contains("chips")) {
      std::map<int, std::string> by_label;
      for (const auto& [key, v] : j.at("chips").items()) {
        int label = 0;
        try {
          label = std::stoi(key);
        } catch (const std::exception&) {
          throw ParseError("chip label '" + key + "' is not an integer");
        }
        by_label[label] = v.get<std::string>();
      }
      int expected = 1;
      for (const auto& [label, v] : by_label) {
        if (label != expected++) throw ParseError("chip labels must be exactly 1..k");
        start.push_back(v);
      }
      return start;
    }
    std::map<std::string, int> counts = member(j, "counts").get<std::map<std::string, int>>();
    for (const auto& [v, c] : counts) {
      if (c < 0) throw ParseError("negative chip count on '" + v + "'");
      for (int i = 0; i < c; ++i) start.push_back(v);
    }
    return start;
  });
}

Json labeled_to_json(const std::vector<std::string>& start) {
  Json chips = Json::object();
  for (std::size_t i = 0; i < start.size(); ++i) chips[std::to_string(i + 1)] = start[i];
  return {{"chips", chips}};
}

Divisor divisor_from_json(const Multigraph& g, const Json& j) {
  Divisor d = Divisor::zero(g.vertex_count());
  for (const auto& v : labeled_from_json(j)) {
    auto idx = g.find_vertex(v);
    if (!idx) throw ParseError("divisor names unknown vertex '" + v + "'");
    ++d.chips[*idx];
  }
  return d;
}

Json divisor_to_json(const Multigraph& g, const Divisor& d) {
  Json counts = Json::object();
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (d.chips[v] != 0) counts[g.name(v)] = d.chips[v];
  }
  return {{"counts", counts}};
}

PartialCertificate certificate_from_json(const Json& j) {
  return guarded("certificate", [&] {
    PartialCertificate c;
    c.k = member(j, "k").get<int>();
    c.start = labeled_from_json(member(j, "divisor"));
    for (const auto& sj : member(j, "sequences")) {
      PairSequence seq;
      seq.target = member(sj, "target").get<std::string>();
      for (const auto& pj : member(sj, "pairs")) {
        CertificatePair pair;
        pair.set = member(pj, "A").get<std::vector<std::string>>();
        std::sort(pair.set.begin(), pair.set.end());
        pair.set.erase(std::unique(pair.set.begin(), pair.set.end()), pair.set.end());
        for (const auto& tj : member(pj, "M")) {
          if (!tj.is_array() || tj.size() != 4) throw ParseError("move tuple needs 4 entries");
          pair.moves.insert(MoveTuple{tj[0].get<std::string>(), tj[1].get<int>(),
                                      tj[2].get<int>(), tj[3].get<std::string>()});
        }
        seq.pairs.push_back(std::move(pair));
      }
      c.sequences.push_back(std::move(seq));
    }
    return c;
  });
}

Json certificate_to_json(const PartialCertificate& c) {
  Json seqs = Json::array();
  for (const auto& seq : c.sequences) {
    Json pairs = Json::array();
    for (const auto& pair : seq.pairs) {
      Json moves = Json::array();
      for (const auto& t : pair.moves) moves.push_back({t.vertex, t.chip, t.sign, t.edge});
      pairs.push_back({{"A", pair.set}, {"M", moves}});
    }
    seqs.push_back({{"target", seq.target}, {"pairs", pairs}});
  }
  return {{"k", c.k}, {"divisor", labeled_to_json(c.start)}, {"sequences", seqs}};
}

Json violation_to_json(const Violation& v) {
  Json out = {{"requirement", std::string(requirement_name(v.requirement))},
              {"target", v.target},
              {"index", v.index},
              {"detail", v.detail}};
  if (v.tuple) {
    out["tuple"] = {v.tuple->vertex, v.tuple->chip, v.tuple->sign, v.tuple->edge};
  }
  return out;
}

std::map<std::string, int> lengths_from_json(const Json& j) {
  return guarded("lengths", [&] { return j.get<std::map<std::string, int>>(); });
}

FiringScript script_from_json(const Multigraph& g, const Json& j) {
  auto lists = guarded("script", [&] { return j.get<std::vector<std::vector<std::string>>>(); });
  std::vector<VertexSet> sets;
  for (const auto& names : lists) {
    for (const auto& n : names) {
      if (!g.find_vertex(n)) throw ParseError("script names unknown vertex '" + n + "'");
    }
    sets.push_back(make_set(g, names));
  }
  try {
    return FiringScript(std::move(sets));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

Json script_to_json(const Multigraph& g, const FiringScript& s) {
  Json out = Json::array();
  for (const auto& set : s.sets()) out.push_back(set_names(g, set));
  return out;
}

IlpInstance instance_from_json(const Json& j) {
  return guarded("instance", [&] {
    IlpInstance inst;
    inst.variables = member(j, "variables").get<std::vector<std::string>>();
    std::sort(inst.variables.begin(), inst.variables.end());
    inst.variables.erase(std::unique(inst.variables.begin(), inst.variables.end()), inst.variables.end());
    for (const auto& cj : member(j, "constraints")) {
      LinearConstraint lc;
      lc.coefficients = member(cj, "coefficients").get<std::map<std::string, std::int64_t>>();
      const auto rel = relation_from_symbol(member(cj, "relation").get<std::string>());
      if (!rel) throw ParseError("unknown relation '" + cj["relation"].dump() + "'");
      lc.relation = *rel;
      lc.rhs = member(cj, "rhs").get<std::int64_t>();
      const auto rule = rule_from_tag(member(cj, "rule").get<std::string>());
      if (!rule) throw ParseError("unknown rule tag '" + cj["rule"].dump() + "'");
      lc.rule = *rule;
      for (const auto& [var, coef] : lc.coefficients) {
        if (!std::binary_search(inst.variables.begin(), inst.variables.end(), var)) {
          throw ParseError("constraint uses undeclared variable '" + var + "'");
        }
      }
      inst.constraints.push_back(std::move(lc));
    }
    return inst;
  });
}

Json instance_to_json(const IlpInstance& inst) {
  Json cs = Json::array();
  for (const auto& lc : inst.constraints) {
    cs.push_back({{"rule", rule_tag(lc.rule)},
                  {"coefficients", lc.coefficients},
                  {"relation", relation_symbol(lc.relation)},
                  {"rhs", lc.rhs}});
  }
  return {{"variables", inst.variables}, {"constraints", cs}};
}

IlpAssignment assignment_from_json(const Json& j) {
  return guarded("assignment", [&] { return j.get<IlpAssignment>(); });
}

Json assignment_to_json(const IlpAssignment& a) { return Json(a); }

Witness witness_from_json(const Json& j) {
  const Multigraph g = graph_from_json(member(j, "graph"));
  const std::string base_kind = j.value("base", std::string("graph"));
  if (base_kind != "graph" && base_kind != "g1") throw ParseError("base must be 'graph' or 'g1'");
  const Multigraph base = base_kind == "g1" ? build_g1(g).derived : g;
  std::map<std::string, int> lengths;
  for (const auto& e : base.edges()) lengths[e.id] = 1;
  if (j.contains("lengths")) {
    for (const auto& [id, l] : lengths_from_json(j["lengths"])) {
      if (!base.find_edge(id)) throw ParseError("length given for unknown edge '" + id + "'");
      lengths[id] = l;
    }
  }
  Witness w;
  try {
    w.h = expand_by_lengths(base, lengths);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  w.start = divisor_from_json(w.h.derived, member(j, "divisor"));
  if (j.contains("scripts")) {
    for (const auto& [target, sj] : j["scripts"].items()) {
      if (!base.find_vertex(target)) throw ParseError("script for unknown target '" + target + "'");
      w.scripts[target] = script_from_json(w.h.derived, sj);
    }
  }
  return w;
}

Json witness_to_json(const Witness& w) {
  Json lengths = Json::object();
  for (EdgeIndex e = 0; e < w.h.origin.edge_count(); ++e) {
    lengths[w.h.origin.edge(e).id] = w.h.length(e);
  }
  Json scripts = Json::object();
  for (const auto& [target, s] : w.scripts) scripts[target] = script_to_json(w.h.derived, s);
  return {{"graph", graph_to_json(w.h.origin)},
          {"base", "graph"},
          {"lengths", lengths},
          {"divisor", divisor_to_json(w.h.derived, w.start)},
          {"scripts", scripts}};
}

Json report_to_json(const ExpansionReport& r) {
  static const char* kinds[] = {"ok", "invalid-set", "target-missed", "unreached-interior", "unknown-target"};
  Json j = {{"ok", r.ok()}, {"kind", kinds[static_cast<int>(r.kind)]}, {"by_reduction", r.by_reduction}};
  if (!r.ok()) {
    j["where"] = r.where;
    j["reason"] = r.reason;
    if (r.index > 0) j["index"] = r.index;
  }
  return j;
}

Json verdict_to_json(const NpVerdict& v) {
  Json violations = Json::array();
  for (const auto& x : v.violations) violations.push_back(violation_to_json(x));
  return {{"accepted", v.accepted()}, {"stage", stage_name(v.stage)}, {"reason", v.reason}, {"violations", violations}};
}

}  // namespace sdgon
