#include "sdgon/ilp.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "sdgon/errors.hpp"

namespace sdgon {

namespace {

constexpr std::array<std::string_view, 8> kRuleTags = {
    "edge-length",  "firing-gap",    "immediate-arrival", "consecutive-departure",
    "arrival-step", "transit-upper", "transit-lower",     "transit-open",
};

}  // namespace

std::string_view rule_tag(Rule r) { return kRuleTags.at(static_cast<std::size_t>(r)); }

std::optional<Rule> rule_from_tag(std::string_view tag) {
  for (std::size_t i = 0; i < kRuleTags.size(); ++i) {
    if (kRuleTags[i] == tag) return static_cast<Rule>(i);
  }
  return std::nullopt;
}

std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::GreaterEqual: return ">=";
    case Relation::Equal: return "=";
    case Relation::LessEqual: return "<=";
  }
  return "?";
}

std::optional<Relation> relation_from_symbol(std::string_view s) {
  if (s == ">=") return Relation::GreaterEqual;
  if (s == "=" || s == "==") return Relation::Equal;
  if (s == "<=") return Relation::LessEqual;
  return std::nullopt;
}

std::string length_var(const std::string& edge) { return "l[" + edge + "]"; }

std::string gap_var(const std::string& target, std::size_t index) {
  return "t[" + target + "," + std::to_string(index) + "]";
}

std::vector<EdgeTransit> edge_transits(const Multigraph& base, const PartialCertificate& c) {
  std::vector<EdgeTransit> out;
  for (VertexIndex w = 0; w < base.vertex_count(); ++w) {
    const PairSequence* seq = c.sequence_for(base.name(w));
    if (seq == nullptr || seq->pairs.empty()) continue;
    const std::size_t a = seq->pairs.size();
    for (EdgeIndex e = 0; e < base.edge_count(); ++e) {
      const Edge& edge = base.edge(e);
      for (VertexIndex from : {edge.first, edge.second}) {
        const VertexIndex to = edge.other(from);
        const std::string& from_name = base.name(from);
        const std::string& to_name = base.name(to);
        std::vector<std::size_t> dep, arr;
        for (std::size_t i = 1; i <= a; ++i) {
          for (const auto& t : seq->pairs[i - 1].moves) {
            if (t.edge != edge.id) continue;
            if (t.departure() && t.vertex == from_name) dep.push_back(i);
            if (t.arrival() && t.vertex == to_name) arr.push_back(i);
          }
        }
        if (dep.empty()) continue;
        EdgeTransit tr;
        tr.target = base.name(w);
        tr.edge = e;
        tr.from = from;
        tr.to = to;
        tr.pairs = a;
        tr.i0 = *std::min_element(dep.begin(), dep.end());
        tr.i1 = *std::max_element(dep.begin(), dep.end());
        if (!arr.empty()) {
          tr.i2 = *std::min_element(arr.begin(), arr.end());
          tr.i3 = *std::max_element(arr.begin(), arr.end());
          tr.end = *tr.i3;
        } else {
          tr.end = a;
          for (std::size_t i = tr.i0; i <= a; ++i) {
            const auto& set = seq->pairs[i - 1].set;
            if (std::binary_search(set.begin(), set.end(), to_name)) {
              tr.end = i - 1;
              break;
            }
          }
        }
        out.push_back(std::move(tr));
      }
    }
  }
  return out;
}

IlpInstance build_ilp(const Multigraph& base, const PartialCertificate& c) {
  if (!validate(base, c).empty()) {
    throw PreconditionError("build_ilp needs a certificate without violations");
  }
  std::set<std::string> variables;
  std::vector<LinearConstraint> constraints;
  std::set<LinearConstraint> seen;
  auto emit = [&](LinearConstraint lc) {
    if (seen.insert(lc).second) constraints.push_back(std::move(lc));
  };
  auto pin = [&](const std::string& var, Rule rule) {
    emit(LinearConstraint{{{var, 1}}, Relation::Equal, 1, rule});
  };

  for (const Edge& e : base.edges()) {
    variables.insert(length_var(e.id));
    emit(LinearConstraint{{{length_var(e.id), 1}}, Relation::GreaterEqual, 1, Rule::EdgeLength});
  }
  for (VertexIndex w = 0; w < base.vertex_count(); ++w) {
    const PairSequence* seq = c.sequence_for(base.name(w));
    if (seq == nullptr) continue;
    for (std::size_t i = 1; i <= seq->pairs.size(); ++i) {
      const auto var = gap_var(seq->target, i);
      variables.insert(var);
      emit(LinearConstraint{{{var, 1}}, Relation::GreaterEqual, 1, Rule::FiringGap});
    }
  }
  for (VertexIndex w = 0; w < base.vertex_count(); ++w) {
    const PairSequence* seq = c.sequence_for(base.name(w));
    if (seq == nullptr) continue;
    for (const auto& pair : seq->pairs) {
      for (const auto& d : pair.moves) {
        if (!d.departure()) continue;
        for (const auto& r : pair.moves) {
          if (r.arrival() && r.chip == d.chip && r.edge == d.edge && r.vertex != d.vertex) {
            pin(length_var(d.edge), Rule::ImmediateArrival);
          }
        }
      }
    }
  }
  for (VertexIndex w = 0; w < base.vertex_count(); ++w) {
    const PairSequence* seq = c.sequence_for(base.name(w));
    if (seq == nullptr) continue;
    for (std::size_t i = 1; i < seq->pairs.size(); ++i) {
      std::set<std::pair<std::string, std::string>> now, next;
      for (const auto& t : seq->pairs[i - 1].moves) {
        if (t.departure()) now.insert({t.vertex, t.edge});
      }
      for (const auto& t : seq->pairs[i].moves) {
        if (t.departure()) next.insert({t.vertex, t.edge});
      }
      const bool shared = std::any_of(now.begin(), now.end(),
                                      [&](const auto& key) { return next.contains(key); });
      if (shared) pin(gap_var(seq->target, i), Rule::ConsecutiveDeparture);
    }
  }
  for (VertexIndex w = 0; w < base.vertex_count(); ++w) {
    const PairSequence* seq = c.sequence_for(base.name(w));
    if (seq == nullptr) continue;
    for (std::size_t i = 1; i <= seq->pairs.size(); ++i) {
      const auto& moves = seq->pairs[i - 1].moves;
      if (std::any_of(moves.begin(), moves.end(), [](const MoveTuple& t) { return t.arrival(); })) {
        pin(gap_var(seq->target, i), Rule::ArrivalStep);
      }
    }
  }
  for (const EdgeTransit& tr : edge_transits(base, c)) {
    const std::string l = length_var(base.edge(tr.edge).id);
    const std::int64_t p = tr.p();
    const std::int64_t q = tr.q();
    LinearConstraint lc;
    if (!tr.open()) {
      lc.coefficients[l] = p;
      for (std::size_t i = tr.i0; i <= *tr.i3; ++i) lc.coefficients[gap_var(tr.target, i)] -= 1;
      lc.relation = Relation::GreaterEqual;
      lc.rhs = p - q;
      lc.rule = Rule::TransitUpper;
      emit(lc);
      lc.coefficients[l] = q;
      lc.relation = Relation::LessEqual;
      lc.rhs = q - p;
      lc.rule = Rule::TransitLower;
      emit(lc);
    } else {
      // The final pair is copied once, so it contributes a constant.
      lc.coefficients[l] = p;
      const std::size_t last_var = std::min(tr.end, tr.pairs - 1);
      for (std::size_t i = tr.i0; i <= last_var; ++i) lc.coefficients[gap_var(tr.target, i)] -= 1;
      lc.relation = Relation::GreaterEqual;
      lc.rhs = p + (tr.end == tr.pairs ? 1 : 0);
      lc.rule = Rule::TransitOpen;
      emit(lc);
    }
  }
  return IlpInstance{{variables.begin(), variables.end()}, std::move(constraints)};
}

namespace {

using Wide = __int128;

bool holds(Wide lhs, Relation rel, Wide rhs) {
  switch (rel) {
    case Relation::GreaterEqual: return lhs >= rhs;
    case Relation::Equal: return lhs == rhs;
    case Relation::LessEqual: return lhs <= rhs;
  }
  return false;
}

}  // namespace

bool check_assignment(const IlpInstance& inst, const IlpAssignment& a) {
  for (const auto& v : inst.variables) {
    if (!a.contains(v)) throw MissingVariableError("no value for variable '" + v + "'");
  }
  for (const auto& lc : inst.constraints) {
    Wide lhs = 0;
    for (const auto& [var, coef] : lc.coefficients) {
      auto it = a.find(var);
      if (it == a.end()) throw MissingVariableError("no value for variable '" + var + "'");
      lhs += static_cast<Wide>(coef) * it->second;
    }
    if (!holds(lhs, lc.relation, lc.rhs)) return false;
  }
  return true;
}

namespace {

// Σ a_i x_i >= b over variable indices.
struct Row {
  std::vector<std::pair<std::size_t, std::int64_t>> terms;
  std::int64_t rhs;
};

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

class Propagator {
 public:
  Propagator(const IlpInstance& inst, std::int64_t cap) : cap_(cap) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < inst.variables.size(); ++i) index[inst.variables[i]] = i;
    for (const auto& lc : inst.constraints) {
      Row row;
      for (const auto& [var, coef] : lc.coefficients) {
        auto it = index.find(var);
        if (it == index.end()) throw MissingVariableError("constraint uses undeclared '" + var + "'");
        if (coef != 0) row.terms.emplace_back(it->second, coef);
      }
      row.rhs = lc.rhs;
      if (lc.relation != Relation::LessEqual) rows_.push_back(row);
      if (lc.relation != Relation::GreaterEqual) {
        for (auto& t : row.terms) t.second = -t.second;
        row.rhs = -row.rhs;
        rows_.push_back(row);
      }
    }
  }

  // Tightens [lo, hi] to a fixpoint; false on an empty domain.
  bool propagate(std::vector<Wide>& lo, std::vector<Wide>& hi) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Row& row : rows_) {
        Wide max_sum = 0;
        for (auto [v, a] : row.terms) max_sum += a > 0 ? a * hi[v] : a * lo[v];
        if (max_sum < row.rhs) return false;
        for (auto [v, a] : row.terms) {
          const Wide rest = max_sum - (a > 0 ? a * hi[v] : a * lo[v]);
          const Wide need = row.rhs - rest;  // a * x >= need
          if (a > 0) {
            const Wide bound = ceil_div(need, a);
            if (bound > lo[v]) {
              lo[v] = bound;
              changed = true;
            }
          } else {
            const Wide bound = floor_div(need, a);
            if (bound < hi[v]) {
              hi[v] = bound;
              changed = true;
            }
          }
          if (lo[v] > hi[v]) return false;
        }
        if (changed) break;
      }
    }
    return true;
  }

  std::int64_t cap() const { return cap_; }

 private:
  std::int64_t cap_;
  std::vector<Row> rows_;
};

bool search(const Propagator& prop, std::vector<Wide> lo, std::vector<Wide> hi,
            std::vector<Wide>& out, SolveStats& stats) {
  ++stats.nodes;
  if (!prop.propagate(lo, hi)) return false;
  std::size_t pick = lo.size();
  for (std::size_t v = 0; v < lo.size(); ++v) {
    if (lo[v] < hi[v]) {
      pick = v;
      break;
    }
  }
  if (pick == lo.size()) {
    out = lo;
    return true;
  }
  for (Wide value = lo[pick]; value <= hi[pick]; ++value) {
    auto lo2 = lo;
    auto hi2 = hi;
    lo2[pick] = hi2[pick] = value;
    if (search(prop, std::move(lo2), std::move(hi2), out, stats)) return true;
  }
  return false;
}

}  // namespace

std::optional<IlpAssignment> solve(const IlpInstance& inst, std::int64_t cap, SolveStats* stats) {
  if (cap < 1) throw PreconditionError("cap must be at least 1");
  Propagator prop(inst, cap);
  std::vector<Wide> lo(inst.variables.size(), 1), hi(inst.variables.size(), cap);
  std::vector<Wide> values;
  SolveStats local;
  const bool found = search(prop, lo, hi, values, local);
  if (stats != nullptr) *stats = local;
  if (!found) return std::nullopt;
  IlpAssignment a;
  for (std::size_t i = 0; i < values.size(); ++i) {
    a[inst.variables[i]] = static_cast<std::int64_t>(values[i]);
  }
  return a;
}

MagnitudeBound magnitude_bound(const IlpInstance& inst) {
  MagnitudeBound b;
  std::size_t slacks = 0;
  std::int64_t a = 0;
  for (const auto& lc : inst.constraints) {
    if (lc.relation != Relation::Equal) {
      ++slacks;
      a = std::max<std::int64_t>(a, 1);
    }
    for (const auto& [var, coef] : lc.coefficients) a = std::max(a, coef < 0 ? -coef : coef);
    a = std::max(a, lc.rhs < 0 ? -lc.rhs : lc.rhs);
  }
  b.n = inst.variables.size() + slacks;
  b.m = inst.constraints.size();
  b.a = a;
  BigInt base = BigInt(b.m) * BigInt(a);
  b.value = BigInt(b.n) * boost::multiprecision::pow(base, static_cast<unsigned>(2 * b.m + 1));
  return b;
}

}  // namespace sdgon
