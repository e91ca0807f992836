#include "sdgon/chip_firing.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "sdgon/errors.hpp"

namespace sdgon {

int Divisor::degree() const { return std::accumulate(chips.begin(), chips.end(), 0); }

Divisor LabeledDivisor::unlabeled(std::size_t vertex_count) const {
  Divisor d = Divisor::zero(vertex_count);
  for (VertexIndex v : location) ++d.chips.at(v);
  return d;
}

LabeledDivisor label_chips(const Multigraph& g, const Divisor& d) {
  std::vector<VertexIndex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), VertexIndex{0});
  std::sort(order.begin(), order.end(),
            [&](VertexIndex a, VertexIndex b) { return g.name(a) < g.name(b); });
  LabeledDivisor labeled;
  for (VertexIndex v : order) {
    for (int c = 0; c < d.chips[v]; ++c) labeled.location.push_back(v);
  }
  return labeled;
}

VertexSet make_set(const Multigraph& g, const std::vector<std::string>& names) {
  VertexSet set(g.vertex_count(), false);
  for (const auto& n : names) set[g.vertex(n)] = true;
  return set;
}

std::vector<std::string> set_names(const Multigraph& g, const VertexSet& set) {
  std::vector<std::string> out;
  for (VertexIndex v = 0; v < set.size(); ++v) {
    if (set[v]) out.push_back(g.name(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

FiringScript::FiringScript(std::vector<VertexSet> sets) : sets_(std::move(sets)) {
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    const VertexSet& s = sets_[i];
    const auto members = std::count(s.begin(), s.end(), true);
    if (members == 0) {
      throw PreconditionError("firing set " + std::to_string(i + 1) + " is empty");
    }
    if (static_cast<std::size_t>(members) == s.size()) {
      throw PreconditionError("firing set " + std::to_string(i + 1) + " is the whole vertex set");
    }
    if (i > 0) {
      const VertexSet& prev = sets_[i - 1];
      if (prev.size() != s.size()) throw PreconditionError("firing sets of different sizes");
      for (std::size_t v = 0; v < s.size(); ++v) {
        if (prev[v] && !s[v]) {
          throw PreconditionError("firing script is not increasing at set " +
                                  std::to_string(i + 1));
        }
      }
    }
  }
}

int cut_degree(const Multigraph& g, const VertexSet& set, VertexIndex v) {
  int out = 0;
  for (EdgeIndex e : g.incident(v)) {
    if (!set[g.edge(e).other(v)]) ++out;
  }
  return out;
}

bool is_valid_set(const Multigraph& g, const Divisor& d, const VertexSet& set) {
  if (set.size() != g.vertex_count()) throw UnknownIdError("set does not match the graph");
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (set[v] && d.chips[v] < cut_degree(g, set, v)) return false;
  }
  return true;
}

namespace {

void apply_firing(const Multigraph& g, std::vector<int>& chips, const VertexSet& set) {
  for (const Edge& e : g.edges()) {
    const bool a = set[e.first];
    const bool b = set[e.second];
    if (a && !b) {
      --chips[e.first];
      ++chips[e.second];
    } else if (b && !a) {
      --chips[e.second];
      ++chips[e.first];
    }
  }
}

}  // namespace

Divisor fire_set(const Multigraph& g, const Divisor& d, const VertexSet& set) {
  if (!is_valid_set(g, d, set)) throw InvalidSetError("set is not valid for this divisor", 0);
  Divisor out = d;
  apply_firing(g, out.chips, set);
  return out;
}

std::vector<Divisor> run_script(const Multigraph& g, const Divisor& d, const FiringScript& s) {
  std::vector<Divisor> trajectory{d};
  trajectory.reserve(s.size() + 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_valid_set(g, trajectory.back(), s[i])) {
      throw InvalidSetError("set " + std::to_string(i + 1) + " of the script is not valid", i + 1);
    }
    Divisor next = trajectory.back();
    apply_firing(g, next.chips, s[i]);
    trajectory.push_back(std::move(next));
  }
  return trajectory;
}

bool reaches_bruteforce(const Multigraph& g, const Divisor& d, VertexIndex target,
                        const BruteForceOptions& options) {
  const std::size_t n = g.vertex_count();
  if (n > 20) throw StateCapExceeded("brute force oracle limited to 20 vertices");
  if (d.chips[target] >= 1) return true;
  if (n == 1) return false;
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;

  auto to_set = [n](std::uint32_t mask) {
    VertexSet s(n, false);
    for (std::size_t v = 0; v < n; ++v) s[v] = (mask >> v) & 1U;
    return s;
  };
  std::vector<VertexSet> subsets(full + 1);
  for (std::uint32_t m = 1; m < full; ++m) subsets[m] = to_set(m);

  // State: divisor plus the last fired mask (always 0 when not monotone).
  using State = std::pair<std::vector<int>, std::uint32_t>;
  std::set<State> visited;
  std::deque<State> queue;
  visited.insert({d.chips, 0});
  queue.push_back({d.chips, 0});
  while (!queue.empty()) {
    State state = std::move(queue.front());
    queue.pop_front();
    const Divisor current(state.first);
    for (std::uint32_t m = 1; m < full; ++m) {
      if (options.monotone_only && (m & state.second) != state.second) continue;
      if (!is_valid_set(g, current, subsets[m])) continue;
      std::vector<int> next = current.chips;
      apply_firing(g, next, subsets[m]);
      if (next[target] >= 1) return true;
      State ns{std::move(next), options.monotone_only ? m : 0};
      if (visited.insert(ns).second) {
        if (visited.size() > options.state_cap) {
          throw StateCapExceeded("brute force exceeded its state cap");
        }
        queue.push_back(std::move(ns));
      }
    }
  }
  return false;
}

namespace {

// One burning pass from q. Returns the unburnt set (empty when all burn) and
// fills `burnt_edges` with each unburnt vertex's edge count into the fire.
VertexSet burn(const Multigraph& g, const std::vector<int>& chips, VertexIndex q,
               std::vector<int>& burnt_edges) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> burnt(n, false);
  burnt_edges.assign(n, 0);
  std::vector<VertexIndex> stack{q};
  burnt[q] = true;
  while (!stack.empty()) {
    const VertexIndex v = stack.back();
    stack.pop_back();
    for (EdgeIndex e : g.incident(v)) {
      const VertexIndex w = g.edge(e).other(v);
      if (burnt[w]) continue;
      if (++burnt_edges[w] > chips[w]) {
        burnt[w] = true;
        stack.push_back(w);
      }
    }
  }
  VertexSet unburnt(n, false);
  for (VertexIndex v = 0; v < n; ++v) unburnt[v] = !burnt[v];
  return unburnt;
}

template <class Stop>
Reduction reduce_impl(const Multigraph& g, const Divisor& d, VertexIndex q, Stop&& stop) {
  Reduction r{d, std::vector<std::int64_t>(g.vertex_count(), 0)};
  std::vector<int> burnt_edges;
  while (!stop(r.reduced)) {
    const VertexSet unburnt = burn(g, r.reduced.chips, q, burnt_edges);
    // Fire the unburnt set as many times as it stays valid.
    std::int64_t times = -1;
    bool any = false;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      if (!unburnt[v]) continue;
      any = true;
      if (burnt_edges[v] > 0) {
        const std::int64_t t = r.reduced.chips[v] / burnt_edges[v];
        times = times < 0 ? t : std::min(times, t);
      }
    }
    if (!any) break;
    if (times <= 0) throw std::logic_error("reduce_at: unburnt set cannot fire");
    for (int i = 0; i < times; ++i) apply_firing(g, r.reduced.chips, unburnt);
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      if (unburnt[v]) r.firings[v] += times;
    }
  }
  return r;
}

}  // namespace

Reduction reduce_with_firings(const Multigraph& g, const Divisor& d, VertexIndex q) {
  return reduce_impl(g, d, q, [](const Divisor&) { return false; });
}

Divisor reduce_at(const Multigraph& g, const Divisor& d, VertexIndex q) {
  return reduce_with_firings(g, d, q).reduced;
}

bool reaches(const Multigraph& g, const Divisor& d, VertexIndex q) {
  return reduce_impl(g, d, q, [q](const Divisor& cur) { return cur.chips[q] >= 1; })
             .reduced.chips[q] >= 1;
}

bool reaches_all(const Multigraph& g, const Divisor& d) {
  for (VertexIndex q = 0; q < g.vertex_count(); ++q) {
    if (!reaches(g, d, q)) return false;
  }
  return true;
}

FiringScript level_set_script(const Multigraph& g, const std::vector<std::int64_t>& firings) {
  if (firings.size() != g.vertex_count()) throw PreconditionError("firing vector size mismatch");
  const auto [lo, hi] = std::minmax_element(firings.begin(), firings.end());
  if (*lo != 0) throw PreconditionError("firing vector must have minimum zero");
  std::vector<VertexSet> sets;
  for (std::int64_t level = *hi; level >= 1; --level) {
    VertexSet s(g.vertex_count(), false);
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) s[v] = firings[v] >= level;
    sets.push_back(std::move(s));
  }
  return FiringScript(std::move(sets));
}

std::optional<FiringScript> script_to_reach(const Multigraph& g, const Divisor& d,
                                            VertexIndex target) {
  Reduction r = reduce_impl(g, d, target,
                            [target](const Divisor& cur) { return cur.chips[target] >= 1; });
  if (r.reduced.chips[target] < 1) return std::nullopt;
  return level_set_script(g, r.firings);
}

DgonResult dgon(const Multigraph& g, int k_max, const DgonOptions& options) {
  if (k_max < 1) throw PreconditionError("k_max must be at least 1");
  const std::size_t n = g.vertex_count();
  // Cheap ordering heuristic: retry the vertex that failed last time first.
  VertexIndex last_failure = 0;
  auto covers = [&](const Divisor& d) {
    if (!reaches(g, d, last_failure)) return false;
    for (VertexIndex q = 0; q < n; ++q) {
      if (q != last_failure && !reaches(g, d, q)) {
        last_failure = q;
        return false;
      }
    }
    return true;
  };
  auto check = [&](const Divisor& d) {
    const bool fast = covers(d);
    if (options.cross_check) {
      bool slow = true;
      BruteForceOptions bf;
      bf.state_cap = options.state_cap;
      for (VertexIndex q = 0; q < n && slow; ++q) slow = reaches_bruteforce(g, d, q, bf);
      if (slow != fast) throw std::logic_error("dgon: reduced-divisor and brute-force disagree");
    }
    return fast;
  };

  DgonResult result;
  for (int k = 1; k <= k_max; ++k) {
    const bool found = for_each_composition(n, k, [&](const std::vector<int>& counts) {
      if (options.anchor && counts[*options.anchor] == 0) return false;
      Divisor d(counts);
      if (!check(d)) return false;
      result.value = k;
      result.witness = std::move(d);
      return true;
    });
    if (found) return result;
  }
  return result;
}

}  // namespace sdgon
