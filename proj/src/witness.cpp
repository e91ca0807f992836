#include "sdgon/witness.hpp"

#include <algorithm>
#include <numeric>

#include "sdgon/errors.hpp"

namespace sdgon {

void check_witness(const Witness& w) {
  const Multigraph& H = w.h.derived;
  if (w.start.size() != H.vertex_count()) throw PreconditionError("divisor size does not match H");
  for (const auto& [target, script] : w.scripts) {
    const VertexIndex t = w.h.vertex_image.at(w.h.origin.vertex(target));
    std::vector<Divisor> states;
    try {
      states = run_script(H, w.start, script);
    } catch (const InvalidSetError& e) {
      throw PreconditionError("script for '" + target + "' is illegal at set " +
                              std::to_string(e.index()));
    }
    if (states.back()[t] < 1) throw PreconditionError("script for '" + target + "' misses it");
  }
}

std::pair<Divisor, FiringScript> consolidate_chips(const SubdivisionMap& h, const Divisor& d) {
  const Multigraph& H = h.derived;
  std::vector<std::int64_t> f(H.vertex_count(), 0);
  for (EdgeIndex e = 0; e < h.origin.edge_count(); ++e) {
    const auto& path = h.path_vertices[e];
    const std::size_t L = path.size() - 1;
    std::vector<int> c(L + 1, 0);
    for (std::size_t x = 1; x < L; ++x) c[x] = d[path[x]];
    auto interior = [&] { return std::accumulate(c.begin() + 1, c.end() - 1, 0); };
    while (L >= 2 && interior() >= 2) {
      std::size_t i = 1;
      while (c[i] == 0) ++i;
      std::size_t j = i;
      if (c[i] < 2) {
        ++j;
        while (c[j] == 0) ++j;
      }
      for (std::size_t lo = i, hi = j;; --lo, ++hi) {
        for (std::size_t x = lo; x <= hi; ++x) ++f[path[x]];
        --c[lo];
        --c[hi];
        ++c[lo - 1];
        ++c[hi + 1];
        if (lo - 1 == 0 || hi + 1 == L) break;
      }
    }
  }
  FiringScript s = level_set_script(H, f);
  return {run_script(H, d, s).back(), std::move(s)};
}

std::vector<std::size_t> extract_relevant(const SubdivisionMap& h, const Divisor& d,
                                          const FiringScript& s) {
  const Multigraph& H = h.derived;
  const auto states = run_script(H, d, s);
  std::vector<std::size_t> out;
  VertexSet previous(H.vertex_count(), false);
  for (std::size_t i = 1; i <= s.size(); ++i) {
    const VertexSet& a = s[i - 1];
    bool relevant = false;
    for (VertexIndex v = 0; v < H.vertex_count() && !relevant; ++v) {
      if (!h.is_origin_vertex(v)) continue;
      relevant = states[i][v] != states[i - 1][v] || (a[v] && !previous[v]);
    }
    if (relevant) out.push_back(i);
    previous = a;
  }
  return out;
}

std::vector<std::set<MoveTuple>> track_moves(const SubdivisionMap& h, const LabeledDivisor& labeled,
                                             const FiringScript& s) {
  const Multigraph& H = h.derived;
  std::vector<VertexIndex> where = labeled.location;
  std::vector<std::set<MoveTuple>> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const VertexSet& a = s[i];
    std::set<MoveTuple> moves;
    std::vector<std::pair<std::size_t, VertexIndex>> plan;  // chip index -> destination
    for (VertexIndex v = 0; v < H.vertex_count(); ++v) {
      if (!a[v]) continue;
      std::vector<EdgeIndex> cut;
      for (EdgeIndex e : H.incident(v)) {
        if (!a[H.edge(e).other(v)]) cut.push_back(e);
      }
      std::sort(cut.begin(), cut.end(),
                [&](EdgeIndex x, EdgeIndex y) { return H.edge(x).id < H.edge(y).id; });
      std::size_t next = 0;
      for (EdgeIndex e : cut) {
        while (next < where.size() && where[next] != v) ++next;
        if (next == where.size()) throw InvalidSetError("set is not valid", i + 1);
        const VertexIndex u = H.edge(e).other(v);
        const std::string& base_edge = h.origin.edge(h.carrier[e]).id;
        const int chip = static_cast<int>(next) + 1;
        if (h.is_origin_vertex(v)) moves.insert(MoveTuple{H.name(v), chip, -1, base_edge});
        if (h.is_origin_vertex(u)) moves.insert(MoveTuple{H.name(u), chip, 1, base_edge});
        plan.emplace_back(next, u);
        ++next;
      }
    }
    for (auto [chip, to] : plan) where[chip] = to;
    out.push_back(std::move(moves));
  }
  return out;
}

namespace {

void require_origin_support(const Witness& w, int k) {
  if (w.start.degree() > k) throw PreconditionError("divisor degree exceeds k");
  for (VertexIndex v = 0; v < w.h.derived.vertex_count(); ++v) {
    if (w.start[v] > 0 && !w.h.is_origin_vertex(v)) {
      throw PreconditionError("chip on subdivision vertex '" + w.h.derived.name(v) +
                              "'; consolidate first");
    }
  }
}

const FiringScript* script_for(const Witness& w, const std::string& target) {
  auto it = w.scripts.find(target);
  return it == w.scripts.end() ? nullptr : &it->second;
}

}  // namespace

PartialCertificate build_certificate(const Witness& w, int k) {
  require_origin_support(w, k);
  for (const auto& [target, script] : w.scripts) w.h.origin.vertex(target);
  const Multigraph& H = w.h.derived;
  const LabeledDivisor labeled = label_chips(H, w.start);
  PartialCertificate c;
  c.k = k;
  for (VertexIndex v : labeled.location) c.start.push_back(H.name(v));
  for (VertexIndex t = 0; t < w.h.origin.vertex_count(); ++t) {
    PairSequence seq;
    seq.target = w.h.origin.name(t);
    if (const FiringScript* s = script_for(w, seq.target)) {
      const auto relevant = extract_relevant(w.h, w.start, *s);
      const auto moves = track_moves(w.h, labeled, *s);
      for (std::size_t i : relevant) {
        CertificatePair pair;
        for (VertexIndex v = 0; v < H.vertex_count(); ++v) {
          if ((*s)[i - 1][v] && w.h.is_origin_vertex(v)) pair.set.push_back(H.name(v));
        }
        std::sort(pair.set.begin(), pair.set.end());
        pair.moves = moves[i - 1];
        seq.pairs.push_back(std::move(pair));
      }
    }
    c.sequences.push_back(std::move(seq));
  }
  return c;
}

IlpAssignment ground_truth(const Witness& w) {
  IlpAssignment a;
  for (EdgeIndex e = 0; e < w.h.origin.edge_count(); ++e) {
    a[length_var(w.h.origin.edge(e).id)] = static_cast<std::int64_t>(w.h.length(e));
  }
  for (VertexIndex t = 0; t < w.h.origin.vertex_count(); ++t) {
    const std::string& target = w.h.origin.name(t);
    const FiringScript* s = script_for(w, target);
    if (s == nullptr) continue;
    const auto relevant = extract_relevant(w.h, w.start, *s);
    for (std::size_t i = 0; i < relevant.size(); ++i) {
      const std::int64_t gap =
          i + 1 < relevant.size() ? static_cast<std::int64_t>(relevant[i + 1] - relevant[i]) : 1;
      a[gap_var(target, i + 1)] = gap;
    }
  }
  return a;
}

}  // namespace sdgon
