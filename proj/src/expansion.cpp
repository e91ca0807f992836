#include "sdgon/expansion.hpp"

#include <algorithm>

#include "sdgon/errors.hpp"

namespace sdgon {

namespace {

std::int64_t gap(const IlpAssignment& a, const std::string& target, std::size_t i) {
  auto it = a.find(gap_var(target, i));
  if (it == a.end()) throw MissingVariableError("no value for " + gap_var(target, i));
  if (it->second < 1) throw InequalityViolation(gap_var(target, i) + " must be positive");
  return it->second;
}

}  // namespace

std::vector<std::size_t> replicate_sets(const PairSequence& seq, const IlpAssignment& a) {
  std::vector<std::size_t> out;
  const std::size_t n = seq.pairs.size();
  for (std::size_t i = 1; i <= n; ++i) {
    const std::int64_t copies = i < n ? gap(a, seq.target, i) : 1;
    out.insert(out.end(), static_cast<std::size_t>(copies), i - 1);
  }
  return out;
}

std::int64_t window_length(const EdgeTransit& tr, const IlpAssignment& a) {
  std::int64_t sum = 0;
  for (std::size_t i = tr.i0; i <= tr.last(); ++i) sum += i < tr.pairs ? gap(a, tr.target, i) : 1;
  return sum;
}

std::vector<int> schedule_interior(const EdgeTransit& tr, std::int64_t l, std::int64_t sigma) {
  const std::int64_t p = tr.p();
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(sigma, 0)));
  if (tr.open()) {
    if (sigma < 1 || sigma > p * (l - 1)) {
      throw InequalityViolation("open window of " + std::to_string(sigma) + " sets does not fit " +
                                std::to_string(p) + " departures on length " + std::to_string(l));
    }
    for (std::int64_t j = 0; j < sigma; ++j) out.push_back(static_cast<int>(j / p));
    return out;
  }
  const std::int64_t q = tr.q();
  if (q > p) throw InequalityViolation("more arrivals than departures in a window");
  if (p * l - sigma < p - q) throw InequalityViolation("window too long for the edge length");
  if (q * l - sigma > q - p) throw InequalityViolation("window too short for the edge length");
  const std::int64_t r = sigma - q * l;
  const std::int64_t blocks = p == q ? 0 : r / (p - q);
  std::vector<std::int64_t> widths;
  widths.insert(widths.end(), static_cast<std::size_t>(blocks), p);
  widths.push_back(q + r - (p - q) * blocks);
  widths.insert(widths.end(), static_cast<std::size_t>(l - blocks - 1), q);
  for (std::size_t c = 0; c < widths.size(); ++c) out.insert(out.end(), static_cast<std::size_t>(widths[c]), static_cast<int>(c));
  return out;
}

Witness expand_certificate(const Multigraph& base, const PartialCertificate& c, const IlpAssignment& a) {
  if (!validate(base, c).empty()) throw PreconditionError("certificate does not validate");
  if (!check_assignment(build_ilp(base, c), a)) {
    throw PreconditionError("assignment does not satisfy the certificate's program");
  }
  std::vector<int> lengths;
  for (const Edge& e : base.edges()) lengths.push_back(static_cast<int>(a.at(length_var(e.id))));
  Witness w;
  w.h = expand_by_lengths(base, lengths);
  const Multigraph& H = w.h.derived;
  w.start = Divisor::zero(H.vertex_count());
  for (const auto& v : c.start) ++w.start.chips[H.vertex(v)];

  const auto transits = edge_transits(base, c);
  for (VertexIndex t = 0; t < base.vertex_count(); ++t) {
    const PairSequence* seq = c.sequence_for(base.name(t));
    if (seq == nullptr || seq->pairs.empty()) continue;
    const auto blocks = replicate_sets(*seq, a);
    std::vector<VertexSet> sets;
    for (std::size_t b : blocks) {
      VertexSet s(H.vertex_count(), false);
      VertexSet inside(base.vertex_count(), false);
      for (const auto& name : seq->pairs[b].set) {
        inside[base.vertex(name)] = true;
        s[H.vertex(name)] = true;
      }
      for (EdgeIndex e = 0; e < base.edge_count(); ++e) {
        if (!inside[base.edge(e).first] || !inside[base.edge(e).second]) continue;
        for (VertexIndex x : w.h.interior_from(e, base.edge(e).first)) s[x] = true;
      }
      sets.push_back(std::move(s));
    }
    for (const EdgeTransit& tr : transits) {
      if (tr.target != seq->target) continue;
      const std::size_t first =
          static_cast<std::size_t>(std::find(blocks.begin(), blocks.end(), tr.i0 - 1) - blocks.begin());
      const auto prefixes = schedule_interior(tr, w.h.length(tr.edge), window_length(tr, a));
      const auto interior = w.h.interior_from(tr.edge, tr.from);
      for (std::size_t j = 0; j < prefixes.size(); ++j) {
        if (first + j >= sets.size()) throw InequalityViolation("window runs past the script");
        for (int x = 0; x < prefixes[j]; ++x) sets[first + j][interior.at(static_cast<std::size_t>(x))] = true;
      }
    }
    std::erase_if(sets, [](const VertexSet& s) {
      const auto n = std::count(s.begin(), s.end(), true);
      return n == 0 || n == static_cast<std::ptrdiff_t>(s.size());
    });
    w.scripts[seq->target] = FiringScript(std::move(sets));
  }
  return w;
}

namespace {

// Some divisor equivalent to the start has a chip on both ends of the path.
// With R the u-reduced form, this holds iff R - u reaches v.
bool covers_both_ends(const Witness& w, EdgeIndex e) {
  const Multigraph& H = w.h.derived;
  const VertexIndex u = w.h.vertex_image[w.h.origin.edge(e).first];
  const VertexIndex v = w.h.vertex_image[w.h.origin.edge(e).second];
  Divisor r = reduce_at(H, w.start, u);
  if (r[u] < 1) return false;
  --r.chips[u];
  return reaches(H, r, v);
}

}  // namespace

ExpansionReport verify_expansion(const Witness& w, bool strict) {
  using Kind = ExpansionReport::Kind;
  const Multigraph& H = w.h.derived;
  const Multigraph& base = w.h.origin;
  std::vector<bool> reached(H.vertex_count(), false);
  std::vector<bool> path_done(base.edge_count(), false);
  auto absorb = [&](const Divisor& d) {
    for (VertexIndex v = 0; v < H.vertex_count(); ++v) {
      if (d[v] > 0) reached[v] = true;
    }
    for (EdgeIndex e = 0; e < base.edge_count(); ++e) {
      if (d[w.h.vertex_image[base.edge(e).first]] > 0 && d[w.h.vertex_image[base.edge(e).second]] > 0) {
        path_done[e] = true;
      }
    }
  };
  absorb(w.start);
  ExpansionReport report;
  for (const auto& [target, script] : w.scripts) {
    if (!base.find_vertex(target)) return {Kind::UnknownTarget, target, 0, "script for unknown target", {}};
  }
  for (VertexIndex t = 0; t < base.vertex_count(); ++t) {
    const std::string& name = base.name(t);
    const VertexIndex image = w.h.vertex_image[t];
    auto it = w.scripts.find(name);
    if (it == w.scripts.end()) {
      if (w.start[image] < 1) return {Kind::TargetMissed, name, 0, "no script and no starting chip", {}};
      continue;
    }
    std::vector<Divisor> states;
    try {
      states = run_script(H, w.start, it->second);
    } catch (const InvalidSetError& e) {
      return {Kind::InvalidSet, name, e.index(), e.what(), {}};
    }
    for (const auto& d : states) absorb(d);
    if (states.back()[image] < 1) return {Kind::TargetMissed, name, 0, "script ends without a chip on the target", {}};
  }
  for (VertexIndex x = 0; x < H.vertex_count(); ++x) {
    if (reached[x]) continue;
    const auto carrier = w.h.interior_carrier(x);
    if (!carrier) continue;
    if (!path_done[*carrier]) path_done[*carrier] = covers_both_ends(w, *carrier);
    if (path_done[*carrier]) continue;
    if (!strict && reaches(H, w.start, x)) {
      report.by_reduction.push_back(H.name(x));
      continue;
    }
    return {Kind::UnreachedInterior, H.name(x), 0, "no equivalent divisor puts a chip on this vertex", {}};
  }
  return report;
}

EventTrace replay_trace(const Witness& w, const std::vector<std::string>& start, const std::string& target) {
  EventTrace out;
  auto it = w.scripts.find(target);
  if (it == w.scripts.end()) return out;
  LabeledDivisor labeled;
  for (const auto& v : start) labeled.location.push_back(w.h.derived.vertex(v));
  for (const auto& moves : track_moves(w.h, labeled, it->second)) {
    if (moves.empty()) continue;
    auto& events = out.emplace_back();
    for (const auto& m : moves) events.insert({m.vertex, m.sign, m.edge});
  }
  return out;
}

EventTrace certificate_trace(const PartialCertificate& c, const std::string& target) {
  EventTrace out;
  const PairSequence* seq = c.sequence_for(target);
  if (seq == nullptr) return out;
  for (const auto& pair : seq->pairs) {
    if (pair.moves.empty()) continue;
    auto& events = out.emplace_back();
    for (const auto& m : pair.moves) events.insert({m.vertex, m.sign, m.edge});
  }
  return out;
}

}  // namespace sdgon
