#include "sdgon/certificate.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <tuple>

#include "sdgon/chip_firing.hpp"
#include "sdgon/errors.hpp"

namespace sdgon {

MoveTuple make_move_tuple(const Multigraph& g, const std::string& vertex, int chip, int sign,
                          const std::string& edge) {
  const VertexIndex v = g.vertex(vertex);
  const EdgeIndex e = g.edge_index(edge);
  if (!g.edge(e).touches(v)) {
    throw PreconditionError("edge '" + edge + "' is not incident to '" + vertex + "'");
  }
  if (sign != 1 && sign != -1) throw PreconditionError("sign must be +1 or -1");
  return MoveTuple{vertex, chip, sign, edge};
}

const PairSequence* PartialCertificate::sequence_for(const std::string& target) const {
  for (const auto& s : sequences) {
    if (s.target == target) return &s;
  }
  return nullptr;
}

std::size_t relevant_set_bound(int k, std::size_t n) {
  return 2 * static_cast<std::size_t>(std::max(k, 0)) * n + n;
}

void check_structure(const Multigraph& g, const PartialCertificate& c) {
  if (c.k < 0) throw PreconditionError("k must be non-negative");
  if (c.degree() > c.k) throw PreconditionError("divisor has more than k chips");
  for (const auto& v : c.start) {
    if (!g.find_vertex(v)) throw PreconditionError("chip placed on unknown vertex '" + v + "'");
  }
  const std::size_t bound = relevant_set_bound(c.k, g.vertex_count());
  std::set<std::string> targets;
  for (const auto& seq : c.sequences) {
    if (!g.find_vertex(seq.target)) {
      throw PreconditionError("sequence for unknown target '" + seq.target + "'");
    }
    if (!targets.insert(seq.target).second) {
      throw PreconditionError("two sequences for target '" + seq.target + "'");
    }
    if (seq.pairs.size() > bound) {
      throw PreconditionError("sequence for '" + seq.target + "' exceeds the length bound");
    }
    const std::vector<std::string>* prev = nullptr;
    for (const auto& pair : seq.pairs) {
      if (!std::is_sorted(pair.set.begin(), pair.set.end()) ||
          std::adjacent_find(pair.set.begin(), pair.set.end()) != pair.set.end()) {
        throw PreconditionError("vertex sets must be sorted and duplicate free");
      }
      for (const auto& v : pair.set) {
        if (!g.find_vertex(v)) throw PreconditionError("set contains unknown vertex '" + v + "'");
      }
      if (prev != nullptr &&
          !std::includes(pair.set.begin(), pair.set.end(), prev->begin(), prev->end())) {
        throw PreconditionError("sets of target '" + seq.target + "' are not increasing");
      }
      prev = &pair.set;
      for (const auto& t : pair.moves) {
        if (t.sign != 1 && t.sign != -1) throw PreconditionError("sign must be +1 or -1");
        if (t.chip < 1 || t.chip > c.degree()) {
          throw PreconditionError("chip label " + std::to_string(t.chip) + " out of range");
        }
      }
    }
  }
}

namespace {

constexpr std::array<std::string_view, kRequirementCount> kNames = {
    "Incidence",
    "Departure",
    "Arrival",
    "UniqueDeparturePerEdge",
    "UniqueArrivalPerEdge",
    "UniqueDeparturePerChip",
    "UniqueArrivalPerChip",
    "ImmediateArrival",
    "DepartureLocation",
    "ArrivalLocation",
    "OutgoingEdges",
    "PreviousDeparture",
    "NextArrival",
    "ReachAllVertices",
};

// One target's sequence with 1-based pair access; pairs beyond the end are absent.
class SequenceView {
 public:
  SequenceView(const Multigraph& g, const PairSequence* seq) : g_(g), seq_(seq) {
    if (seq_ == nullptr) return;
    for (const auto& pair : seq_->pairs) {
      VertexSet s(g.vertex_count(), false);
      for (const auto& v : pair.set) s[g.vertex(v)] = true;
      sets_.push_back(std::move(s));
    }
  }

  std::size_t size() const { return sets_.size(); }
  const std::set<MoveTuple>& moves(std::size_t i) const { return seq_->pairs[i - 1].moves; }
  bool in_set(std::size_t i, VertexIndex v) const { return sets_[i - 1][v]; }
  bool in_set(std::size_t i, const std::string& name) const {
    auto v = g_.find_vertex(name);
    return v && in_set(i, *v);
  }

 private:
  const Multigraph& g_;
  const PairSequence* seq_;
  std::vector<VertexSet> sets_;
};

// Endpoints of a tuple's edge when the tuple is well formed.
struct Resolved {
  VertexIndex vertex;
  EdgeIndex edge;
  VertexIndex other;
};

std::optional<Resolved> resolve(const Multigraph& g, const MoveTuple& t) {
  auto v = g.find_vertex(t.vertex);
  auto e = g.find_edge(t.edge);
  if (!v || !e || !g.edge(*e).touches(*v)) return std::nullopt;
  return Resolved{*v, *e, g.edge(*e).other(*v)};
}

bool contains(const std::set<MoveTuple>& moves, const std::string& v, int chip, int sign,
              const std::string& e) {
  return moves.contains(MoveTuple{v, chip, sign, e});
}

class Checker {
 public:
  Checker(const Multigraph& g, const PartialCertificate& c) : g_(g), c_(c) {}

  std::vector<Violation> run() {
    for (VertexIndex w = 0; w < g_.vertex_count(); ++w) {
      const std::string& target = g_.name(w);
      SequenceView view(g_, c_.sequence_for(target));
      check_sequence(target, view);
    }
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return std::move(out_);
  }

 private:
  void report(Requirement r, const std::string& w, std::size_t i,
              std::optional<MoveTuple> t, std::string detail) {
    out_.push_back(Violation{r, w, i, std::move(t), std::move(detail)});
  }

  // Greatest i' < i whose moves mention chip j, or 0.
  static std::size_t previous_with_chip(const SequenceView& s, std::size_t i, int j) {
    for (std::size_t p = i - 1; p >= 1; --p) {
      for (const auto& t : s.moves(p)) {
        if (t.chip == j) return p;
      }
    }
    return 0;
  }

  void check_sequence(const std::string& w, const SequenceView& s) {
    for (std::size_t i = 1; i <= s.size(); ++i) check_pair(w, s, i);
    check_reach(w, s);
  }

  void check_pair(const std::string& w, const SequenceView& s, std::size_t i) {
    const auto& moves = s.moves(i);
    using Key = std::pair<std::string, std::string>;
    std::map<Key, std::set<int>> dep_by_edge, arr_by_edge;
    std::map<int, std::set<Key>> dep_by_chip, arr_by_chip;

    for (const auto& t : moves) {
      const auto r = resolve(g_, t);
      if (!r) {
        report(Requirement::Incidence, w, i, t, "edge is not incident to the vertex");
      }
      if (t.departure()) {
        dep_by_edge[{t.vertex, t.edge}].insert(t.chip);
        dep_by_chip[t.chip].insert({t.vertex, t.edge});
      } else {
        arr_by_edge[{t.vertex, t.edge}].insert(t.chip);
        arr_by_chip[t.chip].insert({t.vertex, t.edge});
      }
      if (r) {
        const bool in_v = s.in_set(i, r->vertex);
        const bool in_other = s.in_set(i, r->other);
        if (t.departure() && !(in_v && !in_other)) {
          report(Requirement::Departure, w, i, t, "departure edge does not leave the set");
        }
        if (t.arrival() && !(!in_v && in_other)) {
          report(Requirement::Arrival, w, i, t, "arrival edge does not enter from the set");
        }
      }
      if (t.departure()) check_departure_location(w, s, i, t);
      if (t.arrival()) check_arrival_location(w, s, i, t);
      if (r) check_neighbours(w, s, i, t);
    }

    for (const auto& [key, chips] : dep_by_edge) {
      if (chips.size() > 1) {
        report(Requirement::UniqueDeparturePerEdge, w, i,
               MoveTuple{key.first, *chips.rbegin(), -1, key.second},
               "several chips leave along one edge");
      }
    }
    for (const auto& [key, chips] : arr_by_edge) {
      if (chips.size() > 1) {
        report(Requirement::UniqueArrivalPerEdge, w, i,
               MoveTuple{key.first, *chips.rbegin(), 1, key.second},
               "several chips arrive along one edge");
      }
    }
    for (const auto& [chip, places] : dep_by_chip) {
      if (places.size() > 1) {
        const auto& last = *places.rbegin();
        report(Requirement::UniqueDeparturePerChip, w, i,
               MoveTuple{last.first, chip, -1, last.second}, "chip departs twice");
      }
    }
    for (const auto& [chip, places] : arr_by_chip) {
      if (places.size() > 1) {
        const auto& last = *places.rbegin();
        report(Requirement::UniqueArrivalPerChip, w, i,
               MoveTuple{last.first, chip, 1, last.second}, "chip arrives twice");
      }
    }

    // A chip that departs and arrives in the same pair must cross one edge.
    for (const auto& [chip, deps] : dep_by_chip) {
      auto it = arr_by_chip.find(chip);
      if (it == arr_by_chip.end()) continue;
      for (const auto& d : deps) {
        for (const auto& a : it->second) {
          bool ok = d.second == a.second;
          if (ok) {
            auto e = g_.find_edge(d.second);
            auto dv = g_.find_vertex(d.first);
            auto av = g_.find_vertex(a.first);
            ok = e && dv && av && *dv != *av && g_.edge(*e).touches(*dv) &&
                 g_.edge(*e).touches(*av);
          }
          if (!ok) {
            report(Requirement::ImmediateArrival, w, i, MoveTuple{a.first, chip, 1, a.second},
                   "chip departs and arrives along different edges");
          }
        }
      }
    }

    check_outgoing(w, s, i);
  }

  void check_departure_location(const std::string& w, const SequenceView& s, std::size_t i,
                                const MoveTuple& t) {
    const std::size_t p = previous_with_chip(s, i, t.chip);
    if (p == 0) {
      const bool here = t.chip >= 1 && t.chip <= c_.degree() && c_.start[t.chip - 1] == t.vertex;
      if (!here) {
        report(Requirement::DepartureLocation, w, i, t, "chip does not start on this vertex");
      }
      return;
    }
    bool arrived = false;
    for (const auto& m : s.moves(p)) {
      if (m.chip == t.chip && m.arrival() && m.vertex == t.vertex) arrived = true;
    }
    if (!arrived) {
      report(Requirement::DepartureLocation, w, i, t, "chip last arrived elsewhere");
    }
  }

  void check_arrival_location(const std::string& w, const SequenceView& s, std::size_t i,
                              const MoveTuple& t) {
    for (const auto& m : s.moves(i)) {
      if (m.chip == t.chip && m.departure() && m.edge == t.edge && m.vertex != t.vertex) return;
    }
    const std::size_t p = previous_with_chip(s, i, t.chip);
    if (p != 0) {
      const auto& prev = s.moves(p);
      if (!contains(prev, t.vertex, t.chip, 1, t.edge)) {
        for (const auto& m : prev) {
          if (m.chip == t.chip && m.departure() && m.edge == t.edge && m.vertex != t.vertex) {
            return;
          }
        }
      }
    }
    report(Requirement::ArrivalLocation, w, i, t, "chip was not travelling along this edge");
  }

  // Departures persist into the next pair; arrivals are announced in advance.
  void check_neighbours(const std::string& w, const SequenceView& s, std::size_t i,
                        const MoveTuple& t) {
    if (i > 1 && t.departure() && s.in_set(i - 1, t.vertex) && s.in_set(i, t.vertex)) {
      bool ok = false;
      for (const auto& m : s.moves(i - 1)) {
        if (m.departure() && m.vertex == t.vertex && m.edge == t.edge && m.chip != t.chip) {
          ok = true;
        }
      }
      if (!ok) {
        report(Requirement::PreviousDeparture, w, i, t,
               "no other chip left along this edge in the previous pair");
      }
    }
    if (i < s.size() && t.arrival() && !s.in_set(i, t.vertex) && !s.in_set(i + 1, t.vertex)) {
      bool ok = false;
      for (const auto& m : s.moves(i + 1)) {
        if (m.arrival() && m.vertex == t.vertex && m.edge == t.edge && m.chip != t.chip) {
          ok = true;
        }
      }
      if (!ok) {
        report(Requirement::NextArrival, w, i, t,
               "no other chip arrives along this edge in the next pair");
      }
    }
  }

  void check_outgoing(const std::string& w, const SequenceView& s, std::size_t i) {
    for (const Edge& e : g_.edges()) {
      const bool a = s.in_set(i, e.first);
      const bool b = s.in_set(i, e.second);
      if (a == b) continue;
      const std::string& inside = g_.name(a ? e.first : e.second);
      const std::string& outside = g_.name(a ? e.second : e.first);
      bool ok = false;
      for (const auto& m : s.moves(i)) {
        if (m.departure() && m.vertex == inside && m.edge == e.id) ok = true;
      }
      // A chip that left earlier and is still on the way.
      for (std::size_t p = 1; p < i && !ok; ++p) {
        for (const auto& m : s.moves(p)) {
          if (!(m.departure() && m.vertex == inside && m.edge == e.id)) continue;
          bool landed = false;
          for (std::size_t q = p; q < i && !landed; ++q) {
            landed = contains(s.moves(q), outside, m.chip, 1, e.id);
          }
          if (!landed) {
            ok = true;
            break;
          }
        }
      }
      if (!ok) {
        report(Requirement::OutgoingEdges, w, i,
               MoveTuple{inside, 0, -1, e.id}, "cut edge carries no chip");
      }
    }
  }

  void check_reach(const std::string& w, const SequenceView& s) {
    std::set<int> left_w;
    for (std::size_t i = 1; i <= s.size(); ++i) {
      for (const auto& m : s.moves(i)) {
        if (m.departure() && m.vertex == w) left_w.insert(m.chip);
      }
    }
    for (int j = 1; j <= c_.degree(); ++j) {
      if (c_.start[j - 1] == w && !left_w.contains(j)) return;
    }
    for (std::size_t i = 1; i <= s.size(); ++i) {
      for (const auto& m : s.moves(i)) {
        if (!(m.arrival() && m.vertex == w)) continue;
        bool leaves = false;
        for (std::size_t p = i; p <= s.size() && !leaves; ++p) {
          for (const auto& d : s.moves(p)) {
            if (d.departure() && d.vertex == w && d.chip == m.chip) leaves = true;
          }
        }
        if (!leaves) return;
      }
    }
    report(Requirement::ReachAllVertices, w, 0, std::nullopt, "no chip ends on the target");
  }

  const Multigraph& g_;
  const PartialCertificate& c_;
  std::vector<Violation> out_;
};

}  // namespace

std::string_view requirement_name(Requirement r) {
  return kNames.at(static_cast<std::size_t>(r) - 1);
}

std::optional<Requirement> requirement_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Requirement>(i + 1);
  }
  return std::nullopt;
}

std::vector<Violation> validate(const Multigraph& g, const PartialCertificate& c) {
  check_structure(g, c);
  return Checker(g, c).run();
}

std::set<Requirement> violated_requirements(const std::vector<Violation>& violations) {
  std::set<Requirement> out;
  for (const auto& v : violations) out.insert(v.requirement);
  return out;
}

}  // namespace sdgon
