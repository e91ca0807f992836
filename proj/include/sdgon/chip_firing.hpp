#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdgon/multigraph.hpp"

namespace sdgon {

/// Effective divisor: chip count per vertex index of some graph.
struct Divisor {
  std::vector<int> chips;

  Divisor() = default;
  explicit Divisor(std::vector<int> counts) : chips(std::move(counts)) {}
  static Divisor zero(std::size_t vertex_count) { return Divisor(std::vector<int>(vertex_count, 0)); }

  int degree() const;
  int operator[](VertexIndex v) const { return chips[v]; }
  std::size_t size() const { return chips.size(); }
  friend bool operator==(const Divisor&, const Divisor&) = default;
  friend auto operator<=>(const Divisor&, const Divisor&) = default;
};

/// Individually labelled chips: chip j (1-based) sits on location[j - 1].
struct LabeledDivisor {
  std::vector<VertexIndex> location;

  int degree() const { return static_cast<int>(location.size()); }
  Divisor unlabeled(std::size_t vertex_count) const;
  friend bool operator==(const LabeledDivisor&, const LabeledDivisor&) = default;
};

/// Canonical labelling: chips sorted by (vertex name, multiplicity).
LabeledDivisor label_chips(const Multigraph& g, const Divisor& d);

using VertexSet = std::vector<bool>;

VertexSet make_set(const Multigraph& g, const std::vector<std::string>& names);
std::vector<std::string> set_names(const Multigraph& g, const VertexSet& set);

/// Increasing sequence of non-empty proper vertex sets.
class FiringScript {
 public:
  FiringScript() = default;
  /// Throws PreconditionError if a set is empty, equals V, or the sequence is
  /// not increasing under inclusion.
  explicit FiringScript(std::vector<VertexSet> sets);

  const std::vector<VertexSet>& sets() const { return sets_; }
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }
  const VertexSet& operator[](std::size_t i) const { return sets_[i]; }
  friend bool operator==(const FiringScript&, const FiringScript&) = default;

 private:
  std::vector<VertexSet> sets_;
};

/// Edges from v to vertices outside `set`, counted with multiplicity.
int cut_degree(const Multigraph& g, const VertexSet& set, VertexIndex v);

bool is_valid_set(const Multigraph& g, const Divisor& d, const VertexSet& set);

/// Throws InvalidSetError (index 0) when `set` is not valid for `d`.
Divisor fire_set(const Multigraph& g, const Divisor& d, const VertexSet& set);

/// D_0 .. D_r. Throws InvalidSetError carrying the 1-based index of the first
/// set that cannot be fired.
std::vector<Divisor> run_script(const Multigraph& g, const Divisor& d, const FiringScript& s);

struct BruteForceOptions {
  std::size_t state_cap = 1'000'000;
  /// Only explore increasing sequences of fired sets.
  bool monotone_only = false;
};

/// Exhaustive search over the equivalence class of `d`. Meant as an oracle for
/// graphs with a handful of vertices; throws StateCapExceeded past the cap.
bool reaches_bruteforce(const Multigraph& g, const Divisor& d, VertexIndex target,
                        const BruteForceOptions& options = {});

struct Reduction {
  Divisor reduced;
  /// How often each vertex was fired; the root is never fired.
  std::vector<std::int64_t> firings;
};

/// q-reduced divisor equivalent to `d`, computed with Dhar's burning algorithm.
Divisor reduce_at(const Multigraph& g, const Divisor& d, VertexIndex q);
Reduction reduce_with_firings(const Multigraph& g, const Divisor& d, VertexIndex q);

/// True iff `d` is equivalent to a divisor with a chip on `q`.
bool reaches(const Multigraph& g, const Divisor& d, VertexIndex q);
bool reaches_all(const Multigraph& g, const Divisor& d);

/// Monotone script realising d -> d - L f: the level sets {f >= m}, {f >= m-1},
/// ..., {f >= 1}. `firings` must be non-negative and vanish somewhere.
FiringScript level_set_script(const Multigraph& g, const std::vector<std::int64_t>& firings);

/// Level-set script from `d` to an equivalent divisor with a chip on `target`;
/// nullopt when `d` does not reach it.
std::optional<FiringScript> script_to_reach(const Multigraph& g, const Divisor& d,
                                            VertexIndex target);

struct DgonOptions {
  /// Re-check every reachability answer with reaches_bruteforce.
  bool cross_check = false;
  /// Only try divisors with at least one chip on this vertex. Sound for any
  /// vertex (a divisor reaching everything is equivalent to one that covers
  /// the anchor), but the reported witness is then the least anchored one.
  std::optional<VertexIndex> anchor;
  std::size_t state_cap = 1'000'000;
};

struct DgonResult {
  std::optional<int> value;  // nullopt: exceeded k_max
  Divisor witness;
};

/// Least k <= k_max such that some effective divisor of degree k reaches every
/// vertex; candidates are weak compositions in ascending lexicographic order.
DgonResult dgon(const Multigraph& g, int k_max, const DgonOptions& options = {});

/// Calls `visit` with every weak composition of `total` into `parts` parts in
/// ascending lexicographic order until it returns true.
template <class Visit>
bool for_each_composition(std::size_t parts, int total, Visit&& visit) {
  std::vector<int> current(parts, 0);
  auto rec = [&](auto&& self, std::size_t pos, int remaining) -> bool {
    if (pos + 1 == parts) {
      current[pos] = remaining;
      return visit(static_cast<const std::vector<int>&>(current));
    }
    for (int x = 0; x <= remaining; ++x) {
      current[pos] = x;
      if (self(self, pos + 1, remaining - x)) return true;
    }
    return false;
  };
  if (parts == 0) return total == 0 && visit(static_cast<const std::vector<int>&>(current));
  return rec(rec, 0, total);
}

}  // namespace sdgon
