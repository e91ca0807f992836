#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sdgon/certificate.hpp"
#include "sdgon/chip_firing.hpp"
#include "sdgon/ilp.hpp"
#include "sdgon/multigraph.hpp"
#include "sdgon/witness.hpp"

namespace sdgon {

/// Copies A_i t_i times for i < a_w and the last set once. Entry j of the
/// result is the pair index (0-based) the j-th expanded set comes from.
std::vector<std::size_t> replicate_sets(const PairSequence& seq, const IlpAssignment& a);

/// Number of interior vertices (counted from the departure side) in each set
/// of the window. Closed windows follow the staircase of p- and q-wide
/// blocks; open windows grow the prefix every p sets. `sigma` is the window
/// length. Throws InequalityViolation when l and sigma do not fit the window.
std::vector<int> schedule_interior(const EdgeTransit& tr, std::int64_t l, std::int64_t sigma);

/// Window length of `tr` in expanded sets.
std::int64_t window_length(const EdgeTransit& tr, const IlpAssignment& a);

/// Builds the subdivision and firing scripts a certificate describes. Sets that are empty or all of H fire nothing and
/// are dropped. Throws PreconditionError unless the certificate validates
/// and `a` satisfies its program.
Witness expand_certificate(const Multigraph& base, const PartialCertificate& c, const IlpAssignment& a);

struct ExpansionReport {
  enum class Kind { Ok, InvalidSet, TargetMissed, UnreachedInterior, UnknownTarget };
  Kind kind = Kind::Ok;
  std::string where;  // target or vertex id
  std::size_t index = 0;  // 1-based set index for InvalidSet
  std::string reason;
  /// Interior vertices that no replay state covers, directly or through chips
  /// on both ends of their path, and that needed a reduction to confirm.
  std::vector<std::string> by_reduction;

  bool ok() const { return kind == Kind::Ok; }
};

/// Replays every script and checks that each origin vertex ends covered and
/// that every interior vertex of H is reached: it holds a chip at some replay
/// step, or some divisor equivalent to the start has chips on both ends of
/// its path, or failing both, its reduced divisor has a chip on it. `strict`
/// drops the last rule.
ExpansionReport verify_expansion(const Witness& w, bool strict = false);

/// Per target, the non-empty origin events of the replay with labels erased,
/// in order. Used to compare a reconstruction with its certificate.
using EventTrace = std::vector<std::multiset<std::tuple<std::string, int, std::string>>>;
EventTrace replay_trace(const Witness& w, const std::vector<std::string>& start, const std::string& target);
EventTrace certificate_trace(const PartialCertificate& c, const std::string& target);

}  // namespace sdgon
