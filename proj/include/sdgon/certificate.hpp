#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sdgon/multigraph.hpp"

namespace sdgon {

/// A labelled chip leaving (-1) or entering (+1) a vertex along an edge.
/// Ids are kept as text so that a certificate can be checked against any graph.
struct MoveTuple {
  std::string vertex;
  int chip = 0;
  int sign = 0;
  std::string edge;

  bool departure() const { return sign < 0; }
  bool arrival() const { return sign > 0; }
  friend auto operator<=>(const MoveTuple&, const MoveTuple&) = default;
  friend bool operator==(const MoveTuple&, const MoveTuple&) = default;
};

/// Checked construction: throws PreconditionError when `edge` is not incident to `vertex`.
MoveTuple make_move_tuple(const Multigraph& g, const std::string& vertex, int chip, int sign,
                          const std::string& edge);

struct CertificatePair {
  std::vector<std::string> set;  // sorted, duplicate free
  std::set<MoveTuple> moves;

  friend bool operator==(const CertificatePair&, const CertificatePair&) = default;
};

struct PairSequence {
  std::string target;
  std::vector<CertificatePair> pairs;

  friend bool operator==(const PairSequence&, const PairSequence&) = default;
};

struct PartialCertificate {
  int k = 0;
  /// start[j - 1] is the vertex holding chip j.
  std::vector<std::string> start;
  std::vector<PairSequence> sequences;

  int degree() const { return static_cast<int>(start.size()); }
  /// Sequence for `target`, or nullptr when the certificate leaves it empty.
  const PairSequence* sequence_for(const std::string& target) const;
  friend bool operator==(const PartialCertificate&, const PartialCertificate&) = default;
};

/// Upper bound on the pairs of one sequence: 2kn + n.
std::size_t relevant_set_bound(int k, std::size_t n);

/// Structural well-formedness (everything validate() takes for granted):
/// known vertices in sets and targets, increasing sets, signs in {-1, +1},
/// chip labels in 1..degree, degree <= k, sequence lengths within the
/// relevant-set bound, at most one sequence per target. Throws PreconditionError.
void check_structure(const Multigraph& g, const PartialCertificate& c);

enum class Requirement {
  Incidence = 1,
  Departure,
  Arrival,
  UniqueDeparturePerEdge,
  UniqueArrivalPerEdge,
  UniqueDeparturePerChip,
  UniqueArrivalPerChip,
  ImmediateArrival,
  DepartureLocation,
  ArrivalLocation,
  OutgoingEdges,
  PreviousDeparture,
  NextArrival,
  ReachAllVertices,
};

inline constexpr int kRequirementCount = 14;

std::string_view requirement_name(Requirement r);
std::optional<Requirement> requirement_from_name(std::string_view name);

struct Violation {
  Requirement requirement;
  std::string target;
  std::size_t index = 0;  // 1-based pair index; 0 for whole-sequence checks
  std::optional<MoveTuple> tuple;
  std::string detail;

  friend auto operator<=>(const Violation&, const Violation&) = default;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Checks all fourteen requirements. Calls check_structure first. The result
/// is sorted and does not depend on how tuples or sequences are stored.
std::vector<Violation> validate(const Multigraph& g, const PartialCertificate& c);

std::set<Requirement> violated_requirements(const std::vector<Violation>& violations);

}  // namespace sdgon
