#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sdgon/certificate.hpp"
#include "sdgon/multigraph.hpp"

namespace sdgon {

enum class Rule {
  EdgeLength,
  FiringGap,
  ImmediateArrival,
  ConsecutiveDeparture,
  ArrivalStep,
  TransitUpper,
  TransitLower,
  /// Chips still on the edge when the window closes: Σt <= p(l - 1).
  TransitOpen,
};

std::string_view rule_tag(Rule r);
std::optional<Rule> rule_from_tag(std::string_view tag);

enum class Relation { GreaterEqual, Equal, LessEqual };

std::string_view relation_symbol(Relation r);
std::optional<Relation> relation_from_symbol(std::string_view s);

/// Σ coefficients[x] * x  (relation)  rhs
struct LinearConstraint {
  std::map<std::string, std::int64_t> coefficients;
  Relation relation = Relation::GreaterEqual;
  std::int64_t rhs = 0;
  Rule rule = Rule::EdgeLength;

  friend auto operator<=>(const LinearConstraint&, const LinearConstraint&) = default;
  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

struct IlpInstance {
  std::vector<std::string> variables;  // sorted
  std::vector<LinearConstraint> constraints;
};

using IlpAssignment = std::map<std::string, std::int64_t>;

std::string length_var(const std::string& edge);
std::string gap_var(const std::string& target, std::size_t index);

/// One edge window of one target: chips leave `from` at pairs i0..i1 and
/// reach `to` at pairs i2..i3. Without arrivals the window runs to `end`,
/// the last pair at which `to` is still outside the set.
struct EdgeTransit {
  std::string target;
  EdgeIndex edge = 0;
  VertexIndex from = 0;
  VertexIndex to = 0;
  std::size_t i0 = 0, i1 = 0;
  std::optional<std::size_t> i2, i3;
  std::size_t end = 0;
  std::size_t pairs = 0;  // a_w

  bool open() const { return !i2.has_value(); }
  std::int64_t p() const { return static_cast<std::int64_t>(i1 - i0 + 1); }
  std::int64_t q() const { return open() ? 0 : static_cast<std::int64_t>(*i3 - *i2 + 1); }
  std::size_t last() const { return open() ? end : *i3; }
};

/// Windows of every (target, edge) pair with at least one departure, in
/// target order then edge order. Expects a validated certificate.
std::vector<EdgeTransit> edge_transits(const Multigraph& base, const PartialCertificate& c);

/// The program I_C. Throws PreconditionError unless validate(base, c) is empty.
IlpInstance build_ilp(const Multigraph& base, const PartialCertificate& c);

/// Throws MissingVariableError when `a` does not assign an instance variable.
bool check_assignment(const IlpInstance& inst, const IlpAssignment& a);

struct SolveStats {
  std::uint64_t nodes = 0;
};

/// Lexicographically least (by variable name) solution with every value in
/// [1, cap], or nullopt when none exists within the cap.
std::optional<IlpAssignment> solve(const IlpInstance& inst, std::int64_t cap = 1 << 16,
                                   SolveStats* stats = nullptr);

using BigInt = boost::multiprecision::cpp_int;

struct MagnitudeBound {
  std::size_t n = 0;  // variables after adding one slack per inequality
  std::size_t m = 0;  // equations
  std::int64_t a = 0;  // largest absolute coefficient or right-hand side
  BigInt value;        // n (m a)^(2m + 1)
};

MagnitudeBound magnitude_bound(const IlpInstance& inst);

}  // namespace sdgon
