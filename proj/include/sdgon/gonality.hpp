#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdgon/certificate.hpp"
#include "sdgon/chip_firing.hpp"
#include "sdgon/ilp.hpp"
#include "sdgon/multigraph.hpp"
#include "sdgon/witness.hpp"

namespace sdgon {

struct NpOptions {
  /// The certificate lives on G1 (true) or on G itself.
  bool certificate_on_g1 = true;
  /// Also expand and replay; a failed replay turns an accept into a reject.
  bool audit = false;
};

struct NpVerdict {
  enum class Stage { Accepted, Degree, Structure, Validation, Program, Audit };
  Stage stage = Stage::Accepted;
  std::string reason;
  std::vector<Violation> violations;

  bool accepted() const { return stage == Stage::Accepted; }
};

std::string_view stage_name(NpVerdict::Stage s);

/// Degree, the fourteen requirements, then the program. No search.
NpVerdict verify_np(const Multigraph& g, int k, const PartialCertificate& c, const IlpAssignment& a,
                    const NpOptions& options = {});

struct SdgonOptions {
  std::size_t state_cap = 1'000'000;
};

struct SdgonResult {
  std::optional<int> value;  // nullopt: nothing within the caps
  /// Caps that limit the claim: "l_max" when a larger subdivision might do
  /// better, plus "k_max" when nothing was found.
  std::vector<std::string> binding;
  std::map<std::string, int> lengths;  // on G1 edges
  SubdivisionMap h;                    // G1 -> H
  Divisor divisor;                     // on H
  std::size_t subdivisions_checked = 0;
};

/// G1 length vectors for every total length 2..2*l_max per edge of G, split
/// as (max(1, T - l_max), rest). Other splits of the same totals give
/// isomorphic graphs.
std::vector<std::map<std::string, int>> length_grid(const Multigraph& g, int l_max);

/// Least dgon over the grid, capped at k_max. The witness is the first grid
/// point reaching that value, with the least anchored divisor on it.
SdgonResult sdgon_search(const Multigraph& g, int k_max, int l_max, const SdgonOptions& options = {});

/// Turns a divisor on a subdivision of G1 into a witness whose chips sit on
/// G1 vertices: chips are consolidated per edge of G, the split of each edge
/// is moved onto its remaining interior chip, and every G1 vertex gets a
/// reduction script.
Witness witness_on_g1(const Multigraph& g, const SubdivisionMap& h, const Divisor& d);

struct PipelineReport {
  std::size_t witnesses = 0;
  std::size_t accepted = 0;
  std::size_t expanded = 0;
  std::size_t by_reduction = 0;  // expansions that needed the reduction fallback
  std::map<std::string, double> seconds;
  std::vector<nlohmann::json> counterexamples;

  bool ok() const { return counterexamples.empty() && accepted == witnesses; }
};

/// For every grid point whose subdivision has dgon <= k: witness, certificate,
/// program, solve, verify_np, expansion and replay, once with the solver's
/// assignment and once with the ground truth.
PipelineReport pipeline_selftest(const Multigraph& g, int k, int l_max, std::int64_t solve_cap = 1 << 10);

}  // namespace sdgon
