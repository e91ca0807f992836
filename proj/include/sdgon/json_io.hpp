#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdgon/certificate.hpp"
#include "sdgon/chip_firing.hpp"
#include "sdgon/expansion.hpp"
#include "sdgon/gonality.hpp"
#include "sdgon/ilp.hpp"
#include "sdgon/multigraph.hpp"
#include "sdgon/witness.hpp"

namespace sdgon {

using Json = nlohmann::json;

/// Reads a whole file as JSON. Throws ParseError.
Json load_json_file(const std::string& path);
Json parse_json_text(const std::string& text);

/// `{"vertices": [...], "edges": [{"id": ..., "ends": [a, b]}]}`.
Multigraph graph_from_json(const Json& j, std::vector<std::string>* dropped_loops = nullptr);
Json graph_to_json(const Multigraph& g);

/// Accepts `{"counts": {...}}` or the labelled `{"chips": {"1": v, ...}}`.
Divisor divisor_from_json(const Multigraph& g, const Json& j);
Json divisor_to_json(const Multigraph& g, const Divisor& d);

/// Chip locations by label. The counts form is labelled canonically
/// (vertex id, then multiplicity).
std::vector<std::string> labeled_from_json(const Json& j);
Json labeled_to_json(const std::vector<std::string>& start);

PartialCertificate certificate_from_json(const Json& j);
Json certificate_to_json(const PartialCertificate& c);

Json violation_to_json(const Violation& v);

std::map<std::string, int> lengths_from_json(const Json& j);

/// Script as a list of sorted vertex-id lists.
FiringScript script_from_json(const Multigraph& g, const Json& j);
Json script_to_json(const Multigraph& g, const FiringScript& s);

/// `{"variables": [...], "constraints": [{"rule", "coefficients", "relation", "rhs"}]}`.
IlpInstance instance_from_json(const Json& j);
Json instance_to_json(const IlpInstance& inst);

/// Flat name -> value map.
IlpAssignment assignment_from_json(const Json& j);
Json assignment_to_json(const IlpAssignment& a);

/// `{"graph", "base": "graph"|"g1", "lengths", "divisor", "scripts": {target: script}}`.
/// With base "g1" the lengths, divisor and scripts refer to G1 built from
/// `graph`. Edges without a length get length one.
Witness witness_from_json(const Json& j);
Json witness_to_json(const Witness& w);

/// `{"ok", "kind", "by_reduction"}` plus `where`, `reason` and `index` on failure.
Json report_to_json(const ExpansionReport& r);
/// `{"accepted", "stage", "reason", "violations"}`.
Json verdict_to_json(const NpVerdict& v);

}  // namespace sdgon
