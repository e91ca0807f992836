#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sdgon/certificate.hpp"
#include "sdgon/chip_firing.hpp"
#include "sdgon/ilp.hpp"
#include "sdgon/multigraph.hpp"

namespace sdgon {

/// A subdivision H of a base graph, a divisor on H and, per base vertex, a
/// script on H that puts a chip on it.
struct Witness {
  SubdivisionMap h;  // base -> H
  Divisor start;
  std::map<std::string, FiringScript> scripts;  // keyed by base vertex id
};

/// Throws PreconditionError when a script is illegal or ends without a chip
/// on its target, UnknownIdError for an unknown target.
void check_witness(const Witness& w);

/// Moves chips off path interiors until each path holds at most one interior
/// chip. Per path (origin edge order) the two chips nearest the first endpoint
/// are pushed apart by growing intervals; the combined firing vector is
/// returned as its level-set script.
std::pair<Divisor, FiringScript> consolidate_chips(const SubdivisionMap& h, const Divisor& d);

/// 1-based indices of sets that move a chip off or onto an origin vertex or
/// first include one. Throws InvalidSetError on an illegal script.
std::vector<std::size_t> extract_relevant(const SubdivisionMap& h, const Divisor& d,
                                          const FiringScript& s);

/// Per set, the moves of labelled chips that start or end on an origin vertex.
/// A fired vertex sends its lowest labels along its cut edges taken in edge-id
/// order. Tuples name origin vertices and origin edges.
std::vector<std::set<MoveTuple>> track_moves(const SubdivisionMap& h, const LabeledDivisor& labeled,
                                             const FiringScript& s);

/// Certificate on h.origin. Throws PreconditionError when the start divisor has
/// a chip off the origin vertices or degree above k.
PartialCertificate build_certificate(const Witness& w, int k);

/// l_e from H, t_{w,i} as gaps between relevant indices, and t_{w,a_w} = 1.
IlpAssignment ground_truth(const Witness& w);

}  // namespace sdgon
