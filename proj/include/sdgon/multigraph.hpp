#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace sdgon {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

/// Edge with an ordered endpoint pair. The order is fixed at load time and
/// orients every subdivision of the edge (interior vertices count from `first`).
struct Edge {
  std::string id;
  VertexIndex first = 0;
  VertexIndex second = 0;

  VertexIndex other(VertexIndex v) const { return v == first ? second : first; }
  bool touches(VertexIndex v) const { return v == first || v == second; }
};

struct EdgeSpec {
  std::string id;
  std::string first;
  std::string second;
};

/// Connected loop-free multigraph with stable string ids. Immutable once built.
class Multigraph {
 public:
  Multigraph() = default;

  /// Builds and checks the graph. Self-loops are dropped and their ids are
  /// appended to `dropped_loops` when given. Throws ParseError on duplicate or
  /// dangling ids and DisconnectedGraphError when the result is not connected.
  static Multigraph build(std::vector<std::string> vertices,
                          const std::vector<EdgeSpec>& edges,
                          std::vector<std::string>* dropped_loops = nullptr);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& name(VertexIndex v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const EdgeIndex> incident(VertexIndex v) const { return incidence_[v]; }

  std::optional<VertexIndex> find_vertex(const std::string& name) const;
  std::optional<EdgeIndex> find_edge(const std::string& id) const;
  /// Like find_*, but throws UnknownIdError.
  VertexIndex vertex(const std::string& name) const;
  EdgeIndex edge_index(const std::string& id) const;

  /// Number of edges (with multiplicity) joining u and v.
  int multiplicity(VertexIndex u, VertexIndex v) const;
  bool has_parallel_edges() const;

  /// Graphviz rendering; edge labels are edge ids.
  std::string to_dot() const;

 private:
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeIndex>> incidence_;
  std::unordered_map<std::string, VertexIndex> vertex_lookup_;
  std::unordered_map<std::string, EdgeIndex> edge_lookup_;
};

/// A subdivision `derived` of `origin`: every origin edge became a path.
///
/// Origin vertices keep their names in the derived graph. Paths are stored
/// from the edge's first endpoint to its second endpoint.
struct SubdivisionMap {
  Multigraph origin;
  Multigraph derived;
  std::vector<VertexIndex> vertex_image;               // origin vertex -> derived vertex
  std::vector<std::vector<VertexIndex>> path_vertices;  // per origin edge, endpoints included
  std::vector<std::vector<EdgeIndex>> path_edges;       // per origin edge
  std::vector<EdgeIndex> carrier;                       // derived edge -> origin edge
  std::vector<std::optional<VertexIndex>> preimage;     // derived vertex -> origin vertex

  std::size_t length(EdgeIndex origin_edge) const { return path_edges[origin_edge].size(); }
  bool is_origin_vertex(VertexIndex derived_vertex) const {
    return preimage[derived_vertex].has_value();
  }
  /// Origin edge whose path has `derived_vertex` as an interior vertex.
  std::optional<EdgeIndex> interior_carrier(VertexIndex derived_vertex) const;
  /// Interior vertices of the path of `origin_edge`, starting next to `from`.
  std::vector<VertexIndex> interior_from(EdgeIndex origin_edge, VertexIndex from_origin) const;
};

SubdivisionMap identity_map(const Multigraph& g);

/// G1: every edge subdivided exactly once. Midpoint of edge `e` is named
/// `e.m`; the two halves are `e.a` (first endpoint side) and `e.b`.
SubdivisionMap build_g1(const Multigraph& g);

/// Subdivides edge e of `base` into `lengths[e]` edges. Interior vertices are
/// `e#1 .. e#(l-1)` counted from the first endpoint, edges `e/1 .. e/l`; an
/// edge of length one keeps its id. Throws PreconditionError on a
/// non-positive length or a generated id that collides with an existing one.
SubdivisionMap expand_by_lengths(const Multigraph& base, std::span<const int> lengths);
SubdivisionMap expand_by_lengths(const Multigraph& base,
                                 const std::map<std::string, int>& lengths);
/// Expands the derived graph of `g1map`; the result maps g1map.derived -> H.
SubdivisionMap expand_by_lengths(const SubdivisionMap& g1map,
                                 const std::map<std::string, int>& lengths);

/// Composition first.origin -> second.derived; requires first.derived to be
/// second.origin (compared by ids).
SubdivisionMap compose(const SubdivisionMap& first, const SubdivisionMap& second);

/// Contracts every expansion path back to one edge. The result has the origin
/// vertex names and edge ids, so it equals `map.origin` exactly.
Multigraph contract(const SubdivisionMap& map);

}  // namespace sdgon
