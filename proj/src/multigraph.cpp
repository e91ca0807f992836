#include "sdgon/multigraph.hpp"

#include <algorithm>
#include <sstream>

#include "sdgon/errors.hpp"

namespace sdgon {

Multigraph Multigraph::build(std::vector<std::string> vertices,
                             const std::vector<EdgeSpec>& edges,
                             std::vector<std::string>* dropped_loops) {
  Multigraph g;
  g.names_ = std::move(vertices);
  for (VertexIndex v = 0; v < g.names_.size(); ++v) {
    if (!g.vertex_lookup_.emplace(g.names_[v], v).second) {
      throw ParseError("duplicate vertex id '" + g.names_[v] + "'");
    }
  }
  g.incidence_.resize(g.names_.size());
  for (const EdgeSpec& spec : edges) {
    if (g.edge_lookup_.contains(spec.id)) {
      throw ParseError("duplicate edge id '" + spec.id + "'");
    }
    auto a = g.find_vertex(spec.first);
    auto b = g.find_vertex(spec.second);
    if (!a || !b) {
      throw ParseError("edge '" + spec.id + "' references an unknown vertex");
    }
    if (*a == *b) {
      if (dropped_loops != nullptr) dropped_loops->push_back(spec.id);
      continue;
    }
    const EdgeIndex e = g.edges_.size();
    g.edges_.push_back(Edge{spec.id, *a, *b});
    g.edge_lookup_.emplace(spec.id, e);
    g.incidence_[*a].push_back(e);
    g.incidence_[*b].push_back(e);
  }

  if (g.names_.empty()) throw DisconnectedGraphError("graph has no vertices");
  std::vector<bool> seen(g.names_.size(), false);
  std::vector<VertexIndex> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexIndex v = stack.back();
    stack.pop_back();
    for (EdgeIndex e : g.incidence_[v]) {
      const VertexIndex w = g.edges_[e].other(v);
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != g.names_.size()) {
    throw DisconnectedGraphError("graph is not connected");
  }
  return g;
}

std::optional<VertexIndex> Multigraph::find_vertex(const std::string& name) const {
  auto it = vertex_lookup_.find(name);
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> Multigraph::find_edge(const std::string& id) const {
  auto it = edge_lookup_.find(id);
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

VertexIndex Multigraph::vertex(const std::string& name) const {
  if (auto v = find_vertex(name)) return *v;
  throw UnknownIdError("unknown vertex '" + name + "'");
}

EdgeIndex Multigraph::edge_index(const std::string& id) const {
  if (auto e = find_edge(id)) return *e;
  throw UnknownIdError("unknown edge '" + id + "'");
}

int Multigraph::multiplicity(VertexIndex u, VertexIndex v) const {
  int count = 0;
  for (EdgeIndex e : incidence_[u]) {
    if (edges_[e].other(u) == v) ++count;
  }
  return count;
}

bool Multigraph::has_parallel_edges() const {
  for (VertexIndex v = 0; v < vertex_count(); ++v) {
    std::vector<VertexIndex> nbrs;
    for (EdgeIndex e : incidence_[v]) nbrs.push_back(edges_[e].other(v));
    std::sort(nbrs.begin(), nbrs.end());
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) return true;
  }
  return false;
}

std::string Multigraph::to_dot() const {
  std::ostringstream out;
  out << "graph G {\n";
  for (const auto& n : names_) out << "  \"" << n << "\";\n";
  for (const auto& e : edges_) {
    out << "  \"" << names_[e.first] << "\" -- \"" << names_[e.second]
        << "\" [label=\"" << e.id << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::optional<EdgeIndex> SubdivisionMap::interior_carrier(VertexIndex derived_vertex) const {
  if (is_origin_vertex(derived_vertex)) return std::nullopt;
  // An interior vertex has degree two and both its edges share one carrier.
  auto inc = derived.incident(derived_vertex);
  if (inc.empty()) return std::nullopt;
  return carrier[inc.front()];
}

std::vector<VertexIndex> SubdivisionMap::interior_from(EdgeIndex origin_edge,
                                                       VertexIndex from_origin) const {
  const auto& path = path_vertices[origin_edge];
  std::vector<VertexIndex> interior(path.begin() + 1, path.end() - 1);
  if (origin.edge(origin_edge).first != from_origin) {
    std::reverse(interior.begin(), interior.end());
  }
  return interior;
}

namespace {

// Builds a SubdivisionMap from per-edge interior name lists.
struct PathPlan {
  std::vector<std::string> interior;  // from first endpoint
  std::vector<std::string> edge_ids;  // interior.size() + 1 of them
};

SubdivisionMap assemble(const Multigraph& base, const std::vector<PathPlan>& plans) {
  std::vector<std::string> names = base.names();
  std::vector<EdgeSpec> specs;
  for (EdgeIndex e = 0; e < base.edge_count(); ++e) {
    const Edge& edge = base.edge(e);
    const PathPlan& plan = plans[e];
    names.insert(names.end(), plan.interior.begin(), plan.interior.end());
    std::vector<std::string> chain;
    chain.push_back(base.name(edge.first));
    chain.insert(chain.end(), plan.interior.begin(), plan.interior.end());
    chain.push_back(base.name(edge.second));
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      specs.push_back(EdgeSpec{plan.edge_ids[i], chain[i], chain[i + 1]});
    }
  }

  SubdivisionMap map;
  map.origin = base;
  try {
    map.derived = Multigraph::build(std::move(names), specs);
  } catch (const ParseError& err) {
    throw PreconditionError(std::string("subdivision id collision: ") + err.what());
  }
  map.vertex_image.resize(base.vertex_count());
  for (VertexIndex v = 0; v < base.vertex_count(); ++v) map.vertex_image[v] = v;
  map.preimage.assign(map.derived.vertex_count(), std::nullopt);
  for (VertexIndex v = 0; v < base.vertex_count(); ++v) map.preimage[v] = v;
  map.carrier.assign(map.derived.edge_count(), 0);
  map.path_vertices.resize(base.edge_count());
  map.path_edges.resize(base.edge_count());
  for (EdgeIndex e = 0; e < base.edge_count(); ++e) {
    const Edge& edge = base.edge(e);
    auto& pv = map.path_vertices[e];
    pv.push_back(edge.first);
    for (const auto& n : plans[e].interior) pv.push_back(map.derived.vertex(n));
    pv.push_back(edge.second);
    for (const auto& id : plans[e].edge_ids) {
      const EdgeIndex d = map.derived.edge_index(id);
      map.path_edges[e].push_back(d);
      map.carrier[d] = e;
    }
  }
  return map;
}

}  // namespace

SubdivisionMap identity_map(const Multigraph& g) {
  std::vector<PathPlan> plans(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) plans[e].edge_ids = {g.edge(e).id};
  return assemble(g, plans);
}

SubdivisionMap build_g1(const Multigraph& g) {
  std::vector<PathPlan> plans(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const std::string& id = g.edge(e).id;
    plans[e].interior = {id + ".m"};
    plans[e].edge_ids = {id + ".a", id + ".b"};
  }
  return assemble(g, plans);
}

SubdivisionMap expand_by_lengths(const Multigraph& base, std::span<const int> lengths) {
  if (lengths.size() != base.edge_count()) {
    throw PreconditionError("expected one length per edge");
  }
  std::vector<PathPlan> plans(base.edge_count());
  for (EdgeIndex e = 0; e < base.edge_count(); ++e) {
    const std::string& id = base.edge(e).id;
    const int l = lengths[e];
    if (l < 1) throw PreconditionError("edge '" + id + "' has non-positive length");
    if (l == 1) {
      plans[e].edge_ids = {id};
      continue;
    }
    for (int i = 1; i < l; ++i) plans[e].interior.push_back(id + "#" + std::to_string(i));
    for (int i = 1; i <= l; ++i) plans[e].edge_ids.push_back(id + "/" + std::to_string(i));
  }
  return assemble(base, plans);
}

SubdivisionMap expand_by_lengths(const Multigraph& base,
                                 const std::map<std::string, int>& lengths) {
  std::vector<int> values(base.edge_count(), 0);
  for (const auto& [id, l] : lengths) {
    auto e = base.find_edge(id);
    if (!e) throw PreconditionError("length given for unknown edge '" + id + "'");
    values[*e] = l;
  }
  for (EdgeIndex e = 0; e < base.edge_count(); ++e) {
    if (!lengths.contains(base.edge(e).id)) {
      throw PreconditionError("missing length for edge '" + base.edge(e).id + "'");
    }
  }
  return expand_by_lengths(base, values);
}

SubdivisionMap expand_by_lengths(const SubdivisionMap& g1map,
                                 const std::map<std::string, int>& lengths) {
  return expand_by_lengths(g1map.derived, lengths);
}

SubdivisionMap compose(const SubdivisionMap& first, const SubdivisionMap& second) {
  if (first.derived.names() != second.origin.names()) {
    throw PreconditionError("compose: intermediate graphs differ");
  }
  SubdivisionMap out;
  out.origin = first.origin;
  out.derived = second.derived;
  out.vertex_image.resize(first.origin.vertex_count());
  for (VertexIndex v = 0; v < first.origin.vertex_count(); ++v) {
    out.vertex_image[v] = second.vertex_image[first.vertex_image[v]];
  }
  out.preimage.assign(out.derived.vertex_count(), std::nullopt);
  for (VertexIndex v = 0; v < first.origin.vertex_count(); ++v) {
    out.preimage[out.vertex_image[v]] = v;
  }
  out.carrier.assign(out.derived.edge_count(), 0);
  out.path_vertices.resize(first.origin.edge_count());
  out.path_edges.resize(first.origin.edge_count());
  for (EdgeIndex e = 0; e < first.origin.edge_count(); ++e) {
    const auto& mid_vertices = first.path_vertices[e];
    const auto& mid_edges = first.path_edges[e];
    auto& pv = out.path_vertices[e];
    auto& pe = out.path_edges[e];
    pv.push_back(second.vertex_image[mid_vertices.front()]);
    for (std::size_t i = 0; i < mid_edges.size(); ++i) {
      const EdgeIndex me = mid_edges[i];
      const VertexIndex from = mid_vertices[i];
      // second stores paths from the intermediate edge's first endpoint.
      const bool forward = first.derived.edge(me).first == from;
      std::vector<VertexIndex> sub = second.path_vertices[me];
      std::vector<EdgeIndex> sub_edges = second.path_edges[me];
      if (!forward) {
        std::reverse(sub.begin(), sub.end());
        std::reverse(sub_edges.begin(), sub_edges.end());
      }
      pv.insert(pv.end(), sub.begin() + 1, sub.end());
      pe.insert(pe.end(), sub_edges.begin(), sub_edges.end());
    }
    for (EdgeIndex d : pe) out.carrier[d] = e;
  }
  return out;
}

Multigraph contract(const SubdivisionMap& map) {
  std::vector<std::string> names;
  for (VertexIndex v = 0; v < map.origin.vertex_count(); ++v) {
    names.push_back(map.derived.name(map.vertex_image[v]));
  }
  std::vector<EdgeSpec> specs;
  for (EdgeIndex e = 0; e < map.origin.edge_count(); ++e) {
    const auto& pv = map.path_vertices[e];
    specs.push_back(EdgeSpec{map.origin.edge(e).id, map.derived.name(pv.front()),
                             map.derived.name(pv.back())});
  }
  return Multigraph::build(std::move(names), specs);
}

}  // namespace sdgon
