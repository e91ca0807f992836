#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "sdgon/errors.hpp"
#include "sdgon/json_io.hpp"
#include "sdgon/multigraph.hpp"
#include "support/small_graphs.hpp"

using namespace sdgon;

namespace {

Multigraph banana() { return graph_from_json(load_json_file(SDGON_FIXTURE_DIR "/banana_graph.json")); }

std::multiset<std::pair<std::string, std::string>> endpoint_multiset(const Multigraph& g) {
  std::multiset<std::pair<std::string, std::string>> out;
  for (const Edge& e : g.edges()) {
    auto a = g.name(e.first), b = g.name(e.second);
    if (b < a) std::swap(a, b);
    out.insert({a, b});
  }
  return out;
}

}  // namespace

TEST_CASE("load: parallel edges are kept") {
  Multigraph g = banana();
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 2);
  CHECK(g.multiplicity(0, 1) == 2);
  CHECK(g.has_parallel_edges());
}

TEST_CASE("load: single vertex") {
  Multigraph g = graph_from_json(parse_json_text(R"({"vertices":["a"],"edges":[]})"));
  CHECK(g.vertex_count() == 1);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("load: errors are distinct") {
  CHECK_THROWS_AS(graph_from_json(parse_json_text(
                      R"({"vertices":["a","b","c","d"],"edges":[{"id":"x","ends":["a","b"]},{"id":"y","ends":["c","d"]}]})")),
                  DisconnectedGraphError);
  CHECK_THROWS_AS(graph_from_json(parse_json_text(R"({"vertices":["a"],"edges":[{"id":"x","ends":["a","q"]}]})")),
                  ParseError);
  CHECK_THROWS_AS(graph_from_json(parse_json_text(R"({"vertices":["a","a"],"edges":[]})")), ParseError);
  CHECK_THROWS_AS(graph_from_json(parse_json_text(R"({"vertices":["a"]})")), ParseError);
  CHECK_THROWS_AS(parse_json_text("{not json"), ParseError);
}

TEST_CASE("load: self-loops are dropped and recorded") {
  std::vector<std::string> dropped;
  Multigraph g = graph_from_json(
      parse_json_text(R"({"vertices":["a","b"],"edges":[{"id":"l","ends":["a","a"]},{"id":"x","ends":["a","b"]}]})"),
      &dropped);
  CHECK(g.edge_count() == 1);
  CHECK(dropped == std::vector<std::string>{"l"});
}

TEST_CASE("g1: sizes and simplicity") {
  SUBCASE("two parallel edges") {
    auto m = build_g1(banana());
    CHECK(m.derived.vertex_count() == 4);
    CHECK(m.derived.edge_count() == 4);
    CHECK_FALSE(m.derived.has_parallel_edges());
  }
  SUBCASE("path a-b") {
    auto m = build_g1(testing_support::path(2));
    CHECK(m.derived.vertex_count() == 3);
    CHECK(m.derived.edge_count() == 2);
  }
  SUBCASE("triangle becomes a 6-cycle") {
    auto m = build_g1(testing_support::complete(3));
    CHECK(m.derived.vertex_count() == 6);
    CHECK(m.derived.edge_count() == 6);
    for (VertexIndex v = 0; v < 6; ++v) CHECK(m.derived.incident(v).size() == 2);
  }
  SUBCASE("every small multigraph") {
    for (const auto& sg : testing_support::connected_multigraphs(4, 5)) {
      auto m = build_g1(sg.graph);
      CHECK(m.derived.vertex_count() == sg.graph.vertex_count() + sg.graph.edge_count());
      CHECK(m.derived.edge_count() == 2 * sg.graph.edge_count());
      CHECK_FALSE(m.derived.has_parallel_edges());
    }
  }
}

TEST_CASE("expand: two parallel edges with lengths 3 and 4") {
  auto h = expand_by_lengths(banana(), std::map<std::string, int>{{"e1", 3}, {"e2", 4}});
  CHECK(h.derived.vertex_count() == 7);
  CHECK(h.derived.edge_count() == 7);
  for (const char* name : {"u", "v", "e1#1", "e1#2", "e2#1", "e2#2", "e2#3"}) {
    CHECK(h.derived.find_vertex(name).has_value());
  }
  // Interiors count from the first endpoint.
  CHECK(h.derived.multiplicity(h.derived.vertex("u"), h.derived.vertex("e1#1")) == 1);
  CHECK(h.derived.multiplicity(h.derived.vertex("v"), h.derived.vertex("e2#3")) == 1);
  CHECK(h.length(0) == 3);
  CHECK(h.length(1) == 4);
}

TEST_CASE("expand: identity and single long edge") {
  auto g1 = build_g1(banana());
  std::map<std::string, int> ones;
  for (const auto& e : g1.derived.edges()) ones[e.id] = 1;
  auto same = expand_by_lengths(g1, ones);
  CHECK(same.derived.names() == g1.derived.names());
  CHECK(endpoint_multiset(same.derived) == endpoint_multiset(g1.derived));
  std::vector<std::string> ids_a, ids_b;
  for (const auto& e : same.derived.edges()) ids_a.push_back(e.id);
  for (const auto& e : g1.derived.edges()) ids_b.push_back(e.id);
  CHECK(ids_a == ids_b);

  auto p = expand_by_lengths(testing_support::path(2), std::map<std::string, int>{{"e1", 5}});
  CHECK(p.derived.vertex_count() == 6);
  CHECK(p.path_vertices[0].size() == 6);
}

TEST_CASE("expand: bad lengths") {
  auto g = banana();
  CHECK_THROWS_AS(expand_by_lengths(g, std::map<std::string, int>{{"e1", 3}}), PreconditionError);
  CHECK_THROWS_AS(expand_by_lengths(g, std::map<std::string, int>{{"e1", 0}, {"e2", 1}}),
                  PreconditionError);
  CHECK_THROWS_AS(expand_by_lengths(g, std::map<std::string, int>{{"e1", 1}, {"e2", 1}, {"zz", 1}}),
                  PreconditionError);
}

TEST_CASE("subdivision invariants: contraction round trip and composition") {
  int checked = 0;
  for (const auto& sg : testing_support::connected_multigraphs(3, 4)) {
    auto g1 = build_g1(sg.graph);
    std::vector<int> lengths;
    for (EdgeIndex e = 0; e < g1.derived.edge_count(); ++e) lengths.push_back(1 + (e * 7 + 3) % 3);
    auto h = expand_by_lengths(g1.derived, lengths);
    auto full = compose(g1, h);

    Multigraph back = contract(h);
    CHECK(endpoint_multiset(back) == endpoint_multiset(g1.derived));
    Multigraph base = contract(full);
    CHECK(endpoint_multiset(base) == endpoint_multiset(sg.graph));

    // Every derived edge lies on exactly one path; interiors have degree two.
    std::vector<int> hits(full.derived.edge_count(), 0);
    for (EdgeIndex e = 0; e < sg.graph.edge_count(); ++e) {
      for (EdgeIndex d : full.path_edges[e]) ++hits[d];
      const auto& pv = full.path_vertices[e];
      CHECK(pv.size() == full.path_edges[e].size() + 1);
      std::size_t expected = lengths[g1.path_edges[e][0]] + lengths[g1.path_edges[e][1]];
      CHECK(full.length(e) == expected);
      for (std::size_t i = 1; i + 1 < pv.size(); ++i) {
        CHECK(full.derived.incident(pv[i]).size() == 2);
        CHECK(full.interior_carrier(pv[i]) == e);
      }
    }
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    ++checked;
  }
  CHECK(checked > 5);
}

TEST_CASE("dot export labels edges with ids") {
  auto dot = banana().to_dot();
  CHECK(dot.find("label=\"e1\"") != std::string::npos);
  CHECK(dot.find("label=\"e2\"") != std::string::npos);
}
