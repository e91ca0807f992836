#include <doctest.h>

#include <gmpxx.h>

#include <algorithm>
#include <random>

#include "sdgon/errors.hpp"
#include "sdgon/ilp.hpp"
#include "sdgon/json_io.hpp"
#include "support/oracles.hpp"

using namespace sdgon;
using testing_support::displayed_program;
using testing_support::gmp_bound;
using testing_support::make;
using testing_support::random_instance;

namespace {

Multigraph banana() { return graph_from_json(load_json_file(SDGON_FIXTURE_DIR "/banana_graph.json")); }
PartialCertificate worked_certificate() {
  return certificate_from_json(load_json_file(SDGON_FIXTURE_DIR "/worked_certificate.json"));
}
IlpAssignment worked_solution() {
  return assignment_from_json(load_json_file(SDGON_FIXTURE_DIR "/worked_solution.json"));
}

std::string t(int i) { return gap_var("v", i); }

std::vector<LinearConstraint> sorted(std::vector<LinearConstraint> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::string dump(const IlpInstance& inst) { return instance_to_json(inst).dump(1); }

// First feasible point of [1, cap]^n in lexicographic order, by enumeration.
std::optional<IlpAssignment> enumerate_least(const IlpInstance& inst, int cap) {
  const std::size_t n = inst.variables.size();
  std::vector<std::int64_t> x(n, 1);
  while (true) {
    IlpAssignment a;
    for (std::size_t i = 0; i < n; ++i) a[inst.variables[i]] = x[i];
    bool ok = true;
    for (const auto& lc : inst.constraints) {
      std::int64_t lhs = 0;
      for (const auto& [var, c] : lc.coefficients) lhs += c * a[var];
      ok = ok && (lc.relation == Relation::GreaterEqual ? lhs >= lc.rhs
                  : lc.relation == Relation::Equal      ? lhs == lc.rhs
                                                        : lhs <= lc.rhs);
    }
    if (ok) return a;
    std::size_t i = n;
    while (i > 0 && x[i - 1] == cap) x[--i] = 1;
    if (i == 0) return std::nullopt;
    ++x[i - 1];
  }
}

}  // namespace

TEST_CASE("worked certificate reproduces the displayed program") {
  const auto inst = build_ilp(banana(), worked_certificate());
  INFO(dump(inst));
  CHECK(sorted(inst.constraints) == sorted(displayed_program()));
  const std::vector<std::string> vars{"l[e1]", "l[e2]", t(1), t(2), t(3), t(4), t(5), t(6), t(7), t(8)};
  CHECK(inst.variables == vars);
  // Rebuilding gives the same tagged list.
  CHECK(build_ilp(banana(), worked_certificate()).constraints == inst.constraints);
}

TEST_CASE("worked certificate windows") {
  const auto ts = edge_transits(banana(), worked_certificate());
  REQUIRE(ts.size() == 2);
  CHECK(ts[0].i0 == 1);
  CHECK(ts[0].i1 == 4);
  CHECK(ts[0].i2 == 5u);
  CHECK(ts[0].i3 == 8u);
  CHECK(ts[1].p() == 3);
  CHECK(ts[1].q() == 3);
  CHECK(*ts[1].i2 == 6);
}

TEST_CASE("check_assignment on the worked certificate") {
  const auto inst = build_ilp(banana(), worked_certificate());
  auto a = worked_solution();
  CHECK(check_assignment(inst, a));
  a["l[e1]"] = 2;
  CHECK_FALSE(check_assignment(inst, a));
  a = worked_solution();
  a["t[v,4]"] = 4;
  CHECK_FALSE(check_assignment(inst, a));
  a.erase("t[v,8]");
  CHECK_THROWS_AS(check_assignment(inst, a), MissingVariableError);
  CHECK(check_assignment(IlpInstance{}, IlpAssignment{}));
}

TEST_CASE("solve") {
  const auto inst = build_ilp(banana(), worked_certificate());
  SolveStats stats;
  auto sol = solve(inst, 100, &stats);
  REQUIRE(sol);
  CHECK(*sol == worked_solution());
  CHECK(check_assignment(inst, *sol));
  CHECK_FALSE(solve(inst, 4));  // l[e2] = 4 needs cap 4, t[v,4] = 5 needs 5

  IlpInstance bad{{"x"},
                  {make({{"x", 1}}, Relation::GreaterEqual, 1, Rule::EdgeLength),
                   make({{"x", 1}}, Relation::Equal, 1, Rule::EdgeLength),
                   make({{"x", 1}}, Relation::GreaterEqual, 2, Rule::EdgeLength)}};
  for (std::int64_t cap : {1, 2, 10, 1 << 16}) CHECK_FALSE(solve(bad, cap));

  IlpInstance one{{"l"}, {make({{"l", 1}}, Relation::GreaterEqual, 1, Rule::EdgeLength)}};
  auto s1 = solve(one, 5);
  REQUIRE(s1);
  CHECK(s1->at("l") == 1);
  CHECK_THROWS_AS(solve(one, 0), PreconditionError);
}

TEST_CASE("solve matches enumeration on random instances") {
  std::mt19937 rng(2024);
  int feasible = 0;
  for (int round = 0; round < 400; ++round) {
    const int vars = 1 + round % 3;
    const auto inst = random_instance(rng, vars, 1 + round % 4, 3, 6);
    const int cap = 5;
    const auto expect = enumerate_least(inst, cap);
    const auto got = solve(inst, cap);
    INFO(dump(inst));
    CHECK(expect == got);
    if (got) {
      ++feasible;
      CHECK(check_assignment(inst, *got));
    }
  }
  CHECK(feasible > 20);
}

TEST_CASE("immediate arrival pins the edge length") {
  auto g = graph_from_json(parse_json_text(R"({"vertices":["a","b"],"edges":[{"id":"e","ends":["a","b"]}]})"));
  auto c = certificate_from_json(parse_json_text(R"({"k":1,"divisor":{"counts":{"a":1}},"sequences":[
    {"target":"b","pairs":[{"A":["a"],"M":[["a",1,-1,"e"],["b",1,1,"e"]]}]}]})"));
  REQUIRE(validate(g, c).empty());
  const auto inst = build_ilp(g, c);
  INFO(dump(inst));
  CHECK(std::count(inst.constraints.begin(), inst.constraints.end(),
                   make({{"l[e]", 1}}, Relation::Equal, 1, Rule::ImmediateArrival)) == 1);
  auto sol = solve(inst, 10);
  REQUIRE(sol);
  CHECK(sol->at("l[e]") == 1);
}

TEST_CASE("empty sequences leave only edge lengths") {
  auto g = graph_from_json(parse_json_text(R"({"vertices":["a","b"],"edges":[{"id":"e","ends":["a","b"]},{"id":"f","ends":["b","a"]}]})"));
  auto c = certificate_from_json(parse_json_text(R"({"k":2,"divisor":{"counts":{"a":1,"b":1}},"sequences":[]})"));
  const auto inst = build_ilp(g, c);
  CHECK(inst.variables == std::vector<std::string>{"l[e]", "l[f]"});
  REQUIRE(inst.constraints.size() == 2);
  for (const auto& lc : inst.constraints) CHECK(lc.rule == Rule::EdgeLength);
}

TEST_CASE("build_ilp refuses an invalid certificate") {
  auto c = worked_certificate();
  for (auto& s : c.sequences) {
    if (s.target == "v") s.pairs.clear();
  }
  CHECK_THROWS_AS(build_ilp(banana(), c), PreconditionError);
}

TEST_CASE("magnitude bound at unit values") {
  IlpInstance x1{{"x"}, {make({{"x", 1}}, Relation::Equal, 1, Rule::EdgeLength)}};
  auto b = magnitude_bound(x1);
  CHECK(b.n == 1);
  CHECK(b.m == 1);
  CHECK(b.a == 1);
  CHECK(b.value == 1);
  IlpInstance x2{{"x"}, {make({{"x", 2}}, Relation::Equal, 2, Rule::EdgeLength)}};
  CHECK(magnitude_bound(x2).value == 8);
  IlpInstance ineq{{"x"}, {make({{"x", 1}}, Relation::GreaterEqual, 1, Rule::EdgeLength)}};
  CHECK(magnitude_bound(ineq).n == 2);  // one slack
}

TEST_CASE("magnitude bound agrees with an independent evaluation") {
  std::mt19937 rng(99);
  std::vector<IlpInstance> cases{build_ilp(banana(), worked_certificate())};
  for (int i = 0; i < 100; ++i) cases.push_back(random_instance(rng, 1 + i % 6, 1 + i % 9, 50, 1000));
  for (const auto& inst : cases) {
    const auto expect = gmp_bound(inst);
    CHECK(magnitude_bound(inst).value.str() == expect.get_str());
  }
}

TEST_CASE("instance and assignment json round trip") {
  const auto inst = build_ilp(banana(), worked_certificate());
  const auto back = instance_from_json(instance_to_json(inst));
  CHECK(back.variables == inst.variables);
  CHECK(back.constraints == inst.constraints);
  const auto a = worked_solution();
  CHECK(assignment_from_json(assignment_to_json(a)) == a);
  CHECK_THROWS_AS(instance_from_json(parse_json_text(R"({"variables":["x"],"constraints":[
    {"rule":"nope","coefficients":{"x":1},"relation":">=","rhs":1}]})")), ParseError);
  CHECK_THROWS_AS(instance_from_json(parse_json_text(R"({"variables":["x"],"constraints":[
    {"rule":"edge-length","coefficients":{"y":1},"relation":">=","rhs":1}]})")), ParseError);
  for (int r = 0; r <= static_cast<int>(Rule::TransitOpen); ++r) {
    CHECK(rule_from_tag(rule_tag(static_cast<Rule>(r))) == static_cast<Rule>(r));
  }
}
