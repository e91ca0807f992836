#include <doctest.h>

#include <algorithm>
#include <random>

#include "sdgon/certificate.hpp"
#include "sdgon/errors.hpp"
#include "sdgon/json_io.hpp"
#include "support/mutations.hpp"

using namespace sdgon;

namespace {

Multigraph banana() { return graph_from_json(load_json_file(SDGON_FIXTURE_DIR "/banana_graph.json")); }
PartialCertificate worked_certificate() {
  return certificate_from_json(load_json_file(SDGON_FIXTURE_DIR "/worked_certificate.json"));
}

std::string describe(const std::vector<Violation>& vs) {
  std::string out;
  for (const auto& v : vs) out += violation_to_json(v).dump() + "\n";
  return out;
}

}  // namespace

TEST_CASE("worked certificate is valid") {
  auto vs = validate(banana(), worked_certificate());
  INFO(describe(vs));
  CHECK(vs.empty());
}

TEST_CASE("deleting the first departure breaks the outgoing-edges rule at (v, 1)") {
  auto c = worked_certificate();
  testing_support::moves_of(c, "v", 1).erase(MoveTuple{"u", 1, -1, "e1"});
  auto vs = validate(banana(), c);
  bool found = std::any_of(vs.begin(), vs.end(), [](const Violation& v) {
    return v.requirement == Requirement::OutgoingEdges && v.target == "v" && v.index == 1;
  });
  INFO(describe(vs));
  CHECK(found);
}

TEST_CASE("single vertex with one chip and no sequences") {
  auto g = graph_from_json(parse_json_text(R"({"vertices":["a"],"edges":[]})"));
  PartialCertificate c;
  c.k = 1;
  c.start = {"a"};
  CHECK(validate(g, c).empty());
  c.start.clear();
  CHECK(violated_requirements(validate(g, c)) == std::set<Requirement>{Requirement::ReachAllVertices});
}

TEST_CASE("mutation corpus") {
  const auto g = banana();
  for (const auto& m : testing_support::worked_mutations()) {
    auto c = worked_certificate();
    m.apply(c);
    auto vs = validate(g, c);
    INFO(m.description << "\n" << describe(vs));
    const auto got = violated_requirements(vs);
    CHECK(got.contains(m.target));
    CHECK(got == m.expected);
  }
}

TEST_CASE("storage order does not matter") {
  const auto g = banana();
  std::mt19937 rng(7);
  for (const auto& m : testing_support::worked_mutations()) {
    auto c = worked_certificate();
    m.apply(c);
    const auto reference = validate(g, c);
    // Rebuild through JSON with shuffled tuple and sequence order.
    Json j = certificate_to_json(c);
    for (int round = 0; round < 5; ++round) {
      Json shuffled = j;
      std::shuffle(shuffled["sequences"].begin(), shuffled["sequences"].end(), rng);
      for (auto& seq : shuffled["sequences"]) {
        for (auto& pair : seq["pairs"]) {
          std::shuffle(pair["M"].begin(), pair["M"].end(), rng);
          std::shuffle(pair["A"].begin(), pair["A"].end(), rng);
        }
      }
      CHECK(validate(g, certificate_from_json(shuffled)) == reference);
    }
  }
}

TEST_CASE("label permutation keeps the example valid") {
  const auto g = banana();
  std::vector<int> perm{1, 2, 3, 4, 5, 6, 7};
  std::mt19937 rng(11);
  for (int round = 0; round < 20; ++round) {
    std::shuffle(perm.begin(), perm.end(), rng);
    auto c = worked_certificate();
    PartialCertificate p = c;
    for (std::size_t j = 0; j < c.start.size(); ++j) p.start[perm[j] - 1] = c.start[j];
    for (auto& seq : p.sequences) {
      for (auto& pair : seq.pairs) {
        std::set<MoveTuple> relabeled;
        for (auto t : pair.moves) {
          t.chip = perm[t.chip - 1];
          relabeled.insert(t);
        }
        pair.moves = relabeled;
      }
    }
    CHECK(validate(g, p).empty());
  }
}

TEST_CASE("structural errors are thrown, not reported") {
  const auto g = banana();
  auto c = worked_certificate();
  c.k = 6;
  CHECK_THROWS_AS(validate(g, c), PreconditionError);
  c = worked_certificate();
  testing_support::set_of(c, "v", 2) = {};
  CHECK_THROWS_AS(validate(g, c), PreconditionError);  // sets must not shrink
  c = worked_certificate();
  testing_support::moves_of(c, "v", 1).insert(MoveTuple{"u", 8, -1, "e1"});
  CHECK_THROWS_AS(validate(g, c), PreconditionError);
  c = worked_certificate();
  c.sequences.push_back(c.sequences.back());
  CHECK_THROWS_AS(validate(g, c), PreconditionError);
  CHECK_THROWS_AS(make_move_tuple(g, "u", 1, -1, "nope"), UnknownIdError);
  CHECK(make_move_tuple(g, "u", 1, -1, "e1") == MoveTuple{"u", 1, -1, "e1"});
}

TEST_CASE("json round trip") {
  auto c = worked_certificate();
  CHECK(certificate_from_json(certificate_to_json(c)) == c);
  CHECK(c.start == std::vector<std::string>(7, "u"));
  for (int r = 1; r <= kRequirementCount; ++r) {
    auto req = static_cast<Requirement>(r);
    CHECK(requirement_from_name(requirement_name(req)) == req);
  }
}
