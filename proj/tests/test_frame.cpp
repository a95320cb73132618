#include <random>

#include "doctest.h"
#include "mlwb/frame.hpp"
#include "mlwb/generators.hpp"

using namespace mlwb;

namespace {

const Modality kBox = Modality::box();
const Modality kE("E");

NeighborhoodFrame make_frame(int worlds, std::vector<NeighborhoodFamily> fams) {
  NeighborhoodFrame f(worlds, {kBox});
  for (int c = 0; c < worlds; ++c) f.system(kBox)[c] = canonical_family(fams[c]);
  return f;
}

}  // namespace

TEST_CASE("check_mt") {
  CHECK(check_mt(make_frame(1, {{1}}), kBox));                    // N(0)={{0}}
  CHECK_FALSE(check_mt(make_frame(2, {{1}, {}}), kBox));          // {0,1} missing
  // Full powerset at both worlds is upward closed.
  CHECK(check_mt(make_frame(2, {{0, 1, 2, 3}, {0, 1, 2, 3}}), kBox));
}

TEST_CASE("check_tp and check_cf") {
  CHECK(check_tp(make_frame(1, {{1}}), kBox));
  CHECK_FALSE(check_cf(make_frame(2, {{1, 2}, {}}), kBox));  // {0}^{1}=0 missing
  NeighborhoodFrame f = make_frame(2, {{3}, {3}});
  CHECK(check_tp(f, kBox));
  CHECK(check_cf(f, kBox));
}

TEST_CASE("check_kripke against direct intersection") {
  // N(c) = up-closure of {{1}} for both worlds.
  NeighborhoodFrame f = make_frame(2, {{2, 3}, {2, 3}});
  CHECK(check_kripke(f, kBox));
  // Oracle: intersect the family by hand and extract successor sets.
  for (int c = 0; c < 2; ++c) {
    WorldSet inter = f.universe();
    for (WorldSet x : f.system(kBox)[c]) inter &= x;
    CHECK(inter == 2);  // {1}
  }
  Relation r = extract_relation(f);
  CHECK(r.relation(kBox) == std::vector<WorldSet>{2, 2});  // (0,1),(1,1)

  // Empty neighborhood family: the empty intersection is the universe,
  // which is not a member.
  CHECK_FALSE(check_kripke(make_frame(1, {{}}), kBox));

  // Up-closure of {{0},{1}} misses the empty intersection...
  CHECK_FALSE(check_kripke(make_frame(2, {{1, 2, 3}, {1, 2, 3}}), kBox));
  // ...and adding it makes the frame Kripke.
  CHECK(check_kripke(make_frame(2, {{0, 1, 2, 3}, {0, 1, 2, 3}}), kBox));
}

TEST_CASE("relation_to_frame") {
  Relation empty(1, {kBox});
  NeighborhoodFrame f1 = relation_to_frame(empty);
  CHECK(f1.system(kBox)[0] == NeighborhoodFamily{0, 1});  // P({0})

  Relation r(2, {kBox});
  r.add_edge(kBox, 0, 1);
  NeighborhoodFrame f2 = relation_to_frame(r);
  CHECK(f2.system(kBox)[0] == NeighborhoodFamily{2, 3});  // {1},{0,1}
  CHECK(f2.system(kBox)[1] == NeighborhoodFamily{0, 1, 2, 3});

  CHECK(extract_relation(f2).relation(kBox) == r.relation(kBox));
}

TEST_CASE("relation_to_frame always yields Kripke frames with MT TP CF") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 4; ++n)
    for (int trial = 0; trial < 40; ++trial) {
      Relation r(n, {kBox});
      for (int c = 0; c < n; ++c)
        r.relation(kBox)[c] = static_cast<WorldSet>(rng()) & ((1u << n) - 1);
      NeighborhoodFrame f = relation_to_frame(r);
      CHECK(check_mt(f, kBox));
      CHECK(check_tp(f, kBox));
      CHECK(check_cf(f, kBox));
      CHECK(check_kripke(f, kBox));
      CHECK(extract_relation(f).relation(kBox) == r.relation(kBox));
    }
}

TEST_CASE("mt means membership is monotone under supersets") {
  std::mt19937_64 rng(5);
  auto frames = enumerate_frames(2, kBox);
  for (const auto& f : frames) {
    if (!check_mt(f, kBox)) continue;
    for (int trial = 0; trial < 8; ++trial) {
      WorldSet x = static_cast<WorldSet>(rng()) & 3u;
      WorldSet y = x | (static_cast<WorldSet>(rng()) & 3u);
      for (int c = 0; c < 2; ++c)
        if (f.neighborhood_contains(kBox, c, x))
          CHECK(f.neighborhood_contains(kBox, c, y));
    }
  }
}

TEST_CASE("conversely well-founded relations") {
  Relation chain(3, {kBox});
  chain.add_edge(kBox, 0, 1);
  chain.add_edge(kBox, 0, 2);
  chain.add_edge(kBox, 1, 2);
  CHECK(check_conversely_wellfounded(chain, kBox));

  Relation loop(1, {kBox});
  loop.add_edge(kBox, 0, 0);
  CHECK_FALSE(check_conversely_wellfounded(loop, kBox));

  CHECK(check_conversely_wellfounded(Relation(2, {kBox}), kBox));
}

TEST_CASE("transitive closure") {
  CHECK(transitive_closure({2, 4, 0}) == std::vector<WorldSet>{6, 4, 0});
  CHECK(transitive_closure({0, 0}) == std::vector<WorldSet>{0, 0});
  CHECK(transitive_closure({1}) == std::vector<WorldSet>{1});
  // The identity option adds the zeroth power.
  CHECK(transitive_closure({0, 0}, true) == std::vector<WorldSet>{1, 2});
}

TEST_CASE("common knowledge companion relation") {
  Relation r(3, {kE, Modality("C")});
  r.add_edge(kE, 0, 1);
  r.add_edge(kE, 1, 2);
  Relation ck = common_knowledge_relation(r, kE, Modality("C"));
  CHECK(ck.relation(Modality("C")) == std::vector<WorldSet>{7, 6, 4});
  CHECK(ck.relation(kE) == r.relation(kE));
  // Without the zeroth power it is the plain transitive closure.
  Relation strict = common_knowledge_relation(r, kE, Modality("C"), false);
  CHECK(strict.relation(Modality("C")) == std::vector<WorldSet>{6, 4, 0});
}

TEST_CASE("frame sweep sizes") {
  CHECK(enumerate_frames(2, kBox).size() == 256);  // 16 x 16
  CHECK(enumerate_relations(2, kBox).size() == 16);
  // Strict partial orders on 1..3 labelled points: 1, 3, 19.
  CHECK(enumerate_strict_orders(1, kBox).size() == 1);
  CHECK(enumerate_strict_orders(2, kBox).size() == 3);
  CHECK(enumerate_strict_orders(3, kBox).size() == 19);
}
