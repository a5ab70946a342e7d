#include <algorithm>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include <sandwich/core.hpp>

using namespace sandwich_kit;

namespace {

Morphism mk(ObjectId src, ObjectId dst, std::vector<int> payload) {
  Morphism m;
  m.src = src;
  m.dst = dst;
  m.payload.assign(payload.begin(), payload.end());
  return m;
}

}  // namespace

TEST_CASE("hom-set cardinalities match the closed-form counts") {
  // fullmap [3,2]: hom(0,1) has 2^3 elements
  Category full = build_category(Kind::fullmap, {3, 2});
  CHECK(full.homset_size(0, 1) == 8);
  CHECK(full.homset_size(1, 0) == 9);
  CHECK(full.homset_size(0, 0) == 27);

  // partialmap [2,2]: (2+1)^2
  Category part = build_category(Kind::partialmap, {2, 2});
  CHECK(part.homset_size(0, 1) == 9);

  // injpartial [2,2]: 1 + 4 + 2
  Category inj = build_category(Kind::injpartial, {2, 2});
  CHECK(inj.homset_size(0, 1) == 7);

  // matf2 [2,3]: 2^(2*3)
  Category mat = build_category(Kind::matf2, {2, 3});
  CHECK(mat.homset_size(0, 1) == 64);
  CHECK(mat.homset_size(1, 0) == 64);
  CHECK(mat.homset_size(0, 0) == 16);

  for (Category const* c : {&full, &part, &inj, &mat}) {
    for (ObjectId i = 0; i < c->object_count(); ++i) {
      for (ObjectId j = 0; j < c->object_count(); ++j) {
        CHECK(c->homset_size(i, j)
              == homset_cardinality(c->kind(), c->object_size(i),
                                    c->object_size(j)));
      }
    }
  }
}

TEST_CASE("hom-sets are enumerated in lexicographic order without duplicates") {
  for (Kind k : catalog_kinds) {
    Category c = build_category(k, {2, 2});
    for (ObjectId i = 0; i < 2; ++i) {
      for (ObjectId j = 0; j < 2; ++j) {
        auto const& hs = c.homset(i, j);
        for (std::size_t t = 1; t < hs.size(); ++t) {
          REQUIRE(hs[t - 1].payload < hs[t].payload);
        }
        for (std::uint32_t t = 0; t < hs.size(); ++t) {
          REQUIRE(c.index_of(hs[t]) == t);
          REQUIRE(c.valid(hs[t]));
        }
      }
    }
  }
}

TEST_CASE("size caps guard combinatorial explosion") {
  CHECK_THROWS_AS(build_category(Kind::fullmap, {5}), budget_error);
  CHECK_THROWS_AS(build_category(Kind::matf2, {4}), budget_error);
  CHECK_THROWS_AS(build_category(Kind::fullmap, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_category(Kind::fullmap, {0}), std::invalid_argument);
  // explicit escape hatch
  Category c = build_category(Kind::fullmap, {5}, true);
  CHECK(c.homset_size(0, 0) == 3125);
}

TEST_CASE("composition is diagrammatic and respects sources and targets") {
  Category c = build_category(Kind::fullmap, {3, 2});
  // x: 0 -> 1 sending 1,2,3 to 2,1,2; y: 1 -> 0 sending 1,2 to 3,1
  Morphism x = mk(0, 1, {2, 1, 2});
  Morphism y = mk(1, 0, {3, 1});
  Morphism xy = c.compose(x, y);
  CHECK(xy == mk(0, 0, {1, 3, 1}));  // apply x first, then y
  CHECK(xy.src == x.src);
  CHECK(xy.dst == y.dst);
  CHECK_THROWS_AS(c.compose(x, x), std::invalid_argument);
}

TEST_CASE("identity laws hold against every composable morphism") {
  for (Kind k : catalog_kinds) {
    Category c = build_category(k, {2, 3});
    for (ObjectId i = 0; i < 2; ++i) {
      Morphism e = c.identity(i);
      REQUIRE(c.valid(e));
      for (ObjectId j = 0; j < 2; ++j) {
        for (auto const& m : c.homset(i, j)) {
          REQUIRE(c.compose(e, m) == m);
        }
        for (auto const& m : c.homset(j, i)) {
          REQUIRE(c.compose(m, e) == m);
        }
      }
    }
  }
}

TEST_CASE("identities have the expected payloads") {
  CHECK(build_category(Kind::fullmap, {3}).identity(0) == mk(0, 0, {1, 2, 3}));
  // everywhere-defined identity, not the empty map
  CHECK(build_category(Kind::partialmap, {2}).identity(0) == mk(0, 0, {1, 2}));
  CHECK(build_category(Kind::matf2, {2}).identity(0) == mk(0, 0, {1, 0, 0, 1}));
}

TEST_CASE("partial maps compose with undefinedness propagating") {
  Category c = build_category(Kind::partialmap, {2, 2});
  Morphism x = mk(0, 0, {1, 0});  // 1 -> 1, 2 undefined
  Morphism y = mk(0, 0, {2, 1});  // 1 -> 2, 2 -> 1
  CHECK(c.compose(x, y) == mk(0, 0, {2, 0}));
}

TEST_CASE("associativity holds for every composable triple in partialmap [2,2]") {
  Category c = build_category(Kind::partialmap, {2, 2});
  for (ObjectId i = 0; i < 2; ++i) {
    for (ObjectId j = 0; j < 2; ++j) {
      for (ObjectId k = 0; k < 2; ++k) {
        for (ObjectId l = 0; l < 2; ++l) {
          for (auto const& x : c.homset(i, j)) {
            for (auto const& y : c.homset(j, k)) {
              for (auto const& z : c.homset(k, l)) {
                REQUIRE(c.compose(c.compose(x, y), z)
                        == c.compose(x, c.compose(y, z)));
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("associativity sampled at larger sizes") {
  std::mt19937 rng(12345);
  for (Kind k : {Kind::fullmap, Kind::partialmap, Kind::injpartial}) {
    Category c = build_category(k, {4, 3});
    for (int trial = 0; trial < 2000; ++trial) {
      ObjectId i = rng() % 2, j = rng() % 2, l = rng() % 2, m = rng() % 2;
      auto const& xs = c.homset(i, j);
      auto const& ys = c.homset(j, l);
      auto const& zs = c.homset(l, m);
      auto const& x = xs[rng() % xs.size()];
      auto const& y = ys[rng() % ys.size()];
      auto const& z = zs[rng() % zs.size()];
      REQUIRE(c.compose(c.compose(x, y), z) == c.compose(x, c.compose(y, z)));
    }
  }
}

TEST_CASE("matf2 composition multiplies over F2") {
  Category c = build_category(Kind::matf2, {2, 2});
  Morphism x = mk(0, 0, {1, 1, 0, 1});
  Morphism y = mk(0, 0, {1, 0, 1, 1});
  // [[1,1],[0,1]] . [[1,0],[1,1]] = [[0,1],[1,1]] over F2
  CHECK(c.compose(x, y) == mk(0, 0, {0, 1, 1, 1}));
}

TEST_CASE("mutual inverses: symmetry, regularity, and identity membership") {
  for (Kind k : catalog_kinds) {
    Category c = build_category(k, {2, 2});
    for (ObjectId i = 0; i < 2; ++i) {
      Morphism e = c.identity(i);
      auto vs = c.inverses(e);
      REQUIRE(std::find(vs.begin(), vs.end(), e) != vs.end());
    }
    for (ObjectId i = 0; i < 2; ++i) {
      for (ObjectId j = 0; j < 2; ++j) {
        for (auto const& x : c.homset(i, j)) {
          auto vs = c.inverses(x);
          CHECK(c.is_regular(x) == !vs.empty());
          for (auto const& y : vs) {
            auto back = c.inverses(y);
            REQUIRE(std::find(back.begin(), back.end(), x) != back.end());
          }
        }
      }
    }
  }
}

TEST_CASE("total-map and matrix categories are von Neumann regular") {
  for (Kind k : {Kind::fullmap, Kind::matf2}) {
    Category c = build_category(k, {2, 2});
    for (ObjectId i = 0; i < 2; ++i) {
      for (ObjectId j = 0; j < 2; ++j) {
        for (auto const& x : c.homset(i, j)) {
          REQUIRE(c.is_regular(x));
        }
      }
    }
  }
}

TEST_CASE("injective partial maps have exactly one inverse") {
  Category c = build_category(Kind::injpartial, {2, 2});
  for (ObjectId i = 0; i < 2; ++i) {
    for (ObjectId j = 0; j < 2; ++j) {
      for (auto const& x : c.homset(i, j)) {
        REQUIRE(c.inverses(x).size() == 1);
      }
    }
  }
}

TEST_CASE("the empty partial map inverts to the empty map") {
  Category c = build_category(Kind::partialmap, {2, 3});
  Morphism empty01 = mk(0, 1, {0, 0});
  Morphism empty10 = mk(1, 0, {0, 0, 0});
  auto vs = c.inverses(empty01);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0] == empty10);
}
