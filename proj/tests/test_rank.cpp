#include <algorithm>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include <sandwich/rank.hpp>

using namespace sandwich_kit;

namespace {

FiniteSemigroup t_n(std::uint32_t n) {
  static std::vector<Category> keep;
  keep.push_back(build_category(Kind::fullmap, {n}));
  return hom_monoid(keep.back(), 0);
}

std::vector<ElemIdx> closure(FiniteSemigroup const& s,
                             std::vector<ElemIdx> const& a) {
  return generated(s, a);
}

}  // namespace

TEST_CASE("generated closures") {
  auto t2 = t_n(2);
  SECTION("the whole set generates itself") {
    std::vector<ElemIdx> all{0, 1, 2, 3};
    CHECK(closure(t2, all) == all);
  }
  SECTION("the identity alone generates itself") {
    CHECK(closure(t2, {1}) == std::vector<ElemIdx>{1});
  }
  SECTION("the two constants of T_2 form a right-zero band") {
    // hom-set order: c1=0, id=1, swap=2, c2=3
    CHECK(closure(t2, {0, 3}) == std::vector<ElemIdx>{0, 3});
  }
  SECTION("monotone and idempotent") {
    auto pt2 = [] {
      static Category c = build_category(Kind::partialmap, {2});
      return hom_monoid(c, 0);
    }();
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<ElemIdx> a;
      for (ElemIdx x = 0; x < pt2.size(); ++x) {
        if (rng() & 1) {
          a.push_back(x);
        }
      }
      auto g1 = closure(pt2, a);
      for (auto x : a) {
        REQUIRE(std::binary_search(g1.begin(), g1.end(), x));
      }
      CHECK(closure(pt2, g1) == g1);
    }
  }
}

TEST_CASE("exact ranks of stock semigroups") {
  SECTION("cyclic group of order two") {
    auto res = rank(cyclic_group(2));
    REQUIRE(res.value == 1u);
    CHECK(closure(cyclic_group(2), res.witness).size() == 2);
  }
  SECTION("2x3 rectangular band has rank three") {
    auto band = rectangular_band(2, 3);
    auto res = rank(band);
    REQUIRE(res.value == 3u);
    CHECK(closure(band, res.witness).size() == band.size());
  }
  SECTION("full transformation monoid on three points has rank three") {
    auto t3 = t_n(3);
    auto res = rank(t3);
    REQUIRE(res.value == 3u);
    CHECK(closure(t3, res.witness).size() == 27);
  }
  SECTION("right-zero band: no proper subset generates") {
    auto band = right_zero_band(3);
    auto res = rank(band);
    REQUIRE(res.value == 3u);
    // independent exhaustive certificate at size two
    for (ElemIdx x = 0; x < 3; ++x) {
      for (ElemIdx y = x + 1; y < 3; ++y) {
        REQUIRE(closure(band, {x, y}).size() < 3);
      }
    }
  }
  SECTION("symmetric group S_3 has rank two") {
    auto res = rank(symmetric_group(3));
    REQUIRE(res.value == 2u);
  }
}

TEST_CASE("idempotent ranks") {
  SECTION("rectangular bands: max(r, l)") {
    for (auto [r, l] : {std::pair<std::uint32_t, std::uint32_t>{2, 3},
                        {3, 2}, {3, 3}, {1, 1}}) {
      auto band = rectangular_band(r, l);
      auto res = idrank(band);
      REQUIRE(res.value == std::max(r, l));
      CHECK(closure(band, res.witness).size() == band.size());
      for (auto x : res.witness) {
        CHECK(band.is_idempotent(x));
      }
    }
  }
  SECTION("trivial monoid") {
    CHECK(idrank(trivial_monoid()).value == 1u);
  }
  SECTION("rejects non-idempotent-generated input") {
    CHECK_THROWS_AS(idrank(cyclic_group(2)), std::invalid_argument);
  }
}

TEST_CASE("relative ranks") {
  auto t2 = t_n(2);
  SECTION("relative to everything: zero") {
    CHECK(relative_rank(t2, {0, 1, 2, 3}).value == 0u);
  }
  SECTION("relative to nothing: the plain rank") {
    CHECK(relative_rank(t2, {}).value == rank(t2).value);
    auto band = rectangular_band(2, 3);
    CHECK(relative_rank(band, {}).value == rank(band).value);
  }
  SECTION("idempotent-generated monoid: rank(M) = 1 + rank(M : G_M)") {
    auto t3 = t_n(3);
    auto m = subsemigroup(t3, generated(t3, t3.idempotents()));
    auto mu = units(m.sg);
    REQUIRE(mu.size() == 1);  // trivial group of units
    auto r = rank(m.sg);
    auto rel = relative_rank(m.sg, mu);
    REQUIRE(r.value);
    REQUIRE(rel.value);
    CHECK(*r.value == 1 + *rel.value);
    auto ir = idrank(m.sg);
    auto irel = relative_idrank(m.sg, mu);
    REQUIRE(ir.value);
    REQUIRE(irel.value);
    CHECK(*ir.value == 1 + *irel.value);
  }
}

TEST_CASE("rectangular group rank formula") {
  SECTION("2x3 over the trivial group") {
    RectGroupSpec spec{2, 3, trivial_monoid()};
    auto rep = rect_group_check(spec);
    REQUIRE(rep.ok());
    CHECK(rep.rank_result.value == 3u);
    CHECK(rep.expected == 3u);
  }
  SECTION("2x2 over C_2") {
    RectGroupSpec spec{2, 2, cyclic_group(2)};
    auto rep = rect_group_check(spec);
    REQUIRE(rep.ok());
    CHECK(rep.rank_result.value == 2u);
  }
  SECTION("1x1 over S_3 reduces to the group rank") {
    RectGroupSpec spec{1, 1, symmetric_group(3)};
    auto rep = rect_group_check(spec);
    REQUIRE(rep.ok());
    CHECK(rep.rank_result.value == 2u);
  }
}

TEST_CASE("rank formulas over frames") {
  SECTION("identity frame over fullmap [2]") {
    Category c = build_category(Kind::fullmap, {2});
    GreenData ambient = green_category(c);
    auto fr = build_frame(sandwich(c, 0, 0, c.identity(0)), ambient);
    auto rep = rank_formula_check(fr);
    if (!rep.ok()) {
      UNSCOPED_INFO(rep.violations.front().clause);
    }
    REQUIRE(rep.ok());
    CHECK_FALSE(rep.inequality_only);
    CHECK(rep.r == 1);
    CHECK(rep.l == 1);
    CHECK(rep.w_minus_units_ideal);
    CHECK(rep.mi_dominated);
    // rank(T_2) = rank(T_2 : S_2) + max(1,1,rank(S_2)) = 1 + 1
    CHECK(rep.rank_pa.value == 2u);
    CHECK(rep.rank_w_rel_units.value == 1u);
    CHECK(rep.rank_gw.value == 1u);
  }
  SECTION("fullmap [3,2] frame with an injective sandwich element") {
    Category c = build_category(Kind::fullmap, {3, 2});
    GreenData ambient = green_category(c);
    Morphism a;
    a.src = 1;
    a.dst = 0;
    a.payload = {1, 2};
    auto fr = build_frame(sandwich(c, 0, 1, a), ambient);
    auto rep = rank_formula_check(fr);
    if (!rep.ok()) {
      UNSCOPED_INFO(rep.violations.front().clause);
    }
    REQUIRE(rep.ok());
    CHECK_FALSE(rep.inequality_only);
    CHECK(rep.mi_dominated);
    CHECK(rep.r * rep.l == 2);
  }
  SECTION("injpartial frames collapse to W-level identities") {
    Category c = build_category(Kind::injpartial, {2, 2});
    GreenData ambient = green_category(c);
    for (auto const& a : c.homset(1, 0)) {
      auto fr = build_frame(SandwichSemigroup(c, 0, 1, a), ambient);
      auto rep = rank_formula_check(fr);
      REQUIRE(rep.ok());
      CHECK(rep.r == 1);
      CHECK(rep.l == 1);
    }
  }
}

TEST_CASE("sandwich rank lower bound") {
  SECTION("identity sandwich over fullmap [2]") {
    Category c = build_category(Kind::fullmap, {2});
    GreenData ambient = green_category(c);
    auto sw = sandwich(c, 0, 0, c.identity(0));
    auto rep = sandwich_rank_lower_bound(sw, ambient);
    REQUIRE(rep.ok());
    CHECK(rep.hypotheses_ok);
    REQUIRE(rep.brute.value);
    CHECK(rep.bound <= *rep.brute.value);
    CHECK(*rep.brute.value == 2u);  // rank(T_2)
  }
  SECTION("single maximal J-class: the bound is that class's max dimension") {
    Category c = build_category(Kind::fullmap, {2, 2});
    GreenData ambient = green_category(c);
    Morphism swap;
    swap.src = 1;
    swap.dst = 0;
    swap.payload = {2, 1};
    auto sw = sandwich(c, 0, 1, swap);
    // hom(0,1) holds two J-classes (bijections above constants); the top one
    // is a single H-class of two bijections
    auto rep = sandwich_rank_lower_bound(sw, ambient);
    REQUIRE(rep.ok());
    CHECK(rep.bound == 1);
  }
  SECTION("bound is below the brute-force rank across partialmap [2,2]") {
    Category c = build_category(Kind::partialmap, {2, 2});
    GreenData ambient = green_category(c);
    for (ObjectId i = 0; i < 2; ++i) {
      for (ObjectId j = 0; j < 2; ++j) {
        for (auto const& a : c.homset(j, i)) {
          auto sw = sandwich(c, i, j, a);
          auto rep = sandwich_rank_lower_bound(sw, ambient);
          REQUIRE(rep.ok());
          REQUIRE(rep.hypotheses_ok);
        }
      }
    }
  }
}

TEST_CASE("budget exhaustion is a first-class result") {
  auto t3 = t_n(3);
  RankBudget tiny;
  tiny.node_cap = 1;
  auto res = rank(t3, tiny);
  CHECK(res.exceeded());
  CHECK(res.nodes_explored >= 1);
  // the greedy fallback witness still generates
  CHECK(closure(t3, res.witness).size() == t3.size());
}
