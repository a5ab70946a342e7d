#include <algorithm>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include <sandwich/sandwich.hpp>

using namespace sandwich_kit;

namespace {

Morphism mk(ObjectId src, ObjectId dst, std::vector<int> payload) {
  Morphism m;
  m.src = src;
  m.dst = dst;
  m.payload.assign(payload.begin(), payload.end());
  return m;
}

// test-local ambient divisibility, straight from the definitions
bool oracle_leq_r(Category const& c, Morphism const& x, Morphism const& y) {
  if (x == y) {
    return true;
  }
  for (ObjectId k = 0; k < c.object_count(); ++k) {
    for (auto const& u : c.homset(y.dst, k)) {
      if (x.dst == k && c.compose(y, u) == x) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("star products are associative across the catalog") {
  for (Kind k : catalog_kinds) {
    Category c = build_category(k, {2, 2});
    for (ObjectId i = 0; i < 2; ++i) {
      for (ObjectId j = 0; j < 2; ++j) {
        for (auto const& a : c.homset(j, i)) {
          auto sw = sandwich(c, i, j, a);
          REQUIRE(sw.to_semigroup().verify_associative());
        }
      }
    }
  }
}

TEST_CASE("sandwiching by the identity returns the ordinary product") {
  Category c = build_category(Kind::partialmap, {2});
  auto sw = sandwich(c, 0, 0, c.identity(0));
  auto plain = hom_monoid(c, 0);
  for (ElemIdx x = 0; x < sw.size(); ++x) {
    for (ElemIdx y = 0; y < sw.size(); ++y) {
      REQUIRE(sw.star(x, y) == plain.product(x, y));
    }
  }
}

TEST_CASE("a bijection sandwich is isomorphic to the plain hom-monoid") {
  Category c = build_category(Kind::fullmap, {2, 2});
  Morphism swap = mk(1, 0, {2, 1});
  auto sw = sandwich(c, 0, 1, swap);
  auto t2 = hom_monoid(c, 0);
  // x -> x.a is a bijection hom(0,1) -> hom(0,0) carrying star to composition
  std::vector<ElemIdx> iso(sw.size());
  for (ElemIdx x = 0; x < sw.size(); ++x) {
    iso[x] = sw.right_mul_a(x);
  }
  std::vector<ElemIdx> sorted = iso;
  std::sort(sorted.begin(), sorted.end());
  REQUIRE(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  for (ElemIdx x = 0; x < sw.size(); ++x) {
    for (ElemIdx y = 0; y < sw.size(); ++y) {
      REQUIRE(iso[sw.star(x, y)] == t2.product(iso[x], iso[y]));
    }
  }
}

TEST_CASE("the empty sandwich element produces a null semigroup") {
  Category c = build_category(Kind::partialmap, {2, 2});
  Morphism empty = mk(1, 0, {0, 0});
  auto sw = sandwich(c, 0, 1, empty);
  ElemIdx zero = c.index_of(mk(0, 1, {0, 0}));
  for (ElemIdx x = 0; x < sw.size(); ++x) {
    for (ElemIdx y = 0; y < sw.size(); ++y) {
      REQUIRE(sw.star(x, y) == zero);
    }
  }
}

TEST_CASE("sandwich rejects elements outside hom(j,i)") {
  Category c = build_category(Kind::fullmap, {2, 2});
  CHECK_THROWS_AS(SandwichSemigroup(c, 0, 1, mk(0, 1, {1, 2})),
                  std::invalid_argument);
}

TEST_CASE("P-sets of an invertible sandwich element fill the hom-set") {
  Category c = build_category(Kind::fullmap, {2, 2});
  GreenData ambient = green_category(c);
  auto sw = sandwich(c, 0, 1, mk(1, 0, {2, 1}));
  auto ps = p_sets(sw, ambient);
  CHECK(ps.p1.size() == sw.size());
  CHECK(ps.p2.size() == sw.size());
  CHECK(ps.p.size() == sw.size());
  auto flags = invertibility_flags(sw);
  CHECK(flags.right_inv);
  CHECK(flags.left_inv);
  CHECK(flags.cancel_r);
  CHECK(flags.cancel_l);
  CHECK(flags.cancel_rl);
}

TEST_CASE("P-sets of the empty sandwich element, against the raw definition") {
  Category c = build_category(Kind::partialmap, {2, 2});
  GreenData ambient = green_category(c);
  Morphism a = mk(1, 0, {0, 0});
  auto sw = sandwich(c, 0, 1, a);
  auto ps = p_sets(sw, ambient);

  std::vector<ElemIdx> oracle_p1;
  for (ElemIdx x = 0; x < sw.size(); ++x) {
    Morphism const& xm = c.at(0, 1, x);
    Morphism xa = c.compose(xm, a);
    if (oracle_leq_r(c, xm, xa) && oracle_leq_r(c, xa, xm)) {
      oracle_p1.push_back(x);
    }
  }
  CHECK(ps.p1 == oracle_p1);
  // only the empty map stays R-related to its a-translate
  CHECK(ps.p1 == std::vector<ElemIdx>{c.index_of(mk(0, 1, {0, 0}))});
  // chain inclusions
  for (auto x : ps.p) {
    CHECK(ps.in_p3[x]);
  }
  auto flags = invertibility_flags(sw);
  CHECK_FALSE(flags.right_inv);
  CHECK_FALSE(flags.left_inv);
  CHECK_FALSE(flags.cancel_r);
  CHECK_FALSE(flags.cancel_l);
  CHECK_FALSE(flags.cancel_rl);
}

TEST_CASE("sandwiching by an identity fills P1 and P2") {
  for (Kind k : {Kind::fullmap, Kind::partialmap}) {
    Category c = build_category(k, {2});
    GreenData ambient = green_category(c);
    auto sw = sandwich(c, 0, 0, c.identity(0));
    auto ps = p_sets(sw, ambient);
    CHECK(ps.p1.size() == sw.size());
    CHECK(ps.p2.size() == sw.size());
  }
}

TEST_CASE("constant sandwich elements break right cancellativity") {
  Category c = build_category(Kind::fullmap, {2, 2});
  auto sw = sandwich(c, 0, 1, mk(1, 0, {1, 1}));
  auto flags = invertibility_flags(sw);
  CHECK_FALSE(flags.cancel_r);
  bool witness = false;
  for (ElemIdx x = 0; x < sw.size() && !witness; ++x) {
    for (ElemIdx y = x + 1; y < sw.size(); ++y) {
      if (sw.right_mul_a(x) == sw.right_mul_a(y)) {
        witness = true;
        break;
      }
    }
  }
  CHECK(witness);
}

TEST_CASE("green transfer holds for every sandwich element at desk scale") {
  for (Kind k : {Kind::partialmap, Kind::fullmap}) {
    Category c = build_category(k, {2, 2});
    GreenData ambient = green_category(c);
    for (ObjectId i = 0; i < 2; ++i) {
      for (ObjectId j = 0; j < 2; ++j) {
        for (auto const& a : c.homset(j, i)) {
          auto sw = sandwich(c, i, j, a);
          auto rep = green_transfer_check(sw, ambient);
          if (!rep.ok()) {
            for (auto const& v : rep.violations) {
              UNSCOPED_INFO(v.clause);
            }
          }
          REQUIRE(rep.ok());
        }
      }
    }
  }
}

TEST_CASE("identity sandwich: sandwich classes equal ambient classes") {
  Category c = build_category(Kind::fullmap, {2});
  GreenData ambient = green_category(c);
  auto sw = sandwich(c, 0, 0, c.identity(0));
  auto rep = green_transfer_check(sw, ambient);
  REQUIRE(rep.ok());
  for (ElemIdx x = 0; x < sw.size(); ++x) {
    for (ElemIdx y = 0; y < sw.size(); ++y) {
      ElemIdx gx = c.global_index(0, 0, x), gy = c.global_index(0, 0, y);
      CHECK(rep.green.r.related(x, y) == ambient.r.related(gx, gy));
      CHECK(rep.green.l.related(x, y) == ambient.l.related(gx, gy));
      CHECK(rep.green.h.related(x, y) == ambient.h.related(gx, gy));
      CHECK(rep.green.j.related(x, y) == ambient.j.related(gx, gy));
    }
  }
}

TEST_CASE("p_set_checks pass across the [2,2] catalog") {
  for (Kind k : catalog_kinds) {
    Category c = build_category(k, {2, 2});
    GreenData ambient = green_category(c);
    for (ObjectId i = 0; i < 2; ++i) {
      for (ObjectId j = 0; j < 2; ++j) {
        for (auto const& a : c.homset(j, i)) {
          auto sw = sandwich(c, i, j, a);
          auto vs = p_set_checks(sw, ambient);
          if (!vs.empty()) {
            UNSCOPED_INFO(vs.front().clause);
          }
          REQUIRE(vs.empty());
        }
      }
    }
  }
}

TEST_CASE("regular set computations") {
  SECTION("fullmap: Reg(S_ij^a) = P^a") {
    Category c = build_category(Kind::fullmap, {2, 2});
    GreenData ambient = green_category(c);
    for (auto const& a : c.homset(1, 0)) {
      auto sw = sandwich(c, 0, 1, a);
      auto reg = regular_set(sw, ambient);
      CHECK(reg == p_sets(sw, ambient).p);
    }
  }
  SECTION("empty sandwich: only the empty map is regular") {
    Category c = build_category(Kind::partialmap, {2, 2});
    GreenData ambient = green_category(c);
    auto sw = sandwich(c, 0, 1, mk(1, 0, {0, 0}));
    CHECK(regular_set(sw, ambient)
          == std::vector<ElemIdx>{c.index_of(mk(0, 1, {0, 0}))});
  }
  SECTION("identity sandwich over fullmap: everything is regular") {
    Category c = build_category(Kind::fullmap, {2});
    GreenData ambient = green_category(c);
    auto sw = sandwich(c, 0, 0, c.identity(0));
    CHECK(regular_set(sw, ambient).size() == sw.size());
  }
}

TEST_CASE("sandwich semigroups of finite categories are stable") {
  Category c = build_category(Kind::partialmap, {2, 2});
  for (ObjectId i = 0; i < 2; ++i) {
    for (ObjectId j = 0; j < 2; ++j) {
      for (auto const& a : c.homset(j, i)) {
        auto sw = sandwich(c, i, j, a);
        auto sg = sw.to_semigroup();
        REQUIRE(is_stable_semigroup(sg, green_semigroup(sg)));
      }
    }
  }
}

TEST_CASE("subcategory machinery") {
  Category pt = build_category(Kind::partialmap, {2, 2});
  SECTION("total maps form a closed subcategory") {
    auto total = Subcategory::where(pt, [](Morphism const& m) {
      return std::all_of(m.payload.begin(), m.payload.end(),
                         [](std::uint8_t v) { return v != 0; });
    });
    CHECK(total.size() == 16);  // 2^2 per hom-set
    CHECK(total.is_regular());
  }
  SECTION("a non-closed member set is rejected") {
    // drop the empty map from hom(0,0) but keep maps composing into it
    std::vector<std::vector<std::uint32_t>> mem(4);
    for (ObjectId i = 0; i < 2; ++i) {
      for (ObjectId j = 0; j < 2; ++j) {
        for (std::uint32_t t = 0; t < pt.homset_size(i, j); ++t) {
          Morphism empty;
          empty.src = i;
          empty.dst = j;
          empty.payload = {0, 0};
          if (!(i == 0 && j == 0 && t == pt.index_of(empty))) {
            mem[i * 2 + j].push_back(t);
          }
        }
      }
    }
    CHECK_THROWS_AS(Subcategory(pt, mem), std::invalid_argument);
  }
  SECTION("generated closure recovers dropped products") {
    Morphism f = mk(0, 0, {2, 0});  // 1 -> 2, 2 undefined; f.f is empty
    auto sub = Subcategory::generated(pt, {{0, 0, pt.index_of(f)}});
    Morphism empty = mk(0, 0, {0, 0});
    CHECK(sub.contains(0, 0, pt.index_of(f)));
    CHECK(sub.contains(0, 0, pt.index_of(empty)));
    CHECK(sub.size() == 2);
  }
}

TEST_CASE("inheritance by partial subsemigroups") {
  Category pt = build_category(Kind::partialmap, {2, 2});
  SECTION("total maps inside the partial-map category") {
    auto total = Subcategory::where(pt, [](Morphism const& m) {
      return std::all_of(m.payload.begin(), m.payload.end(),
                         [](std::uint8_t v) { return v != 0; });
    });
    auto rep = subsemigroup_inheritance(pt, total);
    if (!rep.ok()) {
      UNSCOPED_INFO(rep.violations.front().clause);
    }
    CHECK(rep.ok());
    CHECK(rep.sandwiches_checked == 16);
  }
  SECTION("injective partial maps inside the partial-map category") {
    auto inj = Subcategory::where(pt, [](Morphism const& m) {
      std::vector<std::uint8_t> defined;
      for (auto v : m.payload) {
        if (v != 0) {
          defined.push_back(v);
        }
      }
      std::sort(defined.begin(), defined.end());
      return std::adjacent_find(defined.begin(), defined.end())
             == defined.end();
    });
    auto rep = subsemigroup_inheritance(pt, inj);
    if (!rep.ok()) {
      UNSCOPED_INFO(rep.violations.front().clause);
    }
    CHECK(rep.ok());
  }
  SECTION("the full subcategory inherits everything exactly") {
    auto full = Subcategory::full(pt);
    auto rep = subsemigroup_inheritance(pt, full);
    CHECK(rep.ok());
    CHECK(rep.sandwiches_checked == pt.total_morphisms());
  }
}
