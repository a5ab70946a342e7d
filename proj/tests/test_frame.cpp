#include <algorithm>
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include <sandwich/frame.hpp>

using namespace sandwich_kit;

namespace {

Morphism mk(ObjectId src, ObjectId dst, std::vector<int> payload) {
  Morphism m;
  m.src = src;
  m.dst = dst;
  m.payload.assign(payload.begin(), payload.end());
  return m;
}

void require_clean(std::vector<Violation> const& vs) {
  if (!vs.empty()) {
    UNSCOPED_INFO(vs.front().check + ": " + vs.front().clause);
  }
  REQUIRE(vs.empty());
}

}  // namespace

TEST_CASE("every catalog sandwich element is sandwich-regular") {
  for (Kind k : catalog_kinds) {
    Category c = build_category(k, {2, 2});
    for (ObjectId i = 0; i < 2; ++i) {
      for (ObjectId j = 0; j < 2; ++j) {
        for (auto const& a : c.homset(j, i)) {
          REQUIRE(is_sandwich_regular(SandwichSemigroup(c, i, j, a)));
        }
      }
    }
  }
}

TEST_CASE("a synthetic partial subsemigroup defeats sandwich-regularity") {
  Category pt = build_category(Kind::partialmap, {2});
  Morphism f = mk(0, 0, {2, 0});  // f.f is the empty map, f not regular in T
  auto sub = Subcategory::generated(
      pt, {{0, 0, pt.identity_idx(0)}, {0, 0, pt.index_of(f)}});
  REQUIRE(sub.contains(0, 0, pt.identity_idx(0)));
  REQUIRE_FALSE(sub.is_regular_element({0, 0, pt.index_of(f)}));
  CHECK_FALSE(is_sandwich_regular_in(sub, 0, 0, pt.identity_idx(0)));
  // the ambient category itself is regular, so a = id is sandwich-regular
  CHECK(is_sandwich_regular(SandwichSemigroup(pt, 0, 0, pt.identity(0))));
}

TEST_CASE("frames build cleanly across the whole [2,2] catalog") {
  for (Kind k : catalog_kinds) {
    Category c = build_category(k, {2, 2});
    GreenData ambient = green_category(c);
    for (ObjectId i = 0; i < 2; ++i) {
      for (ObjectId j = 0; j < 2; ++j) {
        for (auto const& a : c.homset(j, i)) {
          auto fr = build_frame(SandwichSemigroup(c, i, j, a), ambient);
          require_clean(fr.violations);
          require_clean(pullback_check(fr).violations);
          require_clean(hat_analysis(fr).violations);
          require_clean(idempotent_fiber(fr).violations);
          require_clean(mi_structure(fr).violations);
          require_clean(inverse_case(fr).violations);
        }
      }
    }
  }
}

TEST_CASE("identity frame: P^a is the regular part, W is the whole hom-monoid") {
  Category c = build_category(Kind::partialmap, {2});
  GreenData ambient = green_category(c);
  auto sw = sandwich(c, 0, 0, c.identity(0));
  auto fr = build_frame(sw, ambient);
  require_clean(fr.violations);
  // PT_2 is regular, so P^a is everything and W = S_0
  CHECK(fr.pa.size() == 9);
  CHECK(fr.w.size() == 9);
  CHECK(fr.t1.size() == 9);
  CHECK(fr.t2.size() == 9);
  CHECK(fr.va == std::vector<ElemIdx>{c.identity_idx(0)});
  for (std::size_t x = 0; x < fr.pa.size(); ++x) {
    CHECK(fr.phi[x] == fr.w_local(fr.pa[x]));  // x -> exe = x here
  }
}

TEST_CASE("injective sandwich element over fullmap [3,2]: W has four elements") {
  Category c = build_category(Kind::fullmap, {3, 2});
  GreenData ambient = green_category(c);
  Morphism a = mk(1, 0, {1, 2});  // injective map from the 2-set to the 3-set
  auto sw = sandwich(c, 0, 1, a);
  auto fr = build_frame(sw, ambient);
  require_clean(fr.violations);

  // oracle: enumerate a.x.a directly
  std::set<std::vector<std::uint8_t>> w_payloads;
  for (auto const& x : c.homset(0, 1)) {
    w_payloads.insert(c.compose(c.compose(a, x), a).payload);
  }
  CHECK(w_payloads.size() == 4);
  CHECK(fr.w.size() == 4);

  // V(a) has two elements (one free point), so MI(P^a) is a 2-cell band
  CHECK(fr.va.size() == 2);
  auto hat = hat_analysis(fr);
  require_clean(hat.violations);
  auto const& info = hat.hhat_info[hat.hhat.cls[fr.b_in_pa]];
  CHECK(info.rows * info.cols == 2);
  CHECK(info.rectangular_group);
  bool some_fat_block = false;
  for (auto const& hi : hat.hhat_info) {
    some_fat_block = some_fat_block
                     || (hi.has_idempotent && hi.rows * hi.cols > 1
                         && hi.rectangular_group);
  }
  CHECK(some_fat_block);
}

TEST_CASE("injpartial sandwich elements have a forced inverse choice") {
  Category c = build_category(Kind::injpartial, {2, 2});
  GreenData ambient = green_category(c);
  for (auto const& a : c.homset(1, 0)) {
    auto sw = sandwich(c, 0, 1, a);
    auto fr = build_frame(sw, ambient);
    CHECK(fr.va.size() == 1);
    CHECK(fr.b == fr.va[0]);
  }
}

TEST_CASE("pullback of the identity frame is the diagonal") {
  Category c = build_category(Kind::fullmap, {2});
  GreenData ambient = green_category(c);
  auto fr = build_frame(sandwich(c, 0, 0, c.identity(0)), ambient);
  auto rep = pullback_check(fr);
  require_clean(rep.violations);
  CHECK(rep.pa_size == rep.pair_count);
  for (std::size_t x = 0; x < fr.pa.size(); ++x) {
    CHECK(fr.psi1[x] == fr.psi2[x]);
  }
}

TEST_CASE("pullback cardinality for a swap sandwich") {
  Category c = build_category(Kind::fullmap, {2, 2});
  GreenData ambient = green_category(c);
  auto fr = build_frame(sandwich(c, 0, 1, mk(1, 0, {2, 1})), ambient);
  auto rep = pullback_check(fr);
  require_clean(rep.violations);
  CHECK(rep.injective);
  CHECK(rep.pa_size == 4);  // invertible a: everything regular
  CHECK(rep.pair_count == 4);
}

TEST_CASE("identity frame: hat relations coincide with the plain ones") {
  Category c = build_category(Kind::partialmap, {2});
  GreenData ambient = green_category(c);
  auto fr = build_frame(sandwich(c, 0, 0, c.identity(0)), ambient);
  auto hat = hat_analysis(fr);
  require_clean(hat.violations);
  CHECK(hat.rhat.cls == fr.pa_green.r.cls);
  CHECK(hat.lhat.cls == fr.pa_green.l.cls);
  CHECK(hat.hhat.cls == fr.pa_green.h.cls);
  for (auto const& info : hat.hhat_info) {
    CHECK(info.rows == 1);
    CHECK(info.cols == 1);
  }
}

TEST_CASE("idempotent fiber on degenerate and null frames") {
  SECTION("identity sandwich reduces to the classical idempotent-generated part") {
    Category c = build_category(Kind::fullmap, {2});
    GreenData ambient = green_category(c);
    auto fr = build_frame(sandwich(c, 0, 0, c.identity(0)), ambient);
    auto rep = idempotent_fiber(fr);
    require_clean(rep.violations);
    CHECK(rep.ea_size == rep.eb_size);
    CHECK(rep.ea_generated_size == rep.eb_generated_size);
  }
  SECTION("null sandwich: trivial W, singleton fiber") {
    Category c = build_category(Kind::partialmap, {2, 2});
    GreenData ambient = green_category(c);
    auto fr = build_frame(sandwich(c, 0, 1, mk(1, 0, {0, 0})), ambient);
    auto rep = idempotent_fiber(fr);
    require_clean(rep.violations);
    CHECK(fr.w.size() == 1);
    CHECK(fr.pa.size() == 1);
    CHECK(rep.ea_generated_size == 1);
  }
}

TEST_CASE("MI structure of the identity frame") {
  Category c = build_category(Kind::fullmap, {2});
  GreenData ambient = green_category(c);
  auto fr = build_frame(sandwich(c, 0, 0, c.identity(0)), ambient);
  auto rep = mi_structure(fr);
  require_clean(rep.violations);
  REQUIRE(rep.mi.size() == 1);
  CHECK(fr.pa[rep.mi[0]] == c.identity_idx(0));
  CHECK(rep.rp.size() == 2);  // the two units of T_2
  CHECK(rep.mi_dominated);
}

TEST_CASE("MI(P^a) matches V(a) in size across a mixed sample") {
  Category c = build_category(Kind::fullmap, {3, 2});
  GreenData ambient = green_category(c);
  for (ObjectId i = 0; i < 2; ++i) {
    for (ObjectId j = 0; j < 2; ++j) {
      for (std::uint32_t t = 0; t < c.homset_size(j, i); t += 2) {
        auto fr = build_frame(SandwichSemigroup(c, i, j, c.at(j, i, t)), ambient);
        auto rep = mi_structure(fr);
        require_clean(rep.violations);
        CHECK(rep.mi.size() == fr.va.size());
        CHECK(rep.mi_dominated);
      }
    }
  }
}

TEST_CASE("inverse case detection") {
  SECTION("injpartial [2,2]: every sandwich is uniquely sandwich-regular") {
    Category c = build_category(Kind::injpartial, {2, 2});
    GreenData ambient = green_category(c);
    for (ObjectId i = 0; i < 2; ++i) {
      for (ObjectId j = 0; j < 2; ++j) {
        for (auto const& a : c.homset(j, i)) {
          auto fr = build_frame(SandwichSemigroup(c, i, j, a), ambient);
          auto rep = inverse_case(fr);
          require_clean(rep.violations);
          REQUIRE(rep.uniquely_sandwich_regular);
        }
      }
    }
  }
  SECTION("a constant fullmap sandwich is not uniquely regular") {
    Category c = build_category(Kind::fullmap, {2, 2});
    GreenData ambient = green_category(c);
    auto fr = build_frame(sandwich(c, 0, 1, mk(1, 0, {1, 1})), ambient);
    CHECK(c.inverses(mk(1, 0, {1, 1})).size() > 1);
    CHECK_FALSE(inverse_case(fr).uniquely_sandwich_regular);
  }
  SECTION("identity sandwich over injpartial [2]: the symmetric inverse monoid") {
    Category c = build_category(Kind::injpartial, {2});
    GreenData ambient = green_category(c);
    auto fr = build_frame(sandwich(c, 0, 0, c.identity(0)), ambient);
    auto rep = inverse_case(fr);
    require_clean(rep.violations);
    CHECK(rep.uniquely_sandwich_regular);
    CHECK(fr.pa.size() == 7);  // I_2 is inverse, so everything is regular
    for (ElemIdx u = 0; u < fr.pa.size(); ++u) {
      CHECK(fr.pa_sg.inverses_of(u).size() == 1);
    }
  }
}

TEST_CASE("build_frame rejects a bad inverse choice") {
  Category c = build_category(Kind::fullmap, {2});
  GreenData ambient = green_category(c);
  auto sw = sandwich(c, 0, 0, c.at(0, 0, 0));  // the constant-1 map
  auto va = c.inverses(c.at(0, 0, 0));
  ElemIdx not_inverse = 0;
  for (ElemIdx t = 0; t < c.homset_size(0, 0); ++t) {
    bool in_va = false;
    for (auto const& v : va) {
      in_va = in_va || c.index_of(v) == t;
    }
    if (!in_va) {
      not_inverse = t;
      break;
    }
  }
  CHECK_THROWS_AS(build_frame(sw, ambient, not_inverse), std::invalid_argument);
}
