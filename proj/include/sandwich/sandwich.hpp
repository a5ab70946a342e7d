// Sandwich semigroups S_ij^a = (hom(i,j), x *_a y = x.a.y) inside a finite
// category, their P-sets, the Green-relation transfer theorem, sandwich
// invertibility/cancellativity flags, and inheritance of all of the above
// by partial subsemigroups.

#ifndef SANDWICH_KIT_SANDWICH_HPP_
#define SANDWICH_KIT_SANDWICH_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "finite_semigroup.hpp"
#include "green.hpp"
#include "subcategory.hpp"

namespace sandwich_kit {

//! A failed theorem-check clause, with the witnessing element indices.
struct Violation {
  std::string check;
  std::string clause;
  std::vector<ElemIdx> witnesses;
  std::string detail;
};

//! The sandwich semigroup (hom(i,j), *_a) for a fixed a in hom(j,i).
//! The star table is memoized below the table cap; above it products are
//! computed on demand from the two cached translation columns.
class SandwichSemigroup {
 public:
  SandwichSemigroup() = default;  // empty; only assignment revives it

  SandwichSemigroup(Category const& c, ObjectId i, ObjectId j,
                    Morphism const& a, std::size_t table_cap = std::size_t(1) << 14)
      : c_(&c), i_(i), j_(j), a_(a) {
    if (a.src != j || a.dst != i || !c.valid(a)) {
      throw std::invalid_argument("sandwich: a must lie in hom(j, i)");
    }
    a_idx_ = c.index_of(a);
    std::size_t n = c.homset_size(i, j);
    xa_.resize(n);
    ax_.resize(n);
    axa_.resize(n);
    for (std::uint32_t x = 0; x < n; ++x) {
      xa_[x] = c.compose_idx(i_, j_, i_, x, a_idx_);
      ax_[x] = c.compose_idx(j_, i_, j_, a_idx_, x);
      axa_[x] = c.compose_idx(j_, j_, i_, ax_[x], a_idx_);
    }
    if (n <= table_cap) {
      table_.resize(n * n);
      for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y = 0; y < n; ++y) {
          table_[std::size_t(x) * n + y] = c.compose_idx(i_, i_, j_, xa_[x], y);
        }
      }
    }
  }

  Category const& category() const { return *c_; }
  ObjectId i() const { return i_; }
  ObjectId j() const { return j_; }
  Morphism const& a() const { return a_; }
  std::uint32_t a_idx() const { return a_idx_; }

  std::size_t size() const { return xa_.size(); }

  ElemIdx star(ElemIdx x, ElemIdx y) const {
    if (!table_.empty()) {
      return table_[std::size_t(x) * size() + y];
    }
    return c_->compose_idx(i_, i_, j_, xa_[x], y);
  }

  //! Index of x.a in hom(i,i).
  std::uint32_t right_mul_a(ElemIdx x) const { return xa_[x]; }
  //! Index of a.x in hom(j,j).
  std::uint32_t left_mul_a(ElemIdx x) const { return ax_[x]; }
  //! Index of a.x.a in hom(j,i).
  std::uint32_t conj_a(ElemIdx x) const { return axa_[x]; }

  FiniteSemigroup to_semigroup() const {
    return FiniteSemigroup::from_product(
        size(), [this](ElemIdx x, ElemIdx y) { return star(x, y); });
  }

 private:
  Category const* c_ = nullptr;
  ObjectId i_ = 0, j_ = 0;
  Morphism a_;
  std::uint32_t a_idx_ = 0;
  std::vector<ElemIdx> xa_, ax_, axa_;
  std::vector<ElemIdx> table_;
};

//! Builds S_ij^a and spot-checks associativity of the star product.
inline SandwichSemigroup sandwich(Category const& c, ObjectId i, ObjectId j,
                                  Morphism const& a) {
  SandwichSemigroup sw(c, i, j, a);
  std::size_t n = sw.size();
  std::size_t step = std::max<std::size_t>(1, n / 8);
  for (ElemIdx x = 0; x < n; x += step) {
    for (ElemIdx y = 0; y < n; y += step) {
      for (ElemIdx z = 0; z < n; z += step) {
        if (sw.star(sw.star(x, y), z) != sw.star(x, sw.star(y, z))) {
          throw std::logic_error("sandwich: star product not associative");
        }
      }
    }
  }
  return sw;
}

//! The ordinary endomorphism monoid S_i = (hom(i,i), .), as a table.
inline FiniteSemigroup hom_monoid(Category const& c, ObjectId i) {
  return FiniteSemigroup::from_product(
      c.homset_size(i, i), [&c, i](ElemIdx x, ElemIdx y) {
        return c.compose_idx(i, i, i, x, y);
      });
}

//! Green's data of the sandwich semigroup itself (preorders over S^1).
inline GreenData sandwich_green(SandwichSemigroup const& sw,
                                GreenOptions const& opts = {}) {
  std::size_t n = sw.size();
  auto right = [&](ElemIdx y, auto emit) {
    for (ElemIdx u = 0; u < n; ++u) {
      emit(sw.star(y, u));
    }
  };
  auto left = [&](ElemIdx y, auto emit) {
    for (ElemIdx u = 0; u < n; ++u) {
      emit(sw.star(u, y));
    }
  };
  return green_from_products(n, right, left,
                             [&](ElemIdx x) { return sw.star(x, x) == x; },
                             opts);
}

//! P-set membership inside hom(i,j), from the ambient Green's relations:
//! P1 = { x : xa R x },  P2 = { x : ax L x },  P3 = { x : axa J x },
//! P  = P1 n P2.
struct PSets {
  std::vector<ElemIdx> p1, p2, p3, p;
  std::vector<char> in_p1, in_p2, in_p3, in_p;
};

inline PSets p_sets(SandwichSemigroup const& sw, GreenData const& ambient) {
  auto const& c = sw.category();
  ObjectId i = sw.i(), j = sw.j();
  std::size_t n = sw.size();
  PSets ps;
  ps.in_p1.assign(n, 0);
  ps.in_p2.assign(n, 0);
  ps.in_p3.assign(n, 0);
  ps.in_p.assign(n, 0);
  for (ElemIdx x = 0; x < n; ++x) {
    ElemIdx gx = c.global_index(i, j, x);
    if (ambient.r.related(c.global_index(i, i, sw.right_mul_a(x)), gx)) {
      ps.in_p1[x] = 1;
      ps.p1.push_back(x);
    }
    if (ambient.l.related(c.global_index(j, j, sw.left_mul_a(x)), gx)) {
      ps.in_p2[x] = 1;
      ps.p2.push_back(x);
    }
    if (ambient.j.related(c.global_index(j, i, sw.conj_a(x)), gx)) {
      ps.in_p3[x] = 1;
      ps.p3.push_back(x);
    }
    if (ps.in_p1[x] && ps.in_p2[x]) {
      ps.in_p[x] = 1;
      ps.p.push_back(x);
    }
  }
  return ps;
}

//! Right/left invertibility of the sandwich element and the three
//! cancellativity laws, all by direct evaluation.
struct InvertibilityFlags {
  bool right_inv = false;
  bool left_inv = false;
  bool cancel_r = false;
  bool cancel_l = false;
  bool cancel_rl = false;
};

inline InvertibilityFlags invertibility_flags(SandwichSemigroup const& sw) {
  auto const& c = sw.category();
  ObjectId i = sw.i(), j = sw.j();
  std::size_t n = sw.size();
  InvertibilityFlags f;
  for (ElemIdx b = 0; b < n && !(f.right_inv && f.left_inv); ++b) {
    std::uint32_t ab = c.compose_idx(j, i, j, sw.a_idx(), b);  // in hom(j,j)
    std::uint32_t ba = c.compose_idx(i, j, i, b, sw.a_idx());  // in hom(i,i)
    bool right = true, left = true;
    for (ElemIdx x = 0; x < n; ++x) {
      right = right && c.compose_idx(i, j, j, x, ab) == x;
      left = left && c.compose_idx(i, i, j, ba, x) == x;
      if (!right && !left) {
        break;
      }
    }
    f.right_inv = f.right_inv || right;
    f.left_inv = f.left_inv || left;
  }
  auto injective = [n](auto key) {
    std::vector<std::pair<std::uint64_t, ElemIdx>> seen;
    seen.reserve(n);
    for (ElemIdx x = 0; x < n; ++x) {
      seen.emplace_back(key(x), x);
    }
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end(),
                              [](auto const& a, auto const& b) {
                                return a.first == b.first;
                              }) == seen.end();
  };
  f.cancel_r = injective([&](ElemIdx x) { return std::uint64_t(sw.right_mul_a(x)); });
  f.cancel_l = injective([&](ElemIdx x) { return std::uint64_t(sw.left_mul_a(x)); });
  f.cancel_rl = injective([&](ElemIdx x) {
    return (std::uint64_t(sw.right_mul_a(x)) << 32) | sw.left_mul_a(x);
  });
  return f;
}

//! Reg(S_ij^a), computed two ways (directly, and as P^a n Reg(S)) and
//! cross-compared; a mismatch is an internal inconsistency.
inline std::vector<ElemIdx> regular_set(SandwichSemigroup const& sw,
                                        GreenData const& ambient) {
  auto const& c = sw.category();
  std::size_t n = sw.size();
  std::vector<ElemIdx> direct;
  for (ElemIdx x = 0; x < n; ++x) {
    for (ElemIdx y = 0; y < n; ++y) {
      if (sw.star(sw.star(x, y), x) == x) {
        direct.push_back(x);
        break;
      }
    }
  }
  auto ps = p_sets(sw, ambient);
  std::vector<ElemIdx> via_p;
  for (auto x : ps.p) {
    if (c.is_regular(c.at(sw.i(), sw.j(), x))) {
      via_p.push_back(x);
    }
  }
  if (direct != via_p) {
    throw std::logic_error("regular_set: direct and P^a n Reg(S) routes disagree");
  }
  return direct;
}

namespace detail {

  //! Members of the ambient K-class of local element x that lie inside
  //! hom(i,j), as sorted local indices.
  inline std::vector<ElemIdx> ambient_class_in_homset(
      Category const& c, GreenRelation const& rel, ObjectId i, ObjectId j,
      ElemIdx x) {
    std::uint32_t off = c.offset(i, j);
    std::uint32_t sz = c.homset_size(i, j);
    std::vector<ElemIdx> out;
    for (auto g : rel.members[rel.cls[off + x]]) {
      if (g >= off && g < off + sz) {
        out.push_back(g - off);
      }
    }
    return out;
  }

}  // namespace detail

//! Everything the transfer theorem asserts about one sandwich semigroup.
struct TransferReport {
  PSets psets;
  GreenData green;  // Green's data of S_ij^a itself
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

//! Verifies, element by element, the case-split description of the sandwich
//! Green's classes in terms of the ambient ones and the P-sets, the
//! non-group singleton clause outside P^a, the J=D corollary, and the
//! stability transfer from aS_ij a to S_ij^a.
inline TransferReport green_transfer_check(SandwichSemigroup const& sw,
                                           GreenData const& ambient,
                                           GreenOptions const& opts = {}) {
  auto const& c = sw.category();
  ObjectId i = sw.i(), j = sw.j();
  std::size_t n = sw.size();
  TransferReport rep{p_sets(sw, ambient), sandwich_green(sw, opts), {}};
  auto const& ps = rep.psets;
  auto const& sg = rep.green;

  auto fail = [&rep](std::string clause, ElemIdx x, std::string detail = {}) {
    rep.violations.push_back(
        {"green_transfer", std::move(clause), {x}, std::move(detail)});
  };
  auto filtered = [&](GreenRelation const& rel, ElemIdx x,
                      std::vector<char> const& mask) {
    std::vector<ElemIdx> out;
    for (auto y : detail::ambient_class_in_homset(c, rel, i, j, x)) {
      if (mask[y]) {
        out.push_back(y);
      }
    }
    return out;
  };
  auto sandwich_class = [&](GreenRelation const& rel, ElemIdx x) {
    return rel.members[rel.cls[x]];  // sorted by construction
  };

  for (ElemIdx x = 0; x < n; ++x) {
    // (i) R^a
    std::vector<ElemIdx> expect = ps.in_p1[x]
        ? filtered(ambient.r, x, ps.in_p1)
        : std::vector<ElemIdx>{x};
    if (sandwich_class(sg.r, x) != expect) {
      fail("R^a case split", x);
    }
    // (ii) L^a
    expect = ps.in_p2[x] ? filtered(ambient.l, x, ps.in_p2)
                         : std::vector<ElemIdx>{x};
    if (sandwich_class(sg.l, x) != expect) {
      fail("L^a case split", x);
    }
    // (iii) H^a
    expect = ps.in_p[x] ? detail::ambient_class_in_homset(c, ambient.h, i, j, x)
                        : std::vector<ElemIdx>{x};
    if (sandwich_class(sg.h, x) != expect) {
      fail("H^a case split", x);
    }
    // (iv) D^a
    if (ps.in_p[x]) {
      expect = filtered(ambient.d, x, ps.in_p);
    } else if (ps.in_p2[x]) {
      expect = sandwich_class(sg.l, x);
    } else if (ps.in_p1[x]) {
      expect = sandwich_class(sg.r, x);
    } else {
      expect = {x};
    }
    if (sandwich_class(sg.d, x) != expect) {
      fail("D^a case split", x);
    }
    // (v) J^a
    expect = ps.in_p3[x] ? filtered(ambient.j, x, ps.in_p3)
                         : sandwich_class(sg.d, x);
    if (sandwich_class(sg.j, x) != expect) {
      fail("J^a case split", x);
    }
    // outside P^a, H^a-classes are non-group singletons
    if (!ps.in_p[x]) {
      if (sandwich_class(sg.h, x).size() != 1 || sw.star(x, x) == x) {
        fail("non-group singleton outside P^a", x);
      }
    }
  }

  // Corollary: a stable and J = D ambient imply J^a = D^a.
  auto st = stability(c, ambient, sw.a());
  if (st.r_stable && st.l_stable && ambient.j.cls == ambient.d.cls) {
    if (sg.j.cls != sg.d.cls) {
      rep.violations.push_back(
          {"green_transfer", "J^a = D^a corollary", {}, ""});
    }
  }

  // If every element of aS_ij a is stable in S, S_ij^a must be stable.
  bool hyp = true;
  for (ElemIdx x = 0; x < n && hyp; ++x) {
    auto w = stability(c, ambient, c.at(j, i, sw.conj_a(x)));
    hyp = w.r_stable && w.l_stable;
  }
  if (hyp && !is_stable_semigroup(sw.to_semigroup(), sg)) {
    rep.violations.push_back(
        {"green_transfer", "stability transfer to S_ij^a", {}, ""});
  }
  return rep;
}

//! Structural checks on the P-sets: the chain Reg <= P <= P3 (with P = P3
//! under stability), ideal/subsemigroup closure, the two-route computation
//! of Reg(S_ij^a), and the invertibility lemma implications.
inline std::vector<Violation> p_set_checks(SandwichSemigroup const& sw,
                                           GreenData const& ambient) {
  std::vector<Violation> out;
  std::size_t n = sw.size();
  auto ps = p_sets(sw, ambient);
  auto fail = [&out](std::string clause, std::vector<ElemIdx> w = {}) {
    out.push_back({"p_sets", std::move(clause), std::move(w), ""});
  };

  std::vector<ElemIdx> reg;
  try {
    reg = regular_set(sw, ambient);
  } catch (std::logic_error const&) {
    fail("Reg two-route agreement");
    return out;
  }
  for (auto x : reg) {
    if (!ps.in_p[x]) {
      fail("Reg(S_ij^a) inside P^a", {x});
    }
  }
  for (auto x : ps.p) {
    if (!ps.in_p3[x]) {
      fail("P^a inside P3^a", {x});
    }
  }
  auto st = stability(sw.category(), ambient, sw.a());
  if (st.r_stable && st.l_stable && ps.p != ps.p3) {
    fail("P^a = P3^a under stability");
  }
  for (ElemIdx u = 0; u < n; ++u) {
    for (auto x : ps.p1) {
      if (!ps.in_p1[sw.star(u, x)]) {
        fail("P1^a left ideal", {u, x});
      }
    }
    for (auto x : ps.p2) {
      if (!ps.in_p2[sw.star(x, u)]) {
        fail("P2^a right ideal", {x, u});
      }
    }
  }
  for (auto x : ps.p) {
    for (auto y : ps.p) {
      if (!ps.in_p[sw.star(x, y)]) {
        fail("P^a subsemigroup", {x, y});
      }
    }
  }
  auto flags = invertibility_flags(sw);
  if (flags.right_inv) {
    if (ps.p1.size() != n) {
      fail("right-invertible gives P1^a = S_ij");
    }
    auto sg = sandwich_green(sw);
    for (ElemIdx x = 0; x < n; ++x) {
      auto actual = sg.r.members[sg.r.cls[x]];
      auto ambient_cls = detail::ambient_class_in_homset(
          sw.category(), ambient.r, sw.i(), sw.j(), x);
      if (actual != ambient_cls) {
        fail("right-invertible gives R^a = R", {x});
        break;
      }
    }
  }
  if (flags.left_inv) {
    if (ps.p2.size() != n) {
      fail("left-invertible gives P2^a = S_ij");
    }
  }
  return out;
}

// --- partial subsemigroups ---------------------------------------------------

//! The sandwich semigroup T_ij^a of a subcategory, re-indexed over the
//! member list of T_ij.
struct SubSandwich {
  std::vector<std::uint32_t> members;  // parent-local indices of T_ij
  FiniteSemigroup sg;
};

inline SubSandwich sandwich_in_sub(Subcategory const& sub, ObjectId i,
                                   ObjectId j, std::uint32_t a_idx) {
  auto const& c = sub.parent();
  if (!sub.contains(j, i, a_idx)) {
    throw std::invalid_argument("sandwich_in_sub: a not in T_ji");
  }
  auto members = sub.members(i, j);
  std::vector<ElemIdx> local(c.homset_size(i, j), ElemIdx(-1));
  for (std::size_t k = 0; k < members.size(); ++k) {
    local[members[k]] = static_cast<ElemIdx>(k);
  }
  auto sg = FiniteSemigroup::from_product(
      members.size(), [&](ElemIdx x, ElemIdx y) {
        std::uint32_t xa = c.compose_idx(i, j, i, members[x], a_idx);
        return local[c.compose_idx(i, i, j, xa, members[y])];
      });
  return SubSandwich{std::move(members), std::move(sg)};
}

//! Sandwich-regularity of a within the subcategory: every a.x.a regular in T.
inline bool is_sandwich_regular_in(Subcategory const& sub, ObjectId i,
                                   ObjectId j, std::uint32_t a_idx) {
  auto const& c = sub.parent();
  for (auto x : sub.members(i, j)) {
    std::uint32_t ax = c.compose_idx(j, i, j, a_idx, x);
    std::uint32_t axa = c.compose_idx(j, j, i, ax, a_idx);
    if (!sub.is_regular_element({j, i, axa})) {
      return false;
    }
  }
  return true;
}

//! Stability of a member within the subcategory.
inline StabilityFlags stability_in(Subcategory const& sub,
                                   GreenData const& sub_green, SubElem a) {
  auto const& c = sub.parent();
  StabilityFlags flags;
  for (ObjectId k = 0; k < c.object_count(); ++k) {
    for (auto x : sub.members(k, a.i)) {
      std::uint32_t xa = c.compose_idx(k, a.i, a.j, x, a.idx);
      ElemIdx gx = sub.sub_index(k, a.i, x);
      ElemIdx gxa = sub.sub_index(k, a.j, xa);
      if (sub_green.j.related(gxa, gx) && !sub_green.r.related(gxa, gx)) {
        flags.r_stable = false;
      }
    }
    for (auto x : sub.members(a.j, k)) {
      std::uint32_t ax = c.compose_idx(a.i, a.j, k, a.idx, x);
      ElemIdx gx = sub.sub_index(a.j, k, x);
      ElemIdx gax = sub.sub_index(a.i, k, ax);
      if (sub_green.j.related(gax, gx) && !sub_green.l.related(gax, gx)) {
        flags.l_stable = false;
      }
    }
  }
  return flags;
}

namespace detail {

  struct SubPSets {
    std::vector<std::uint32_t> p1, p2, p3, p;  // parent-local indices in T_ij
  };

  inline SubPSets p_sets_in_sub(Subcategory const& sub,
                                GreenData const& sub_green, ObjectId i,
                                ObjectId j, std::uint32_t a_idx) {
    auto const& c = sub.parent();
    SubPSets ps;
    for (auto x : sub.members(i, j)) {
      ElemIdx gx = sub.sub_index(i, j, x);
      std::uint32_t xa = c.compose_idx(i, j, i, x, a_idx);
      std::uint32_t ax = c.compose_idx(j, i, j, a_idx, x);
      std::uint32_t axa = c.compose_idx(j, j, i, ax, a_idx);
      bool in1 = sub_green.r.related(sub.sub_index(i, i, xa), gx);
      bool in2 = sub_green.l.related(sub.sub_index(j, j, ax), gx);
      if (in1) {
        ps.p1.push_back(x);
      }
      if (in2) {
        ps.p2.push_back(x);
      }
      if (in1 && in2) {
        ps.p.push_back(x);
      }
      if (sub_green.j.related(sub.sub_index(j, i, axa), gx)) {
        ps.p3.push_back(x);
      }
    }
    return ps;
  }

}  // namespace detail

//! Inheritance of Green's relations, P-sets, sandwich relations and
//! stability by a partial subsemigroup, with the conditional equalities
//! checked whenever their regularity hypotheses hold.
struct InheritanceReport {
  std::size_t sandwiches_checked = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline InheritanceReport subsemigroup_inheritance(Category const& c,
                                                  Subcategory const& sub,
                                                  GreenOptions const& opts = {}) {
  if (&sub.parent() != &c) {
    throw std::invalid_argument("subsemigroup_inheritance: sub not over c");
  }
  InheritanceReport rep;
  auto fail = [&rep](std::string clause, std::vector<ElemIdx> w = {}) {
    rep.violations.push_back({"inheritance", std::move(clause), std::move(w), ""});
  };

  GreenData gs = green_category(c, opts);
  GreenData gt = sub.green(opts);
  std::uint32_t nobj = c.object_count();

  // Reg(T), and the global-index view of the sub elements
  std::size_t tn = sub.size();
  std::vector<char> reg_t(tn, 0);
  std::vector<ElemIdx> global_of(tn);
  for (ElemIdx t = 0; t < tn; ++t) {
    SubElem e = sub.element(t);
    reg_t[t] = sub.is_regular_element(e);
    global_of[t] = c.global_index(e.i, e.j, e.idx);
  }

  // K^T = K^S on Reg(T) x Reg(T), containment everywhere (R, L, H)
  for (ElemIdx x = 0; x < tn; ++x) {
    for (ElemIdx y = 0; y < tn; ++y) {
      ElemIdx gx = global_of[x], gy = global_of[y];
      struct Row { GreenRelation const* t; GreenRelation const* s; char const* name; };
      for (auto [rt, rs, name] : {Row{&gt.r, &gs.r, "R"}, Row{&gt.l, &gs.l, "L"},
                                  Row{&gt.h, &gs.h, "H"}}) {
        bool in_t = rt->related(x, y);
        bool in_s = rs->related(gx, gy);
        if (in_t && !in_s) {
          fail(std::string(name) + "^T contained in K^S", {x, y});
        }
        if (reg_t[x] && reg_t[y] && in_s != in_t) {
          fail(std::string(name) + "^T = K^S on Reg(T)", {x, y});
        }
      }
    }
  }

  // per-sandwich-element checks
  for (ObjectId i = 0; i < nobj; ++i) {
    for (ObjectId j = 0; j < nobj; ++j) {
      for (auto a_idx : sub.members(j, i)) {
        ++rep.sandwiches_checked;
        auto sw = SandwichSemigroup(c, i, j, c.at(j, i, a_idx));
        auto ps_s = p_sets(sw, gs);
        auto ps_t = detail::p_sets_in_sub(sub, gt, i, j, a_idx);

        auto const& tij = sub.members(i, j);
        auto reg_in_t = [&](std::uint32_t parent_idx) {
          return sub.is_regular_element({i, j, parent_idx});
        };
        bool tij_reg = std::all_of(tij.begin(), tij.end(), reg_in_t);
        bool tija_reg = std::all_of(tij.begin(), tij.end(), [&](std::uint32_t x) {
          std::uint32_t xa = c.compose_idx(i, j, i, x, a_idx);
          return sub.is_regular_element({i, i, xa});
        });
        bool atij_reg = std::all_of(tij.begin(), tij.end(), [&](std::uint32_t x) {
          std::uint32_t ax = c.compose_idx(j, i, j, a_idx, x);
          return sub.is_regular_element({j, j, ax});
        });

        struct PRow {
          std::vector<std::uint32_t> const* t;
          std::vector<char> const* s_mask;
          bool equality_hyp;
          char const* name;
        };
        auto st_a = stability(c, gs, c.at(j, i, a_idx));
        bool a_stable = st_a.r_stable && st_a.l_stable;
        for (auto const& row :
             {PRow{&ps_t.p1, &ps_s.in_p1, tij_reg && tija_reg, "P1"},
              PRow{&ps_t.p2, &ps_s.in_p2, tij_reg && atij_reg, "P2"},
              PRow{&ps_t.p, &ps_s.in_p, tij_reg && tija_reg && atij_reg, "P"},
              PRow{&ps_t.p3, &ps_s.in_p3,
                   a_stable && tij_reg && tija_reg && atij_reg, "P3"}}) {
          for (auto x : *row.t) {
            if (!(*row.s_mask)[x]) {
              fail(std::string(row.name) + "(T) inside " + row.name + "(S)",
                   {x});
            }
          }
          if (row.equality_hyp) {
            std::vector<std::uint32_t> restricted;
            for (auto x : tij) {
              if ((*row.s_mask)[x]) {
                restricted.push_back(x);
              }
            }
            if (restricted != *row.t) {
              fail(std::string(row.name) + "(T) = " + row.name
                   + "(S) n T under regularity hypothesis");
            }
          }
        }

        // sandwich Green's relations of T_ij^a against S_ij^a
        auto tsw = sandwich_in_sub(sub, i, j, a_idx);
        auto g_tsw = green_semigroup(tsw.sg, opts);
        auto g_ssw = sandwich_green(sw, opts);
        std::vector<ElemIdx> parent_local(tsw.members.begin(), tsw.members.end());
        for (std::size_t x = 0; x < tsw.members.size(); ++x) {
          for (std::size_t y = 0; y < tsw.members.size(); ++y) {
            struct KRow { GreenRelation const* t; GreenRelation const* s;
                          bool hyp; char const* name; };
            for (auto const& row :
                 {KRow{&g_tsw.r, &g_ssw.r, tij_reg && tija_reg, "R^a"},
                  KRow{&g_tsw.l, &g_ssw.l, tij_reg && atij_reg, "L^a"},
                  KRow{&g_tsw.h, &g_ssw.h,
                       tij_reg && tija_reg && atij_reg, "H^a"}}) {
              bool in_t = row.t->related(static_cast<ElemIdx>(x),
                                         static_cast<ElemIdx>(y));
              bool in_s = row.s->related(parent_local[x], parent_local[y]);
              if (in_t && !in_s) {
                fail(std::string(row.name) + "(T) inside " + row.name + "(S)",
                     {static_cast<ElemIdx>(x), static_cast<ElemIdx>(y)});
              } else if (row.hyp && in_s != in_t) {
                fail(std::string(row.name) + "(T) = " + row.name
                     + "(S) under regularity hypothesis",
                     {static_cast<ElemIdx>(x), static_cast<ElemIdx>(y)});
              }
            }
          }
        }

        // stability inheritance: T regular and a stable in S force a stable in T
        if (sub.is_regular() && a_stable) {
          auto st_t = stability_in(sub, gt, {j, i, a_idx});
          if (!st_t.r_stable || !st_t.l_stable) {
            fail("stability inherited by regular subsemigroup");
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace sandwich_kit

#endif  // SANDWICH_KIT_SANDWICH_HPP_
