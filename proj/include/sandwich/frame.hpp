// The structure theory over a sandwich-regular element a: the monoid
// W = (aS_ij a, *b), the regular subsemigroups P^a, T1, T2, the commuting
// epimorphisms between them, the pullback decomposition, the hat relations
// and rectangular-group inflation, the idempotent-generated fiber, the
// MI/RP structure of P^a, and the uniquely-sandwich-regular (inverse) case.

#ifndef SANDWICH_KIT_FRAME_HPP_
#define SANDWICH_KIT_FRAME_HPP_

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "core.hpp"
#include "finite_semigroup.hpp"
#include "green.hpp"
#include "sandwich.hpp"

namespace sandwich_kit {

//! True iff every a.x.a (x over hom(i,j)) is regular in the ambient category.
inline bool is_sandwich_regular(SandwichSemigroup const& sw) {
  auto const& c = sw.category();
  for (ElemIdx x = 0; x < sw.size(); ++x) {
    if (!c.is_regular(c.at(sw.j(), sw.i(), sw.conj_a(x)))) {
      return false;
    }
  }
  return true;
}

//! All structure derived from a sandwich-regular a and a chosen b in V(a):
//! P^a, W, T1, T2 as semigroups over sorted parent-index lists, the six maps
//! of the commutative diagram as local index arrays, and cached Green's data
//! for P^a and W.  Build-time theorem checks land in `violations`.
struct RegularFrame {
  SandwichSemigroup sw;  // owned copy; the category must outlive the frame
  ElemIdx b = 0;                   // chosen inverse of a (index in hom(i,j))
  std::vector<ElemIdx> va;         // V(a), sorted
  std::vector<ElemIdx> pa;         // P^a = Reg(S_ij^a), hom(i,j) indices
  std::vector<ElemIdx> w;          // W = a.S_ij.a, hom(j,i) indices
  std::vector<ElemIdx> t1;         // Reg(S_ij.a), hom(i,i) indices
  std::vector<ElemIdx> t2;         // Reg(a.S_ij), hom(j,j) indices
  FiniteSemigroup pa_sg, w_sg, t1_sg, t2_sg;
  std::vector<ElemIdx> psi1, psi2, phi;  // on P^a locals
  std::vector<ElemIdx> phi1;             // T1 local -> W local
  std::vector<ElemIdx> phi2;             // T2 local -> W local
  ElemIdx a_in_w = 0;
  ElemIdx b_in_pa = 0;
  GreenData pa_green, w_green;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  ElemIdx pa_local(ElemIdx parent_idx) const {
    auto it = std::lower_bound(pa.begin(), pa.end(), parent_idx);
    if (it == pa.end() || *it != parent_idx) {
      throw std::invalid_argument("frame: element not in P^a");
    }
    return static_cast<ElemIdx>(it - pa.begin());
  }
  bool in_pa(ElemIdx parent_idx) const {
    return std::binary_search(pa.begin(), pa.end(), parent_idx);
  }
  ElemIdx w_local(ElemIdx parent_idx) const {
    auto it = std::lower_bound(w.begin(), w.end(), parent_idx);
    if (it == w.end() || *it != parent_idx) {
      throw std::invalid_argument("frame: element not in W");
    }
    return static_cast<ElemIdx>(it - w.begin());
  }
};

namespace detail {

  //! Semigroup on a sorted member list of hom(src, dst): either the plain
  //! product (src == dst required) or x.t.y for a fixed t in hom(dst, src).
  inline FiniteSemigroup semigroup_on_list(
      Category const& c, ObjectId src, ObjectId dst,
      std::vector<ElemIdx> const& members,
      std::optional<ElemIdx> through = std::nullopt) {
    std::vector<ElemIdx> local(c.homset_size(src, dst), ElemIdx(-1));
    for (std::size_t t = 0; t < members.size(); ++t) {
      local[members[t]] = static_cast<ElemIdx>(t);
    }
    return FiniteSemigroup::from_product(
        members.size(), [&, through](ElemIdx x, ElemIdx y) {
          std::uint32_t p;
          if (through) {
            std::uint32_t xt = c.compose_idx(src, dst, src, members[x], *through);
            p = c.compose_idx(src, src, dst, xt, members[y]);
          } else {
            p = c.compose_idx(src, src, dst, members[x], members[y]);
          }
          ElemIdx lp = local[p];
          if (lp == ElemIdx(-1)) {
            throw std::logic_error("semigroup_on_list: member set not closed");
          }
          return lp;
        });
  }

}  // namespace detail

//! Builds the frame over a sandwich-regular a, verifying on the way that
//! the four semigroups and six maps satisfy everything the structure
//! theory asserts about them.  The default b is the minimal-index inverse.
inline RegularFrame build_frame(SandwichSemigroup const& sw,
                                GreenData const& ambient,
                                std::optional<ElemIdx> b_choice = std::nullopt,
                                GreenOptions const& opts = {}) {
  auto const& c = sw.category();
  ObjectId i = sw.i(), j = sw.j();
  std::size_t n = sw.size();

  if (!is_sandwich_regular(sw)) {
    throw std::invalid_argument("build_frame: a is not sandwich-regular");
  }
  RegularFrame fr;
  fr.sw = sw;
  auto fail = [&fr](std::string clause, std::vector<ElemIdx> wit = {}) {
    fr.violations.push_back({"frame", std::move(clause), std::move(wit), ""});
  };

  for (auto const& m : c.inverses(sw.a())) {
    fr.va.push_back(c.index_of(m));
  }
  std::sort(fr.va.begin(), fr.va.end());
  if (fr.va.empty()) {
    throw std::invalid_argument("build_frame: a has no inverse");
  }
  fr.b = b_choice.value_or(fr.va.front());
  if (!std::binary_search(fr.va.begin(), fr.va.end(), fr.b)) {
    throw std::invalid_argument("build_frame: b is not an inverse of a");
  }

  // P^a two ways: as Reg(S_ij^a) and as P1 n P2
  fr.pa = regular_set(sw, ambient);
  auto ps = p_sets(sw, ambient);
  if (fr.pa != ps.p) {
    fail("Reg(S_ij^a) = P^a");
  }
  fr.pa_sg = detail::semigroup_on_list(c, i, j, fr.pa, sw.a_idx());
  if (!fr.pa_sg.is_regular_semigroup()) {
    fail("P^a regular");
  }
  fr.b_in_pa = fr.pa_local(fr.b);

  // W = a.S_ij.a under the b-sandwich product
  fr.w = [&] {
    std::vector<ElemIdx> out;
    for (ElemIdx x = 0; x < n; ++x) {
      out.push_back(sw.conj_a(x));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }();
  fr.w_sg = detail::semigroup_on_list(c, j, i, fr.w, fr.b);
  fr.a_in_w = fr.w_local(sw.a_idx());
  if (!fr.w_sg.identity() || *fr.w_sg.identity() != fr.a_in_w) {
    fail("W is a monoid with identity a");
  }
  if (!fr.w_sg.is_regular_semigroup()) {
    fail("W regular");
  }
  // the restricted product is independent of the choice of b in V(a)
  for (auto b2 : fr.va) {
    for (std::size_t x = 0; x < fr.w.size(); ++x) {
      for (std::size_t y = 0; y < fr.w.size(); ++y) {
        std::uint32_t xb = c.compose_idx(j, i, j, fr.w[x], b2);
        std::uint32_t p = c.compose_idx(j, j, i, xb, fr.w[y]);
        if (fr.w_local(p) != fr.w_sg.product(static_cast<ElemIdx>(x),
                                             static_cast<ElemIdx>(y))) {
          fail("circled product independent of b", {b2});
          goto b_indep_done;
        }
      }
    }
  }
b_indep_done:;

  // T1 = Reg(S_ij.a) inside S_i, T2 = Reg(a.S_ij) inside S_j
  auto build_t = [&](bool right_side) {
    std::vector<ElemIdx> prod;
    for (ElemIdx x = 0; x < n; ++x) {
      prod.push_back(right_side ? sw.right_mul_a(x) : sw.left_mul_a(x));
    }
    std::sort(prod.begin(), prod.end());
    prod.erase(std::unique(prod.begin(), prod.end()), prod.end());
    ObjectId obj = right_side ? i : j;
    auto sg = detail::semigroup_on_list(c, obj, obj, prod);
    std::vector<ElemIdx> reg;
    for (std::size_t t = 0; t < prod.size(); ++t) {
      if (sg.is_regular_element(static_cast<ElemIdx>(t))) {
        reg.push_back(prod[t]);
      }
    }
    return reg;
  };
  fr.t1 = build_t(true);
  fr.t2 = build_t(false);
  fr.t1_sg = detail::semigroup_on_list(c, i, i, fr.t1);
  fr.t2_sg = detail::semigroup_on_list(c, j, j, fr.t2);

  // T1 = P^a.a = P2^a.a, T2 = a.P^a = a.P1^a, W = a.P^a.a = a.P1^a.a = a.P2^a.a
  auto image_set = [&](std::vector<ElemIdx> const& src, auto&& f) {
    std::vector<ElemIdx> out;
    for (auto x : src) {
      out.push_back(f(x));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  auto xa_of = [&](ElemIdx x) { return sw.right_mul_a(x); };
  auto ax_of = [&](ElemIdx x) { return sw.left_mul_a(x); };
  auto axa_of = [&](ElemIdx x) { return sw.conj_a(x); };
  if (image_set(fr.pa, xa_of) != fr.t1 || image_set(ps.p2, xa_of) != fr.t1) {
    fail("T1 = P^a.a = P2^a.a");
  }
  if (image_set(fr.pa, ax_of) != fr.t2 || image_set(ps.p1, ax_of) != fr.t2) {
    fail("T2 = a.P^a = a.P1^a");
  }
  if (image_set(fr.pa, axa_of) != fr.w || image_set(ps.p1, axa_of) != fr.w
      || image_set(ps.p2, axa_of) != fr.w) {
    fail("W = a.P^a.a = a.P1^a.a = a.P2^a.a");
  }

  // local-monoid picture: x -> bx maps W isomorphically onto (ba)S_i(ba),
  // and x -> xb maps W isomorphically onto (ab)S_j(ab)
  {
    std::uint32_t ba = c.compose_idx(i, j, i, fr.b, sw.a_idx());
    std::uint32_t ab = c.compose_idx(j, i, j, sw.a_idx(), fr.b);
    auto lm = [&](ObjectId obj, std::uint32_t e) {
      std::vector<ElemIdx> out;
      for (std::uint32_t t = 0; t < c.homset_size(obj, obj); ++t) {
        out.push_back(c.compose_idx(obj, obj, obj,
                                    c.compose_idx(obj, obj, obj, e, t), e));
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    };
    auto bw = image_set(fr.w, [&](ElemIdx x) {
      return c.compose_idx(i, j, i, fr.b, x);
    });
    auto wb = image_set(fr.w, [&](ElemIdx x) {
      return c.compose_idx(j, i, j, x, fr.b);
    });
    if (bw != lm(i, ba) || bw.size() != fr.w.size()) {
      fail("W isomorphic to local monoid (ba)S_i(ba)");
    }
    if (wb != lm(j, ab) || wb.size() != fr.w.size()) {
      fail("W isomorphic to local monoid (ab)S_j(ab)");
    }
    for (std::size_t x = 0; x < fr.w.size() && fr.ok(); ++x) {
      for (std::size_t y = 0; y < fr.w.size(); ++y) {
        ElemIdx p = fr.w[fr.w_sg.product(static_cast<ElemIdx>(x),
                                         static_cast<ElemIdx>(y))];
        std::uint32_t lhs = c.compose_idx(i, j, i, fr.b, p);
        std::uint32_t rhs = c.compose_idx(
            i, i, i, c.compose_idx(i, j, i, fr.b, fr.w[x]),
            c.compose_idx(i, j, i, fr.b, fr.w[y]));
        if (lhs != rhs) {
          fail("x -> bx is a homomorphism on W");
          break;
        }
      }
    }
  }

  // the six maps of the commutative diagram
  auto local_in = [](std::vector<ElemIdx> const& list, ElemIdx parent) {
    auto it = std::lower_bound(list.begin(), list.end(), parent);
    if (it == list.end() || *it != parent) {
      throw std::logic_error("frame: map lands outside its stated codomain");
    }
    return static_cast<ElemIdx>(it - list.begin());
  };
  for (auto x : fr.pa) {
    fr.psi1.push_back(local_in(fr.t1, sw.right_mul_a(x)));
    fr.psi2.push_back(local_in(fr.t2, sw.left_mul_a(x)));
    fr.phi.push_back(local_in(fr.w, sw.conj_a(x)));
  }
  for (auto g : fr.t1) {
    fr.phi1.push_back(local_in(fr.w, c.compose_idx(j, i, i, sw.a_idx(), g)));
  }
  for (auto h : fr.t2) {
    fr.phi2.push_back(local_in(fr.w, c.compose_idx(j, j, i, h, sw.a_idx())));
  }

  auto surjective = [](std::vector<ElemIdx> const& map, std::size_t codomain) {
    std::vector<char> hit(codomain, 0);
    for (auto v : map) {
      hit[v] = 1;
    }
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  };
  if (!surjective(fr.psi1, fr.t1.size()) || !surjective(fr.psi2, fr.t2.size())
      || !surjective(fr.phi, fr.w.size()) || !surjective(fr.phi1, fr.w.size())
      || !surjective(fr.phi2, fr.w.size())) {
    fail("diagram maps surjective");
  }
  for (std::size_t x = 0; x < fr.pa.size() && fr.ok(); ++x) {
    if (fr.phi1[fr.psi1[x]] != fr.phi[x] || fr.phi2[fr.psi2[x]] != fr.phi[x]) {
      fail("phi = psi1 phi1 = psi2 phi2", {static_cast<ElemIdx>(x)});
    }
    for (std::size_t y = 0; y < fr.pa.size(); ++y) {
      ElemIdx p = fr.pa_sg.product(static_cast<ElemIdx>(x),
                                   static_cast<ElemIdx>(y));
      if (fr.psi1[p] != fr.t1_sg.product(fr.psi1[x], fr.psi1[y])
          || fr.psi2[p] != fr.t2_sg.product(fr.psi2[x], fr.psi2[y])
          || fr.phi[p] != fr.w_sg.product(fr.phi[x], fr.phi[y])) {
        fail("diagram maps are homomorphisms",
             {static_cast<ElemIdx>(x), static_cast<ElemIdx>(y)});
        break;
      }
    }
  }
  for (std::size_t g = 0; g < fr.t1.size() && fr.ok(); ++g) {
    for (std::size_t h = 0; h < fr.t1.size(); ++h) {
      if (fr.phi1[fr.t1_sg.product(static_cast<ElemIdx>(g),
                                   static_cast<ElemIdx>(h))]
          != fr.w_sg.product(fr.phi1[g], fr.phi1[h])) {
        fail("phi1 is a homomorphism");
        break;
      }
    }
  }
  for (std::size_t g = 0; g < fr.t2.size() && fr.ok(); ++g) {
    for (std::size_t h = 0; h < fr.t2.size(); ++h) {
      if (fr.phi2[fr.t2_sg.product(static_cast<ElemIdx>(g),
                                   static_cast<ElemIdx>(h))]
          != fr.w_sg.product(fr.phi2[g], fr.phi2[h])) {
        fail("phi2 is a homomorphism");
        break;
      }
    }
  }

  // two-sided cancellativity collapses the whole of S_ij^a onto W
  auto flags = invertibility_flags(sw);
  if (flags.cancel_r && flags.cancel_l) {
    std::vector<ElemIdx> image;
    for (ElemIdx x = 0; x < n; ++x) {
      image.push_back(sw.conj_a(x));
    }
    std::sort(image.begin(), image.end());
    bool inj = std::adjacent_find(image.begin(), image.end()) == image.end();
    if (!inj || image != fr.w) {
      fail("cancellative a makes x -> axa an isomorphism onto W");
    }
  }

  fr.pa_green = green_semigroup(fr.pa_sg, opts);
  fr.w_green = green_semigroup(fr.w_sg, opts);
  return fr;
}

//! The pullback decomposition of P^a inside T1 x T2 over W.
struct PullbackReport {
  std::size_t pa_size = 0;
  std::size_t pair_count = 0;  // |{(g,h) in T1 x T2 : ag = ha}|
  bool injective = false;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline PullbackReport pullback_check(RegularFrame const& fr) {
  auto const& sw = fr.sw;
  auto const& c = sw.category();
  PullbackReport rep;
  rep.pa_size = fr.pa.size();

  std::vector<std::pair<ElemIdx, ElemIdx>> image;
  for (std::size_t x = 0; x < fr.pa.size(); ++x) {
    image.emplace_back(fr.psi1[x], fr.psi2[x]);
  }
  std::sort(image.begin(), image.end());
  rep.injective =
      std::adjacent_find(image.begin(), image.end()) == image.end();
  if (!rep.injective) {
    rep.violations.push_back({"pullback", "psi injective", {}, ""});
  }

  std::vector<std::pair<ElemIdx, ElemIdx>> pairs;
  for (std::size_t g = 0; g < fr.t1.size(); ++g) {
    std::uint32_t ag = c.compose_idx(sw.j(), sw.i(), sw.i(), sw.a_idx(), fr.t1[g]);
    for (std::size_t h = 0; h < fr.t2.size(); ++h) {
      std::uint32_t ha = c.compose_idx(sw.j(), sw.j(), sw.i(), fr.t2[h], sw.a_idx());
      if (ag == ha) {
        pairs.emplace_back(static_cast<ElemIdx>(g), static_cast<ElemIdx>(h));
      }
    }
  }
  rep.pair_count = pairs.size();
  if (image != pairs) {
    rep.violations.push_back({"pullback", "im(psi) = {(g,h) : ag = ha}", {}, ""});
  }
  if (rep.pa_size != rep.pair_count) {
    rep.violations.push_back({"pullback", "|P^a| = pair count", {}, ""});
  }
  return rep;
}

//! The hat relations (pullbacks of W's Green relations through phi) and the
//! rectangular-group structure of the idempotent-bearing hat H-classes.
struct HatClassInfo {
  std::uint32_t rows = 0;  // R^a-classes inside the class
  std::uint32_t cols = 0;  // L^a-classes inside the class
  bool has_idempotent = false;
  bool rectangular_group = false;
};

struct HatData {
  GreenRelation rhat, lhat, hhat, dhat, jhat;  // on P^a local indices
  std::vector<HatClassInfo> hhat_info;         // per hat-H class
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

  inline GreenRelation pullback_relation(std::vector<ElemIdx> const& phi,
                                         GreenRelation const& target) {
    GreenRelation out;
    std::size_t m = phi.size();
    out.cls.assign(m, ElemIdx(-1));
    std::vector<ElemIdx> id_of(target.class_count(), ElemIdx(-1));
    for (std::size_t x = 0; x < m; ++x) {
      ElemIdx t = target.cls[phi[x]];
      if (id_of[t] == ElemIdx(-1)) {
        id_of[t] = static_cast<ElemIdx>(out.members.size());
        out.members.emplace_back();
      }
      out.cls[x] = id_of[t];
      out.members[id_of[t]].push_back(static_cast<ElemIdx>(x));
    }
    return out;
  }

}  // namespace detail

inline HatData hat_analysis(RegularFrame const& fr) {
  auto const& sw = fr.sw;
  auto const& c = sw.category();
  HatData hat;
  auto fail = [&hat](std::string clause, std::vector<ElemIdx> wit = {}) {
    hat.violations.push_back({"hat", std::move(clause), std::move(wit), ""});
  };

  hat.rhat = detail::pullback_relation(fr.phi, fr.w_green.r);
  hat.lhat = detail::pullback_relation(fr.phi, fr.w_green.l);
  hat.hhat = detail::pullback_relation(fr.phi, fr.w_green.h);
  hat.dhat = detail::pullback_relation(fr.phi, fr.w_green.d);
  hat.jhat = detail::pullback_relation(fr.phi, fr.w_green.j);

  std::size_t m = fr.pa.size();
  for (ElemIdx x = 0; x < m; ++x) {
    for (ElemIdx y = 0; y < m; ++y) {
      if (fr.pa_green.r.related(x, y) && !hat.rhat.related(x, y)) {
        fail("R^a inside hat-R", {x, y});
      }
      if (hat.rhat.related(x, y) && !fr.pa_green.d.related(x, y)) {
        fail("hat-R inside D^a", {x, y});
      }
      if (fr.pa_green.l.related(x, y) && !hat.lhat.related(x, y)) {
        fail("L^a inside hat-L", {x, y});
      }
      if (hat.lhat.related(x, y) && !fr.pa_green.d.related(x, y)) {
        fail("hat-L inside D^a", {x, y});
      }
      if (fr.pa_green.h.related(x, y) && !hat.hhat.related(x, y)) {
        fail("H^a inside hat-H", {x, y});
      }
      if (hat.hhat.related(x, y) && !fr.pa_green.d.related(x, y)) {
        fail("hat-H inside D^a", {x, y});
      }
      if (hat.dhat.related(x, y) != fr.pa_green.d.related(x, y)) {
        fail("hat-D = D^a", {x, y});
      }
      if (hat.jhat.related(x, y) != fr.pa_green.j.related(x, y)) {
        fail("hat-J = J on P^a", {x, y});
      }
      // order isomorphism of the J-class posets
      if (fr.pa_green.leq_j(x, y)
          != fr.w_green.leq_j(fr.phi[x], fr.phi[y])) {
        fail("J-class order isomorphism", {x, y});
      }
    }
  }

  // phi restricted to each H^a-class is a bijection onto the H-class of
  // x-bar in W; group H-classes correspond and are isomorphic
  for (std::size_t hcls = 0; hcls < fr.pa_green.h.class_count(); ++hcls) {
    auto const& cls = fr.pa_green.h.members[hcls];
    std::vector<ElemIdx> image;
    for (auto x : cls) {
      image.push_back(fr.phi[x]);
    }
    std::sort(image.begin(), image.end());
    bool inj = std::adjacent_find(image.begin(), image.end()) == image.end();
    auto const& target = fr.w_green.h.members[fr.w_green.h.cls[fr.phi[cls[0]]]];
    if (!inj || image != target) {
      fail("phi bijects H^a-classes onto H-classes of W", {cls[0]});
    }
    bool grp_pa = fr.pa_green.h_group[hcls] != 0;
    bool grp_w = fr.w_green.is_group_h_class(fr.phi[cls[0]]);
    if (grp_pa != grp_w) {
      fail("group H-classes correspond under phi", {cls[0]});
    }
  }

  // Lemma: H-classes of W as a semigroup coincide with its H^b-classes
  // inside the full sandwich S_ji^b, for every b in V(a) (when few).
  std::vector<ElemIdx> bs = fr.va.size() <= 8 ? fr.va
                                              : std::vector<ElemIdx>{fr.b};
  for (auto b2 : bs) {
    SandwichSemigroup swb(c, sw.j(), sw.i(), c.at(sw.i(), sw.j(), b2));
    auto gb = sandwich_green(swb);
    for (std::size_t t = 0; t < fr.w.size(); ++t) {
      std::vector<ElemIdx> hw;
      for (auto u : fr.w_green.h.members[fr.w_green.h.cls[t]]) {
        hw.push_back(fr.w[u]);
      }
      std::sort(hw.begin(), hw.end());
      auto const& hb = gb.h.members[gb.h.cls[fr.w[t]]];
      if (hw != hb) {
        fail("H-class of W equals H^b-class in S_ji^b",
             {static_cast<ElemIdx>(t), b2});
        break;
      }
    }
  }

  // rectangular-group structure of the idempotent-bearing hat H-classes
  hat.hhat_info.resize(hat.hhat.class_count());
  for (std::size_t k = 0; k < hat.hhat.class_count(); ++k) {
    auto const& cls = hat.hhat.members[k];
    auto& info = hat.hhat_info[k];
    std::vector<ElemIdx> rows, cols;
    for (auto x : cls) {
      rows.push_back(fr.pa_green.r.cls[x]);
      cols.push_back(fr.pa_green.l.cls[x]);
      if (fr.pa_sg.is_idempotent(x)) {
        info.has_idempotent = true;
      }
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    info.rows = static_cast<std::uint32_t>(rows.size());
    info.cols = static_cast<std::uint32_t>(cols.size());
    if (!info.has_idempotent) {
      continue;
    }
    bool closed = true, union_of_groups = true, band = true;
    std::vector<char> in_cls(fr.pa.size(), 0);
    for (auto x : cls) {
      in_cls[x] = 1;
    }
    for (auto x : cls) {
      if (!fr.pa_green.is_group_h_class(x)) {
        union_of_groups = false;
      }
      for (auto y : cls) {
        if (!in_cls[fr.pa_sg.product(x, y)]) {
          closed = false;
        }
        if (fr.pa_sg.is_idempotent(x) && fr.pa_sg.is_idempotent(y)) {
          if (fr.pa_sg.product(fr.pa_sg.product(x, y), x) != x) {
            band = false;
          }
        }
      }
    }
    info.rectangular_group = closed && union_of_groups && band;
    if (!info.rectangular_group) {
      fail("idempotent-bearing hat-H class is a rectangular group", {cls[0]});
    }
    // the cells tile the class: rows x cols H-classes, all of equal size
    if (std::size_t(info.rows) * info.cols
        != [&] {
             std::vector<ElemIdx> hs;
             for (auto x : cls) {
               hs.push_back(fr.pa_green.h.cls[x]);
             }
             std::sort(hs.begin(), hs.end());
             hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
             return hs.size();
           }()) {
      fail("hat-H class tiles into rows x cols cells", {cls[0]});
    }
  }
  return hat;
}

//! The idempotent fiber: E_a(P^a) and its generated subsemigroup are exact
//! phi-preimages of their W counterparts.
struct FiberReport {
  std::size_t ea_size = 0, eb_size = 0;
  std::size_t ea_generated_size = 0, eb_generated_size = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline FiberReport idempotent_fiber(RegularFrame const& fr,
                                    std::uint64_t seed = 20240901,
                                    std::size_t trials = 16) {
  FiberReport rep;
  auto fail = [&rep](std::string clause) {
    rep.violations.push_back({"fiber", std::move(clause), {}, ""});
  };
  auto ea = fr.pa_sg.idempotents();
  auto eb = fr.w_sg.idempotents();
  rep.ea_size = ea.size();
  rep.eb_size = eb.size();

  std::vector<char> eb_mask(fr.w.size(), 0);
  for (auto e : eb) {
    eb_mask[e] = 1;
  }
  std::vector<ElemIdx> preimage;
  for (std::size_t x = 0; x < fr.pa.size(); ++x) {
    if (eb_mask[fr.phi[x]]) {
      preimage.push_back(static_cast<ElemIdx>(x));
    }
  }
  if (preimage != ea) {
    fail("E_a(P^a) = phi^{-1}(E_b(W))");
  }

  auto gen_ea = generated(fr.pa_sg, ea);
  auto gen_eb = generated(fr.w_sg, eb);
  rep.ea_generated_size = gen_ea.size();
  rep.eb_generated_size = gen_eb.size();
  std::vector<char> in_gen_eb(fr.w.size(), 0);
  for (auto e : gen_eb) {
    in_gen_eb[e] = 1;
  }
  std::vector<ElemIdx> gen_preimage;
  for (std::size_t x = 0; x < fr.pa.size(); ++x) {
    if (in_gen_eb[fr.phi[x]]) {
      gen_preimage.push_back(static_cast<ElemIdx>(x));
    }
  }
  if (gen_preimage != gen_ea) {
    fail("E_a-generated subsemigroup = phi^{-1} of E_b-generated");
  }

  // spot-check the containment <Xbar>_b phi^{-1} <= <X u E_a(P^a)>_a
  std::mt19937_64 rng(seed);
  std::size_t m = fr.pa.size();
  for (std::size_t t = 0; t < trials && m > 0; ++t) {
    std::vector<ElemIdx> x_set;
    for (ElemIdx x = 0; x < m; ++x) {
      if (rng() & 1) {
        x_set.push_back(x);
      }
    }
    if (x_set.empty()) {
      continue;
    }
    std::vector<ElemIdx> xbar;
    for (auto x : x_set) {
      xbar.push_back(fr.phi[x]);
    }
    auto gen_xbar = generated(fr.w_sg, xbar);
    std::vector<char> in_gx(fr.w.size(), 0);
    for (auto u : gen_xbar) {
      in_gx[u] = 1;
    }
    auto big = x_set;
    big.insert(big.end(), ea.begin(), ea.end());
    auto gen_big = generated(fr.pa_sg, big);
    std::vector<char> in_big(m, 0);
    for (auto u : gen_big) {
      in_big[u] = 1;
    }
    for (ElemIdx x = 0; x < m; ++x) {
      if (in_gx[fr.phi[x]] && !in_big[x]) {
        fail("preimage of <Xbar> inside <X u E_a(P^a)>");
        break;
      }
    }
  }
  return rep;
}

//! Mid-identities, regularity-preserving elements, the local monoids W_e,
//! and MI-domination of P^a.
struct MiReport {
  std::vector<ElemIdx> mi;  // P^a locals
  std::vector<ElemIdx> rp;
  bool mi_dominated = false;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline MiReport mi_structure(RegularFrame const& fr) {
  MiReport rep;
  auto fail = [&rep](std::string clause, std::vector<ElemIdx> wit = {}) {
    rep.violations.push_back({"mi", std::move(clause), std::move(wit), ""});
  };
  rep.mi = mid_identities(fr.pa_sg);
  rep.rp = regularity_preserving(fr.pa_sg);

  std::vector<ElemIdx> va_local;
  for (auto v : fr.va) {
    va_local.push_back(fr.pa_local(v));
  }
  std::sort(va_local.begin(), va_local.end());
  if (rep.mi != va_local) {
    fail("MI(P^a) = V(a)");
  }

  // E_a of the hat H-class of b
  std::vector<ElemIdx> hat_b_idems, hat_b;
  for (std::size_t x = 0; x < fr.pa.size(); ++x) {
    if (fr.w_green.h.related(fr.phi[x], fr.phi[fr.b_in_pa])) {
      hat_b.push_back(static_cast<ElemIdx>(x));
      if (fr.pa_sg.is_idempotent(static_cast<ElemIdx>(x))) {
        hat_b_idems.push_back(static_cast<ElemIdx>(x));
      }
    }
  }
  if (hat_b_idems != va_local) {
    fail("E_a(hat-H_b) = V(a)");
  }
  if (rep.rp != hat_b) {
    fail("RP(P^a) = hat-H_b");
  }

  // V(a) inside MaxE, via e <= f iff e = fef
  for (auto v : va_local) {
    for (auto e : fr.pa_sg.idempotents()) {
      if (e != v && idempotent_leq(fr.pa_sg, v, e)
          && !idempotent_leq(fr.pa_sg, e, v)) {
        fail("V(a) inside MaxE(P^a)", {v, e});
      }
    }
  }

  // W_e = e * P^a * e maps isomorphically onto W under phi
  for (auto e : va_local) {
    auto we = local_monoid(fr.pa_sg, e);
    std::vector<ElemIdx> image;
    for (auto x : we.members) {
      image.push_back(fr.phi[x]);
    }
    std::sort(image.begin(), image.end());
    bool inj = std::adjacent_find(image.begin(), image.end()) == image.end();
    bool onto = image.size() == fr.w.size();
    if (!inj || !onto) {
      fail("phi restricted to W_e is an isomorphism onto W", {e});
    }
  }

  // J_a = H_a in W (stability of the finite monoid W), and hence
  // hat-H_b = D_b = J_b in P^a
  if (fr.w_green.j.members[fr.w_green.j.cls[fr.a_in_w]]
      != fr.w_green.h.members[fr.w_green.h.cls[fr.a_in_w]]) {
    fail("J-class of identity of W equals its H-class");
  }
  auto const& db = fr.pa_green.d.members[fr.pa_green.d.cls[fr.b_in_pa]];
  auto const& jb = fr.pa_green.j.members[fr.pa_green.j.cls[fr.b_in_pa]];
  if (hat_b != db || hat_b != jb) {
    fail("hat-H_b = D_b = J_b in P^a");
  }

  auto dom = domination_report(fr.pa_sg);
  rep.mi_dominated = dom.mi_dominated;
  for (auto const& a : dom.anomalies) {
    fail("domination cross-check: " + a);
  }
  if (rep.mi_dominated) {
    std::vector<char> covered(fr.pa.size(), 0);
    for (auto e : va_local) {
      for (auto x : local_monoid(fr.pa_sg, e).members) {
        covered[x] = 1;
      }
    }
    if (!std::all_of(covered.begin(), covered.end(),
                     [](char c) { return c != 0; })) {
      fail("MI-dominated P^a covered by the local monoids W_e");
    }
  }
  return rep;
}

//! Unique sandwich-regularity and the inverse-monoid specialisation.
struct InverseReport {
  bool uniquely_sandwich_regular = false;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline InverseReport inverse_case(RegularFrame const& fr) {
  auto const& sw = fr.sw;
  auto const& c = sw.category();
  InverseReport rep;
  auto fail = [&rep](std::string clause, std::vector<ElemIdx> wit = {}) {
    rep.violations.push_back({"inverse", std::move(clause), std::move(wit), ""});
  };

  bool unique = fr.va.size() == 1;
  for (std::size_t t = 0; t < fr.w.size() && unique; ++t) {
    unique = c.inverses(c.at(sw.j(), sw.i(), fr.w[t])).size() == 1;
  }
  rep.uniquely_sandwich_regular = unique;
  if (!unique) {
    return rep;
  }

  if (!fr.pa_sg.identity() || *fr.pa_sg.identity() != fr.b_in_pa) {
    fail("P^a is a monoid with identity b");
  }
  for (ElemIdx u = 0; u < fr.pa.size(); ++u) {
    if (fr.pa_sg.inverses_of(u).size() != 1) {
      fail("P^a inverse (unique star_a-inverses)", {u});
    }
  }
  auto bijective = [](std::vector<ElemIdx> const& map, std::size_t codomain) {
    if (map.size() != codomain) {
      return false;
    }
    std::vector<char> hit(codomain, 0);
    for (auto v : map) {
      if (hit[v]) {
        return false;
      }
      hit[v] = 1;
    }
    return true;
  };
  if (!bijective(fr.psi1, fr.t1.size()) || !bijective(fr.psi2, fr.t2.size())
      || !bijective(fr.phi, fr.w.size()) || !bijective(fr.phi1, fr.w.size())
      || !bijective(fr.phi2, fr.w.size())) {
    fail("all diagram maps bijective");
  }
  return rep;
}

}  // namespace sandwich_kit

#endif  // SANDWICH_KIT_FRAME_HPP_
