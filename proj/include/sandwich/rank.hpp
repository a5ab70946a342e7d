// Exact rank, idempotent rank and relative (idempotent) rank by bounded
// exhaustive search, plus the rank-formula checks: rectangular groups, the
// rank of P^a and of the idempotent-generated subsemigroups, and the
// maximal-J-class lower bound for a full sandwich semigroup.
//
// The search is iterative deepening over the number of generators beyond
// the forced ones (elements with no factorisation must lie in every
// generating set), pruned by suffix-closure feasibility and seeded by a
// greedy upper bound.  Budget exhaustion is a first-class result.

#ifndef SANDWICH_KIT_RANK_HPP_
#define SANDWICH_KIT_RANK_HPP_

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finite_semigroup.hpp"
#include "frame.hpp"
#include "green.hpp"
#include "sandwich.hpp"

namespace sandwich_kit {

struct RankBudget {
  std::uint64_t node_cap = 50'000'000;
  double seconds = 120.0;
};

struct RankResult {
  std::optional<std::uint32_t> value;  // empty: exceeded budget
  std::vector<ElemIdx> witness;
  std::uint32_t lower_bound_used = 0;
  std::uint64_t nodes_explored = 0;
  double seconds = 0.0;

  bool exceeded() const { return !value.has_value(); }
};

namespace detail {

  struct Closure {
    std::vector<char> in;
    std::size_t count = 0;

    explicit Closure(std::size_t n) : in(n, 0) {}
    bool contains(ElemIdx x) const { return in[x] != 0; }
    bool full() const { return count == in.size(); }
  };

  //! Extends a product-closed set by one generator (stays closed).
  inline void closure_insert(FiniteSemigroup const& s, Closure& c, ElemIdx g) {
    if (c.contains(g)) {
      return;
    }
    std::vector<ElemIdx> members;
    for (ElemIdx x = 0; x < s.size(); ++x) {
      if (c.contains(x)) {
        members.push_back(x);
      }
    }
    std::vector<ElemIdx> frontier{g};
    c.in[g] = 1;
    ++c.count;
    members.push_back(g);
    while (!frontier.empty()) {
      ElemIdx f = frontier.back();
      frontier.pop_back();
      for (std::size_t t = 0; t < members.size(); ++t) {
        ElemIdx m = members[t];
        for (ElemIdx p : {s.product(f, m), s.product(m, f)}) {
          if (!c.contains(p)) {
            c.in[p] = 1;
            ++c.count;
            members.push_back(p);
            frontier.push_back(p);
          }
        }
      }
    }
  }

  inline Closure closure_of(FiniteSemigroup const& s,
                            std::vector<ElemIdx> const& gens) {
    Closure c(s.size());
    for (auto g : gens) {
      closure_insert(s, c, g);
    }
    return c;
  }

  //! Elements with no factorisation x = u.v; they lie in every generating set.
  inline std::vector<ElemIdx> indecomposables(FiniteSemigroup const& s) {
    std::vector<char> is_product(s.size(), 0);
    for (ElemIdx u = 0; u < s.size(); ++u) {
      for (ElemIdx v = 0; v < s.size(); ++v) {
        is_product[s.product(u, v)] = 1;
      }
    }
    std::vector<ElemIdx> out;
    for (ElemIdx x = 0; x < s.size(); ++x) {
      if (!is_product[x]) {
        out.push_back(x);
      }
    }
    return out;
  }

  //! Sum over maximal J-classes of max(rows, cols) not already hit by the
  //! base-set elements; valid for stable (hence all finite) semigroups.
  inline std::uint32_t max_j_lower_bound(FiniteSemigroup const& s,
                                         GreenData const& g,
                                         std::vector<ElemIdx> const& base) {
    if (!is_stable_semigroup(s, g)) {
      return 0;
    }
    std::uint32_t bound = 0;
    for (std::size_t jc = 0; jc < g.j.class_count(); ++jc) {
      bool maximal = true;
      for (std::size_t other = 0; other < g.j.class_count(); ++other) {
        if (other != jc && g.j_order.get(jc, other)
            && !g.j_order.get(other, jc)) {
          maximal = false;
          break;
        }
      }
      if (!maximal) {
        continue;
      }
      std::vector<ElemIdx> rows, cols, hit_rows, hit_cols;
      for (auto x : g.j.members[jc]) {
        rows.push_back(g.r.cls[x]);
        cols.push_back(g.l.cls[x]);
      }
      for (auto x : base) {
        if (g.j.cls[x] == jc) {
          hit_rows.push_back(g.r.cls[x]);
          hit_cols.push_back(g.l.cls[x]);
        }
      }
      auto distinct_unhit = [](std::vector<ElemIdx>& all,
                               std::vector<ElemIdx>& hit) {
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        std::sort(hit.begin(), hit.end());
        hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
        return static_cast<std::uint32_t>(all.size() - hit.size());
      };
      bound += std::max(distinct_unhit(rows, hit_rows),
                        distinct_unhit(cols, hit_cols));
    }
    return bound;
  }

  struct SearchState {
    FiniteSemigroup const* s;
    std::vector<ElemIdx> const* cands;
    RankBudget budget;
    std::chrono::steady_clock::time_point start;
    std::uint64_t nodes = 0;
    bool out_of_budget = false;
    std::vector<ElemIdx> chosen;
    std::vector<ElemIdx> solution;

    bool tick() {
      if (++nodes > budget.node_cap) {
        out_of_budget = true;
        return false;
      }
      if ((nodes & 1023) == 0) {
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        if (secs > budget.seconds) {
          out_of_budget = true;
          return false;
        }
      }
      return true;
    }
  };

  inline bool rank_dfs(SearchState& st, Closure const& closure,
                       std::size_t from, std::uint32_t remaining) {
    if (!st.tick()) {
      return false;
    }
    if (closure.full()) {
      st.solution = st.chosen;
      return true;
    }
    if (remaining == 0) {
      return false;
    }
    // feasibility: even taking every remaining candidate must suffice
    {
      Closure all = closure;
      for (std::size_t t = from; t < st.cands->size(); ++t) {
        closure_insert(*st.s, all, (*st.cands)[t]);
      }
      if (!all.full()) {
        return false;
      }
    }
    for (std::size_t t = from; t < st.cands->size(); ++t) {
      ElemIdx g = (*st.cands)[t];
      if (closure.contains(g)) {
        continue;  // redundant here; smaller sets were tried at lower depth
      }
      if (st.cands->size() - t < remaining) {
        break;
      }
      Closure next = closure;
      closure_insert(*st.s, next, g);
      st.chosen.push_back(g);
      if (rank_dfs(st, next, t + 1, remaining - 1)) {
        return true;
      }
      st.chosen.pop_back();
      if (st.out_of_budget) {
        return false;
      }
    }
    return false;
  }

  //! Minimal |B| with <A u B> = S, B drawn from the candidate universe.
  inline RankResult min_extension(FiniteSemigroup const& s,
                                  std::vector<ElemIdx> const& a,
                                  std::vector<ElemIdx> const& universe,
                                  RankBudget budget) {
    auto t0 = std::chrono::steady_clock::now();
    auto done = [&](RankResult r) {
      r.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
      return r;
    };
    RankResult res;
    std::size_t n = s.size();
    if (n == 0) {
      res.value = 0;
      return done(res);
    }
    Closure base = closure_of(s, a);
    if (base.full()) {
      res.value = 0;
      return done(res);
    }

    std::vector<char> in_universe(n, 0);
    for (auto x : universe) {
      in_universe[x] = 1;
    }
    std::vector<ElemIdx> forced;
    for (auto x : indecomposables(s)) {
      bool in_a = std::find(a.begin(), a.end(), x) != a.end();
      if (!in_a) {
        if (!in_universe[x]) {
          throw std::invalid_argument(
              "rank: an unavoidable generator lies outside the candidate set");
        }
        forced.push_back(x);
      }
    }
    Closure with_forced = base;
    for (auto x : forced) {
      closure_insert(s, with_forced, x);
    }

    GreenData g = green_semigroup(s);
    std::vector<ElemIdx> hit = a;
    hit.insert(hit.end(), forced.begin(), forced.end());
    std::uint32_t lb = std::max<std::uint32_t>(
        static_cast<std::uint32_t>(forced.size())
            + (with_forced.full() ? 0 : 1),
        static_cast<std::uint32_t>(forced.size())
            + max_j_lower_bound(s, g, hit));
    res.lower_bound_used = lb;

    if (with_forced.full()) {
      res.value = static_cast<std::uint32_t>(forced.size());
      res.witness = forced;
      return done(res);
    }

    // candidates: universe elements outside the forced closure
    std::vector<ElemIdx> cands;
    for (auto x : universe) {
      if (!with_forced.contains(x)) {
        cands.push_back(x);
      }
    }
    std::sort(cands.begin(), cands.end());

    // greedy upper bound
    std::vector<ElemIdx> greedy;
    {
      Closure c = with_forced;
      while (!c.full()) {
        ElemIdx best = ElemIdx(-1);
        std::size_t best_gain = 0;
        for (auto x : cands) {
          if (c.contains(x)) {
            continue;
          }
          Closure trial = c;
          closure_insert(s, trial, x);
          if (trial.count > best_gain) {
            best_gain = trial.count;
            best = x;
          }
        }
        if (best == ElemIdx(-1)) {
          return done(res);  // candidates cannot generate S: leave value empty
        }
        greedy.push_back(best);
        closure_insert(s, c, best);
      }
    }
    std::uint32_t ub = static_cast<std::uint32_t>(forced.size() + greedy.size());

    SearchState st{&s, &cands, budget, t0};
    for (std::uint32_t k = std::max<std::uint32_t>(
             lb, static_cast<std::uint32_t>(forced.size()) + 1);
         k < ub; ++k) {
      std::uint32_t extras = k - static_cast<std::uint32_t>(forced.size());
      st.chosen.clear();
      if (rank_dfs(st, with_forced, 0, extras)) {
        res.value = k;
        res.witness = forced;
        res.witness.insert(res.witness.end(), st.solution.begin(),
                           st.solution.end());
        res.nodes_explored = st.nodes;
        return done(res);
      }
      if (st.out_of_budget) {
        res.nodes_explored = st.nodes;
        res.witness = forced;
        res.witness.insert(res.witness.end(), greedy.begin(), greedy.end());
        return done(res);  // value left empty
      }
    }
    res.value = ub;
    res.witness = forced;
    res.witness.insert(res.witness.end(), greedy.begin(), greedy.end());
    res.nodes_explored = st.nodes;
    return done(res);
  }

}  // namespace detail

inline RankResult rank(FiniteSemigroup const& s, RankBudget budget = {}) {
  std::vector<ElemIdx> all(s.size());
  std::iota(all.begin(), all.end(), 0);
  return detail::min_extension(s, {}, all, budget);
}

inline RankResult idrank(FiniteSemigroup const& s, RankBudget budget = {}) {
  auto e = s.idempotents();
  if (detail::closure_of(s, e).count != s.size()) {
    throw std::invalid_argument("idrank: semigroup is not idempotent-generated");
  }
  return detail::min_extension(s, {}, e, budget);
}

inline RankResult relative_rank(FiniteSemigroup const& s,
                                std::vector<ElemIdx> const& a,
                                RankBudget budget = {}) {
  std::vector<ElemIdx> all(s.size());
  std::iota(all.begin(), all.end(), 0);
  return detail::min_extension(s, a, all, budget);
}

inline RankResult relative_idrank(FiniteSemigroup const& s,
                                  std::vector<ElemIdx> const& a,
                                  RankBudget budget = {}) {
  auto e = s.idempotents();
  std::vector<ElemIdx> gens = a;
  gens.insert(gens.end(), e.begin(), e.end());
  if (detail::closure_of(s, gens).count != s.size()) {
    throw std::invalid_argument(
        "relative_idrank: idempotents cannot complete the given set");
  }
  return detail::min_extension(s, a, e, budget);
}

// --- rectangular groups -----------------------------------------------------

struct RectGroupSpec {
  std::uint32_t r = 1;
  std::uint32_t l = 1;
  FiniteSemigroup g;  // must be a group
};

struct RectGroupReport {
  RankResult rank_result;
  std::uint32_t rank_g = 0;
  std::uint32_t expected = 0;  // max(r, l, rank(G))
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline RectGroupReport rect_group_check(RectGroupSpec const& spec,
                                        RankBudget budget = {}) {
  RectGroupReport rep;
  auto fail = [&rep](std::string clause) {
    rep.violations.push_back({"rect_group", std::move(clause), {}, ""});
  };
  auto t = rectangular_group(spec.r, spec.l, spec.g);
  auto rg = rank(spec.g, budget);
  auto rt = rank(t, budget);
  rep.rank_result = rt;
  if (rg.exceeded() || rt.exceeded()) {
    fail("rank search exceeded budget");
    return rep;
  }
  rep.rank_g = *rg.value;
  rep.expected = std::max({spec.r, spec.l, rep.rank_g});
  if (*rt.value != rep.expected) {
    fail("rank(T) = max(r, l, rank(G))");
  }

  std::size_t gn = spec.g.size();
  auto row_of = [&](ElemIdx x) { return x / (gn * spec.l); };
  auto col_of = [&](ElemIdx x) { return x % spec.l; };
  auto covers = [&](std::vector<ElemIdx> const& set, bool rows) {
    std::vector<char> hit(rows ? spec.r : spec.l, 0);
    for (auto x : set) {
      hit[rows ? row_of(x) : col_of(x)] = 1;
    }
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  };
  if (!covers(rt.witness, true) || !covers(rt.witness, false)) {
    fail("minimal generating set meets every R-class and L-class");
  }

  // cross-section witnesses in the boundary cases
  auto gamma = rank(spec.g, budget).witness;  // minimal generating set of G
  auto build_cross = [&](bool rows) {
    std::uint32_t size = rows ? spec.r : spec.l;
    std::vector<ElemIdx> xs;
    for (std::uint32_t t2 = 0; t2 < size; ++t2) {
      std::uint32_t i = rows ? t2 : t2 % spec.r;
      std::uint32_t j2 = rows ? t2 % spec.l : t2;
      ElemIdx gg = gamma[t2 % gamma.size()];
      xs.push_back((i * gn + gg) * spec.l + j2);
    }
    return xs;
  };
  if (*rt.value == spec.r) {
    auto xs = build_cross(true);
    std::vector<ElemIdx> seen;
    for (auto x : xs) {
      seen.push_back(static_cast<ElemIdx>(row_of(x)));
    }
    std::sort(seen.begin(), seen.end());
    bool cross = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    if (!cross || detail::closure_of(t, xs).count != t.size()) {
      fail("R-class cross-section witness generates");
    }
  }
  if (*rt.value == spec.l) {
    auto xs = build_cross(false);
    std::vector<ElemIdx> seen;
    for (auto x : xs) {
      seen.push_back(static_cast<ElemIdx>(col_of(x)));
    }
    std::sort(seen.begin(), seen.end());
    bool cross = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    if (!cross || detail::closure_of(t, xs).count != t.size()) {
      fail("L-class cross-section witness generates");
    }
  }
  return rep;
}

// --- the rank formulas over a frame ------------------------------------------

struct RankFormulaReport {
  std::uint32_t r = 0, l = 0;
  bool w_minus_units_ideal = false;
  bool mi_dominated = false;
  bool inequality_only = false;  // a search exceeded its budget
  RankResult rank_pa, rank_w_rel_units, rank_gw;
  RankResult rank_ea, idrank_ea, rank_eb, idrank_eb;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline RankFormulaReport rank_formula_check(RegularFrame const& fr,
                                            RankBudget budget = {}) {
  RankFormulaReport rep;
  auto fail = [&rep](std::string clause) {
    rep.violations.push_back({"rank_formula", std::move(clause), {}, ""});
  };

  // dimensions of the rectangular group hat-H_b
  {
    std::vector<ElemIdx> rows, cols;
    for (std::size_t x = 0; x < fr.pa.size(); ++x) {
      if (fr.w_green.h.related(fr.phi[x], fr.phi[fr.b_in_pa])) {
        rows.push_back(fr.pa_green.r.cls[x]);
        cols.push_back(fr.pa_green.l.cls[x]);
      }
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    rep.r = static_cast<std::uint32_t>(rows.size());
    rep.l = static_cast<std::uint32_t>(cols.size());
  }

  auto gw = units(fr.w_sg);
  rep.w_minus_units_ideal = [&] {
    std::vector<char> is_unit(fr.w_sg.size(), 0);
    for (auto u : gw) {
      is_unit[u] = 1;
    }
    for (ElemIdx x = 0; x < fr.w_sg.size(); ++x) {
      if (is_unit[x]) {
        continue;
      }
      for (ElemIdx y = 0; y < fr.w_sg.size(); ++y) {
        if (is_unit[fr.w_sg.product(x, y)] || is_unit[fr.w_sg.product(y, x)]) {
          return false;
        }
      }
    }
    return true;
  }();
  rep.mi_dominated = domination_report(fr.pa_sg).mi_dominated;

  rep.rank_pa = rank(fr.pa_sg, budget);
  rep.rank_w_rel_units = relative_rank(fr.w_sg, gw, budget);
  auto gw_sub = subsemigroup(fr.w_sg, gw);
  rep.rank_gw = rank(gw_sub.sg, budget);

  if (rep.rank_pa.exceeded() || rep.rank_w_rel_units.exceeded()
      || rep.rank_gw.exceeded()) {
    rep.inequality_only = true;
  } else if (rep.w_minus_units_ideal) {
    std::uint32_t rhs = *rep.rank_w_rel_units.value
                        + std::max({rep.r, rep.l, *rep.rank_gw.value});
    if (*rep.rank_pa.value < rhs) {
      fail("rank(P^a) >= rank(W:G_W) + max(r, l, rank(G_W))");
    }
    if (rep.mi_dominated && *rep.rank_pa.value != rhs) {
      fail("rank(P^a) equality under MI-domination");
    }
  }

  // idempotent-generated subsemigroups on both levels
  auto ea_members = generated(fr.pa_sg, fr.pa_sg.idempotents());
  auto eb_members = generated(fr.w_sg, fr.w_sg.idempotents());
  auto ea = subsemigroup(fr.pa_sg, ea_members);
  auto eb = subsemigroup(fr.w_sg, eb_members);
  rep.rank_ea = rank(ea.sg, budget);
  rep.idrank_ea = idrank(ea.sg, budget);
  rep.rank_eb = rank(eb.sg, budget);
  rep.idrank_eb = idrank(eb.sg, budget);
  if (rep.rank_ea.exceeded() || rep.idrank_ea.exceeded()
      || rep.rank_eb.exceeded() || rep.idrank_eb.exceeded()) {
    rep.inequality_only = true;
  } else {
    std::uint32_t add = std::max(rep.r, rep.l) - 1;
    if (*rep.rank_ea.value < *rep.rank_eb.value + add) {
      fail("rank(E_a) >= rank(E_b(W)) + max(r, l) - 1");
    }
    if (*rep.idrank_ea.value < *rep.idrank_eb.value + add) {
      fail("idrank(E_a) >= idrank(E_b(W)) + max(r, l) - 1");
    }
    if (rep.mi_dominated) {
      if (*rep.rank_ea.value != *rep.rank_eb.value + add) {
        fail("rank(E_a) equality under MI-domination");
      }
      if (*rep.idrank_ea.value != *rep.idrank_eb.value + add) {
        fail("idrank(E_a) equality under MI-domination");
      }
      if ((*rep.rank_eb.value == *rep.idrank_eb.value)
          != (*rep.rank_ea.value == *rep.idrank_ea.value)) {
        fail("rank = idrank transfers between E_b(W) and E_a(P^a)");
      }
    }
  }

  // the idempotent-generated monoid E_b(W): trivial units, units-complement
  // an ideal, and the 1 + relative-rank decompositions
  {
    auto m = eb.sg;
    auto mu = units(m);
    auto ident = m.identity();
    if (!ident || mu != std::vector<ElemIdx>{*ident}) {
      fail("group of units of E_b(W) is trivial");
    } else {
      bool ideal = true;
      for (ElemIdx x = 0; x < m.size() && ideal; ++x) {
        if (x == *ident) {
          continue;
        }
        for (ElemIdx y = 0; y < m.size(); ++y) {
          if (m.product(x, y) == *ident || m.product(y, x) == *ident) {
            ideal = false;
            break;
          }
        }
      }
      if (!ideal) {
        fail("complement of units of E_b(W) is an ideal");
      }
      auto rel = relative_rank(m, mu, budget);
      auto relid = relative_idrank(m, mu, budget);
      if (!rep.rank_eb.exceeded() && !rel.exceeded()
          && *rep.rank_eb.value != 1 + *rel.value) {
        fail("rank(E_b(W)) = 1 + rank(E_b(W) : units)");
      }
      if (!rep.idrank_eb.exceeded() && !relid.exceeded()
          && *rep.idrank_eb.value != 1 + *relid.value) {
        fail("idrank(E_b(W)) = 1 + idrank(E_b(W) : units)");
      }
    }
  }
  return rep;
}

// --- the maximal-J-class lower bound for the full sandwich semigroup ---------

struct SandwichRankBound {
  std::uint32_t bound = 0;
  bool hypotheses_ok = false;  // aS_ij R-stable and S_ij a L-stable
  RankResult brute;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline SandwichRankBound sandwich_rank_lower_bound(SandwichSemigroup const& sw,
                                                   GreenData const& ambient,
                                                   RankBudget budget = {}) {
  auto const& c = sw.category();
  ObjectId i = sw.i(), j = sw.j();
  SandwichRankBound rep;

  rep.hypotheses_ok = true;
  for (ElemIdx x = 0; x < sw.size() && rep.hypotheses_ok; ++x) {
    rep.hypotheses_ok =
        stability(c, ambient, c.at(j, j, sw.left_mul_a(x))).r_stable
        && stability(c, ambient, c.at(i, i, sw.right_mul_a(x))).l_stable;
  }

  std::uint32_t off = c.offset(i, j), sz = c.homset_size(i, j);
  std::vector<ElemIdx> jclasses;
  for (std::uint32_t x = 0; x < sz; ++x) {
    jclasses.push_back(ambient.j.cls[off + x]);
  }
  std::sort(jclasses.begin(), jclasses.end());
  jclasses.erase(std::unique(jclasses.begin(), jclasses.end()), jclasses.end());
  for (auto jc : jclasses) {
    bool maximal = true;
    for (auto other : jclasses) {
      if (other != jc && ambient.j_order.get(jc, other)
          && !ambient.j_order.get(other, jc)) {
        maximal = false;
        break;
      }
    }
    if (!maximal) {
      continue;
    }
    std::vector<ElemIdx> rows, cols;
    for (auto g : ambient.j.members[jc]) {
      if (g >= off && g < off + sz) {
        rows.push_back(ambient.r.cls[g]);
        cols.push_back(ambient.l.cls[g]);
      }
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    rep.bound += static_cast<std::uint32_t>(std::max(rows.size(), cols.size()));
  }

  rep.brute = rank(sw.to_semigroup(), budget);
  if (!rep.brute.exceeded() && rep.bound > *rep.brute.value) {
    rep.violations.push_back(
        {"rank_bound", "maximal-J lower bound <= rank(S_ij^a)", {}, ""});
  }
  return rep;
}

}  // namespace sandwich_kit

#endif  // SANDWICH_KIT_RANK_HPP_
