// Green's preorders, equivalences and egg-box structure for finite
// semigroups and finite partial semigroups (enumerated categories), plus the
// order-theoretic predicates built on top of them: the natural partial
// order, mid-identities, regularity-preserving elements, domination flags,
// and element stability.
//
// Preorders are evaluated straight from the definitions (one product sweep
// per element) below a size threshold; above it, classes come from SCCs of
// the left/right multiplication digraphs and orders from the condensation.
// Both paths produce identical GreenData.

#ifndef SANDWICH_KIT_GREEN_HPP_
#define SANDWICH_KIT_GREEN_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "finite_semigroup.hpp"

namespace sandwich_kit {

namespace detail {

  class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64),
          bits_(rows * words_, 0) {}

    void set(std::size_t r, std::size_t c) {
      bits_[r * words_ + c / 64] |= std::uint64_t(1) << (c % 64);
    }
    bool get(std::size_t r, std::size_t c) const {
      return (bits_[r * words_ + c / 64] >> (c % 64)) & 1;
    }
    //! row(dst) |= row(src) of other.
    void or_row(std::size_t dst, BitMatrix const& other, std::size_t src) {
      auto* d = &bits_[dst * words_];
      auto const* s = &other.bits_[src * words_];
      for (std::size_t w = 0; w < words_; ++w) {
        d[w] |= s[w];
      }
    }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

   private:
    std::size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> bits_;
  };

}  // namespace detail

struct GreenOptions {
  std::size_t budget = 20000;       // element-count cap
  std::size_t scc_threshold = 5000; // switch to the SCC path above this
  bool force_scc = false;
  bool force_definition = false;
};

//! One Green equivalence: element -> class id, and members per class.
//! Class ids are assigned in order of each class's minimal element.
struct GreenRelation {
  std::vector<ElemIdx> cls;
  std::vector<std::vector<ElemIdx>> members;

  std::size_t class_count() const { return members.size(); }
  bool related(ElemIdx x, ElemIdx y) const { return cls[x] == cls[y]; }
};

//! Green's data for a finite (partial) semigroup on elements 0..size-1.
struct GreenData {
  std::size_t size = 0;
  GreenRelation r, l, j, h, d;
  // class-level preorders: *_order.get(c1, c2) means class c1 <= class c2
  detail::BitMatrix r_order, l_order, j_order, h_order;
  std::vector<char> h_group;  // per H-class: contains an idempotent

  bool leq_r(ElemIdx x, ElemIdx y) const { return r_order.get(r.cls[x], r.cls[y]); }
  bool leq_l(ElemIdx x, ElemIdx y) const { return l_order.get(l.cls[x], l.cls[y]); }
  bool leq_j(ElemIdx x, ElemIdx y) const { return j_order.get(j.cls[x], j.cls[y]); }
  bool leq_h(ElemIdx x, ElemIdx y) const { return h_order.get(h.cls[x], h.cls[y]); }
  bool is_group_h_class(ElemIdx x) const { return h_group[h.cls[x]]; }
};

namespace detail {

  inline GreenRelation classes_from_preorder(BitMatrix const& leq, std::size_t m) {
    GreenRelation rel;
    rel.cls.assign(m, ElemIdx(-1));
    for (std::size_t x = 0; x < m; ++x) {
      if (rel.cls[x] != ElemIdx(-1)) {
        continue;
      }
      ElemIdx id = static_cast<ElemIdx>(rel.members.size());
      rel.cls[x] = id;
      rel.members.push_back({static_cast<ElemIdx>(x)});
      for (std::size_t y = x + 1; y < m; ++y) {
        if (rel.cls[y] == ElemIdx(-1) && leq.get(x, y) && leq.get(y, x)) {
          rel.cls[y] = id;
          rel.members[id].push_back(static_cast<ElemIdx>(y));
        }
      }
    }
    return rel;
  }

  inline BitMatrix class_order(BitMatrix const& leq, GreenRelation const& rel) {
    std::size_t c = rel.class_count();
    BitMatrix out(c, c);
    for (std::size_t a = 0; a < c; ++a) {
      for (std::size_t b = 0; b < c; ++b) {
        if (leq.get(rel.members[a][0], rel.members[b][0])) {
          out.set(a, b);
        }
      }
    }
    return out;
  }

  //! Tarjan SCC (iterative); returns component id per node, ids re-mapped so
  //! that a component's id is given by the rank of its minimal node.
  inline std::vector<ElemIdx> scc_components(
      std::vector<std::vector<ElemIdx>> const& adj, std::size_t& count) {
    std::size_t const m = adj.size();
    std::vector<ElemIdx> comp(m, ElemIdx(-1)), low(m), num(m, ElemIdx(-1));
    std::vector<ElemIdx> stack;
    std::vector<char> on_stack(m, 0);
    ElemIdx timer = 0, ncomp = 0;
    struct Frame { ElemIdx v; std::size_t edge; };
    for (std::size_t root = 0; root < m; ++root) {
      if (num[root] != ElemIdx(-1)) {
        continue;
      }
      std::vector<Frame> call;
      call.push_back({static_cast<ElemIdx>(root), 0});
      num[root] = low[root] = timer++;
      stack.push_back(static_cast<ElemIdx>(root));
      on_stack[root] = 1;
      while (!call.empty()) {
        auto& f = call.back();
        if (f.edge < adj[f.v].size()) {
          ElemIdx w = adj[f.v][f.edge++];
          if (num[w] == ElemIdx(-1)) {
            num[w] = low[w] = timer++;
            stack.push_back(w);
            on_stack[w] = 1;
            call.push_back({w, 0});
          } else if (on_stack[w]) {
            low[f.v] = std::min(low[f.v], num[w]);
          }
        } else {
          if (low[f.v] == num[f.v]) {
            for (;;) {
              ElemIdx w = stack.back();
              stack.pop_back();
              on_stack[w] = 0;
              comp[w] = ncomp;
              if (w == f.v) {
                break;
              }
            }
            ++ncomp;
          }
          ElemIdx v = f.v;
          call.pop_back();
          if (!call.empty()) {
            low[call.back().v] = std::min(low[call.back().v], low[v]);
          }
        }
      }
    }
    // remap ids by minimal member, for reproducible class numbering
    std::vector<ElemIdx> first(ncomp, ElemIdx(-1));
    for (std::size_t x = 0; x < m; ++x) {
      if (first[comp[x]] == ElemIdx(-1)) {
        first[comp[x]] = static_cast<ElemIdx>(x);
      }
    }
    std::vector<ElemIdx> order(ncomp);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](ElemIdx a, ElemIdx b) { return first[a] < first[b]; });
    std::vector<ElemIdx> remap(ncomp);
    for (ElemIdx k = 0; k < ncomp; ++k) {
      remap[order[k]] = k;
    }
    for (auto& c : comp) {
      c = remap[c];
    }
    count = ncomp;
    return comp;
  }

  struct RelationWithOrder {
    GreenRelation rel;
    BitMatrix order;
  };

  //! Classes + class order from a one-step divisibility digraph
  //! (edge y -> y.u).  Down-set of y = nodes reachable from y.
  inline RelationWithOrder relation_from_digraph(
      std::vector<std::vector<ElemIdx>> const& adj) {
    std::size_t const m = adj.size();
    std::size_t ncomp = 0;
    auto comp = scc_components(adj, ncomp);
    GreenRelation rel;
    rel.cls = comp;
    rel.members.resize(ncomp);
    for (std::size_t x = 0; x < m; ++x) {
      rel.members[comp[x]].push_back(static_cast<ElemIdx>(x));
    }
    // condensation reachability; comp ids are not topologically sorted after
    // the min-member remap, so close with a fixpoint sweep over class edges
    std::vector<std::vector<ElemIdx>> cadj(ncomp);
    for (std::size_t y = 0; y < m; ++y) {
      for (auto x : adj[y]) {
        if (comp[x] != comp[y]) {
          cadj[comp[y]].push_back(comp[x]);
        }
      }
    }
    for (auto& v : cadj) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    BitMatrix reach(ncomp, ncomp);  // reach.get(c, d): d reachable from c
    for (std::size_t c = 0; c < ncomp; ++c) {
      reach.set(c, c);
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t c = 0; c < ncomp; ++c) {
        for (auto d : cadj[c]) {
          for (std::size_t w = 0; w < ncomp; ++w) {
            if (reach.get(d, w) && !reach.get(c, w)) {
              reach.set(c, w);
              changed = true;
            }
          }
        }
      }
    }
    // x <= y iff x reachable from y: order.get(cx, cy) = reach.get(cy, cx)
    BitMatrix ord(ncomp, ncomp);
    for (std::size_t cx = 0; cx < ncomp; ++cx) {
      for (std::size_t cy = 0; cy < ncomp; ++cy) {
        if (reach.get(cy, cx)) {
          ord.set(cx, cy);
        }
      }
    }
    return {std::move(rel), std::move(ord)};
  }

  inline GreenRelation intersect_relations(GreenRelation const& a,
                                           GreenRelation const& b,
                                           std::size_t m) {
    GreenRelation out;
    out.cls.assign(m, ElemIdx(-1));
    std::vector<std::pair<ElemIdx, ElemIdx>> key_of;
    for (std::size_t x = 0; x < m; ++x) {
      std::pair<ElemIdx, ElemIdx> key{a.cls[x], b.cls[x]};
      ElemIdx id = ElemIdx(-1);
      for (std::size_t k = 0; k < key_of.size(); ++k) {
        if (key_of[k] == key) {
          id = static_cast<ElemIdx>(k);
          break;
        }
      }
      if (id == ElemIdx(-1)) {
        id = static_cast<ElemIdx>(key_of.size());
        key_of.push_back(key);
        out.members.emplace_back();
      }
      out.cls[x] = id;
      out.members[id].push_back(static_cast<ElemIdx>(x));
    }
    return out;
  }

  inline GreenRelation join_relations(GreenRelation const& a,
                                      GreenRelation const& b, std::size_t m) {
    std::vector<ElemIdx> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<ElemIdx(ElemIdx)> find = [&](ElemIdx x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    auto unite = [&](ElemIdx x, ElemIdx y) {
      x = find(x);
      y = find(y);
      if (x != y) {
        parent[std::max(x, y)] = std::min(x, y);
      }
    };
    for (auto const& c : a.members) {
      for (std::size_t k = 1; k < c.size(); ++k) {
        unite(c[0], c[k]);
      }
    }
    for (auto const& c : b.members) {
      for (std::size_t k = 1; k < c.size(); ++k) {
        unite(c[0], c[k]);
      }
    }
    GreenRelation out;
    out.cls.assign(m, ElemIdx(-1));
    for (std::size_t x = 0; x < m; ++x) {
      ElemIdx root = find(static_cast<ElemIdx>(x));
      if (out.cls[root] == ElemIdx(-1)) {
        out.cls[root] = static_cast<ElemIdx>(out.members.size());
        out.members.emplace_back();
      }
      out.cls[x] = out.cls[root];
      out.members[out.cls[x]].push_back(static_cast<ElemIdx>(x));
    }
    return out;
  }

}  // namespace detail

//! Generic Green engine.  RightFn / LeftFn are called as fn(y, emit) and
//! must invoke emit(x) for every one-step product x = y.u (resp. x = u.y)
//! inside the structure; IdemFn reports idempotency of an element.
template <typename RightFn, typename LeftFn, typename IdemFn>
GreenData green_from_products(std::size_t m, RightFn&& right, LeftFn&& left,
                              IdemFn&& is_idem, GreenOptions const& opts = {}) {
  if (m > opts.budget) {
    throw budget_error("green: " + std::to_string(m)
                       + " elements exceeds budget "
                       + std::to_string(opts.budget));
  }
  GreenData g;
  g.size = m;

  bool use_scc = opts.force_scc || (m > opts.scc_threshold && !opts.force_definition);

  if (!use_scc) {
    detail::BitMatrix leq_r(m, m), leq_l(m, m);
    for (std::size_t y = 0; y < m; ++y) {
      leq_r.set(y, y);
      leq_l.set(y, y);
      right(static_cast<ElemIdx>(y),
            [&](ElemIdx x) { leq_r.set(x, y); });
      left(static_cast<ElemIdx>(y),
           [&](ElemIdx x) { leq_l.set(x, y); });
    }
    // x <=_J y  iff  exists z with x <=_R z and z <=_L y
    detail::BitMatrix leq_j(m, m);
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t z = 0; z < m; ++z) {
        if (leq_r.get(x, z)) {
          leq_j.or_row(x, leq_l, z);
        }
      }
    }
    detail::BitMatrix leq_h(m, m);
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < m; ++y) {
        if (leq_r.get(x, y) && leq_l.get(x, y)) {
          leq_h.set(x, y);
        }
      }
    }
    g.r = detail::classes_from_preorder(leq_r, m);
    g.l = detail::classes_from_preorder(leq_l, m);
    g.j = detail::classes_from_preorder(leq_j, m);
    g.h = detail::classes_from_preorder(leq_h, m);
    g.r_order = detail::class_order(leq_r, g.r);
    g.l_order = detail::class_order(leq_l, g.l);
    g.j_order = detail::class_order(leq_j, g.j);
    g.h_order = detail::class_order(leq_h, g.h);
  } else {
    std::vector<std::vector<ElemIdx>> radj(m), ladj(m), jadj(m);
    for (std::size_t y = 0; y < m; ++y) {
      right(static_cast<ElemIdx>(y), [&](ElemIdx x) {
        if (x != y) {
          radj[y].push_back(x);
        }
      });
      left(static_cast<ElemIdx>(y), [&](ElemIdx x) {
        if (x != y) {
          ladj[y].push_back(x);
        }
      });
      auto dedup = [](std::vector<ElemIdx>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
      };
      dedup(radj[y]);
      dedup(ladj[y]);
      jadj[y] = radj[y];
      jadj[y].insert(jadj[y].end(), ladj[y].begin(), ladj[y].end());
      dedup(jadj[y]);
    }
    auto rr = detail::relation_from_digraph(radj);
    auto ll = detail::relation_from_digraph(ladj);
    auto jj = detail::relation_from_digraph(jadj);
    g.r = std::move(rr.rel);
    g.l = std::move(ll.rel);
    g.j = std::move(jj.rel);
    g.r_order = std::move(rr.order);
    g.l_order = std::move(ll.order);
    g.j_order = std::move(jj.order);
    g.h = detail::intersect_relations(g.r, g.l, m);
    std::size_t hc = g.h.class_count();
    g.h_order = detail::BitMatrix(hc, hc);
    for (std::size_t c1 = 0; c1 < hc; ++c1) {
      ElemIdx x = g.h.members[c1][0];
      for (std::size_t c2 = 0; c2 < hc; ++c2) {
        ElemIdx y = g.h.members[c2][0];
        if (g.r_order.get(g.r.cls[x], g.r.cls[y])
            && g.l_order.get(g.l.cls[x], g.l.cls[y])) {
          g.h_order.set(c1, c2);
        }
      }
    }
  }

  g.d = detail::join_relations(g.r, g.l, m);

  g.h_group.assign(g.h.class_count(), 0);
  for (std::size_t x = 0; x < m; ++x) {
    if (is_idem(static_cast<ElemIdx>(x))) {
      g.h_group[g.h.cls[x]] = 1;
    }
  }
  return g;
}

//! Green's data for a finite semigroup (preorders quantify over S^1).
inline GreenData green_semigroup(FiniteSemigroup const& s,
                                 GreenOptions const& opts = {}) {
  std::size_t n = s.size();
  auto right = [&](ElemIdx y, auto emit) {
    for (ElemIdx u = 0; u < n; ++u) {
      emit(s.product(y, u));
    }
  };
  auto left = [&](ElemIdx y, auto emit) {
    for (ElemIdx u = 0; u < n; ++u) {
      emit(s.product(u, y));
    }
  };
  return green_from_products(n, right, left,
                             [&](ElemIdx x) { return s.is_idempotent(x); },
                             opts);
}

//! Green's data on the disjoint union of all hom-sets of a category,
//! indexed by Category::global_index.
inline GreenData green_category(Category const& c, GreenOptions const& opts = {}) {
  std::size_t const m = c.total_morphisms();
  std::uint32_t const nobj = c.object_count();
  std::vector<std::pair<ObjectId, ObjectId>> owner(m);
  for (ObjectId i = 0; i < nobj; ++i) {
    for (ObjectId j = 0; j < nobj; ++j) {
      for (std::uint32_t t = 0; t < c.homset_size(i, j); ++t) {
        owner[c.global_index(i, j, t)] = {i, j};
      }
    }
  }
  auto right = [&](ElemIdx yg, auto emit) {
    auto [i, j] = owner[yg];
    std::uint32_t y = yg - c.offset(i, j);
    for (ObjectId k = 0; k < nobj; ++k) {
      for (std::uint32_t u = 0; u < c.homset_size(j, k); ++u) {
        emit(c.global_index(i, k, c.compose_idx(i, j, k, y, u)));
      }
    }
  };
  auto left = [&](ElemIdx yg, auto emit) {
    auto [i, j] = owner[yg];
    std::uint32_t y = yg - c.offset(i, j);
    for (ObjectId k = 0; k < nobj; ++k) {
      for (std::uint32_t u = 0; u < c.homset_size(k, i); ++u) {
        emit(c.global_index(k, j, c.compose_idx(k, i, j, u, y)));
      }
    }
  };
  auto idem = [&](ElemIdx xg) {
    auto [i, j] = owner[xg];
    if (i != j) {
      return false;
    }
    std::uint32_t x = xg - c.offset(i, j);
    return c.compose_idx(i, i, i, x, x) == x;
  };
  return green_from_products(m, right, left, idem, opts);
}

// --- egg-box layout ---------------------------------------------------------

//! One D-class laid out as a grid: R-classes as rows, L-classes as columns,
//! H-classes as cells.  Rows/columns are ordered by minimal member index.
struct EggBox {
  ElemIdx d_class = 0;
  std::vector<ElemIdx> rows;  // R-class ids
  std::vector<ElemIdx> cols;  // L-class ids
  std::vector<std::vector<ElemIdx>> cell;        // H-class id per row x col
  std::vector<std::vector<char>> cell_is_group;  // group flag per cell
};

inline EggBox eggbox(GreenData const& g, ElemIdx d_class_id) {
  EggBox box;
  box.d_class = d_class_id;
  for (auto x : g.d.members[d_class_id]) {
    box.rows.push_back(g.r.cls[x]);
    box.cols.push_back(g.l.cls[x]);
  }
  auto dedup = [](std::vector<ElemIdx>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(box.rows);
  dedup(box.cols);
  box.cell.assign(box.rows.size(), std::vector<ElemIdx>(box.cols.size(), ElemIdx(-1)));
  box.cell_is_group.assign(box.rows.size(), std::vector<char>(box.cols.size(), 0));
  for (auto x : g.d.members[d_class_id]) {
    auto ri = std::lower_bound(box.rows.begin(), box.rows.end(), g.r.cls[x])
              - box.rows.begin();
    auto ci = std::lower_bound(box.cols.begin(), box.cols.end(), g.l.cls[x])
              - box.cols.begin();
    box.cell[ri][ci] = g.h.cls[x];
    box.cell_is_group[ri][ci] = g.h_group[g.h.cls[x]];
  }
  return box;
}

// --- order and regularity predicates ----------------------------------------

namespace detail {
  inline void require_regular(FiniteSemigroup const& s, char const* who) {
    if (!s.is_regular_semigroup()) {
      throw std::invalid_argument(std::string(who)
                                  + ": semigroup must be regular");
    }
  }
}  // namespace detail

//! Natural partial order on a regular semigroup: x <= y iff x = ey = yf for
//! some idempotents e, f.
inline bool natural_leq(FiniteSemigroup const& s, ElemIdx x, ElemIdx y) {
  detail::require_regular(s, "natural_leq");
  bool left = false, right = false;
  for (ElemIdx e = 0; e < s.size() && !(left && right); ++e) {
    if (!s.is_idempotent(e)) {
      continue;
    }
    left = left || s.product(e, y) == x;
    right = right || s.product(y, e) == x;
  }
  return left && right;
}

//! For idempotents: e <= f iff e = fef (equivalent to natural_leq on E).
inline bool idempotent_leq(FiniteSemigroup const& s, ElemIdx e, ElemIdx f) {
  return s.product(s.product(f, e), f) == e;
}

//! All u with xuy = xy for every x, y.
inline std::vector<ElemIdx> mid_identities(FiniteSemigroup const& s) {
  std::size_t n = s.size();
  std::vector<ElemIdx> out;
  for (ElemIdx u = 0; u < n; ++u) {
    bool ok = true;
    for (ElemIdx x = 0; x < n && ok; ++x) {
      ElemIdx xu = s.product(x, u);
      for (ElemIdx y = 0; y < n; ++y) {
        if (s.product(xu, y) != s.product(x, y)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      out.push_back(u);
    }
  }
  return out;
}

//! All u whose variant (S, *_u) is regular.  Requires S regular.
inline std::vector<ElemIdx> regularity_preserving(FiniteSemigroup const& s) {
  detail::require_regular(s, "regularity_preserving");
  std::size_t n = s.size();
  std::vector<ElemIdx> out;
  for (ElemIdx u = 0; u < n; ++u) {
    bool ok = true;
    for (ElemIdx x = 0; x < n && ok; ++x) {
      ElemIdx xu = s.product(x, u);
      bool found = false;
      for (ElemIdx y = 0; y < n; ++y) {
        if (s.product(s.product(xu, y), s.product(u, x)) == x) {
          found = true;
          break;
        }
      }
      ok = found;
    }
    if (ok) {
      out.push_back(u);
    }
  }
  return out;
}

//! Group of units of a monoid (empty result if S has no identity).
inline std::vector<ElemIdx> units(FiniteSemigroup const& s) {
  std::vector<ElemIdx> out;
  auto e = s.identity();
  if (!e) {
    return out;
  }
  for (ElemIdx g = 0; g < s.size(); ++g) {
    for (ElemIdx h = 0; h < s.size(); ++h) {
      if (s.product(g, h) == *e && s.product(h, g) == *e) {
        out.push_back(g);
        break;
      }
    }
  }
  return out;
}

//! Domination structure of a regular semigroup: the MI / RP / MaxE sets and
//! the MI- / RP-domination flags, with the paper-level cross-checks recorded
//! as anomalies (all of which are build bugs if they ever fire).
struct DominationReport {
  std::vector<ElemIdx> mi, rp, maxe;
  bool mi_dominated = false;
  bool rp_dominated = false;
  bool vacuous = false;                 // E(S) empty
  std::optional<bool> factorisable;     // monoids only
  std::vector<std::string> anomalies;
};

inline DominationReport domination_report(FiniteSemigroup const& s) {
  detail::require_regular(s, "domination_report");
  DominationReport rep;
  std::size_t n = s.size();
  auto es = s.idempotents();
  rep.mi = mid_identities(s);
  rep.rp = regularity_preserving(s);
  for (auto e : es) {
    bool maximal = true;
    for (auto f : es) {
      if (f != e && idempotent_leq(s, e, f) && !idempotent_leq(s, f, e)) {
        maximal = false;
        break;
      }
    }
    if (maximal) {
      rep.maxe.push_back(e);
    }
  }

  if (es.empty()) {
    rep.vacuous = true;
    rep.mi_dominated = true;  // vacuous truth, flagged explicitly
  } else {
    rep.mi_dominated = std::all_of(es.begin(), es.end(), [&](ElemIdx e) {
      return std::any_of(rep.mi.begin(), rep.mi.end(), [&](ElemIdx u) {
        return idempotent_leq(s, e, u);
      });
    });
  }

  rep.rp_dominated = true;
  for (ElemIdx x = 0; x < n && rep.rp_dominated; ++x) {
    bool below = false;
    for (auto y : rep.rp) {
      if (natural_leq(s, x, y)) {
        below = true;
        break;
      }
    }
    rep.rp_dominated = below;
  }

  if (s.identity()) {
    auto us = units(s);
    bool fact = true;
    for (ElemIdx x = 0; x < n && fact; ++x) {
      bool hit = false;
      for (auto f : es) {
        for (auto g : us) {
          if (s.product(f, g) == x) {
            hit = true;
            break;
          }
        }
        if (hit) {
          break;
        }
      }
      fact = hit;
    }
    rep.factorisable = fact;
  }

  // cross-checks from the structure theory
  if (!es.empty()) {
    std::vector<char> covered(n, 0);
    for (auto e : rep.mi) {
      for (ElemIdx t = 0; t < n; ++t) {
        covered[s.product(s.product(e, t), e)] = 1;
      }
    }
    bool cover_all = std::all_of(covered.begin(), covered.end(),
                                 [](char c) { return c != 0; });
    if (cover_all != rep.mi_dominated) {
      rep.anomalies.push_back("MI-domination disagrees with local-monoid cover");
    }
    if (rep.rp_dominated && !rep.mi.empty() && !rep.mi_dominated) {
      rep.anomalies.push_back("RP-dominated but not MI-dominated");
    }
    if (rep.mi_dominated && rep.maxe != rep.mi) {
      rep.anomalies.push_back("MI-dominated but MaxE != MI");
    }
    if (s.identity() && rep.factorisable
        && *rep.factorisable != rep.rp_dominated) {
      rep.anomalies.push_back("factorisable flag disagrees with RP-domination");
    }
  }
  return rep;
}

//! R-/L-stability of a morphism a: xa J x implies xa R x (and dually),
//! quantified over every composable x in the category.
struct StabilityFlags {
  bool r_stable = true;
  bool l_stable = true;
};

inline StabilityFlags stability(Category const& c, GreenData const& green,
                                Morphism const& a) {
  StabilityFlags flags;
  ObjectId ja = a.src, ia = a.dst;  // a lies in hom(ja, ia)
  std::uint32_t a_idx = c.index_of(a);
  for (ObjectId k = 0; k < c.object_count(); ++k) {
    // right side: x in hom(k, ja), product x.a in hom(k, ia)
    for (std::uint32_t x = 0; x < c.homset_size(k, ja); ++x) {
      std::uint32_t xa = c.compose_idx(k, ja, ia, x, a_idx);
      ElemIdx gx = c.global_index(k, ja, x);
      ElemIdx gxa = c.global_index(k, ia, xa);
      if (green.j.related(gxa, gx) && !green.r.related(gxa, gx)) {
        flags.r_stable = false;
      }
    }
    // left side: x in hom(ia, k), product a.x in hom(ja, k)
    for (std::uint32_t x = 0; x < c.homset_size(ia, k); ++x) {
      std::uint32_t ax = c.compose_idx(ja, ia, k, a_idx, x);
      ElemIdx gx = c.global_index(ia, k, x);
      ElemIdx gax = c.global_index(ja, k, ax);
      if (green.j.related(gax, gx) && !green.l.related(gax, gx)) {
        flags.l_stable = false;
      }
    }
  }
  return flags;
}

//! Semigroup-level stability: every element stable in S.
inline bool is_stable_semigroup(FiniteSemigroup const& s, GreenData const& g) {
  for (ElemIdx x = 0; x < s.size(); ++x) {
    for (ElemIdx u = 0; u < s.size(); ++u) {
      ElemIdx xu = s.product(x, u);
      if (g.j.related(xu, x) && !g.r.related(xu, x)) {
        return false;
      }
      ElemIdx ux = s.product(u, x);
      if (g.j.related(ux, x) && !g.l.related(ux, x)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace sandwich_kit

#endif  // SANDWICH_KIT_GREEN_HPP_
