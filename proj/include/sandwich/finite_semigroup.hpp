// Finite semigroups given by a multiplication table, plus the table-level
// plumbing shared by the whole toolkit: closures, subsemigroups, variants,
// local monoids, and a few stock groups for tests and rank checks.

#ifndef SANDWICH_KIT_FINITE_SEMIGROUP_HPP_
#define SANDWICH_KIT_FINITE_SEMIGROUP_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace sandwich_kit {

using ElemIdx = std::uint32_t;

//! A finite semigroup: elements 0..n-1 and a memoized multiplication table.
//! A two-sided identity, if any, is detected at construction.
class FiniteSemigroup {
 public:
  FiniteSemigroup() = default;

  FiniteSemigroup(std::size_t n, std::vector<ElemIdx> table)
      : n_(n), table_(std::move(table)) {
    if (table_.size() != n_ * n_) {
      throw std::invalid_argument("multiplication table has wrong size");
    }
    for (auto v : table_) {
      if (v >= n_) {
        throw std::invalid_argument("multiplication table entry out of range");
      }
    }
    detect_identity();
  }

  template <typename Mul>
  static FiniteSemigroup from_product(std::size_t n, Mul&& mul) {
    std::vector<ElemIdx> t(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        t[x * n + y] = mul(static_cast<ElemIdx>(x), static_cast<ElemIdx>(y));
      }
    }
    return FiniteSemigroup(n, std::move(t));
  }

  std::size_t size() const { return n_; }

  ElemIdx product(ElemIdx x, ElemIdx y) const { return table_[x * n_ + y]; }

  std::optional<ElemIdx> identity() const { return identity_; }

  bool is_idempotent(ElemIdx x) const { return product(x, x) == x; }

  std::vector<ElemIdx> idempotents() const {
    std::vector<ElemIdx> out;
    for (ElemIdx x = 0; x < n_; ++x) {
      if (is_idempotent(x)) {
        out.push_back(x);
      }
    }
    return out;
  }

  //! Full associativity check below the cap, random triples above it.
  bool verify_associative(std::size_t full_check_cap = 128,
                          std::size_t samples = 20000,
                          std::uint64_t seed = 0) const {
    if (n_ == 0) {
      return true;
    }
    if (n_ <= full_check_cap) {
      for (ElemIdx x = 0; x < n_; ++x) {
        for (ElemIdx y = 0; y < n_; ++y) {
          ElemIdx xy = product(x, y);
          for (ElemIdx z = 0; z < n_; ++z) {
            if (product(xy, z) != product(x, product(y, z))) {
              return false;
            }
          }
        }
      }
      return true;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<ElemIdx> pick(0, static_cast<ElemIdx>(n_ - 1));
    for (std::size_t t = 0; t < samples; ++t) {
      ElemIdx x = pick(rng), y = pick(rng), z = pick(rng);
      if (product(product(x, y), z) != product(x, product(y, z))) {
        return false;
      }
    }
    return true;
  }

  //! True iff every element x has some y with x = xyx.
  bool is_regular_semigroup() const {
    for (ElemIdx x = 0; x < n_; ++x) {
      if (!is_regular_element(x)) {
        return false;
      }
    }
    return true;
  }

  bool is_regular_element(ElemIdx x) const {
    for (ElemIdx y = 0; y < n_; ++y) {
      if (product(product(x, y), x) == x) {
        return true;
      }
    }
    return false;
  }

  //! V(x) within this semigroup.
  std::vector<ElemIdx> inverses_of(ElemIdx x) const {
    std::vector<ElemIdx> out;
    for (ElemIdx y = 0; y < n_; ++y) {
      if (product(product(x, y), x) == x && product(product(y, x), y) == y) {
        out.push_back(y);
      }
    }
    return out;
  }

 private:
  void detect_identity() {
    for (ElemIdx e = 0; e < n_; ++e) {
      bool ok = true;
      for (ElemIdx x = 0; x < n_ && ok; ++x) {
        ok = product(e, x) == x && product(x, e) == x;
      }
      if (ok) {
        identity_ = e;
        return;
      }
    }
  }

  std::size_t n_ = 0;
  std::vector<ElemIdx> table_;
  std::optional<ElemIdx> identity_;
};

//! Smallest subsemigroup containing A, as a sorted index list (BFS closure).
inline std::vector<ElemIdx> generated(FiniteSemigroup const& s,
                                      std::vector<ElemIdx> const& a) {
  std::vector<bool> in(s.size(), false);
  std::vector<ElemIdx> frontier;
  for (auto g : a) {
    if (g >= s.size()) {
      throw std::invalid_argument("generated: element out of range");
    }
    if (!in[g]) {
      in[g] = true;
      frontier.push_back(g);
    }
  }
  // Right-multiplying by generators reaches every product of generators.
  std::vector<ElemIdx> todo = frontier;
  while (!todo.empty()) {
    ElemIdx x = todo.back();
    todo.pop_back();
    for (auto g : a) {
      ElemIdx p = s.product(x, g);
      if (!in[p]) {
        in[p] = true;
        todo.push_back(p);
      }
    }
  }
  std::vector<ElemIdx> out;
  for (ElemIdx x = 0; x < s.size(); ++x) {
    if (in[x]) {
      out.push_back(x);
    }
  }
  return out;
}

//! A subsemigroup re-indexed as its own FiniteSemigroup; members[k] is the
//! parent index of local element k.
struct SubSemigroup {
  FiniteSemigroup sg;
  std::vector<ElemIdx> members;

  ElemIdx local_of(ElemIdx parent_idx) const {
    auto it = std::lower_bound(members.begin(), members.end(), parent_idx);
    if (it == members.end() || *it != parent_idx) {
      throw std::invalid_argument("element not in subsemigroup");
    }
    return static_cast<ElemIdx>(it - members.begin());
  }
  bool contains(ElemIdx parent_idx) const {
    return std::binary_search(members.begin(), members.end(), parent_idx);
  }
};

//! Builds the subsemigroup on the given (sorted or unsorted) member set;
//! throws if the set is not closed under the product.
inline SubSemigroup subsemigroup(FiniteSemigroup const& s,
                                 std::vector<ElemIdx> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<ElemIdx> local(s.size(), ElemIdx(-1));
  for (std::size_t k = 0; k < members.size(); ++k) {
    local[members[k]] = static_cast<ElemIdx>(k);
  }
  std::size_t n = members.size();
  std::vector<ElemIdx> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      ElemIdx p = s.product(members[x], members[y]);
      if (local[p] == ElemIdx(-1)) {
        throw std::invalid_argument("subsemigroup: member set not closed");
      }
      table[x * n + y] = local[p];
    }
  }
  return SubSemigroup{FiniteSemigroup(n, std::move(table)), std::move(members)};
}

//! The variant (S, *_u) with x *_u y = x.u.y, on the same element list.
inline FiniteSemigroup variant(FiniteSemigroup const& s, ElemIdx u) {
  if (u >= s.size()) {
    throw std::invalid_argument("variant: element out of range");
  }
  return FiniteSemigroup::from_product(s.size(), [&](ElemIdx x, ElemIdx y) {
    return s.product(s.product(x, u), y);
  });
}

//! The local monoid eSe, for an idempotent e.
inline SubSemigroup local_monoid(FiniteSemigroup const& s, ElemIdx e) {
  if (e >= s.size() || !s.is_idempotent(e)) {
    throw std::invalid_argument("local_monoid: e must be an idempotent");
  }
  std::vector<ElemIdx> members;
  for (ElemIdx t = 0; t < s.size(); ++t) {
    members.push_back(s.product(s.product(e, t), e));
  }
  return subsemigroup(s, std::move(members));
}

// --- stock semigroups ------------------------------------------------------

inline FiniteSemigroup trivial_monoid() {
  return FiniteSemigroup(1, {0});
}

inline FiniteSemigroup cyclic_group(std::uint32_t n) {
  return FiniteSemigroup::from_product(
      n, [n](ElemIdx x, ElemIdx y) { return (x + y) % n; });
}

//! S_n as a permutation table; permutations are enumerated in lexicographic
//! one-line order, composed diagrammatically.
inline FiniteSemigroup symmetric_group(std::uint32_t n) {
  std::vector<std::vector<std::uint8_t>> perms;
  std::vector<std::uint8_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](std::vector<std::uint8_t> const& q) {
    return static_cast<ElemIdx>(
        std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  return FiniteSemigroup::from_product(
      perms.size(), [&](ElemIdx x, ElemIdx y) {
        std::vector<std::uint8_t> q(n);
        for (std::uint32_t t = 0; t < n; ++t) {
          q[t] = perms[y][perms[x][t]];
        }
        return index_of(q);
      });
}

inline FiniteSemigroup rectangular_band(std::uint32_t r, std::uint32_t l) {
  return FiniteSemigroup::from_product(
      std::size_t(r) * l, [l](ElemIdx x, ElemIdx y) {
        return (x / l) * l + (y % l);
      });
}

inline FiniteSemigroup right_zero_band(std::uint32_t n) {
  return FiniteSemigroup::from_product(n, [](ElemIdx, ElemIdx y) { return y; });
}

//! The r x l rectangular group over G: elements (i, g, j) with product
//! (i1,g,j1)(i2,h,j2) = (i1, gh, j2).  Element index is (i*|G|+g)*l + j.
inline FiniteSemigroup rectangular_group(std::uint32_t r, std::uint32_t l,
                                         FiniteSemigroup const& g) {
  std::size_t gn = g.size();
  return FiniteSemigroup::from_product(
      std::size_t(r) * gn * l, [&, l, gn](ElemIdx x, ElemIdx y) {
        ElemIdx i1 = x / (gn * l), g1 = (x / l) % gn;
        ElemIdx g2 = (y / l) % gn, j2 = y % l;
        return static_cast<ElemIdx>((i1 * gn + g.product(g1, g2)) * l + j2);
      });
}

}  // namespace sandwich_kit

#endif  // SANDWICH_KIT_FINITE_SEMIGROUP_HPP_
