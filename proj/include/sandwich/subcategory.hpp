// Partial subsemigroups of a category: a subset of every hom-set, closed
// under composition.  Used for the inheritance checks and for synthetic
// non-regular fixtures (catalog categories are all regular).

#ifndef SANDWICH_KIT_SUBCATEGORY_HPP_
#define SANDWICH_KIT_SUBCATEGORY_HPP_

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "core.hpp"
#include "green.hpp"

namespace sandwich_kit {

//! A handle into a subcategory: hom-set (i, j) plus the parent-local index.
struct SubElem {
  ObjectId i = 0;
  ObjectId j = 0;
  std::uint32_t idx = 0;

  friend bool operator==(SubElem const& a, SubElem const& b) {
    return a.i == b.i && a.j == b.j && a.idx == b.idx;
  }
  friend bool operator<(SubElem const& a, SubElem const& b) {
    return std::tie(a.i, a.j, a.idx) < std::tie(b.i, b.j, b.idx);
  }
};

class Subcategory {
 public:
  Subcategory(Category const& parent,
              std::vector<std::vector<std::uint32_t>> members)
      : parent_(&parent), members_(std::move(members)) {
    std::uint32_t n = parent.object_count();
    if (members_.size() != std::size_t(n) * n) {
      throw std::invalid_argument("subcategory: wrong number of hom-subsets");
    }
    offsets_.assign(members_.size() + 1, 0);
    for (std::size_t h = 0; h < members_.size(); ++h) {
      auto& v = members_[h];
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      offsets_[h + 1] = offsets_[h] + static_cast<std::uint32_t>(v.size());
    }
    if (!closed()) {
      throw std::invalid_argument("subcategory: not closed under composition");
    }
  }

  static Subcategory full(Category const& c) {
    std::uint32_t n = c.object_count();
    std::vector<std::vector<std::uint32_t>> mem(std::size_t(n) * n);
    for (ObjectId i = 0; i < n; ++i) {
      for (ObjectId j = 0; j < n; ++j) {
        auto& v = mem[std::size_t(i) * n + j];
        v.resize(c.homset_size(i, j));
        std::iota(v.begin(), v.end(), 0);
      }
    }
    return Subcategory(c, std::move(mem));
  }

  //! All morphisms satisfying a predicate, then verified closed.
  template <typename Pred>
  static Subcategory where(Category const& c, Pred&& keep) {
    std::uint32_t n = c.object_count();
    std::vector<std::vector<std::uint32_t>> mem(std::size_t(n) * n);
    for (ObjectId i = 0; i < n; ++i) {
      for (ObjectId j = 0; j < n; ++j) {
        for (std::uint32_t t = 0; t < c.homset_size(i, j); ++t) {
          if (keep(c.at(i, j, t))) {
            mem[std::size_t(i) * n + j].push_back(t);
          }
        }
      }
    }
    return Subcategory(c, std::move(mem));
  }

  //! Closure of a seed set under composition.
  static Subcategory generated(Category const& c, std::vector<SubElem> seeds) {
    std::uint32_t n = c.object_count();
    std::vector<std::vector<char>> in(std::size_t(n) * n);
    for (ObjectId i = 0; i < n; ++i) {
      for (ObjectId j = 0; j < n; ++j) {
        in[std::size_t(i) * n + j].assign(c.homset_size(i, j), 0);
      }
    }
    std::vector<SubElem> frontier;
    for (auto const& e : seeds) {
      if (!in[std::size_t(e.i) * n + e.j][e.idx]) {
        in[std::size_t(e.i) * n + e.j][e.idx] = 1;
        frontier.push_back(e);
      }
    }
    std::vector<SubElem> all = frontier;
    while (!frontier.empty()) {
      std::vector<SubElem> next;
      for (auto const& x : frontier) {
        for (auto const& y : all) {
          if (x.j == y.i) {
            std::uint32_t p = c.compose_idx(x.i, x.j, y.j, x.idx, y.idx);
            if (!in[std::size_t(x.i) * n + y.j][p]) {
              in[std::size_t(x.i) * n + y.j][p] = 1;
              next.push_back({x.i, y.j, p});
            }
          }
          if (y.j == x.i) {
            std::uint32_t p = c.compose_idx(y.i, y.j, x.j, y.idx, x.idx);
            if (!in[std::size_t(y.i) * n + x.j][p]) {
              in[std::size_t(y.i) * n + x.j][p] = 1;
              next.push_back({y.i, x.j, p});
            }
          }
        }
      }
      for (auto const& e : next) {
        all.push_back(e);
      }
      frontier = std::move(next);
    }
    std::vector<std::vector<std::uint32_t>> mem(std::size_t(n) * n);
    for (ObjectId i = 0; i < n; ++i) {
      for (ObjectId j = 0; j < n; ++j) {
        for (std::uint32_t t = 0; t < c.homset_size(i, j); ++t) {
          if (in[std::size_t(i) * n + j][t]) {
            mem[std::size_t(i) * n + j].push_back(t);
          }
        }
      }
    }
    return Subcategory(c, std::move(mem));
  }

  Category const& parent() const { return *parent_; }

  std::vector<std::uint32_t> const& members(ObjectId i, ObjectId j) const {
    return members_[std::size_t(i) * parent_->object_count() + j];
  }

  bool contains(ObjectId i, ObjectId j, std::uint32_t idx) const {
    auto const& v = members(i, j);
    return std::binary_search(v.begin(), v.end(), idx);
  }

  std::size_t size() const { return offsets_.back(); }

  //! Position of a member in the subcategory's own 0..size()-1 index space.
  ElemIdx sub_index(ObjectId i, ObjectId j, std::uint32_t idx) const {
    auto const& v = members(i, j);
    auto it = std::lower_bound(v.begin(), v.end(), idx);
    if (it == v.end() || *it != idx) {
      throw std::invalid_argument("subcategory: element not a member");
    }
    return offsets_[std::size_t(i) * parent_->object_count() + j]
           + static_cast<ElemIdx>(it - v.begin());
  }

  SubElem element(ElemIdx sub_idx) const {
    std::uint32_t n = parent_->object_count();
    for (std::size_t h = 0; h < members_.size(); ++h) {
      if (sub_idx < offsets_[h + 1]) {
        return SubElem{static_cast<ObjectId>(h / n),
                       static_cast<ObjectId>(h % n),
                       members_[h][sub_idx - offsets_[h]]};
      }
    }
    throw std::invalid_argument("subcategory: index out of range");
  }

  //! Green's data on the subcategory's own element space.
  GreenData green(GreenOptions const& opts = {}) const {
    auto const& c = *parent_;
    std::uint32_t n = c.object_count();
    auto right = [&](ElemIdx yg, auto emit) {
      SubElem y = element(yg);
      for (ObjectId k = 0; k < n; ++k) {
        for (auto u : members(y.j, k)) {
          emit(sub_index(y.i, k, c.compose_idx(y.i, y.j, k, y.idx, u)));
        }
      }
    };
    auto left = [&](ElemIdx yg, auto emit) {
      SubElem y = element(yg);
      for (ObjectId k = 0; k < n; ++k) {
        for (auto u : members(k, y.i)) {
          emit(sub_index(k, y.j, c.compose_idx(k, y.i, y.j, u, y.idx)));
        }
      }
    };
    auto idem = [&](ElemIdx xg) {
      SubElem x = element(xg);
      return x.i == x.j && c.compose_idx(x.i, x.i, x.i, x.idx, x.idx) == x.idx;
    };
    return green_from_products(size(), right, left, idem, opts);
  }

  //! Regularity of a member within the subcategory.
  bool is_regular_element(SubElem const& x) const {
    auto const& c = *parent_;
    for (auto y : members(x.j, x.i)) {
      std::uint32_t xy = c.compose_idx(x.i, x.j, x.i, x.idx, y);
      if (c.compose_idx(x.i, x.i, x.j, xy, x.idx) == x.idx) {
        return true;
      }
    }
    return false;
  }

  bool is_regular() const {
    for (ElemIdx t = 0; t < size(); ++t) {
      if (!is_regular_element(element(t))) {
        return false;
      }
    }
    return true;
  }

 private:
  bool closed() const {
    auto const& c = *parent_;
    std::uint32_t n = c.object_count();
    for (ObjectId i = 0; i < n; ++i) {
      for (ObjectId j = 0; j < n; ++j) {
        for (auto x : members(i, j)) {
          for (ObjectId k = 0; k < n; ++k) {
            for (auto y : members(j, k)) {
              if (!contains(i, k, c.compose_idx(i, j, k, x, y))) {
                return false;
              }
            }
          }
        }
      }
    }
    return true;
  }

  Category const* parent_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::vector<std::uint32_t> offsets_;
};

}  // namespace sandwich_kit

#endif  // SANDWICH_KIT_SUBCATEGORY_HPP_
