// Concrete finite categories: objects carry finite sets (or F2 vector
// spaces), hom-sets are fully enumerated in canonical lexicographic order,
// and composition is diagrammatic (apply x, then y).

#ifndef SANDWICH_KIT_CORE_HPP_
#define SANDWICH_KIT_CORE_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sandwich_kit {

using ObjectId = std::uint32_t;

//! Thrown when a construction or computation would exceed a size budget.
struct budget_error : std::runtime_error {
  explicit budget_error(std::string const& what) : std::runtime_error(what) {}
};

//! The four catalog kinds of concrete category.
enum class Kind : std::uint8_t { fullmap, partialmap, injpartial, matf2 };

inline std::string kind_name(Kind k) {
  switch (k) {
    case Kind::fullmap: return "fullmap";
    case Kind::partialmap: return "partialmap";
    case Kind::injpartial: return "injpartial";
    case Kind::matf2: return "matf2";
  }
  return "?";
}

inline Kind kind_from_name(std::string const& s) {
  for (Kind k : {Kind::fullmap, Kind::partialmap, Kind::injpartial, Kind::matf2}) {
    if (kind_name(k) == s) {
      return k;
    }
  }
  throw std::invalid_argument("unknown category kind: " + s);
}

inline constexpr std::array<Kind, 4> catalog_kinds
    = {Kind::fullmap, Kind::partialmap, Kind::injpartial, Kind::matf2};

//! A concrete arrow, with source and target objects and a canonical payload.
//!
//! Payload encoding, for src of size m and dst of size n:
//!   - fullmap:    length m, entries in 1..n; entry t is the image of point t+1,
//!   - partialmap: length m, entries in 0..n, with 0 meaning undefined,
//!   - injpartial: a partial map whose nonzero entries are pairwise distinct,
//!   - matf2:      length m*n of 0/1 bits, row-major (an m-by-n matrix).
struct Morphism {
  ObjectId src = 0;
  ObjectId dst = 0;
  std::vector<std::uint8_t> payload;

  friend bool operator==(Morphism const& a, Morphism const& b) {
    return a.src == b.src && a.dst == b.dst && a.payload == b.payload;
  }
  friend bool operator!=(Morphism const& a, Morphism const& b) {
    return !(a == b);
  }
};

struct MorphismHash {
  std::size_t operator()(Morphism const& m) const {
    std::size_t h = std::hash<std::uint64_t>{}(
        (std::uint64_t(m.src) << 32) | m.dst);
    for (auto v : m.payload) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

namespace detail {

  inline std::uint64_t pow_u64(std::uint64_t base, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) {
      r *= base;
    }
    return r;
  }

  inline std::uint64_t binomial(std::uint32_t n, std::uint32_t k) {
    if (k > n) {
      return 0;
    }
    std::uint64_t r = 1;
    for (std::uint32_t t = 0; t < k; ++t) {
      r = r * (n - t) / (t + 1);
    }
    return r;
  }

  inline bool injective_payload(std::vector<std::uint8_t> const& p) {
    std::array<bool, 256> seen{};
    for (auto v : p) {
      if (v == 0) {
        continue;
      }
      if (seen[v]) {
        return false;
      }
      seen[v] = true;
    }
    return true;
  }

}  // namespace detail

//! Closed-form hom-set cardinality for a kind, src size m, dst size n.
inline std::uint64_t homset_cardinality(Kind k, std::uint32_t m, std::uint32_t n) {
  switch (k) {
    case Kind::fullmap: return detail::pow_u64(n, m);
    case Kind::partialmap: return detail::pow_u64(n + 1, m);
    case Kind::injpartial: {
      std::uint64_t total = 0;
      for (std::uint32_t t = 0; t <= std::min(m, n); ++t) {
        std::uint64_t perms = 1;
        for (std::uint32_t s = 0; s < t; ++s) {
          perms *= (s + 1);
        }
        total += detail::binomial(m, t) * detail::binomial(n, t) * perms;
      }
      return total;
    }
    case Kind::matf2: return detail::pow_u64(2, m * n);
  }
  return 0;
}

//! A finite category of one catalog kind: an object list and every hom-set
//! enumerated in canonical (lexicographic payload) order.
//!
//! Instances are immutable after construction and safe to share across
//! threads; every operation is pure.
class Category {
 public:
  Category(Kind k, std::vector<std::uint32_t> sizes, bool unsafe_sizes = false)
      : kind_(k), sizes_(std::move(sizes)) {
    if (sizes_.empty()) {
      throw std::invalid_argument("category needs at least one object");
    }
    std::uint32_t cap = (kind_ == Kind::matf2) ? 3 : 4;
    for (auto s : sizes_) {
      if (s == 0) {
        throw std::invalid_argument("object sizes must be positive");
      }
      if (s > cap && !unsafe_sizes) {
        throw budget_error("object size " + std::to_string(s) + " exceeds the "
                           + kind_name(kind_) + " cap of " + std::to_string(cap));
      }
    }
    std::uint32_t n = object_count();
    homsets_.resize(std::size_t(n) * n);
    offsets_.resize(std::size_t(n) * n);
    std::uint32_t off = 0;
    for (ObjectId i = 0; i < n; ++i) {
      for (ObjectId j = 0; j < n; ++j) {
        auto& hs = homsets_[std::size_t(i) * n + j];
        enumerate_homset(i, j, hs);
        offsets_[std::size_t(i) * n + j] = off;
        off += static_cast<std::uint32_t>(hs.size());
      }
    }
    total_ = off;
  }

  Kind kind() const { return kind_; }
  std::uint32_t object_count() const {
    return static_cast<std::uint32_t>(sizes_.size());
  }
  std::uint32_t object_size(ObjectId i) const { return sizes_.at(i); }
  std::vector<std::uint32_t> const& sizes() const { return sizes_; }

  std::vector<Morphism> const& homset(ObjectId i, ObjectId j) const {
    return homsets_[std::size_t(i) * object_count() + j];
  }
  std::uint32_t homset_size(ObjectId i, ObjectId j) const {
    return static_cast<std::uint32_t>(homset(i, j).size());
  }
  std::size_t total_morphisms() const { return total_; }

  //! Base of hom(i, j) in the global morphism index space.
  std::uint32_t offset(ObjectId i, ObjectId j) const {
    return offsets_[std::size_t(i) * object_count() + j];
  }
  std::uint32_t global_index(ObjectId i, ObjectId j, std::uint32_t idx) const {
    return offset(i, j) + idx;
  }
  Morphism const& at(ObjectId i, ObjectId j, std::uint32_t idx) const {
    return homset(i, j)[idx];
  }

  //! Diagrammatic composite: x first, then y.  Requires x.dst == y.src.
  Morphism compose(Morphism const& x, Morphism const& y) const {
    if (x.dst != y.src) {
      throw std::invalid_argument("compose: domain mismatch (x.dst != y.src)");
    }
    Morphism z;
    z.src = x.src;
    z.dst = y.dst;
    if (kind_ == Kind::matf2) {
      std::uint32_t m = sizes_[x.src], k = sizes_[x.dst], n = sizes_[y.dst];
      z.payload.assign(std::size_t(m) * n, 0);
      for (std::uint32_t r = 0; r < m; ++r) {
        for (std::uint32_t c = 0; c < n; ++c) {
          std::uint8_t bit = 0;
          for (std::uint32_t t = 0; t < k; ++t) {
            bit ^= x.payload[std::size_t(r) * k + t] & y.payload[std::size_t(t) * n + c];
          }
          z.payload[std::size_t(r) * n + c] = bit;
        }
      }
    } else {
      z.payload.resize(x.payload.size());
      for (std::size_t t = 0; t < x.payload.size(); ++t) {
        auto v = x.payload[t];
        z.payload[t] = (v == 0) ? 0 : y.payload[v - 1];
      }
    }
    return z;
  }

  //! Index-level composite: x in hom(i, j), y in hom(j, k); returns the
  //! index of x . y in hom(i, k).
  std::uint32_t compose_idx(ObjectId i, ObjectId j, ObjectId k,
                            std::uint32_t x, std::uint32_t y) const {
    return index_of(compose(at(i, j, x), at(j, k, y)));
  }

  Morphism identity(ObjectId i) const {
    Morphism e;
    e.src = e.dst = i;
    std::uint32_t n = sizes_[i];
    if (kind_ == Kind::matf2) {
      e.payload.assign(std::size_t(n) * n, 0);
      for (std::uint32_t t = 0; t < n; ++t) {
        e.payload[std::size_t(t) * n + t] = 1;
      }
    } else {
      e.payload.resize(n);
      for (std::uint32_t t = 0; t < n; ++t) {
        e.payload[t] = static_cast<std::uint8_t>(t + 1);
      }
    }
    return e;
  }

  std::uint32_t identity_idx(ObjectId i) const { return index_of(identity(i)); }

  //! Local index of a morphism within its hom-set.
  std::uint32_t index_of(Morphism const& m) const {
    std::uint32_t n = sizes_[m.dst];
    switch (kind_) {
      case Kind::fullmap: {
        std::uint64_t idx = 0;
        for (auto v : m.payload) {
          idx = idx * n + (v - 1);
        }
        return static_cast<std::uint32_t>(idx);
      }
      case Kind::partialmap: {
        std::uint64_t idx = 0;
        for (auto v : m.payload) {
          idx = idx * (n + 1) + v;
        }
        return static_cast<std::uint32_t>(idx);
      }
      case Kind::matf2: {
        std::uint64_t idx = 0;
        for (auto v : m.payload) {
          idx = (idx << 1) | v;
        }
        return static_cast<std::uint32_t>(idx);
      }
      case Kind::injpartial: {
        auto const& hs = homset(m.src, m.dst);
        auto it = std::lower_bound(hs.begin(), hs.end(), m,
                                   [](Morphism const& a, Morphism const& b) {
                                     return a.payload < b.payload;
                                   });
        if (it == hs.end() || !(*it == m)) {
          throw std::invalid_argument("index_of: morphism not in hom-set");
        }
        return static_cast<std::uint32_t>(it - hs.begin());
      }
    }
    throw std::logic_error("index_of: bad kind");
  }

  //! True iff some y in hom(x.dst, x.src) satisfies x = x.y.x.
  bool is_regular(Morphism const& x) const {
    for (auto const& y : homset(x.dst, x.src)) {
      if (compose(compose(x, y), x) == x) {
        return true;
      }
    }
    return false;
  }

  //! V(x): all y with x = x.y.x and y = y.x.y.
  std::vector<Morphism> inverses(Morphism const& x) const {
    std::vector<Morphism> out;
    for (auto const& y : homset(x.dst, x.src)) {
      if (compose(compose(x, y), x) == x && compose(compose(y, x), y) == y) {
        out.push_back(y);
      }
    }
    return out;
  }

  //! Structural sanity check on a (possibly deserialized) morphism.
  bool valid(Morphism const& m) const {
    if (m.src >= object_count() || m.dst >= object_count()) {
      return false;
    }
    std::uint32_t ms = sizes_[m.src], ns = sizes_[m.dst];
    if (kind_ == Kind::matf2) {
      if (m.payload.size() != std::size_t(ms) * ns) {
        return false;
      }
      return std::all_of(m.payload.begin(), m.payload.end(),
                         [](std::uint8_t v) { return v <= 1; });
    }
    if (m.payload.size() != ms) {
      return false;
    }
    for (auto v : m.payload) {
      if (v > ns || (v == 0 && kind_ == Kind::fullmap)) {
        return false;
      }
    }
    return kind_ != Kind::injpartial || detail::injective_payload(m.payload);
  }

 private:
  void enumerate_homset(ObjectId i, ObjectId j, std::vector<Morphism>& out) const {
    std::uint32_t m = sizes_[i], n = sizes_[j];
    std::size_t len = (kind_ == Kind::matf2) ? std::size_t(m) * n : m;
    std::uint8_t lo = (kind_ == Kind::fullmap) ? 1 : 0;
    std::uint8_t hi = (kind_ == Kind::matf2) ? 1 : static_cast<std::uint8_t>(n);
    out.reserve(homset_cardinality(kind_, m, n));
    std::vector<std::uint8_t> p(len, lo);
    for (;;) {
      if (kind_ != Kind::injpartial || detail::injective_payload(p)) {
        out.push_back(Morphism{i, j, p});
      }
      std::size_t t = len;
      while (t > 0 && p[t - 1] == hi) {
        p[--t] = lo;
      }
      if (t == 0) {
        break;
      }
      ++p[t - 1];
    }
  }

  Kind kind_;
  std::vector<std::uint32_t> sizes_;
  std::vector<std::vector<Morphism>> homsets_;
  std::vector<std::uint32_t> offsets_;
  std::size_t total_ = 0;
};

//! Builds a catalog category, enforcing the default size caps
//! (4 for map kinds, 3 for matf2) unless unsafe_sizes is set.
inline Category build_category(Kind kind, std::vector<std::uint32_t> sizes,
                               bool unsafe_sizes = false) {
  return Category(kind, std::move(sizes), unsafe_sizes);
}

}  // namespace sandwich_kit

#endif  // SANDWICH_KIT_CORE_HPP_
