#pragma once

// Finite Abelian groups with an invariant integer-valued metric.
//
// Two families are modelled:
//   * products of cyclic groups Z_m1 x ... x Z_mk with the l-infinity norm of
//     per-coordinate circle distances (norms are in grid units);
//   * dyadic cubes Z_2^k with the ultrametric ||x|| = 2^-j, j = first nonzero
//     coordinate.
//
// Elements are addressed by a canonical mixed-radix index: coordinate 0 is the
// most significant digit, the last coordinate varies fastest. Every module uses
// this order, so an index is a stable name for an element.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "packlab/error.hpp"

namespace packlab {

enum class MetricKind { kCyclic, kDyadic };

/// Default refusal threshold for groups that must be enumerated element by element.
inline constexpr std::size_t kDefaultSizeGuard = std::size_t{1} << 30;

struct GroupSpec {
  std::vector<std::int64_t> moduli;
  MetricKind metric = MetricKind::kCyclic;

  bool operator==(const GroupSpec&) const = default;
};

struct Elem {
  std::vector<std::int64_t> coords;

  bool operator==(const Elem&) const = default;
};

/// A norm value on an integer scale that is monotone in the true norm.
///
/// Cyclic groups: the l-infinity norm in grid units.
/// Dyadic cubes: `dim - j` where ||x|| = 2^-j, so the identity (j = +inf, stored
/// as j = dim) maps to 0 and ||x|| = 1 maps to `dim`. Use Group::dyadic_level to
/// read j back. Balls and annuli compare on this scale in both cases.
struct NormValue {
  std::int64_t grid = 0;

  auto operator<=>(const NormValue&) const = default;
};

class Group {
 public:
  explicit Group(GroupSpec spec, std::size_t size_guard = kDefaultSizeGuard)
      : spec_(std::move(spec)) {
    if (spec_.moduli.empty()) throw InputError("group needs at least one cyclic factor");
    order_ = 1;
    for (const auto m : spec_.moduli) {
      if (m < 2) throw InputError("cyclic factor orders must be >= 2, got " + std::to_string(m));
      if (spec_.metric == MetricKind::kDyadic && m != 2) {
        throw InputError("dyadic ultrametric requires every modulus to be 2");
      }
      if (order_ > size_guard / static_cast<std::size_t>(m)) {
        throw SizeGuardError("group order exceeds size guard of " + std::to_string(size_guard) +
                             " elements");
      }
      order_ *= static_cast<std::size_t>(m);
    }
    strides_.assign(spec_.moduli.size(), 1);
    for (std::size_t i = spec_.moduli.size() - 1; i-- > 0;) {
      strides_[i] = strides_[i + 1] * static_cast<std::size_t>(spec_.moduli[i + 1]);
    }
  }

  static Group cyclic(std::vector<std::int64_t> moduli, std::size_t size_guard = kDefaultSizeGuard) {
    return Group(GroupSpec{std::move(moduli), MetricKind::kCyclic}, size_guard);
  }

  static Group dyadic(int dim, std::size_t size_guard = kDefaultSizeGuard) {
    if (dim < 1) throw InputError("dyadic cube dimension must be >= 1");
    return Group(GroupSpec{std::vector<std::int64_t>(static_cast<std::size_t>(dim), 2),
                           MetricKind::kDyadic},
                 size_guard);
  }

  const GroupSpec& spec() const { return spec_; }
  MetricKind metric() const { return spec_.metric; }
  std::size_t order() const { return order_; }
  std::size_t dim() const { return spec_.moduli.size(); }
  std::int64_t modulus(std::size_t axis) const { return spec_.moduli[axis]; }
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }

  bool operator==(const Group& other) const { return spec_ == other.spec_; }

  std::int64_t coord(std::size_t index, std::size_t axis) const {
    return static_cast<std::int64_t>((index / strides_[axis]) %
                                     static_cast<std::size_t>(spec_.moduli[axis]));
  }

  std::size_t index_of(const Elem& g) const {
    if (g.coords.size() != dim()) {
      throw InputError("element has " + std::to_string(g.coords.size()) +
                       " coordinates, group has " + std::to_string(dim()));
    }
    std::size_t index = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      const auto c = g.coords[i];
      if (c < 0 || c >= spec_.moduli[i]) {
        throw InputError("coordinate " + std::to_string(c) + " out of range for Z_" +
                         std::to_string(spec_.moduli[i]));
      }
      index += static_cast<std::size_t>(c) * strides_[i];
    }
    return index;
  }

  Elem elem_at(std::size_t index) const {
    Elem g;
    g.coords.resize(dim());
    for (std::size_t i = 0; i < dim(); ++i) g.coords[i] = coord(index, i);
    return g;
  }

  std::size_t add(std::size_t a, std::size_t b) const {
    if (spec_.metric == MetricKind::kDyadic) return a ^ b;
    if (dim() == 1) {
      const std::size_t s = a + b;
      return s >= order_ ? s - order_ : s;
    }
    std::size_t out = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      const auto m = static_cast<std::size_t>(spec_.moduli[i]);
      std::size_t s = static_cast<std::size_t>(coord(a, i) + coord(b, i));
      if (s >= m) s -= m;
      out += s * strides_[i];
    }
    return out;
  }

  std::size_t neg(std::size_t a) const {
    if (spec_.metric == MetricKind::kDyadic) return a;
    if (dim() == 1) return a == 0 ? 0 : order_ - a;
    std::size_t out = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      const auto m = spec_.moduli[i];
      const auto c = coord(a, i);
      out += static_cast<std::size_t>(c == 0 ? 0 : m - c) * strides_[i];
    }
    return out;
  }

  std::size_t sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }

  Elem add(const Elem& g, const Elem& h) const { return elem_at(add(index_of(g), index_of(h))); }
  Elem neg(const Elem& g) const { return elem_at(neg(index_of(g))); }

  NormValue norm(std::size_t index) const {
    if (spec_.metric == MetricKind::kDyadic) {
      return NormValue{static_cast<std::int64_t>(std::bit_width(index))};
    }
    if (dim() == 1) {
      const auto x = static_cast<std::int64_t>(index);
      return NormValue{std::min(x, static_cast<std::int64_t>(order_) - x)};
    }
    std::int64_t best = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      const auto c = coord(index, i);
      best = std::max(best, std::min(c, spec_.moduli[i] - c));
    }
    return NormValue{best};
  }

  NormValue norm(const Elem& g) const { return norm(index_of(g)); }

  NormValue distance(std::size_t a, std::size_t b) const { return norm(sub(a, b)); }

  /// Largest norm attained by any element.
  NormValue diameter() const {
    if (spec_.metric == MetricKind::kDyadic) return NormValue{static_cast<std::int64_t>(dim())};
    std::int64_t best = 0;
    for (const auto m : spec_.moduli) best = std::max(best, m / 2);
    return NormValue{best};
  }

  /// For dyadic cubes: the level j with ||x|| = 2^-j; the identity reports `dim`.
  int dyadic_level(NormValue v) const { return static_cast<int>(dim()) - static_cast<int>(v.grid); }
  NormValue from_dyadic_level(int level) const {
    return NormValue{static_cast<std::int64_t>(dim()) - level};
  }

  std::string to_string() const {
    if (spec_.metric == MetricKind::kDyadic) return "Z2^" + std::to_string(dim());
    std::string s = "Z:";
    for (std::size_t i = 0; i < dim(); ++i) {
      if (i) s += 'x';
      s += std::to_string(spec_.moduli[i]);
    }
    return s;
  }

 private:
  GroupSpec spec_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 0;
};

}  // namespace packlab
