#pragma once

// Balls, annuli, translates and greedy separated nets on a finite metric group.
// Balls are open: ball(r) = {g : ||g|| < r}. Annuli are half-open [lo, hi).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "packlab/dense_set.hpp"
#include "packlab/group.hpp"

namespace packlab {

namespace detail {

// Per-axis residue offsets covering an open radius-r box, or the whole axis
// when the box wraps around.
inline std::vector<std::int64_t> box_offsets(std::int64_t modulus, std::int64_t r) {
  std::vector<std::int64_t> out;
  if (r <= 0) return out;
  if (2 * r - 1 >= modulus) {
    for (std::int64_t k = 0; k < modulus; ++k) out.push_back(k);
    return out;
  }
  for (std::int64_t k = -(r - 1); k <= r - 1; ++k) out.push_back((k + modulus) % modulus);
  return out;
}

}  // namespace detail

/// Calls f(index) for every g with ||g - center|| < r.
template <typename F>
void for_each_in_ball(const Group& group, std::size_t center, NormValue r, F&& f) {
  if (r.grid <= 0) return;
  if (group.metric() == MetricKind::kDyadic) {
    const auto dim = static_cast<std::int64_t>(group.dim());
    if (r.grid - 1 >= dim) {
      for (std::size_t i = 0; i < group.order(); ++i) f(i);
      return;
    }
    const std::size_t block = std::size_t{1} << (r.grid - 1);
    const std::size_t base = center & ~(block - 1);
    for (std::size_t i = 0; i < block; ++i) f(base + i);
    return;
  }
  const std::size_t d = group.dim();
  std::vector<std::vector<std::int64_t>> offsets(d);
  for (std::size_t i = 0; i < d; ++i) {
    offsets[i] = detail::box_offsets(group.modulus(i), r.grid);
  }
  std::vector<std::int64_t> base(d);
  for (std::size_t i = 0; i < d; ++i) base[i] = group.coord(center, i);
  std::vector<std::size_t> pos(d, 0);
  while (true) {
    std::size_t index = 0;
    for (std::size_t i = 0; i < d; ++i) {
      const auto m = group.modulus(i);
      index += static_cast<std::size_t>((base[i] + offsets[i][pos[i]]) % m) * group.stride(i);
    }
    f(index);
    std::size_t axis = d;
    while (axis-- > 0) {
      if (++pos[axis] < offsets[axis].size()) break;
      pos[axis] = 0;
    }
    if (axis == static_cast<std::size_t>(-1)) return;
  }
}

inline DenseSet ball(const Group& group, NormValue r) {
  DenseSet out(group);
  for_each_in_ball(group, 0, r, [&](std::size_t i) { out.insert(i); });
  return out;
}

/// {g : ||g|| <= r}.
inline DenseSet closed_ball(const Group& group, NormValue r) {
  return ball(group, NormValue{r.grid + 1});
}

/// {g : lo <= ||g|| < hi}.
inline DenseSet annulus(const Group& group, NormValue lo, NormValue hi) {
  if (hi < lo) throw InputError("annulus needs r_lo <= r_hi");
  DenseSet out(group);
  for (std::size_t i = 0; i < group.order(); ++i) {
    const auto n = group.norm(i);
    if (lo <= n && n < hi) out.insert(i);
  }
  return out;
}

/// g + A.
inline DenseSet translate(const DenseSet& a, std::size_t g) {
  const Group& group = a.group();
  DenseSet out(group);
  a.for_each([&](std::size_t x) { out.insert(group.add(x, g)); });
  return out;
}

inline DenseSet translate(const DenseSet& a, const Elem& g) {
  return translate(a, a.group().index_of(g));
}

/// -A.
inline DenseSet negate_set(const DenseSet& a) {
  const Group& group = a.group();
  DenseSet out(group);
  a.for_each([&](std::size_t x) { out.insert(group.neg(x)); });
  return out;
}

/// A + closed ball(delta): every point within distance delta of A.
inline DenseSet dilate(const DenseSet& a, NormValue delta) {
  const Group& group = a.group();
  if (delta.grid < 0) throw InputError("dilation radius must be >= 0");
  if (a.empty()) return a;
  DenseSet out(group);
  if (group.metric() == MetricKind::kDyadic) {
    if (delta.grid >= static_cast<std::int64_t>(group.dim())) return DenseSet::full(group);
    const std::size_t block = std::size_t{1} << delta.grid;
    for (std::size_t base = 0; base < group.order(); base += block) {
      bool hit = false;
      for (std::size_t i = 0; i < block && !hit; ++i) hit = a.contains(base + i);
      if (hit) {
        for (std::size_t i = 0; i < block; ++i) out.insert(base + i);
      }
    }
    return out;
  }
  // The l-infinity ball is a box, so dilation factors into one cyclic window
  // pass per axis.
  std::vector<std::uint8_t> cur(group.order());
  for (std::size_t i = 0; i < group.order(); ++i) cur[i] = a.contains(i) ? 1 : 0;
  std::vector<std::uint8_t> next(group.order());
  std::vector<std::int64_t> prefix;
  for (std::size_t axis = 0; axis < group.dim(); ++axis) {
    const auto m = group.modulus(axis);
    const std::size_t stride = group.stride(axis);
    const std::size_t block = stride * static_cast<std::size_t>(m);
    const bool wraps = 2 * delta.grid + 1 >= m;
    prefix.assign(static_cast<std::size_t>(2 * m + 1), 0);
    for (std::size_t outer = 0; outer < group.order(); outer += block) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = outer + inner;
        if (wraps) {
          std::uint8_t any = 0;
          for (std::int64_t k = 0; k < m && !any; ++k) any = cur[base + static_cast<std::size_t>(k) * stride];
          for (std::int64_t k = 0; k < m; ++k) next[base + static_cast<std::size_t>(k) * stride] = any;
          continue;
        }
        for (std::int64_t k = 0; k < 2 * m; ++k) {
          prefix[static_cast<std::size_t>(k + 1)] =
              prefix[static_cast<std::size_t>(k)] + cur[base + static_cast<std::size_t>(k % m) * stride];
        }
        for (std::int64_t x = 0; x < m; ++x) {
          // window [x - delta, x + delta] inside the doubled line; 2*delta + 1 < m
          const std::int64_t shift = x < delta.grid ? m : 0;
          const auto lo = static_cast<std::size_t>(x - delta.grid + shift);
          const auto hi = static_cast<std::size_t>(x + delta.grid + shift);
          next[base + static_cast<std::size_t>(x) * stride] = prefix[hi + 1] > prefix[lo] ? 1 : 0;
        }
      }
    }
    std::swap(cur, next);
  }
  for (std::size_t i = 0; i < group.order(); ++i) {
    if (cur[i]) out.insert(i);
  }
  return out;
}

/// Greedy maximal `spacing`-separated subset of `region` containing `seeds`.
///
/// Seeds are taken first; remaining candidates are scanned in ascending
/// canonical index order and kept whenever they are at distance >= spacing from
/// everything kept so far. The result is maximal: every point of the region
/// lies within distance < spacing of some chosen point.
inline DenseSet maximal_separated(const DenseSet& region, NormValue spacing,
                                  const std::vector<std::size_t>& seeds) {
  const Group& group = region.group();
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (seeds[i] >= group.order() || !region.contains(seeds[i])) {
      throw InputError("seed " + std::to_string(seeds[i]) + " is not in the region");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (seeds[i] == seeds[j] || group.distance(seeds[i], seeds[j]) < spacing) {
        throw InputError("seeds " + std::to_string(seeds[j]) + " and " + std::to_string(seeds[i]) +
                         " are closer than the spacing");
      }
    }
  }
  DenseSet chosen(group);
  DenseSet blocked(group);
  auto take = [&](std::size_t p) {
    chosen.insert(p);
    for_each_in_ball(group, p, spacing, [&](std::size_t q) { blocked.insert(q); });
  };
  for (const auto s : seeds) take(s);

  const auto& region_words = region.words();
  for (std::size_t w = 0; w < region_words.size(); ++w) {
    while (true) {
      const std::uint64_t free_bits = region_words[w] & ~blocked.words()[w];
      if (!free_bits) break;
      take(w * 64 + static_cast<std::size_t>(std::countr_zero(free_bits)));
    }
  }
  return chosen;
}

inline DenseSet maximal_separated(const DenseSet& region, NormValue spacing,
                                  const std::vector<Elem>& seeds) {
  std::vector<std::size_t> idx;
  for (const auto& s : seeds) idx.push_back(region.group().index_of(s));
  return maximal_separated(region, spacing, idx);
}

}  // namespace packlab
