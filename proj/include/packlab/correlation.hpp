#pragma once

// Translate-intersection tables and the set algebra built on them: difference
// sets, sumsets, period subgroups, coverage, and the counting / neighborhood
// upper bounds for packing indices.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "packlab/dense_set.hpp"
#include "packlab/error.hpp"
#include "packlab/group.hpp"
#include "packlab/metric_sets.hpp"
#include "packlab/parallel.hpp"
#include "packlab/transform.hpp"

namespace packlab {

enum class CorrMethod { kAuto, kNaive, kTransform };

/// Refusal threshold for naive correlation, in |A| * |B| pair visits.
inline constexpr std::uint64_t kNaiveWorkGuard = std::uint64_t{1} << 34;

/// values[g] = |A ∩ (g + B)| for every g, in canonical index order.
struct CorrTable {
  Group group;
  std::vector<std::int64_t> values;

  std::int64_t sum() const {
    std::int64_t s = 0;
    for (const auto v : values) s += v;
    return s;
  }
  std::size_t argmin() const {
    return static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  }
  std::size_t argmax() const {
    return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  }
  std::int64_t min() const { return values[argmin()]; }
  std::int64_t max() const { return values[argmax()]; }

  /// {g : values[g] > 0}.
  DenseSet support() const {
    DenseSet out(group);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] > 0) out.insert(i);
    }
    return out;
  }
};

namespace detail {

// |A ∩ (g + B)| by direct membership tests.
inline std::int64_t count_at(const DenseSet& a, const DenseSet& b, std::size_t g) {
  const Group& group = a.group();
  std::int64_t n = 0;
  b.for_each([&](std::size_t x) { n += a.contains(group.add(g, x)) ? 1 : 0; });
  return n;
}

inline CorrTable naive_correlation(const DenseSet& a, const DenseSet& b) {
  const Group& group = a.group();
  const auto work = static_cast<std::uint64_t>(a.size()) * b.size();
  if (work > kNaiveWorkGuard) {
    throw SizeGuardError("naive correlation would visit " + std::to_string(work) +
                         " pairs; use the transform method");
  }
  const auto av = a.indices();
  const auto bv = b.indices();
  const std::size_t n = group.order();
  // Thread-local tables are summed at the end; integer addition keeps the
  // result independent of the partition.
  std::size_t workers = std::min(worker_count(), std::max<std::size_t>(1, (std::size_t{1} << 26) / n));
  if (work < (std::uint64_t{1} << 16)) workers = 1;
  std::vector<std::vector<std::int64_t>> partial(std::max<std::size_t>(1, std::min(workers, av.size())),
                                                 std::vector<std::int64_t>(n, 0));
  parallel_chunks(av.size(), partial.size(), [&](std::size_t w, std::size_t begin, std::size_t end) {
    auto& table = partial[w];
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto y : bv) ++table[group.sub(av[i], y)];
    }
  });
  CorrTable out{group, std::move(partial[0])};
  for (std::size_t w = 1; w < partial.size(); ++w) {
    for (std::size_t i = 0; i < n; ++i) out.values[i] += partial[w][i];
  }
  return out;
}

inline CorrTable transform_correlation(const DenseSet& a, const DenseSet& b) {
  const Group& group = a.group();
  CorrTable out{group, group.metric() == MetricKind::kDyadic ? xor_correlation(a, b)
                                                             : fft_correlation(a, b)};
  // Sampled cross-check against direct counting, plus the double-counting identity.
  std::mt19937_64 rng(0x5eedULL ^ group.order());
  std::uniform_int_distribution<std::size_t> pick(0, group.order() - 1);
  for (int k = 0; k < 64; ++k) {
    const std::size_t g = k == 0 ? 0 : pick(rng);
    const auto direct = count_at(a, b, g);
    if (direct != out.values[g]) {
      throw VerificationError("transform correlation disagrees with direct count at index " +
                              std::to_string(g) + ": " + std::to_string(out.values[g]) + " vs " +
                              std::to_string(direct));
    }
  }
  if (out.sum() != static_cast<std::int64_t>(a.size() * b.size())) {
    throw VerificationError("transform correlation violates sum = |A||B|");
  }
  return out;
}

inline bool prefer_naive(const DenseSet& a, const DenseSet& b) {
  const double n = static_cast<double>(a.universe());
  const double pairs = static_cast<double>(a.size()) * static_cast<double>(b.size());
  return pairs <= 8.0 * n * std::max(1.0, std::log2(n));
}

inline void require_nonempty(const DenseSet& a, const char* op) {
  if (a.empty()) throw InputError(std::string(op) + " needs a nonempty set");
}

}  // namespace detail

inline CorrTable cross_correlation(const DenseSet& a, const DenseSet& b,
                                   CorrMethod method = CorrMethod::kAuto) {
  a.check_same(b);
  if (method == CorrMethod::kAuto) {
    method = detail::prefer_naive(a, b) ? CorrMethod::kNaive : CorrMethod::kTransform;
  }
  if (method == CorrMethod::kNaive) return detail::naive_correlation(a, b);
  return detail::transform_correlation(a, b);
}

inline CorrTable autocorrelation(const DenseSet& a, CorrMethod method = CorrMethod::kAuto) {
  return cross_correlation(a, a, method);
}

/// A - A.
inline DenseSet difference_set(const DenseSet& a) {
  detail::require_nonempty(a, "difference_set");
  const Group& group = a.group();
  if (!detail::prefer_naive(a, a)) return autocorrelation(a, CorrMethod::kTransform).support();
  DenseSet out(group);
  const auto av = a.indices();
  for (const auto x : av) {
    for (const auto y : av) out.insert(group.sub(x, y));
  }
#ifndef NDEBUG
  if (av.size() * av.size() <= (std::size_t{1} << 20) &&
      !(out == autocorrelation(a, CorrMethod::kNaive).support())) {
    throw VerificationError("difference set differs from autocorrelation support");
  }
#endif
  return out;
}

/// A + B.
inline DenseSet sumset(const DenseSet& a, const DenseSet& b) {
  a.check_same(b);
  const Group& group = a.group();
  if (a.empty() || b.empty()) return DenseSet(group);
  if (!detail::prefer_naive(a, b)) {
    return cross_correlation(a, negate_set(b), CorrMethod::kTransform).support();
  }
  DenseSet out(group);
  const auto bv = b.indices();
  a.for_each([&](std::size_t x) {
    for (const auto y : bv) out.insert(group.add(x, y));
  });
  return out;
}

/// Per(A) = {g : g + A = A}. A translate meets A in |A| points exactly when it
/// equals A, so the period subgroup is read off the autocorrelation table.
inline DenseSet period_subgroup(const DenseSet& a) {
  detail::require_nonempty(a, "period_subgroup");
  const auto table = autocorrelation(a);
  const auto full = static_cast<std::int64_t>(a.size());
  DenseSet out(a.group());
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    if (table.values[i] == full) out.insert(i);
  }
  return out;
}

/// True iff every point of G is within distance <= delta of A.
inline bool covers(const DenseSet& a, NormValue delta) {
  if (a.empty()) return false;
  if (delta.grid <= 0) return a.is_full();
  return dilate(a, delta).is_full();
}

/// floor(|G| / |A|): disjoint translates of A fit into |G| points.
inline std::size_t counting_bound(const DenseSet& a) {
  detail::require_nonempty(a, "counting_bound");
  return a.universe() / a.size();
}

/// Largest r with ball(r) ⊆ A - A. Always >= 1; diameter + 1 when A - A = G.
inline NormValue neighborhood_radius(const DenseSet& a) {
  const auto diff = difference_set(a);
  const Group& group = a.group();
  NormValue r{group.diameter().grid + 1};
  for (std::size_t i = 0; i < group.order(); ++i) {
    if (!diff.contains(i)) r = std::min(r, group.norm(i));
  }
  return r;
}

/// Upper bound on the size of any r-separated subset of G.
///
/// One cyclic factor: floor(m / r), attained by the greedy net. Dyadic cubes:
/// the number of cosets of the ball(r) subgroup. Cyclic products: the smaller of
/// a fibre bound (each line along one axis holds at most floor(m_i / r) points)
/// and a volume bound (open balls of radius ceil(r / 2) around the points are
/// disjoint). Greedy nets are not maximum in l-infinity products, e.g. Z_5 x Z_5
/// at r = 2 holds 5 separated points while the greedy net has 4.
inline std::size_t separated_set_bound(const Group& group, NormValue r) {
  const std::size_t n = group.order();
  if (r.grid <= 1) return n;
  if (group.metric() == MetricKind::kDyadic) {
    const auto shift = std::min<std::int64_t>(r.grid - 1, static_cast<std::int64_t>(group.dim()));
    return n >> shift;
  }
  std::size_t best = n;
  for (std::size_t i = 0; i < group.dim(); ++i) {
    const auto m = static_cast<std::size_t>(group.modulus(i));
    const auto per_line = std::max<std::size_t>(1, m / static_cast<std::size_t>(r.grid));
    best = std::min(best, per_line * (n / m));
  }
  std::size_t vol = 1;
  const std::int64_t half = (r.grid + 1) / 2;
  for (std::size_t i = 0; i < group.dim(); ++i) {
    vol *= static_cast<std::size_t>(std::min(2 * half - 1, group.modulus(i)));
  }
  return std::min(best, n / vol);
}

/// The separated-set bound at the neighborhood radius of A; bounds the t = 0
/// packing index because pairwise differences of a packing avoid ball(r) \ {0}.
inline std::size_t neighborhood_bound(const DenseSet& a) {
  return separated_set_bound(a.group(), neighborhood_radius(a));
}

}  // namespace packlab
