#pragma once

// Packing indices on finite groups.
//
// For a threshold t >= 0 the family {x + A : x in S} is t-packed when every two
// distinct translates meet in at most t points. The t-packing index is the
// largest such |S|; t = 0 is the ordinary packing index.
//
// Since |(x + A) ∩ (y + A)| = autocorrelation(A)[y - x], S is t-packed iff all
// nonzero differences of S lie in F_t = {g != 0 : autocorrelation(A)[g] <= t}.
// Translating S does not change that, so the search fixes 0 in S and looks for
// a maximum clique of the Cayley graph Cay(G, F_t) restricted to F_t.
//
// On a finite group, |x + A ∩ y + A| < |A| holds exactly when x + A != y + A,
// so the literal "almost disjoint" family degenerates to cosets of the period
// subgroup Per(A). That is why t is an explicit parameter everywhere.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "packlab/clique.hpp"
#include "packlab/correlation.hpp"
#include "packlab/dense_set.hpp"
#include "packlab/error.hpp"
#include "packlab/metric_sets.hpp"
#include "packlab/parallel.hpp"

namespace packlab {

/// Largest clique search the exact solver accepts, in Cayley-graph vertices.
inline constexpr std::size_t kExactVertexGuard = 4096;

enum class PackingMethod { kExact, kHeuristic };

struct PackingBounds {
  std::size_t counting = 0;
  std::size_t neighborhood = 0;
};

struct PackingReport {
  DenseSet set;
  std::int64_t threshold = 0;
  std::size_t value = 0;
  std::size_t sharp = 0;
  std::vector<std::size_t> witness;  // ascending canonical indices, contains 0
  PackingMethod method = PackingMethod::kExact;
  PackingBounds bounds;
};

/// True iff every two distinct translates {x + A}, x in S, meet in at most t points.
/// Counts intersections directly from the translated sets.
inline bool disjointness_witness_check(const DenseSet& a, const std::vector<std::size_t>& s,
                                       std::int64_t t) {
  std::vector<std::size_t> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("witness contains repeated elements");
  }
  std::vector<DenseSet> translates;
  translates.reserve(s.size());
  for (const auto x : s) {
    if (x >= a.universe()) throw InputError("witness element out of range");
    translates.push_back(translate(a, x));
  }
  for (std::size_t i = 0; i < translates.size(); ++i) {
    for (std::size_t j = i + 1; j < translates.size(); ++j) {
      std::int64_t common = 0;
      const auto& wi = translates[i].words();
      const auto& wj = translates[j].words();
      for (std::size_t w = 0; w < wi.size(); ++w) common += std::popcount(wi[w] & wj[w]);
      if (common > t) return false;
    }
  }
  return true;
}

inline bool disjointness_witness_check(const DenseSet& a, const std::vector<Elem>& s, std::int64_t t) {
  std::vector<std::size_t> idx;
  for (const auto& g : s) idx.push_back(a.group().index_of(g));
  return disjointness_witness_check(a, idx, t);
}

namespace detail {

inline void check_threshold(std::int64_t t) {
  if (t < 0) throw InputError("threshold t must be >= 0");
}

inline PackingBounds packing_bounds(const DenseSet& a) {
  return PackingBounds{counting_bound(a), neighborhood_bound(a)};
}

// F_t as a set: nonzero g whose translate meets A in at most t points.
inline DenseSet connection_set(const DenseSet& a, std::int64_t t) {
  const auto table = autocorrelation(a);
  DenseSet f(a.group());
  for (std::size_t g = 1; g < table.values.size(); ++g) {
    if (table.values[g] <= t) f.insert(g);
  }
  return f;
}

}  // namespace detail

/// Exact t-packing index with a canonical witness (the lexicographically
/// smallest maximum family containing 0).
inline PackingReport packing_index_exact(const DenseSet& a, std::int64_t t,
                                         std::size_t vertex_guard = kExactVertexGuard) {
  detail::require_nonempty(a, "packing_index_exact");
  detail::check_threshold(t);
  const Group& group = a.group();
  const DenseSet f = detail::connection_set(a, t);
  const auto vertices = f.indices();
  if (vertices.size() + 1 > vertex_guard) {
    throw SizeGuardError("exact solver needs " + std::to_string(vertices.size() + 1) +
                         " clique vertices (guard " + std::to_string(vertex_guard) +
                         "); use packing_index_lower");
  }
  BitGraph graph(vertices.size());
  for (std::size_t u = 0; u < vertices.size(); ++u) {
    for (std::size_t v = u + 1; v < vertices.size(); ++v) {
      if (f.contains(group.sub(vertices[v], vertices[u]))) graph.add_edge(u, v);
    }
  }
  MaxCliqueSolver solver(graph);
  const auto clique = solver.solve();

  PackingReport report{a, t, clique.size() + 1, clique.size() + 2, {0}, PackingMethod::kExact,
                       detail::packing_bounds(a)};
  for (const auto v : clique) report.witness.push_back(vertices[v]);
  return report;
}

/// Heuristic lower bound: greedy over candidates in ascending norm, then
/// `effort - 1` randomized restarts seeded from `seed`. The witness is verified
/// before returning.
inline PackingReport packing_index_lower(const DenseSet& a, std::int64_t t, std::size_t effort,
                                         std::uint64_t seed = 0) {
  detail::require_nonempty(a, "packing_index_lower");
  detail::check_threshold(t);
  const Group& group = a.group();
  const DenseSet f = detail::connection_set(a, t);
  // Differences that would violate the threshold, including 0.
  const auto bad = f.complement().indices();

  std::vector<std::size_t> base = f.indices();
  std::vector<std::int64_t> norms(group.order());
  for (const auto g : base) norms[g] = group.norm(g).grid;
  std::stable_sort(base.begin(), base.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] < norms[y]; });

  auto greedy = [&](const std::vector<std::size_t>& order) {
    std::vector<std::size_t> chosen{0};
    DenseSet forbidden(group);
    for (const auto d : bad) forbidden.insert(d);
    for (const auto c : order) {
      if (forbidden.contains(c)) continue;
      chosen.push_back(c);
      for (const auto d : bad) forbidden.insert(group.add(c, d));
    }
    return chosen;
  };

  std::vector<std::size_t> best = greedy(base);
  std::mt19937_64 rng(seed);
  for (std::size_t run = 1; run < std::max<std::size_t>(effort, 1); ++run) {
    std::vector<std::size_t> order = base;
    if (run % 2 == 1) {
      // ascending norm, random order within each norm shell
      std::vector<std::uint64_t> key(group.order());
      for (const auto g : order) key[g] = rng();
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return norms[x] != norms[y] ? norms[x] < norms[y] : key[x] < key[y];
      });
    } else {
      std::shuffle(order.begin(), order.end(), rng);
    }
    auto candidate = greedy(order);
    if (candidate.size() > best.size()) best = std::move(candidate);
  }
  std::sort(best.begin(), best.end());
  if (!disjointness_witness_check(a, best, t)) {
    throw VerificationError("heuristic packing witness failed the direct disjointness check");
  }
  return PackingReport{a, t, best.size(), best.size() + 1, best, PackingMethod::kHeuristic,
                       detail::packing_bounds(a)};
}

/// |G| / |Per(A)|: the t = |A| - 1 packing index.
inline std::size_t almost_index_structural(const DenseSet& a) {
  return a.universe() / period_subgroup(a).size();
}

/// Successor of the exact packing index; suprema of finite families are attained.
inline std::size_t sharp_index(const DenseSet& a, std::int64_t t) {
  return packing_index_exact(a, t).value + 1;
}

/// {x : 2x = 0} or {x : 3x = 0}.
inline DenseSet torsion_subgroup(const Group& group, int p) {
  DenseSet out(group);
  for (std::size_t g = 0; g < group.order(); ++g) {
    std::size_t acc = 0;
    for (int k = 0; k < p; ++k) acc = group.add(acc, g);
    if (acc == 0) out.insert(g);
  }
  return out;
}

struct SpectrumEntry {
  std::size_t count = 0;
  std::vector<std::size_t> example;  // the subset with the smallest bitmask
};

struct SpectrumResult {
  Group group;
  std::int64_t threshold = 0;
  bool reduced = false;  // only subsets containing index 0 were enumerated
  std::map<std::size_t, SpectrumEntry> histogram;
  std::size_t quotient_by_two_torsion = 0;  // |G / [G]_2|
  bool three_torsion_is_whole = false;      // G = [G]_3

  bool achieved(std::size_t sharp) const { return histogram.count(sharp) != 0; }
  /// Sharp value 4 appears although |G/[G]_2| <= 2.
  bool four_counterexample() const { return quotient_by_two_torsion <= 2 && achieved(4); }
  /// Sharp value 3 appears although G = [G]_3.
  bool three_counterexample() const { return three_torsion_is_whole && achieved(3); }
};

/// Histogram of sharp t-packing indices over all nonempty subsets of a small group.
inline SpectrumResult spectrum_scan(const Group& group, std::int64_t t, bool reduce_symmetry) {
  detail::check_threshold(t);
  const std::size_t n = group.order();
  const std::size_t limit = reduce_symmetry ? 20 : 16;
  if (n > limit) {
    throw SizeGuardError("spectrum scan enumerates 2^|G| subsets; |G| = " + std::to_string(n) +
                         " exceeds " + std::to_string(limit));
  }
  const std::uint64_t masks = std::uint64_t{1} << n;
  // With symmetry reduction only masks containing bit 0 are visited: bit 0 is
  // forced and the remaining n - 1 bits enumerate freely.
  const std::uint64_t visits = reduce_symmetry ? masks / 2 : masks - 1;
  auto mask_of = [&](std::uint64_t k) { return reduce_symmetry ? (k << 1) | 1U : k + 1; };

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(worker_count(), 64));
  std::vector<std::map<std::size_t, std::pair<std::size_t, std::uint64_t>>> partial(workers);
  parallel_chunks(visits, workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    auto& local = partial[w];
    for (std::size_t k = begin; k < end; ++k) {
      const std::uint64_t mask = mask_of(k);
      DenseSet a(group);
      for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1U) a.insert(i);
      }
      const std::size_t sharp = sharp_index(a, t);
      auto [it, fresh] = local.try_emplace(sharp, 0, mask);
      ++it->second.first;
      it->second.second = std::min(it->second.second, mask);
    }
  });

  SpectrumResult result{group, t, reduce_symmetry, {}, 0, false};
  std::map<std::size_t, std::uint64_t> example_mask;
  for (const auto& local : partial) {
    for (const auto& [sharp, entry] : local) {
      result.histogram[sharp].count += entry.first;
      auto [it, fresh] = example_mask.try_emplace(sharp, entry.second);
      if (!fresh) it->second = std::min(it->second, entry.second);
    }
  }
  for (auto& [sharp, entry] : result.histogram) {
    const auto mask = example_mask[sharp];
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) entry.example.push_back(i);
    }
  }
  result.quotient_by_two_torsion = n / torsion_subgroup(group, 2).size();
  result.three_torsion_is_whole = torsion_subgroup(group, 3).size() == n;
  return result;
}

}  // namespace packlab
