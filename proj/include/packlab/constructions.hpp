#pragma once

// Finite-resolution versions of two constructions of large packings:
//
//   * a binary-product generator: pick steps b_0, b_1, ... at shrinking scales so
//     that b_n plus a small neighbourhood misses A - A; all 2^depth subset sums
//     of the steps then have pairwise disjoint translates of A;
//
//   * a multi-scale pair A = Sigma_0, B = Sigma_1 built from separated nets H_n
//     at scales eps_0 > eps_1 > ... (ratio 64). A - A and B - B miss whole
//     annuli, so both sets have large packings, yet every translate of B meets A
//     (exactly in dense terminal mode, up to 7 grid units in sparse mode), so
//     C = A ∪ B has C - C = G.
//
// All groups here are Z_m^dim with the l-infinity metric, m = 16 * 64^(levels-1).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "packlab/correlation.hpp"
#include "packlab/dense_set.hpp"
#include "packlab/error.hpp"
#include "packlab/group.hpp"
#include "packlab/metric_sets.hpp"
#include "packlab/packing.hpp"

namespace packlab {

inline constexpr std::int64_t kScaleRatio = 64;

enum class TerminalMode { kSparse, kDense };

inline const char* to_string(TerminalMode m) { return m == TerminalMode::kDense ? "dense" : "sparse"; }

/// A named inequality or set condition that a construction checked.
struct Clause {
  std::string name;
  bool ok = false;
  std::string detail;
};

inline void require_all(const std::vector<Clause>& clauses) {
  for (const auto& c : clauses) {
    if (!c.ok) throw VerificationError("certificate failed: " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
  }
}

struct ScaleSchedule {
  int dim = 1;
  int levels = 1;
  std::int64_t m = 16;
  std::vector<std::int64_t> eps;  // eps[n] = m / (16 * 64^n); eps.back() == 1
  TerminalMode terminal = TerminalMode::kSparse;
  std::vector<Clause> clauses;

  Group group(std::size_t size_guard = kDefaultSizeGuard) const {
    return Group::cyclic(std::vector<std::int64_t>(static_cast<std::size_t>(dim), m), size_guard);
  }
  std::int64_t last_eps() const { return eps.back(); }
};

/// Every scale inequality the covering and separation arguments rely on,
/// instantiated for this schedule.
inline std::vector<Clause> schedule_clauses(const ScaleSchedule& s) {
  std::vector<Clause> out;
  auto add = [&](std::string name, bool ok) { out.push_back({std::move(name), ok, {}}); };
  const auto& e = s.eps;
  const auto levels = static_cast<std::size_t>(s.levels);
  const std::int64_t diameter = s.m / 2;
  add("eps[last] == 1", e.back() == 1);
  for (std::size_t n = 1; n < levels; ++n) {
    const std::string at = "[n=" + std::to_string(n) + "]";
    add("eps[n-1] == 64*eps[n] " + at, e[n - 1] == kScaleRatio * e[n]);
    add("33*eps[n] < eps[n-1] " + at, 33 * e[n] < e[n - 1]);
    // some g with 33*eps[n] <= ||g|| < eps[n-1] exists in the group
    add("annulus [33*eps[n], eps[n-1]) nonempty " + at, 33 * e[n] <= std::min(e[n - 1] - 1, diameter));
    add("7*eps[n-1] + 5*eps[n] <= 8*eps[n-1] " + at, 7 * e[n - 1] + 5 * e[n] <= 8 * e[n - 1]);
    add("seeds {0, h_n} separated inside ball(8*eps[n-1]) " + at,
        5 * e[n] >= 2 * e[n] && 5 * e[n] < 8 * e[n - 1]);
  }
  for (std::size_t n = 0; n + 1 < levels; ++n) {
    const std::string at = "[n=" + std::to_string(n) + "]";
    // sum over every other level starting at n+1 of 16*eps: bound on tails of differences
    std::int64_t tail = 0;
    for (std::size_t k = n + 1; k < levels; k += 2) tail += 16 * e[k];
    add("16*(eps[n+1] + eps[n+3] + ...) <= 32*eps[n+1] " + at, tail <= 32 * e[n + 1]);
    add("32*eps[n+1] <= eps[n]/2 " + at, 64 * e[n + 1] <= e[n]);
    add("2*eps[n] - 32*eps[n+1] >= 3/2*eps[n] " + at, 4 * e[n] - 64 * e[n + 1] >= 3 * e[n]);
    add("eps[n] - 32*eps[n+1] > 0 " + at, e[n] - 32 * e[n + 1] > 0);
  }
  return out;
}

inline ScaleSchedule make_schedule(int dim, int levels, TerminalMode terminal,
                                   std::size_t size_guard = kDefaultSizeGuard) {
  if (dim < 1) throw InputError("schedule dimension must be >= 1");
  if (levels < 1) throw InputError("schedule needs at least one level");
  ScaleSchedule s;
  s.dim = dim;
  s.levels = levels;
  s.terminal = terminal;
  std::int64_t m = 16;
  for (int n = 1; n < levels; ++n) {
    if (m > static_cast<std::int64_t>(size_guard) / kScaleRatio) {
      throw SizeGuardError("schedule with " + std::to_string(levels) + " levels exceeds the size guard");
    }
    m *= kScaleRatio;
  }
  std::size_t order = 1;
  for (int i = 0; i < dim; ++i) {
    if (order > size_guard / static_cast<std::size_t>(m)) {
      throw SizeGuardError("schedule group order m^dim exceeds the size guard");
    }
    order *= static_cast<std::size_t>(m);
  }
  s.m = m;
  std::int64_t e = m / 16;
  for (int n = 0; n < levels; ++n) {
    s.eps.push_back(e);
    e /= kScaleRatio;
  }
  s.clauses = schedule_clauses(s);
  require_all(s.clauses);
  return s;
}

struct LevelSets {
  ScaleSchedule schedule;
  std::vector<DenseSet> sets;                   // H[n]
  std::vector<std::vector<std::size_t>> points;  // H[n] as ascending indices
  std::vector<std::size_t> h;                   // h[n] (h[0] unused, 0)
  bool dense_terminal = false;                  // last level replaced by the full ball

  std::size_t levels() const { return sets.size(); }
};

inline LevelSets build_levels(const ScaleSchedule& schedule, std::size_t size_guard = kDefaultSizeGuard) {
  const Group group = schedule.group(size_guard);
  LevelSets out{schedule, {}, {}, {}, false};
  const auto& eps = schedule.eps;
  out.sets.push_back(maximal_separated(DenseSet::full(group), NormValue{2 * eps[0]}, std::vector<std::size_t>{0}));
  out.h.push_back(0);
  for (std::size_t n = 1; n < eps.size(); ++n) {
    Elem hn;
    hn.coords.assign(group.dim(), 0);
    hn.coords[0] = 5 * eps[n];
    const std::size_t h = group.index_of(hn);
    out.h.push_back(h);
    DenseSet region = ball(group, NormValue{8 * eps[n - 1]});
    if (schedule.terminal == TerminalMode::kDense && n + 1 == eps.size()) {
      out.sets.push_back(std::move(region));
      out.dense_terminal = true;
    } else {
      out.sets.push_back(maximal_separated(region, NormValue{2 * eps[n]}, std::vector<std::size_t>{0, h}));
    }
  }
  for (const auto& s : out.sets) out.points.push_back(s.indices());
  return out;
}

struct AnnulusCheck {
  std::string set;  // "A" or "B"
  std::size_t k = 0;
  NormValue lo, hi;
  std::size_t violations = 0;
};

struct SigmaPair {
  LevelSets levels;
  DenseSet a;  // Sigma_0: sums over even levels
  DenseSet b;  // Sigma_1: negated sums over odd levels
  DenseSet c;  // A ∪ B
  std::vector<AnnulusCheck> annuli;
  bool a_sums_distinct = false;
  bool b_sums_distinct = false;
  std::vector<Clause> clauses;
};

/// Annuli that A - A (even) or B - B (odd) must avoid for this many levels.
inline std::vector<AnnulusCheck> avoided_annuli(const ScaleSchedule& s) {
  std::vector<AnnulusCheck> out;
  const auto levels = static_cast<std::size_t>(s.levels);
  for (std::size_t k = 0; 2 * k + 1 < levels; ++k) {
    out.push_back({"A", k, NormValue{33 * s.eps[2 * k + 1]}, NormValue{s.eps[2 * k]}, 0});
  }
  for (std::size_t k = 0; 2 * k + 2 < levels; ++k) {
    out.push_back({"B", k, NormValue{33 * s.eps[2 * k + 2]}, NormValue{s.eps[2 * k + 1]}, 0});
  }
  return out;
}

inline SigmaPair sigma_sets(const LevelSets& levels) {
  const Group& group = levels.sets[0].group();
  DenseSet a = DenseSet::from_indices(group, {0});
  DenseSet b = DenseSet::from_indices(group, {0});
  std::size_t a_product = 1, b_product = 1;
  for (std::size_t n = 0; n < levels.levels(); ++n) {
    if (n % 2 == 0) {
      a = sumset(a, levels.sets[n]);
      a_product *= levels.sets[n].size();
    } else {
      b = sumset(b, levels.sets[n]);
      b_product *= levels.sets[n].size();
    }
  }
  b = negate_set(b);
  DenseSet c = a | b;
  SigmaPair pair{levels, a, b, c, avoided_annuli(levels.schedule), a.size() == a_product,
                 b.size() == b_product, {}};

  const bool need_a = std::any_of(pair.annuli.begin(), pair.annuli.end(), [](const auto& x) { return x.set == "A"; });
  const bool need_b = std::any_of(pair.annuli.begin(), pair.annuli.end(), [](const auto& x) { return x.set == "B"; });
  const DenseSet diff_a = need_a ? difference_set(pair.a) : DenseSet(group);
  const DenseSet diff_b = need_b ? difference_set(pair.b) : DenseSet(group);
  for (auto& check : pair.annuli) {
    const DenseSet& diff = check.set == "A" ? diff_a : diff_b;
    check.violations = (diff & annulus(group, check.lo, check.hi)).size();
    pair.clauses.push_back({"difference set of " + check.set + " avoids annulus [" +
                                std::to_string(check.lo.grid) + ", " + std::to_string(check.hi.grid) + ")",
                            check.violations == 0, std::to_string(check.violations) + " violations"});
  }
  if (!levels.dense_terminal) {
    pair.clauses.push_back({"even-level sums pairwise distinct", pair.a_sums_distinct, {}});
    pair.clauses.push_back({"odd-level sums pairwise distinct", pair.b_sums_distinct, {}});
  }
  require_all(pair.clauses);
  return pair;
}

/// The labelled binary tree {x_s} of a covering walk towards g.
///
/// Nodes of depth n are stored in `x[n]`, indexed by the binary string s read
/// as a number with s_0 most significant; the children of s are 2s and 2s + 1.
struct TreeWitness {
  std::size_t g = 0;
  std::size_t depth = 0;
  std::vector<std::vector<std::size_t>> x;
  std::vector<std::vector<std::size_t>> remainder;  // g - sum_{t <= s} x_t
  bool collapsed_terminal = false;  // dense last level: both children equal the remainder
  DenseSet d0;                      // even-level branch sums
  NormValue max_leaf_remainder;
  std::vector<Clause> clauses;
};

namespace detail {

// Nearest point of `points` to `target`, ties to the smallest index.
inline std::pair<std::size_t, NormValue> nearest(const Group& group, const std::vector<std::size_t>& points,
                                                 std::size_t target) {
  std::size_t best = points.front();
  NormValue best_d = group.distance(best, target);
  for (const auto p : points) {
    const auto d = group.distance(p, target);
    if (d < best_d) {
      best = p;
      best_d = d;
    }
  }
  return {best, best_d};
}

}  // namespace detail

inline TreeWitness tree_walk(std::size_t g, const SigmaPair& pair) {
  const LevelSets& lv = pair.levels;
  const Group& group = pair.a.group();
  if (g >= group.order()) throw InputError("walk target out of range");
  const auto& eps = lv.schedule.eps;
  const std::size_t depth = lv.levels();
  TreeWitness w{g, depth, {}, {}, lv.dense_terminal, DenseSet(group), NormValue{0}, {}};

  auto pick = [&](std::size_t level, std::size_t target) {
    const auto [p, d] = detail::nearest(group, lv.points[level], target);
    if (!(d < NormValue{2 * eps[level]})) {
      throw VerificationError("no point of H[" + std::to_string(level) + "] within 2*eps of the target");
    }
    return p;
  };

  w.x.push_back({pick(0, g)});
  w.remainder.push_back({group.sub(g, w.x[0][0])});
  for (std::size_t n = 1; n < depth; ++n) {
    const bool collapse = lv.dense_terminal && n + 1 == depth;
    const std::size_t parents = w.x[n - 1].size();
    std::vector<std::size_t> xs(2 * parents), rs(2 * parents);
    for (std::size_t s = 0; s < parents; ++s) {
      const std::size_t gs = w.remainder[n - 1][s];
      if (collapse) {
        if (!lv.sets[n].contains(gs)) {
          throw VerificationError("remainder escaped the dense terminal ball at node " + std::to_string(s));
        }
        xs[2 * s] = xs[2 * s + 1] = gs;
      } else {
        xs[2 * s] = pick(n, gs);
        xs[2 * s + 1] = pick(n, group.add(gs, lv.h[n]));
      }
      rs[2 * s] = group.sub(gs, xs[2 * s]);
      rs[2 * s + 1] = group.sub(gs, xs[2 * s + 1]);
    }
    w.x.push_back(std::move(xs));
    w.remainder.push_back(std::move(rs));
  }

  // Conditions (1)-(3) at every node.
  std::size_t bad_member = 0, bad_split = 0, bad_remainder = 0;
  for (std::size_t n = 0; n < depth; ++n) {
    for (std::size_t s = 0; s < w.x[n].size(); ++s) {
      if (!lv.sets[n].contains(w.x[n][s])) ++bad_member;
      if (!(group.norm(w.remainder[n][s]) < NormValue{7 * eps[n]})) ++bad_remainder;
    }
    const bool branching = n + 1 < depth && !(lv.dense_terminal && n + 2 == depth);
    if (branching) {
      for (std::size_t s = 0; s < w.x[n].size(); ++s) {
        if (!(group.distance(w.x[n + 1][2 * s], w.x[n + 1][2 * s + 1]) > NormValue{eps[n + 1]})) ++bad_split;
      }
    }
  }
  w.clauses.push_back({"x_s in H_|s| at every node", bad_member == 0, std::to_string(bad_member) + " nodes"});
  w.clauses.push_back({"||x_s0 - x_s1|| > eps at every branching node", bad_split == 0,
                       std::to_string(bad_split) + " nodes"});
  w.clauses.push_back({"||g - sum_{t<=s} x_t|| < 7*eps[|s|] at every node", bad_remainder == 0,
                       std::to_string(bad_remainder) + " nodes"});

  // Branch sums over full branches (leaves at depth - 1).
  const std::size_t leaves = w.x[depth - 1].size();
  std::vector<std::size_t> even_sum(leaves, 0), odd_sum(leaves, 0);
  for (std::size_t leaf = 0; leaf < leaves; ++leaf) {
    for (std::size_t n = 0; n < depth; ++n) {
      const std::size_t node = leaf >> (depth - 1 - n);
      auto& acc = n % 2 == 0 ? even_sum[leaf] : odd_sum[leaf];
      acc = group.add(acc, w.x[n][node]);
    }
    w.d0.insert(even_sum[leaf]);
    w.max_leaf_remainder = std::max(w.max_leaf_remainder, group.norm(w.remainder[depth - 1][leaf]));
  }

  std::size_t outside_a = 0, outside_b = 0;
  const NormValue slack{lv.dense_terminal ? 0 : 7 * eps.back()};
  for (std::size_t leaf = 0; leaf < leaves; ++leaf) {
    if (!pair.a.contains(even_sum[leaf])) ++outside_a;
    // d - g = -(odd sum) - remainder, and -(odd sum) lies in B.
    const std::size_t sigma = group.neg(odd_sum[leaf]);
    const std::size_t d_minus_g = group.sub(even_sum[leaf], g);
    const bool near = lv.dense_terminal ? pair.b.contains(d_minus_g)
                                        : pair.b.contains(sigma) && !(slack < group.distance(d_minus_g, sigma));
    if (!near) ++outside_b;
  }
  w.clauses.push_back({"D0 subset of A", outside_a == 0, std::to_string(outside_a) + " sums"});
  w.clauses.push_back({lv.dense_terminal ? "D0 subset of g + B" : "D0 within 7*eps[last] of g + B",
                       outside_b == 0, std::to_string(outside_b) + " sums"});

  // Branches whose first divergence is at a branching even level have distinct
  // even sums; this gives |D0| >= 2^(number of such levels).
  std::size_t even_branching = 0;
  for (std::size_t n = 2; n < depth; n += 2) {
    if (!(lv.dense_terminal && n + 1 == depth)) ++even_branching;
  }
  std::size_t collisions = 0;
  for (std::size_t p = 0; p < leaves; ++p) {
    for (std::size_t q = p + 1; q < leaves; ++q) {
      // first differing bit of the branch strings, as a tree level
      const std::size_t level = depth - static_cast<std::size_t>(std::bit_width(p ^ q)) ;
      const bool even_level = level % 2 == 0 && !(lv.dense_terminal && level + 1 == depth);
      if (even_level && even_sum[p] == even_sum[q]) ++collisions;
    }
  }
  w.clauses.push_back({"even-first-divergence branch sums distinct", collisions == 0,
                       std::to_string(collisions) + " collisions"});
  w.clauses.push_back({"|D0| >= 2^(even branching levels)", w.d0.size() >= (std::size_t{1} << even_branching),
                       std::to_string(w.d0.size())});
  require_all(w.clauses);
  return w;
}

/// Output of the binary-product generator.
struct GeneratorResult {
  std::vector<std::size_t> steps;        // b_0, b_1, ...
  std::vector<NormValue> outer_radius;   // u_n: b_n lies in ball(u_n)
  std::vector<NormValue> inner_radius;   // v_{n+1}
  std::vector<std::size_t> family;       // all subset sums of the steps, ascending
  std::size_t pairs_checked = 0;

  std::size_t depth() const { return steps.size(); }
};

namespace detail {

// Closed radius of ball(v) + ball(v).
inline NormValue doubled_radius(const Group& group, NormValue v) {
  return group.metric() == MetricKind::kDyadic ? NormValue{v.grid - 1} : NormValue{2 * v.grid - 2};
}

inline NormValue min_step_norm(const Group& group, NormValue v) {
  return group.metric() == MetricKind::kDyadic ? v : NormValue{2 * v.grid};
}

// Admissible steps at radii (u, v): b in ball(u), ||b|| >= min_step_norm(v) and
// b + ball(v) + ball(v) disjoint from A - A. Picks the largest norm, then the
// smallest index; returns false when none exists.
inline bool find_step(const DenseSet& diff, NormValue u, NormValue v, std::size_t& out) {
  const Group& group = diff.group();
  const DenseSet blocked = dilate(diff, doubled_radius(group, v));
  const NormValue floor = min_step_norm(group, v);
  bool found = false;
  NormValue best{-1};
  for_each_in_ball(group, 0, u, [&](std::size_t b) {
    if (blocked.contains(b)) return;
    const auto n = group.norm(b);
    if (n < floor) return;
    if (best < n || (n == best && b < out)) {
      best = n;
      out = b;
      found = true;
    }
  });
  return found;
}

}  // namespace detail

/// Whether b is an admissible step at radii (u, v) against A - A.
inline bool lemma_step_admissible(const DenseSet& diff, NormValue u, NormValue v, std::size_t b) {
  const Group& group = diff.group();
  if (v.grid < 1 || !(group.norm(b) < u) || group.norm(b) < detail::min_step_norm(group, v)) return false;
  return !dilate(diff, detail::doubled_radius(group, v)).contains(b);
}

inline GeneratorResult perfect_tree_generator(const DenseSet& a, std::size_t max_depth) {
  detail::require_nonempty(a, "perfect_tree_generator");
  if (max_depth > 24) throw SizeGuardError("max_depth above 24 would enumerate more than 2^24 subset sums");
  const Group& group = a.group();
  const DenseSet diff = difference_set(a);
  GeneratorResult r;
  NormValue u{group.diameter().grid + 1};
  while (r.depth() < max_depth && u.grid >= 1) {
    // Largest v <= u with an admissible step; admissibility shrinks as v grows.
    std::int64_t lo = 1, hi = u.grid;
    std::size_t step = 0;
    if (!detail::find_step(diff, u, NormValue{lo}, step)) break;
    while (lo < hi) {
      const std::int64_t mid = lo + (hi - lo + 1) / 2;
      std::size_t probe = 0;
      if (detail::find_step(diff, u, NormValue{mid}, probe)) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    detail::find_step(diff, u, NormValue{lo}, step);
    r.steps.push_back(step);
    r.outer_radius.push_back(u);
    r.inner_radius.push_back(NormValue{lo});
    // ball(u')^3 must fit inside ball(v): 3u' <= v in grid units; balls are
    // subgroups in the dyadic case.
    u = group.metric() == MetricKind::kDyadic ? NormValue{lo} : NormValue{lo / 3};
  }

  r.family.push_back(0);
  for (const auto b : r.steps) {
    const std::size_t count = r.family.size();
    for (std::size_t i = 0; i < count; ++i) r.family.push_back(group.add(r.family[i], b));
  }
  std::sort(r.family.begin(), r.family.end());
  if (std::adjacent_find(r.family.begin(), r.family.end()) != r.family.end()) {
    throw VerificationError("generator produced coinciding subset sums");
  }
  // Ground truth: direct pairwise intersection of the translates.
  std::vector<DenseSet> translates;
  for (const auto x : r.family) translates.push_back(translate(a, x));
  for (std::size_t i = 0; i < translates.size(); ++i) {
    for (std::size_t j = i + 1; j < translates.size(); ++j) {
      ++r.pairs_checked;
      if (translates[i].intersects(translates[j])) {
        throw VerificationError("translates by " + std::to_string(r.family[i]) + " and " +
                                std::to_string(r.family[j]) + " intersect");
      }
    }
  }
  return r;
}

struct UnionReport {
  ScaleSchedule schedule;
  std::size_t size_a = 0, size_b = 0, size_c = 0;
  double density_a = 0, density_b = 0, density_c = 0;
  GeneratorResult witness_a, witness_b;
  std::int64_t theta = 0;  // min over g of |A ∩ (g + B)|
  NormValue coverage_delta;
  bool coverage_ok = false;
  bool coverage_exact = false;
  std::size_t index_c = 0;          // exact t = 0 packing index of C (dense mode)
  std::size_t almost_index_c = 0;   // exact (theta - 1)-packing index of C (dense mode)
  std::size_t walks = 0;
  NormValue max_walk_remainder;
  std::vector<Clause> clauses;
};

/// The full pipeline: Sigma pair, disjoint-translate witnesses for A and B,
/// coverage of G by A - B, and (dense mode) the unit packing index of A ∪ B.
inline UnionReport union_demo(const ScaleSchedule& schedule, std::size_t generator_depth = 8,
                              std::size_t walks = 16, std::uint64_t seed = 0) {
  if (schedule.levels < 3) throw InputError("union demo needs at least 3 levels");
  const LevelSets levels = build_levels(schedule);
  const SigmaPair pair = sigma_sets(levels);
  const Group& group = pair.a.group();
  const auto n = static_cast<double>(group.order());

  UnionReport r;
  r.schedule = schedule;
  r.clauses = schedule.clauses;
  r.clauses.insert(r.clauses.end(), pair.clauses.begin(), pair.clauses.end());
  r.size_a = pair.a.size();
  r.size_b = pair.b.size();
  r.size_c = pair.c.size();
  r.density_a = static_cast<double>(r.size_a) / n;
  r.density_b = static_cast<double>(r.size_b) / n;
  r.density_c = static_cast<double>(r.size_c) / n;

  r.witness_a = perfect_tree_generator(pair.a, generator_depth);
  r.witness_b = perfect_tree_generator(pair.b, generator_depth);
  r.clauses.push_back({"translates of A by the generated family are disjoint", true,
                       std::to_string(r.witness_a.family.size()) + " translates"});
  r.clauses.push_back({"translates of B by the generated family are disjoint", true,
                       std::to_string(r.witness_b.family.size()) + " translates"});

  const CorrTable cross = cross_correlation(pair.a, pair.b);
  r.theta = cross.min();
  const DenseSet hit = cross.support();  // A - B
  r.coverage_exact = levels.dense_terminal;
  r.coverage_delta = NormValue{levels.dense_terminal ? 0 : 7 * schedule.last_eps()};
  r.coverage_ok = covers(hit, r.coverage_delta);
  r.clauses.push_back({levels.dense_terminal ? "A - B = G" : "A - B is 7*eps[last]-dense in G", r.coverage_ok, {}});

  if (levels.dense_terminal) {
    r.clauses.push_back({"min_g |A ∩ (g + B)| >= 1", r.theta >= 1, "theta = " + std::to_string(r.theta)});
    r.clauses.push_back({"C - C = G", difference_set(pair.c).is_full(), {}});
    r.index_c = packing_index_exact(pair.c, 0).value;
    r.clauses.push_back({"packing index of C is 1", r.index_c == 1, std::to_string(r.index_c)});
    if (r.theta >= 1) {
      r.almost_index_c = packing_index_exact(pair.c, r.theta - 1).value;
      r.clauses.push_back({"(theta-1)-packing index of C is 1", r.almost_index_c == 1,
                           std::to_string(r.almost_index_c)});
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, group.order() - 1);
  for (std::size_t i = 0; i < walks; ++i) {
    const auto w = tree_walk(i == 0 ? 0 : pick(rng), pair);
    r.max_walk_remainder = std::max(r.max_walk_remainder, w.max_leaf_remainder);
    ++r.walks;
  }
  r.clauses.push_back({"tree walks satisfy every node condition", true, std::to_string(r.walks) + " walks"});
  require_all(r.clauses);
  return r;
}

}  // namespace packlab
