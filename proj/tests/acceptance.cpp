// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "packlab/packlab.hpp"

using packlab::DenseSet;
using packlab::Group;
using packlab::NormValue;
using packlab::TerminalMode;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

long peak_rss_kib() {
  std::ifstream in("/proc/self/status");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("VmHWM:", 0) == 0) return std::stol(line.substr(6));
  }
  return -1;
}

bool all_ok(const std::vector<packlab::Clause>& clauses, std::string* failed = nullptr) {
  for (const auto& c : clauses) {
    if (!c.ok) {
      if (failed) *failed = c.name;
      return false;
    }
  }
  return true;
}

DenseSet box(const Group& g, std::int64_t side) {
  DenseSet s(g);
  for (std::size_t i = 0; i < g.order(); ++i) {
    bool inside = true;
    for (std::size_t k = 0; k < g.dim(); ++k) inside = inside && g.coord(i, k) < side;
    if (inside) s.insert(i);
  }
  return s;
}

std::set<std::size_t> achieved(const packlab::SpectrumResult& r) {
  std::set<std::size_t> out;
  for (const auto& [sharp, entry] : r.histogram) out.insert(sharp);
  return out;
}

std::string join(const std::set<std::size_t>& s) {
  std::string out = "{";
  for (const auto v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
  return out + "}";
}

Outcome oracle_equivalence() {
  Outcome o;
  std::size_t sets = 0;
  for (const auto& g : {Group::cyclic({6}), Group::cyclic({8}), Group::cyclic({3, 3}), Group::dyadic(3),
                        Group::cyclic({12})}) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << g.order()); ++mask) {
      const auto a = oracle::from_mask(g, mask);
      const auto exact = packlab::packing_index_exact(a, 0).value;
      const auto brute = oracle::brute_packing(a, 0);
      o.require(exact == brute, g.to_string() + " mask " + std::to_string(mask) + ": solver " +
                                    std::to_string(exact) + " vs brute force " + std::to_string(brute));
      ++sets;
    }
  }
  if (o.ok) o.detail = std::to_string(sets) + " subsets agree";
  return o;
}

Outcome classic_examples() {
  Outcome o;
  const auto g = Group::cyclic({9, 9});
  DenseSet row(g), col(g);
  for (std::int64_t i = 0; i < 9; ++i) {
    row.insert(g.index_of({{i, 0}}));
    col.insert(g.index_of({{0, i}}));
  }
  const auto r = packlab::packing_index_exact(row, 0).value;
  const auto c = packlab::packing_index_exact(col, 0).value;
  const auto rc = packlab::packing_index_exact(row | col, 0).value;
  o.require(r == 9 && c == 9 && rc == 1, "cross: row " + std::to_string(r) + ", col " + std::to_string(c) +
                                             ", union " + std::to_string(rc));

  const auto z8 = Group::cyclic({8});
  const auto j1 = packlab::packing_index_exact(box(z8, 4), 0);
  o.require(j1.value == 2 && j1.witness == std::vector<std::size_t>{0, 4}, "J in Z8");
  const auto z88 = Group::cyclic({8, 8});
  const auto j2 = packlab::packing_index_exact(box(z88, 4), 0);
  std::vector<std::size_t> expected;
  for (std::int64_t x : {0, 4}) {
    for (std::int64_t y : {0, 4}) expected.push_back(z88.index_of({{x, y}}));
  }
  o.require(j2.value == 4 && j2.witness == expected, "J^2 in Z8^2: value " + std::to_string(j2.value));
  if (o.ok) o.detail = "row 9, col 9, cross 1; J 2 {0,4}; J^2 4 {0,4}^2";
  return o;
}

Outcome spectra() {
  Outcome o;
  const auto z3 = packlab::spectrum_scan(Group::cyclic({3}), 0, false);
  o.require(achieved(z3) == std::set<std::size_t>{2, 4}, "Z3 spectrum " + join(achieved(z3)));
  const auto z22 = packlab::spectrum_scan(Group::cyclic({2, 2}), 0, false);
  o.require(achieved(z22) == std::set<std::size_t>{2, 3, 5}, "Z2^2 spectrum " + join(achieved(z22)));

  std::ostringstream notes;
  for (const auto& g : {Group::dyadic(3), Group::cyclic({3, 3})}) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << g.order()); ++mask) {
      const auto a = oracle::from_mask(g, mask);
      o.require(packlab::sharp_index(a, 0) == oracle::brute_packing(a, 0) + 1,
                g.to_string() + " mask " + std::to_string(mask) + " disagrees with brute force");
    }
    const auto s = packlab::spectrum_scan(g, 0, false);
    notes << "; " << g.to_string() << " " << join(achieved(s)) << " |G/[G]2|=" << s.quotient_by_two_torsion
          << " 4 " << (s.achieved(4) ? "present" : "absent") << ", 3 " << (s.achieved(3) ? "present" : "absent");
    if (s.four_counterexample()) notes << " (4 appears although |G/[G]2| <= 2)";
    if (s.three_counterexample()) notes << " (3 appears although G = [G]3)";
  }
  if (o.ok) o.detail = "Z3 {2,4}, Z2^2 {2,3,5}" + notes.str();
  return o;
}

Outcome lemma_smoke() {
  Outcome o;
  const auto g = Group::cyclic({1024});
  const auto a = DenseSet::from_indices(g, {1023, 0, 1});
  const auto gen = packlab::perfect_tree_generator(a, 8);
  o.require(gen.family.size() >= 4, "family size " + std::to_string(gen.family.size()));
  o.require(packlab::disjointness_witness_check(a, gen.family, 0), "generated translates overlap");
  const auto exact = packlab::packing_index_exact(a, 0).value;
  o.require(exact >= 4, "exact index " + std::to_string(exact));
  if (o.ok) o.detail = "|S| = " + std::to_string(gen.family.size()) + ", exact index " + std::to_string(exact);
  return o;
}

Outcome sigma_sparse_four_levels() {
  Outcome o;
  const auto schedule = packlab::make_schedule(1, 4, TerminalMode::kSparse);
  std::string failed;
  o.require(all_ok(schedule.clauses, &failed), "schedule clause: " + failed);

  const auto pair = packlab::sigma_sets(packlab::build_levels(schedule));
  std::size_t even = 0, odd = 0, violations = 0;
  for (const auto& check : pair.annuli) {
    (check.set == "A" ? even : odd) += 1;
    violations += check.violations;
  }
  o.require(even == 2 && odd == 1 && violations == 0,
            "annuli A:" + std::to_string(even) + " B:" + std::to_string(odd) + " violations " +
                std::to_string(violations));
  o.require(all_ok(pair.clauses, &failed), "sigma clause: " + failed);

  const auto sa = packlab::perfect_tree_generator(pair.a, 8);
  const auto sb = packlab::perfect_tree_generator(pair.b, 8);
  o.require(sa.family.size() >= 4 && sb.family.size() >= 2,
            "|S_A| = " + std::to_string(sa.family.size()) + ", |S_B| = " + std::to_string(sb.family.size()));
  o.require(packlab::disjointness_witness_check(pair.a, sa.family, 0), "S_A certificate");
  o.require(packlab::disjointness_witness_check(pair.b, sb.family, 0), "S_B certificate");

  const Group g = schedule.group();
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
  NormValue worst{0};
  for (int k = 0; k < 100; ++k) {
    try {
      const auto w = packlab::tree_walk(pick(rng), pair);
      worst = std::max(worst, w.max_leaf_remainder);
    } catch (const packlab::VerificationError& e) {
      o.require(false, std::string("tree walk: ") + e.what());
      break;
    }
  }
  o.require(worst <= NormValue{7}, "final remainder " + std::to_string(worst.grid));

  const bool covered = packlab::covers(packlab::cross_correlation(pair.a, pair.b).support(), NormValue{7});
  o.require(covered, "A - B is not 7-dense");
  const long rss = peak_rss_kib();
  o.require(rss > 0 && rss < 1024 * 1024, "peak RSS " + std::to_string(rss) + " KiB");
  if (o.ok) {
    o.detail = "|S_A| = " + std::to_string(sa.family.size()) + ", |S_B| = " + std::to_string(sb.family.size()) +
               ", max remainder " + std::to_string(worst.grid) + ", peak RSS " + std::to_string(rss / 1024) + " MiB";
  }
  return o;
}

Outcome sigma_dense_three_levels() {
  Outcome o;
  const auto pair = packlab::sigma_sets(packlab::build_levels(packlab::make_schedule(1, 3, TerminalMode::kDense)));
  const auto theta = packlab::cross_correlation(pair.a, pair.b).min();
  o.require(theta >= 1, "theta " + std::to_string(theta));
  o.require(packlab::difference_set(pair.c).is_full(), "C - C != G");
  const auto index = packlab::packing_index_exact(pair.c, 0).value;
  o.require(index == 1, "packing index of C " + std::to_string(index));
  if (o.ok) o.detail = "theta = " + std::to_string(theta) + ", C - C = G, index 1";
  return o;
}

Outcome transform_vs_naive() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> density(0.0005, 0.5);
  for (const auto& g : {Group::cyclic({4096}), Group::dyadic(12)}) {
    for (int k = 0; k < 200; ++k) {
      const auto a = oracle::random_set(g, density(rng), rng);
      const auto b = oracle::random_set(g, density(rng), rng);
      const auto fast = packlab::cross_correlation(a, b, packlab::CorrMethod::kTransform);
      const auto slow = packlab::cross_correlation(a, b, packlab::CorrMethod::kNaive);
      o.require(fast.values == slow.values, g.to_string() + " pair " + std::to_string(k) + " differs");
    }
  }
  if (o.ok) o.detail = "400 pairs identical";
  return o;
}

Group random_group(std::mt19937_64& rng, std::size_t max_order) {
  while (true) {
    const int kind = static_cast<int>(rng() % 3);
    if (kind == 0) {
      const auto n = 2 + rng() % (max_order - 1);
      return Group::cyclic({static_cast<std::int64_t>(n)});
    }
    if (kind == 1) {
      const auto a = 2 + static_cast<std::int64_t>(rng() % 63), b = 2 + static_cast<std::int64_t>(rng() % 63);
      if (static_cast<std::size_t>(a * b) <= max_order) return Group::cyclic({a, b});
    } else {
      int dim = 1;
      while ((std::size_t{2} << dim) <= max_order && rng() % 4 != 0) ++dim;
      return Group::dyadic(dim);
    }
  }
}

Outcome invariance_suite() {
  Outcome o;
  std::mt19937_64 rng(8);
  for (int k = 0; k < 500 && o.ok; ++k) {
    const auto g = random_group(rng, 64);
    const auto a = oracle::random_set(g, 0.05 + 0.3 * std::uniform_real_distribution<double>()(rng), rng);
    const std::string where = "instance " + std::to_string(k) + " in " + g.to_string();
    const auto exact = packlab::packing_index_exact(a, 0);
    o.require(exact.value <= exact.bounds.counting, where + ": counting bound");
    o.require(exact.value <= exact.bounds.neighborhood, where + ": neighborhood bound");
    const auto shift = std::uniform_int_distribution<std::size_t>(0, g.order() - 1)(rng);
    o.require(packlab::packing_index_exact(packlab::translate(a, shift), 0).value == exact.value,
              where + ": translation");
    o.require(packlab::packing_index_exact(packlab::negate_set(a), 0).value == exact.value, where + ": negation");
    std::size_t previous = exact.value;
    const auto top = static_cast<std::int64_t>(a.size()) - 1;
    for (std::int64_t t = 1; t <= top; ++t) {
      const auto v = packlab::packing_index_exact(a, t).value;
      o.require(v >= previous, where + ": not monotone at t = " + std::to_string(t));
      previous = v;
    }
    o.require(previous == packlab::almost_index_structural(a), where + ": t = |A|-1 differs from |G|/|Per(A)|");
  }
  for (int k = 0; k < 500 && o.ok; ++k) {
    const auto g = random_group(rng, 4096);
    const auto a = oracle::random_set(g, 0.002 + 0.05 * std::uniform_real_distribution<double>()(rng), rng);
    const auto lower = packlab::packing_index_lower(a, 0, 2, k);
    const std::string where = "instance " + std::to_string(k) + " in " + g.to_string();
    o.require(lower.value <= lower.bounds.counting, where + ": counting bound below a verified family");
    o.require(lower.value <= lower.bounds.neighborhood, where + ": neighborhood bound below a verified family");
  }
  if (o.ok) o.detail = "500 exact instances (|G| <= 64), 500 bound instances (|G| <= 4096)";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence of the exact solver", 120, oracle_equivalence},
      {2, "cross and half-interval examples", 10, classic_examples},
      {3, "sharp-index spectra", 300, spectra},
      {4, "binary-product generator on Z1024", 10, lemma_smoke},
      {5, "sparse four-level construction", 300, sigma_sparse_four_levels},
      {6, "dense three-level construction", 30, sigma_dense_three_levels},
      {7, "transform vs naive correlation", 120, transform_vs_naive},
      {8, "invariance suite", 180, invariance_suite},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.budget_seconds) {
      o.ok = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget)";
    }
    failures += !o.ok;
    std::printf("%s criterion %d: %s: %s [%.1f s]\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
