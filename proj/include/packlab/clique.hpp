#pragma once

// Bitset branch-and-bound maximum clique with greedy-colouring bounds.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace packlab {

class BitGraph {
 public:
  using Row = std::vector<std::uint64_t>;

  explicit BitGraph(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n, Row(words_, 0)) {}

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }

  void add_edge(std::size_t u, std::size_t v) {
    set(rows_[u], v);
    set(rows_[v], u);
  }
  bool adjacent(std::size_t u, std::size_t v) const { return test(rows_[u], v); }
  const Row& neighbours(std::size_t v) const { return rows_[v]; }

  static void set(Row& r, std::size_t i) { r[i >> 6] |= std::uint64_t{1} << (i & 63); }
  static void reset(Row& r, std::size_t i) { r[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  static bool test(const Row& r, std::size_t i) { return (r[i >> 6] >> (i & 63)) & 1U; }
  static std::size_t count(const Row& r) {
    std::size_t c = 0;
    for (const auto w : r) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  static bool any(const Row& r) {
    for (const auto w : r) {
      if (w) return true;
    }
    return false;
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<Row> rows_;
};

/// Exact maximum clique.
///
/// The size is found by branch and bound: candidates are coloured greedily in
/// ascending vertex order and expanded from the highest colour class down,
/// pruning when |C| + colours <= best. The witness is then the
/// lexicographically smallest clique of that size (sorted ascending), found by
/// a second bounded search, so it does not depend on search order details.
class MaxCliqueSolver {
 public:
  explicit MaxCliqueSolver(const BitGraph& g) : g_(g) {}

  std::vector<std::size_t> solve() {
    if (g_.size() == 0) return {};
    BitGraph::Row all(g_.words(), 0);
    for (std::size_t v = 0; v < g_.size(); ++v) BitGraph::set(all, v);
    best_size_ = 0;
    std::size_t current = 0;
    expand(current, all);
    std::vector<std::size_t> clique;
    find_lex_min(clique, all, best_size_);
    return clique;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  // Greedy sequential colouring of p; fills order/colour with vertices in
  // ascending colour, ascending index within a class.
  void colour(const BitGraph::Row& p, std::vector<std::size_t>& order,
              std::vector<std::size_t>& colours) const {
    order.clear();
    colours.clear();
    BitGraph::Row uncoloured = p;
    std::size_t k = 0;
    while (BitGraph::any(uncoloured)) {
      ++k;
      BitGraph::Row q = uncoloured;
      for (std::size_t w = 0; w < q.size(); ++w) {
        while (q[w]) {
          const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(q[w]));
          BitGraph::reset(uncoloured, v);
          BitGraph::reset(q, v);
          const auto& nv = g_.neighbours(v);
          for (std::size_t x = w; x < q.size(); ++x) q[x] &= ~nv[x];
          order.push_back(v);
          colours.push_back(k);
        }
      }
    }
  }

  std::size_t colour_count(const BitGraph::Row& p) const {
    std::vector<std::size_t> order, colours;
    colour(p, order, colours);
    return colours.empty() ? 0 : colours.back();
  }

  void expand(std::size_t& current, BitGraph::Row p) {
    ++nodes_;
    std::vector<std::size_t> order, colours;
    colour(p, order, colours);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current + colours[i] <= best_size_) return;
      const std::size_t v = order[i];
      BitGraph::Row next(p.size());
      const auto& nv = g_.neighbours(v);
      for (std::size_t w = 0; w < p.size(); ++w) next[w] = p[w] & nv[w];
      ++current;
      if (!BitGraph::any(next)) {
        if (current > best_size_) best_size_ = current;
      } else {
        expand(current, next);
      }
      --current;
      BitGraph::reset(p, v);
    }
  }

  bool find_lex_min(std::vector<std::size_t>& clique, BitGraph::Row p, std::size_t target) {
    ++nodes_;
    if (clique.size() == target) return true;
    if (clique.size() + BitGraph::count(p) < target) return false;
    if (clique.size() + colour_count(p) < target) return false;
    for (std::size_t w = 0; w < p.size(); ++w) {
      while (p[w]) {
        const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(p[w]));
        BitGraph::reset(p, v);
        BitGraph::Row next(p.size());
        const auto& nv = g_.neighbours(v);
        for (std::size_t x = 0; x < p.size(); ++x) next[x] = p[x] & nv[x];
        clique.push_back(v);
        if (find_lex_min(clique, next, target)) return true;
        clique.pop_back();
        if (clique.size() + BitGraph::count(p) < target) return false;
      }
    }
    return false;
  }

  const BitGraph& g_;
  std::size_t best_size_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace packlab
