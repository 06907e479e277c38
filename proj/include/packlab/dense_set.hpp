#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "packlab/group.hpp"

namespace packlab {

/// A subset of a finite group, stored as one membership bit per canonical index.
class DenseSet {
 public:
  explicit DenseSet(Group group)
      : group_(std::move(group)), words_((group_.order() + 63) / 64, 0) {}

  static DenseSet full(const Group& group) {
    DenseSet s(group);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.clear_tail();
    return s;
  }

  static DenseSet from_indices(const Group& group, const std::vector<std::size_t>& indices) {
    DenseSet s(group);
    for (const auto i : indices) {
      if (i >= group.order()) throw InputError("element index out of range");
      s.insert(i);
    }
    return s;
  }

  static DenseSet from_elems(const Group& group, const std::vector<Elem>& elems) {
    DenseSet s(group);
    for (const auto& g : elems) s.insert(group.index_of(g));
    return s;
  }

  const Group& group() const { return group_; }
  std::size_t universe() const { return group_.order(); }

  bool contains(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  bool contains(const Elem& g) const { return contains(group_.index_of(g)); }
  void insert(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void erase(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (const auto w : words_) {
      if (w) return false;
    }
    return true;
  }
  bool is_full() const { return size() == universe(); }

  /// Calls f(index) for every member in ascending canonical order.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(bits));
        f(w * 64 + bit);
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::vector<Elem> elems() const {
    std::vector<Elem> out;
    for_each([&](std::size_t i) { out.push_back(group_.elem_at(i)); });
    return out;
  }

  DenseSet& operator|=(const DenseSet& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  DenseSet& operator&=(const DenseSet& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  /// Set difference.
  DenseSet& operator-=(const DenseSet& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  friend DenseSet operator|(DenseSet a, const DenseSet& b) { return a |= b; }
  friend DenseSet operator&(DenseSet a, const DenseSet& b) { return a &= b; }
  friend DenseSet operator-(DenseSet a, const DenseSet& b) { return a -= b; }

  DenseSet complement() const {
    DenseSet out(group_);
    for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
    out.clear_tail();
    return out;
  }

  bool intersects(const DenseSet& o) const {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & o.words_[w]) return true;
    }
    return false;
  }
  bool subset_of(const DenseSet& o) const {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & ~o.words_[w]) return false;
    }
    return true;
  }

  bool operator==(const DenseSet& o) const { return group_ == o.group_ && words_ == o.words_; }

  const std::vector<std::uint64_t>& words() const { return words_; }

  void check_same(const DenseSet& o) const {
    if (!(group_ == o.group_)) {
      throw InputError("sets live in different groups: " + group_.to_string() + " vs " +
                       o.group_.to_string());
    }
  }

 private:
  void clear_tail() {
    const std::size_t rem = group_.order() % 64;
    if (rem) words_.back() &= (std::uint64_t{1} << rem) - 1;
  }

  Group group_;
  std::vector<std::uint64_t> words_;
};

}  // namespace packlab
