#pragma once

#include <boost/container/small_vector.hpp>

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace isoproj {

/// Fixed-universe bitset over vertex (or constraint) indices.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe) : size_(universe), words_((universe + 63) / 64, 0) {}

  static IndexSet from_indices(std::size_t universe, const std::vector<int>& idx) {
    IndexSet s(universe);
    for (int i : idx) s.set(static_cast<std::size_t>(i));
    return s;
  }

  static IndexSet full(std::size_t universe) {
    IndexSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.set(i);
    return s;
  }

  std::size_t universe() const { return size_; }

  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  bool is_subset_of(const IndexSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  IndexSet& operator&=(const IndexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  IndexSet& operator|=(const IndexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }

  /// Count of the intersection without materializing it.
  std::size_t intersection_count(const IndexSet& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }

  bool operator==(const IndexSet& o) const { return size_ == o.size_ && words_ == o.words_; }
  bool operator!=(const IndexSet& o) const { return !(*this == o); }
  bool operator<(const IndexSet& o) const { return words_ < o.words_; }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        out.push_back(static_cast<int>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  int first() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w])));
    return -1;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : words_) {
      h ^= std::hash<std::uint64_t>{}(w);
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  std::size_t size_ = 0;
  boost::container::small_vector<std::uint64_t, 2> words_;
};

struct IndexSetHash {
  std::size_t operator()(const IndexSet& s) const { return s.hash(); }
};

}  // namespace isoproj
