#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace beauville {

using Rank = std::uint32_t;

/// Bit vector over the elements of a group, indexed by element rank.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const { return universe_; }

  void insert(Rank r) { words_[r >> 6] |= std::uint64_t{1} << (r & 63); }
  void erase(Rank r) { words_[r >> 6] &= ~(std::uint64_t{1} << (r & 63)); }
  bool contains(Rank r) const { return (words_[r >> 6] >> (r & 63)) & 1; }

  std::size_t size() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  ElementSet& operator|=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElementSet& operator&=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }

  ElementSet complement() const {
    ElementSet c(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) c.words_[i] = ~words_[i];
    if (universe_ % 64) c.words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
    return c;
  }

  bool is_subset_of(const ElementSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  /// Calls f(rank) for every member in increasing rank order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        f(static_cast<Rank>(i * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<Rank> members() const {
    std::vector<Rank> out;
    out.reserve(size());
    for_each([&](Rank r) { out.push_back(r); });
    return out;
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace beauville
