#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace cel {

// Fixed-universe bitset. Used for individual sets over the dense numbering of
// the knowledge base universe and for class-closure rows in the hierarchy.
class DenseBitset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  DenseBitset() = default;
  explicit DenseBitset(std::size_t universe, bool value = false)
      : size_(universe), words_((universe + kWordBits - 1) / kWordBits, value ? ~Word{0} : Word{0}) {
    trim();
  }

  std::size_t universe_size() const noexcept { return size_; }
  std::size_t word_count() const noexcept { return words_.size(); }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

  Word word(std::size_t w) const noexcept { return words_[w]; }
  Word& word(std::size_t w) noexcept { return words_[w]; }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool none() const noexcept {
    for (Word w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  DenseBitset& operator&=(const DenseBitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  DenseBitset& operator|=(const DenseBitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  DenseBitset& subtract(const DenseBitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  DenseBitset& flip() noexcept {
    for (Word& w : words_) w = ~w;
    trim();
    return *this;
  }

  friend DenseBitset operator&(DenseBitset a, const DenseBitset& b) noexcept { return a &= b; }
  friend DenseBitset operator|(DenseBitset a, const DenseBitset& b) noexcept { return a |= b; }

  std::size_t intersection_count(const DenseBitset& o) const noexcept {
    std::size_t n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) n += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return n;
  }
  bool is_subset_of(const DenseBitset& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    }
    return true;
  }

  // Indices of set bits in increasing order.
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        f(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const DenseBitset&, const DenseBitset&) = default;

 private:
  void trim() noexcept {
    if (const std::size_t rem = size_ % kWordBits; rem != 0 && !words_.empty()) {
      words_.back() &= (Word{1} << rem) - 1;
    }
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

using IndividualSet = DenseBitset;

}  // namespace cel
