#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace fibset {

using element_t = std::uint32_t;
constexpr element_t kIdentity = 0;  // in every group, 0 is the identity element

// Largest group order the bitset kernels can address.
constexpr std::size_t kMaxKernelOrder = 256;

// Fixed-capacity bitset over element indices. Kernels use it for membership
// and hashing; the public Subgroup type keeps a sorted member list as well.
class ElementSet {
 public:
  static constexpr std::size_t kWords = kMaxKernelOrder / 64;

  ElementSet() = default;

  void insert(element_t e) { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  void erase(element_t e) { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }
  bool contains(element_t e) const { return (words_[e >> 6] >> (e & 63)) & 1U; }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  ElementSet& operator|=(const ElementSet& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElementSet& operator&=(const ElementSet& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  bool subset_of(const ElementSet& o) const {
    for (std::size_t i = 0; i < kWords; ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < kWords; ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        const int bit = std::countr_zero(w);
        fn(static_cast<element_t>(i * 64 + static_cast<std::size_t>(bit)));
        w &= w - 1;
      }
    }
  }

  std::vector<element_t> to_vector() const {
    std::vector<element_t> out;
    out.reserve(size());
    for_each([&](element_t e) { out.push_back(e); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  std::array<std::uint64_t, kWords> words_{};
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

}  // namespace fibset
