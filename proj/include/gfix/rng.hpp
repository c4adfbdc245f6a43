#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace gfix {

// Seeded generator whose draws are identical across standard libraries:
// only the raw mt19937_64 stream is used, never <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  int below(int n) {
    return n <= 0 ? 0 : static_cast<int>(eng_() % static_cast<std::uint64_t>(n));
  }

  int range(int lo, int hi) { return lo + below(hi - lo + 1); }

  bool chance(int num, int den) { return below(den) < num; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(below(static_cast<int>(v.size())))];
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(static_cast<int>(i)));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Independent per-trial seed derived from a run seed, a label and an index.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ fnv1a(label)) + index);
}

}  // namespace gfix
