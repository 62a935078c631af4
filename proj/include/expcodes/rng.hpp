#pragma once

#include <cstdint>
#include <vector>

namespace expcodes {

/// Deterministic 64-bit generator (splitmix64). We use this everywhere instead
/// of <random> distributions so that seeded runs are reproducible across
/// platforms and standard library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Unbiased integer in [0, m). m must be positive.
  std::uint64_t below(std::uint64_t m) {
    // rejection sampling on the top of the range
    std::uint64_t limit = ~0ull - (~0ull % m);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % m;
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Fisher-Yates shuffle.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  /// k distinct indices from [0, n), in random order.
  std::vector<int> sample_without_replacement(int n, int k);

 private:
  std::uint64_t state_;
};

inline std::vector<int> Rng::sample_without_replacement(int n, int k) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  shuffle(pool);
  pool.resize(k);
  return pool;
}

}  // namespace expcodes
