#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace graphtd {

/// Deterministic random source. All experiment randomness flows from one
/// base seed through named substreams so that runs are reproducible and
/// per-item streams are independent of iteration order.
///
/// Integer draws avoid std::uniform_int_distribution on purpose: its
/// output is implementation-defined, and seeded runs should not change
/// across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : base_(seed), engine_(mix(seed, 0x9e3779b97f4a7c15ull)) {}

  Rng substream(uint64_t tag) const { return Rng(mix(base_, tag)); }
  Rng substream(std::string_view name) const { return substream(fnv1a(name)); }
  Rng substream(std::string_view name, uint64_t tag) const {
    return Rng(mix(mix(base_, fnv1a(name)), tag));
  }

  uint64_t next() { return engine_(); }

  /// Unbiased draw from [0, n) by rejection.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  /// Inclusive range.
  int range(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  /// Fisher-Yates shuffle of 0..n-1.
  std::vector<int> shuffled_ids(int n) {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(below(static_cast<uint64_t>(i) + 1));
      std::swap(ids[i], ids[j]);
    }
    return ids;
  }

  static uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (const char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    return h;
  }

 private:
  // splitmix64 finalizer; decorrelates substream seeds.
  static uint64_t mix(uint64_t a, uint64_t b) {
    uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t base_;
  std::mt19937_64 engine_;
};

}  // namespace graphtd
