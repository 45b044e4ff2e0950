#pragma once

#include <cstdint>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "unclon/errors.hpp"

namespace unclon {

inline uint64_t splitmix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seeded randomness handed around explicitly; never shared between trial
// workers. Bounded sampling and shuffling are hand-rolled so that a given
// seed produces the same stream on every standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(splitmix64(seed)) {}

  // Independent stream for trial `index` of a run seeded with `seed`.
  static Rng stream(uint64_t seed, uint64_t index) {
    Rng r(0);
    r.eng_.seed(splitmix64(seed) ^ splitmix64(index * 0x9e3779b97f4a7c15ULL + 0x3c6ef372fe94f82aULL));
    return r;
  }

  uint64_t u64() { return eng_(); }

  int bit() { return static_cast<int>(eng_() >> 63); }

  // k uniform bits in the low positions, 0 <= k <= 64.
  uint64_t word(int k) {
    if (k < 0 || k > 64) throw ParameterError("Rng::word: k out of range");
    if (k == 0) return 0;
    return eng_() >> (64 - k);
  }

  // Uniform in [0, m), m >= 1, by masked rejection.
  uint64_t below(uint64_t m) {
    if (m == 0) throw ParameterError("Rng::below: empty range");
    if (m == 1) return 0;
    uint64_t mask = ~0ULL >> __builtin_clzll(m - 1);
    uint64_t v;
    do {
      v = eng_() & mask;
    } while (v >= m);
    return v;
  }

  double real() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * real() - 1.0;
      v = 2.0 * real() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace unclon
