#pragma once

#include <cmath>
#include <cstdint>

#include "unclon/errors.hpp"

namespace unclon {

// Two-sided 99% normal quantile, used for every Wilson interval we report.
inline constexpr double kZ99 = 2.5758293035489004;

struct WinStats {
  uint64_t trials = 0;
  uint64_t wins = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  uint64_t seed = 0;

  bool covers(double p) const { return ci_low <= p && p <= ci_high; }
};

inline WinStats make_win_stats(uint64_t wins, uint64_t trials, uint64_t seed) {
  if (trials == 0) throw ParameterError("make_win_stats: zero trials");
  WinStats s;
  s.trials = trials;
  s.wins = wins;
  s.seed = seed;
  double n = static_cast<double>(trials);
  double p = static_cast<double>(wins) / n;
  s.estimate = p;
  double z2 = kZ99 * kZ99;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = kZ99 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  s.ci_low = center - half;
  s.ci_high = center + half;
  return s;
}

}  // namespace unclon
