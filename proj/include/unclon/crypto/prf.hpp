#pragma once

#include <cstdint>
#include <vector>

#include "unclon/bits.hpp"
#include "unclon/rng.hpp"

namespace unclon::crypto {

struct PrfParams {
  int in_bits = 0;
  int out_bits = 0;

  bool operator==(const PrfParams&) const = default;
};

// GGM tree over a 64-bit node state with a splitmix-style length doubler.
// Desk-scale stand-in for a puncturable PRF: functionality (and exhaustive
// puncturing agreement) is what the artifact verifies, not security.
struct PrfKey {
  PrfParams params;
  uint64_t seed = 0;
};

struct PrfPuncturedKey {
  PrfParams params;
  Bits point;
  // Sibling seeds along the path to `point`, one per depth.
  std::vector<uint64_t> copath;
};

PrfKey prf_keygen(const PrfParams& params, Rng& rng);
Bits prf_eval(const PrfKey& key, const Bits& x);
PrfPuncturedKey prf_puncture(const PrfKey& key, const Bits& point);
// Reproduces prf_eval everywhere except the punctured point, where it throws.
Bits prf_eval_punctured(const PrfPuncturedKey& key, const Bits& x);

}  // namespace unclon::crypto
