#pragma once

#include <functional>
#include <vector>

#include "unclon/bits.hpp"
#include "unclon/crypto/program.hpp"
#include "unclon/qsim.hpp"
#include "unclon/stats.hpp"

namespace unclon::games {

enum class DistributionKind { kUniform, kIdentical };

// What one player may carry away from the splitting phase. Bob's and
// Charlie's shares are disjoint values handed to separate calls; the harness
// never moves information between them afterwards.
struct Share {
  std::vector<qsim::QuantumRegister> regs;
  std::vector<gf2::F2Vector> vecs;
  std::vector<uint64_t> words;
  std::vector<Bits> bits;
  std::vector<crypto::ObfProgram> programs;
};

// Theta_n = weight-n/2 strings, lexicographic.
std::vector<gf2::F2Vector> theta_list(int n);
// Uniform over Theta_n via shuffle of a fixed-weight template.
gf2::F2Vector sample_theta(int n, Rng& rng);

// x restricted to the positions where theta_i = b, in index order.
gf2::F2Vector restrict_to(const gf2::F2Vector& x, const gf2::F2Vector& theta, int b);

// Deterministic Monte-Carlo driver: trial t always runs on Rng::stream(seed,
// t), so results do not depend on the worker count (UNCLON_WORKERS, default
// hardware). Exceptions abort the whole run.
uint64_t run_trials(uint64_t trials, uint64_t seed,
                    const std::function<bool(uint64_t, Rng&)>& trial);

}  // namespace unclon::games
