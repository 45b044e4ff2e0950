#pragma once

#include <string>

#include "unclon/games/common.hpp"

namespace unclon::games {

// Harness-side view of one sampled challenge (A, s, s'). Strategies never see
// it unless they are declared white-box diagnostics.
struct MoeInstance {
  gf2::CosetPair pair;
  gf2::Coset primal;
  gf2::Coset dual;
};

// Question handed to both players. In the identical-basis games b is the
// challenge basis; the original game has no shared bit, so the harness passes
// each player their own target basis (0 for Bob, 1 for Charlie), which only
// restates their publicly known role.
struct MoeQuestion {
  gf2::F2Subspace A;
  int b = 0;
};

// Adversary triple for the coset-state games. Alice splits; Bob and Charlie
// each answer from their own share. `exact` (optional) gives the probability
// that both answers are correct for a fixed instance and basis, used by the
// enumeration oracle.
struct MoeCosetStrategy {
  std::string name;
  bool wants_instance = false;  // white-box diagnostic strategies only
  std::function<std::pair<Share, Share>(qsim::QuantumRegister&&,
                                        const std::vector<crypto::ObfProgram>&,
                                        const MoeInstance*, Rng&)>
      split;
  std::function<gf2::F2Vector(Share&, const MoeQuestion&, Rng&)> bob, charlie;
  std::function<double(const MoeInstance&, int b)> exact;
};

struct BbQuestion {
  gf2::F2Vector theta;
  int b = 0;
};

struct Bb84Strategy {
  std::string name;
  std::function<std::pair<Share, Share>(qsim::QuantumRegister&&, Rng&)> split;
  // Answers are the n/2-bit restrictions x_{T_b}.
  std::function<gf2::F2Vector(Share&, const BbQuestion&, Rng&)> bob, charlie;
  std::function<double(const gf2::F2Vector& x, const gf2::F2Vector& theta, int b)> exact;
};

struct ParallelQuestion {
  std::vector<gf2::F2Subspace> A;
  Bits r;
};

// Product-form strategies for the kappa-parallel game: the exact hook is per
// register, the harness behavior may be arbitrary.
struct MoeParallelStrategy {
  std::string name;
  std::function<std::pair<Share, Share>(std::vector<qsim::QuantumRegister>&&,
                                        const std::vector<crypto::ObfProgram>&, Rng&)>
      split;
  std::function<std::vector<gf2::F2Vector>(Share&, const ParallelQuestion&, Rng&)> bob,
      charlie;
  std::function<double(const MoeInstance&, int r_i)> exact_per_register;
};

// Monte-Carlo harnesses. The challenge bit b (resp. string r) is sampled
// strictly after the split returns. Malformed answers abort the run with
// StrategyError instead of counting as losses.
WinStats run_moe_identical_coset(int n, const MoeCosetStrategy& strat, uint64_t trials,
                                 uint64_t seed);
WinStats run_moe_identical_bb84(int n, const Bb84Strategy& strat, uint64_t trials,
                                uint64_t seed);
WinStats run_moe_original(int n, const MoeCosetStrategy& strat, uint64_t trials,
                          uint64_t seed);
WinStats run_moe_computational(int n, const MoeCosetStrategy& strat, uint64_t trials,
                               uint64_t seed);
WinStats run_moe_parallel(int n, int kappa, const MoeParallelStrategy& strat,
                          uint64_t trials, uint64_t seed);

// Exact enumeration oracles: average the strategies' per-instance win
// probabilities over all challenger randomness. Enumeration capped at 1e7.
double exact_coset_identical(int n, const MoeCosetStrategy& strat);
double exact_bb84_identical(int n, const Bb84Strategy& strat);
double exact_original(int n, const MoeCosetStrategy& strat);
double exact_computational(int n, const MoeCosetStrategy& strat);
double exact_parallel(int n, int kappa, const MoeParallelStrategy& strat);

// Built-in baseline strategies.
Bb84Strategy bb84_trivial_strategy();
Bb84Strategy bb84_measure_computational_strategy();
MoeCosetStrategy coset_trivial_strategy();
MoeCosetStrategy coset_answer_zero_strategy();
MoeCosetStrategy coset_split_roles_strategy();  // white-box diagnostic
MoeCosetStrategy original_measure_forward_strategy();
MoeCosetStrategy original_state_to_bob_strategy();
MoeCosetStrategy original_canonical_echo_strategy();
MoeCosetStrategy computational_program_reader_strategy();
MoeParallelStrategy parallel_trivial_strategy();
MoeParallelStrategy parallel_program_reader_strategy();

// Fraction of one coset lying in the other, |(A+s) n (Adual+s')| / 2^{n/2}.
double cross_coset_mass(const MoeInstance& inst);

}  // namespace unclon::games
