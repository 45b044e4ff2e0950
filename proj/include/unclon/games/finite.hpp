#pragma once

#include "unclon/games/common.hpp"

namespace unclon::games {

// Projective measurement family indexed by answer substrings (packed as
// integers); zero projectors are allowed so small ancillas can carry many
// outcomes.
struct ProjFamily {
  std::vector<qsim::Matrix> ops;
};

// One player's measurement families, one per (theta, b).
struct MeasFamilies {
  int n = 0;
  int dim = 0;
  std::vector<std::array<ProjFamily, 2>> fam;  // [theta_idx][b]

  const ProjFamily& at(int theta_idx, int b) const {
    return fam[static_cast<size_t>(theta_idx)][static_cast<size_t>(b)];
  }
};

// Checks completeness and projectivity of every family.
bool valid_families(const MeasFamilies& f, double tol = 1e-9);

// Explicit strategy for the BB84 identical-basis monogamy game: Alice is an
// isometry from the challenge register into Bob x Charlie, both players
// measure projectively on their registers.
struct FiniteStrategy {
  int n = 0;
  int dim_b = 0, dim_c = 0;
  qsim::Matrix alice;  // (dim_b * dim_c) x 2^n, columns orthonormal
  MeasFamilies bob, charlie;
};

// Strategy for the extended non-local game: the players prepared psi on
// challenge x Bob x Charlie and handed the challenge register over.
struct EnlStrategy {
  int n = 0;
  int dim_b = 0, dim_c = 0;
  qsim::CVector psi;  // dimension 2^n * dim_b * dim_c
  MeasFamilies bob, charlie;
};

bool valid_strategy(const FiniteStrategy& fs, double tol = 1e-9);

// Exact winning probabilities by dense evaluation.
double exact_moe_value(const FiniteStrategy& fs);
double exact_enl_value(const EnlStrategy& es);

// The EPR construction: psi = (I (x) V) |phi+>^{(x) n}. Winning probabilities
// of fs and its lift agree exactly.
EnlStrategy lift_to_extended(const FiniteStrategy& fs);

// Monte-Carlo run of the extended non-local game.
WinStats run_extended_nonlocal(const EnlStrategy& es, uint64_t trials, uint64_t seed);

// Built-ins.
FiniteStrategy finite_trivial_strategy(int n);
// Alice forwards the challenge to Bob untouched; Charlie answers all-zero.
FiniteStrategy finite_identity_bob_strategy(int n);
FiniteStrategy random_finite_strategy(int n, int dim_b, int dim_c, Rng& rng);

// Haar-ish random projective family with `outcomes` outcomes on dimension d.
ProjFamily random_projective_family(int d, int outcomes, Rng& rng);

}  // namespace unclon::games
