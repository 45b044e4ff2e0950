#include <cmath>

#include "doctest.h"
#include "unclon/games/finite.hpp"
#include "unclon/games/moe.hpp"

using namespace unclon;
using namespace unclon::games;

namespace {

// Independent oracle for the identity-to-Bob strategy: Bob measures the
// (forwarded) challenge state in the computational basis and echoes the
// restriction, Charlie answers all-zero. Enumerates the Born distributions.
double brute_identity_bob_value(int n) {
  auto thetas = theta_list(n);
  double total = 0.0;
  int terms = 0;
  for (const auto& theta : thetas) {
    for (uint64_t xw = 0; xw < (1ULL << n); ++xw) {
      gf2::F2Vector x(xw, n);
      auto dist = qsim::exact_outcome_distribution(qsim::bb84_state(x, theta),
                                                   gf2::F2Vector::zero(n));
      for (int b = 0; b < 2; ++b) {
        gf2::F2Vector want = restrict_to(x, theta, b);
        double bob = 0.0;
        for (const auto& [u, p] : dist)
          if (restrict_to(u, theta, b) == want) bob += p;
        double charlie = want.is_zero() ? 1.0 : 0.0;
        total += bob * charlie;
        ++terms;
      }
    }
  }
  return total / terms;
}

}  // namespace

TEST_CASE("finite trivial strategy is valid and reproduces the trivial value") {
  for (int n : {2, 4}) {
    FiniteStrategy fs = finite_trivial_strategy(n);
    CHECK(valid_strategy(fs));
    double want = 0.5 + std::pow(2.0, -n / 2.0 - 1.0);
    CHECK(exact_moe_value(fs) == doctest::Approx(want).epsilon(1e-12));
    // Third route: the sampling harness's enumeration oracle.
    CHECK(exact_bb84_identical(n, bb84_trivial_strategy()) ==
          doctest::Approx(exact_moe_value(fs)).epsilon(1e-12));
  }
}

TEST_CASE("lemma 3.1 equality: identity channel strategy") {
  FiniteStrategy fs = finite_identity_bob_strategy(2);
  CHECK(valid_strategy(fs));
  double p = exact_moe_value(fs);
  double pp = exact_enl_value(lift_to_extended(fs));
  CHECK(std::abs(p - pp) < 1e-9);
  CHECK(p == doctest::Approx(brute_identity_bob_value(2)).epsilon(1e-12));
}

TEST_CASE("lemma 3.1 equality: random isometries and measurements") {
  for (uint64_t seed : {101u, 202u, 303u}) {
    Rng rng(seed);
    FiniteStrategy fs = random_finite_strategy(2, 2, 2, rng);
    CHECK(valid_strategy(fs));
    double p = exact_moe_value(fs);
    double pp = exact_enl_value(lift_to_extended(fs));
    CHECK(std::abs(p - pp) < 1e-9);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0 + 1e-12);
  }
}

TEST_CASE("lemma 3.1 equality: lifted trivial strategy hits 1/2 + 2^{-n/2-1}") {
  FiniteStrategy fs = finite_trivial_strategy(2);
  EnlStrategy es = lift_to_extended(fs);
  CHECK(exact_enl_value(es) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("extended non-local sampled run matches the exact value") {
  FiniteStrategy fs = finite_trivial_strategy(2);
  EnlStrategy es = lift_to_extended(fs);
  double exact = exact_enl_value(es);
  WinStats stats = run_extended_nonlocal(es, 20000, 404);
  CHECK(stats.covers(exact));

  Rng rng(7);
  FiniteStrategy rnd = random_finite_strategy(2, 2, 2, rng);
  EnlStrategy res = lift_to_extended(rnd);
  double rexact = exact_enl_value(res);
  WinStats rstats = run_extended_nonlocal(res, 20000, 405);
  CHECK(rstats.covers(rexact));
}

TEST_CASE("random projective families are valid with zero projectors allowed") {
  Rng rng(8);
  for (int outcomes : {2, 4, 8}) {
    ProjFamily fam = random_projective_family(4, outcomes, rng);
    qsim::Matrix sum = qsim::Matrix::Zero(4, 4);
    for (const auto& op : fam.ops) {
      CHECK(qsim::is_projector(op, 1e-9));
      sum += op;
    }
    CHECK((sum - qsim::Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("undersized player registers cannot host an isometry") {
  Rng rng(9);
  CHECK_THROWS_AS(random_finite_strategy(4, 2, 2, rng), ParameterError);
}
