#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "unclon/gf2.hpp"

using namespace unclon;
using namespace unclon::gf2;

namespace {

// Brute-force span closure from raw generator words; independent of the RREF
// code paths under test.
std::set<uint64_t> closure(const std::vector<uint64_t>& gens) {
  std::set<uint64_t> span{0};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<uint64_t> cur(span.begin(), span.end());
    for (uint64_t g : gens)
      for (uint64_t v : cur)
        if (span.insert(v ^ g).second) grew = true;
  }
  return span;
}

std::set<uint64_t> closure_of(const F2Subspace& A) {
  std::vector<uint64_t> gens;
  for (const auto& b : A.basis()) gens.push_back(b.bits);
  return closure(gens);
}

uint64_t brute_coset_min(const F2Subspace& A, const F2Vector& u) {
  uint64_t best = ~0ULL;
  for (uint64_t a : closure_of(A)) best = std::min(best, a ^ u.bits);
  return best;
}

}  // namespace

TEST_CASE("inner product basics") {
  Rng rng(11);
  F2Vector v = F2Vector::random(7, rng);
  CHECK(inner(F2Vector::zero(7), v) == 0);
  CHECK(inner(v, v) == v.weight() % 2);
  CHECK(inner(F2Vector::from_string("1011"), F2Vector::from_string("1110")) == 0);
  CHECK_THROWS_AS(inner(F2Vector::zero(3), F2Vector::zero(4)), ParameterError);
}

TEST_CASE("bitstring text form round-trips, index 0 most significant") {
  F2Vector v = F2Vector::from_string("0110");
  CHECK(v.bit(0) == 0);
  CHECK(v.bit(1) == 1);
  CHECK(v.bit(3) == 0);
  CHECK(v.to_string() == "0110");
  CHECK(F2Vector::from_string("0100") < F2Vector::from_string("1000"));
}

TEST_CASE("sample_subspace degenerate dimensions") {
  Rng rng(1);
  F2Subspace full = sample_subspace(2, 2, rng);
  CHECK(full.dim() == 2);
  CHECK(closure_of(full).size() == 4);  // only one 2-dim subspace of F2^2

  F2Subspace zero = sample_subspace(4, 0, rng);
  CHECK(zero.dim() == 0);
  CHECK(zero.contains(F2Vector::zero(4)));
  CHECK_FALSE(zero.contains(F2Vector::from_string("0001")));

  CHECK_THROWS_AS(sample_subspace(4, 5, rng), ParameterError);
}

TEST_CASE("enumerate_subspaces counts match Gaussian binomials") {
  CHECK(enumerate_subspaces(2, 1).size() == 3);
  CHECK(enumerate_subspaces(4, 2).size() == 35);
  CHECK(enumerate_subspaces(6, 3).size() == 1395);
}

TEST_CASE("sample_subspace histogram is uniform over the 35 subspaces of F2^4") {
  // Oracle: brute-force enumeration of all dim-2 subspaces as element sets.
  std::set<std::set<uint64_t>> all;
  for (uint64_t a = 1; a < 16; ++a)
    for (uint64_t b = a + 1; b < 16; ++b)
      if (closure({a, b}).size() == 4) all.insert(closure({a, b}));
  REQUIRE(all.size() == 35);

  std::map<std::set<uint64_t>, int> hist;
  Rng rng(20240);
  const int kDraws = 10000;
  for (int i = 0; i < kDraws; ++i) hist[closure_of(sample_subspace(4, 2, rng))]++;

  CHECK(hist.size() == 35);
  double p = 1.0 / 35.0;
  double sigma = std::sqrt(p * (1 - p) / kDraws);
  double chi2 = 0.0;
  for (const auto& s : all) {
    double freq = hist[s] / static_cast<double>(kDraws);
    CHECK(std::abs(freq - p) <= 3.0 * sigma);
    double expect = kDraws * p;
    chi2 += (hist[s] - expect) * (hist[s] - expect) / expect;
  }
  // 34 dof, 99.9th percentile ~ 65.2
  CHECK(chi2 < 65.2);
}

TEST_CASE("dual of standard-basis span and full space") {
  auto e = [](int n, int i) {
    F2Vector v = F2Vector::zero(n);
    v.set_bit(i, 1);
    return v;
  };
  F2Subspace a = F2Subspace::from_rows({e(4, 0), e(4, 1)}, 4);
  F2Subspace expect = F2Subspace::from_rows({e(4, 2), e(4, 3)}, 4);
  CHECK(a.dual() == expect);
  CHECK(F2Subspace::full(5).dual().dim() == 0);
  CHECK(F2Subspace::zero(5).dual() == F2Subspace::full(5));
}

TEST_CASE("dual: exhaustive orthogonality and involution at n=8") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    F2Subspace a = sample_subspace(8, 4, rng);
    F2Subspace b = a.dual();
    CHECK(b.dim() == 4);
    for (const auto& u : a.basis())
      for (const auto& v : b.basis()) CHECK(inner(u, v) == 0);
    // Oracle: the dual is exactly the vectors orthogonal to every basis row.
    std::set<uint64_t> expect;
    for (uint64_t w = 0; w < 256; ++w) {
      bool ok = true;
      for (const auto& u : a.basis())
        if (inner(F2Vector(w, 8), u)) ok = false;
      if (ok) expect.insert(w);
    }
    CHECK(closure_of(b) == expect);
    CHECK(b.dual() == a);
  }
}

TEST_CASE("dual involution and dimension count up to n=16") {
  Rng rng(99);
  for (int n = 2; n <= 16; n += 2) {
    for (int rep = 0; rep < 10; ++rep) {
      int k = static_cast<int>(rng.below(static_cast<uint64_t>(n) + 1));
      F2Subspace a = sample_subspace(n, k, rng);
      CHECK(a.dim() + a.dual().dim() == n);
      CHECK(a.dual().dual() == a);
    }
  }
}

TEST_CASE("canonical_rep basics") {
  Rng rng(5);
  F2Subspace a = sample_subspace(6, 3, rng);
  for (uint64_t idx = 0; idx < 8; ++idx)
    CHECK(a.canonical_rep(a.element(idx)) == F2Vector::zero(6));

  F2Subspace span1100 = F2Subspace::from_rows({F2Vector::from_string("1100")}, 4);
  CHECK(span1100.canonical_rep(F2Vector::from_string("0100")) ==
        F2Vector::from_string("0100"));
  CHECK_THROWS_AS(span1100.canonical_rep(F2Vector::zero(5)), ParameterError);
}

TEST_CASE("canonical_rep equals brute-force coset minimum, n <= 10") {
  Rng rng(31337);
  for (int rep = 0; rep < 60; ++rep) {
    int n = 2 + static_cast<int>(rng.below(9));  // 2..10
    int k = static_cast<int>(rng.below(static_cast<uint64_t>(n) + 1));
    F2Subspace a = sample_subspace(n, k, rng);
    F2Vector u = F2Vector::random(n, rng);
    CHECK(a.canonical_rep(u).bits == brute_coset_min(a, u));
  }
}

TEST_CASE("canonical_rep constant on cosets, exhaustive n <= 10") {
  Rng rng(404);
  for (int rep = 0; rep < 10; ++rep) {
    int n = 4 + 2 * static_cast<int>(rng.below(4));  // 4..10
    F2Subspace a = sample_subspace(n, n / 2, rng);
    F2Vector u = F2Vector::random(n, rng);
    F2Vector want = a.canonical_rep(u);
    for (uint64_t av : closure_of(a))
      CHECK(a.canonical_rep(u ^ F2Vector(av, n)) == want);
  }
}

TEST_CASE("coset membership agrees with exhaustive enumeration") {
  Rng rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    F2Subspace a = sample_subspace(8, 4, rng);
    F2Vector s = F2Vector::random(8, rng);
    Coset c(a, s);
    CHECK(c.member(s));
    CHECK(Coset(a, F2Vector::zero(8)).member(a.sample_element(rng)));
    auto span = closure_of(a);
    for (uint64_t w = 0; w < 256; ++w) {
      bool expect = span.count(w ^ s.bits) > 0;
      CHECK(c.member(F2Vector(w, 8)) == expect);
    }
  }
}

TEST_CASE("coset enumerate and sampling stay inside the coset") {
  Rng rng(15);
  CosetPair p = sample_coset_pair(6, rng);
  Coset c = p.primal();
  auto elems = c.enumerate();
  CHECK(elems.size() == 8);
  for (const auto& e : elems) CHECK(c.member(e));
  for (int i = 0; i < 32; ++i) CHECK(c.member(c.sample_element(rng)));
  CHECK(p.dual().member(p.dual_shift));
}

TEST_CASE("reduced-row-form normalization is idempotent") {
  Rng rng(2024);
  for (int rep = 0; rep < 30; ++rep) {
    int n = 2 + static_cast<int>(rng.below(15));
    int k = static_cast<int>(rng.below(static_cast<uint64_t>(n) + 1));
    F2Subspace a = sample_subspace(n, k, rng);
    CHECK(F2Subspace::from_rows(a.basis(), n) == a);
  }
}
