#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unclon/errors.hpp"
#include "unclon/rng.hpp"

namespace unclon::gf2 {

// Vectors over F2 packed into one machine word, n <= 64. Index 0 is the most
// significant position, so lexicographic comparison of bitstrings coincides
// with numeric comparison of the packed words and |v> basis indices read the
// same way the paper prints them ("0110" etc).
struct F2Vector {
  uint64_t bits = 0;
  int n = 0;

  F2Vector() = default;
  F2Vector(uint64_t bits_, int n_);

  static F2Vector zero(int n) { return F2Vector(0, n); }
  static F2Vector random(int n, Rng& rng);
  static F2Vector from_string(const std::string& s);

  int bit(int i) const { return static_cast<int>((bits >> (n - 1 - i)) & 1u); }
  void set_bit(int i, int v);
  int weight() const { return __builtin_popcountll(bits); }
  bool is_zero() const { return bits == 0; }
  std::string to_string() const;

  friend bool operator==(const F2Vector& a, const F2Vector& b) {
    return a.n == b.n && a.bits == b.bits;
  }
  friend bool operator!=(const F2Vector& a, const F2Vector& b) { return !(a == b); }
  // Lexicographic with index 0 most significant.
  friend bool operator<(const F2Vector& a, const F2Vector& b);
  friend F2Vector operator^(const F2Vector& a, const F2Vector& b);
};

int inner(const F2Vector& u, const F2Vector& v);

// A subspace of F2^n held in reduced row-echelon form: rows ordered by pivot,
// every pivot column carries a single 1.
class F2Subspace {
 public:
  F2Subspace() = default;
  static F2Subspace from_rows(const std::vector<F2Vector>& rows, int n);
  static F2Subspace zero(int n) { return from_rows({}, n); }
  static F2Subspace full(int n);

  int n = 0;
  int dim() const { return static_cast<int>(rows_.size()); }
  std::vector<F2Vector> basis() const;
  const std::vector<uint64_t>& rows() const { return rows_; }

  bool contains(const F2Vector& u) const;
  // Lexicographically smallest element of A + u; constant on cosets.
  F2Vector canonical_rep(const F2Vector& u) const;
  // Element indexed by the low dim() bits of idx (basis combination).
  F2Vector element(uint64_t idx) const;
  // Uniform element of the subspace.
  F2Vector sample_element(Rng& rng) const;
  std::vector<F2Vector> enumerate() const;  // all 2^dim elements, dim <= 24

  F2Subspace dual() const;

  friend bool operator==(const F2Subspace& a, const F2Subspace& b) {
    return a.n == b.n && a.rows_ == b.rows_;
  }
  friend bool operator<(const F2Subspace& a, const F2Subspace& b) {
    return a.rows_ < b.rows_;
  }

 private:
  std::vector<uint64_t> rows_;  // RREF, descending numeric order
};

// Coset A + s with its canonical (lexicographically smallest) representative.
struct Coset {
  F2Subspace space;
  F2Vector rep;

  Coset() = default;
  Coset(F2Subspace space_, const F2Vector& shift);
  bool member(const F2Vector& u) const;
  std::vector<F2Vector> enumerate() const;
  F2Vector sample_element(Rng& rng) const;
  friend bool operator==(const Coset& a, const Coset& b) {
    return a.space == b.space && a.rep == b.rep;
  }
};

// One sampled instance (A, s, s'): the raw shift vectors are kept as drawn,
// the win conditions downstream only ever look at the cosets they describe.
struct CosetPair {
  F2Subspace space;
  F2Vector shift;       // s
  F2Vector dual_shift;  // s'

  Coset primal() const { return Coset(space, shift); }
  Coset dual() const { return Coset(space.dual(), dual_shift); }
};

// Rejection-samples k x n random bit matrices until rank k, then reduces.
// Uniform over dimension-k subspaces (every subspace has the same number of
// ordered bases).
F2Subspace sample_subspace(int n, int k, Rng& rng);

// A <- dim n/2, (s, s') <- F2^n x F2^n, both unconditioned.
CosetPair sample_coset_pair(int n, Rng& rng);

// All dimension-k subspaces of F2^n. Exhaustive; small n only.
std::vector<F2Subspace> enumerate_subspaces(int n, int k);

}  // namespace unclon::gf2
