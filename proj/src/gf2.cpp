#include "unclon/gf2.hpp"

#include <algorithm>
#include <set>

namespace unclon::gf2 {

namespace {

uint64_t mask_for(int n) { return n == 64 ? ~0ULL : ((1ULL << n) - 1); }

// Word bit position of vector index i (index 0 = most significant).
inline int word_bit(int n, int i) { return n - 1 - i; }

// Pivot index (leading 1) of a nonzero packed row.
inline int pivot_index(uint64_t row, int n) {
  return n - 1 - (63 - __builtin_clzll(row));
}

// In-place RREF; returns rows sorted by pivot index, pivot columns cleaned.
std::vector<uint64_t> rref(std::vector<uint64_t> rows, int n) {
  size_t r = 0;
  for (int col = 0; col < n && r < rows.size(); ++col) {
    uint64_t bit = 1ULL << word_bit(n, col);
    size_t sel = r;
    while (sel < rows.size() && !(rows[sel] & bit)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    for (size_t j = 0; j < rows.size(); ++j) {
      if (j != r && (rows[j] & bit)) rows[j] ^= rows[r];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

int rank_of(std::vector<uint64_t> rows, int n) {
  return static_cast<int>(rref(std::move(rows), n).size());
}

}  // namespace

F2Vector::F2Vector(uint64_t bits_, int n_) : bits(bits_), n(n_) {
  if (n_ < 1 || n_ > 64) throw ParameterError("F2Vector: n must be in [1, 64]");
  bits &= mask_for(n_);
}

F2Vector F2Vector::random(int n, Rng& rng) { return F2Vector(rng.word(n), n); }

F2Vector F2Vector::from_string(const std::string& s) {
  if (s.empty() || s.size() > 64) throw ParameterError("F2Vector: bad string length");
  uint64_t w = 0;
  for (char c : s) {
    if (c != '0' && c != '1') throw ParameterError("F2Vector: bad character");
    w = (w << 1) | static_cast<uint64_t>(c - '0');
  }
  return F2Vector(w, static_cast<int>(s.size()));
}

void F2Vector::set_bit(int i, int v) {
  uint64_t m = 1ULL << (n - 1 - i);
  if (v)
    bits |= m;
  else
    bits &= ~m;
}

std::string F2Vector::to_string() const {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i) s[i] = static_cast<char>('0' + bit(i));
  return s;
}

bool operator<(const F2Vector& a, const F2Vector& b) {
  if (a.n != b.n) throw ParameterError("F2Vector: comparing different lengths");
  return a.bits < b.bits;
}

F2Vector operator^(const F2Vector& a, const F2Vector& b) {
  if (a.n != b.n) throw ParameterError("F2Vector: xor of different lengths");
  return F2Vector(a.bits ^ b.bits, a.n);
}

int inner(const F2Vector& u, const F2Vector& v) {
  if (u.n != v.n) throw ParameterError("inner: length mismatch");
  return __builtin_popcountll(u.bits & v.bits) & 1;
}

F2Subspace F2Subspace::from_rows(const std::vector<F2Vector>& rows, int n) {
  if (n < 1 || n > 64) throw ParameterError("F2Subspace: n must be in [1, 64]");
  std::vector<uint64_t> packed;
  packed.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.n != n) throw ParameterError("F2Subspace: row length mismatch");
    if (r.bits) packed.push_back(r.bits);
  }
  F2Subspace s;
  s.n = n;
  s.rows_ = rref(std::move(packed), n);
  return s;
}

F2Subspace F2Subspace::full(int n) {
  std::vector<F2Vector> rows;
  for (int i = 0; i < n; ++i) {
    F2Vector e = F2Vector::zero(n);
    e.set_bit(i, 1);
    rows.push_back(e);
  }
  return from_rows(rows, n);
}

std::vector<F2Vector> F2Subspace::basis() const {
  std::vector<F2Vector> out;
  out.reserve(rows_.size());
  for (uint64_t r : rows_) out.emplace_back(r, n);
  return out;
}

bool F2Subspace::contains(const F2Vector& u) const {
  return canonical_rep(u).is_zero();
}

F2Vector F2Subspace::canonical_rep(const F2Vector& u) const {
  if (u.n != n) throw ParameterError("canonical_rep: dimension mismatch");
  // Clearing every pivot position yields the unique pivot-free coset element,
  // which is the lexicographic minimum for an RREF basis.
  uint64_t v = u.bits;
  for (uint64_t row : rows_) {
    uint64_t lead = 1ULL << (63 - __builtin_clzll(row));
    if (v & lead) v ^= row;
  }
  return F2Vector(v, n);
}

F2Vector F2Subspace::element(uint64_t idx) const {
  uint64_t v = 0;
  for (size_t i = 0; i < rows_.size(); ++i) {
    if ((idx >> i) & 1) v ^= rows_[i];
  }
  return F2Vector(v, n);
}

F2Vector F2Subspace::sample_element(Rng& rng) const {
  return element(rng.word(dim()));
}

std::vector<F2Vector> F2Subspace::enumerate() const {
  if (dim() > 24) throw CapacityError("F2Subspace::enumerate: dimension too large");
  std::vector<F2Vector> out;
  out.reserve(1ULL << dim());
  for (uint64_t idx = 0; idx < (1ULL << dim()); ++idx) out.push_back(element(idx));
  return out;
}

F2Subspace F2Subspace::dual() const {
  // One generator per free column f: e_f plus, at each pivot position, the
  // corresponding row's entry in column f. Orthogonal to every row by RREF
  // structure; n - dim of them, independent.
  std::vector<bool> is_pivot(n, false);
  std::vector<int> pivots;
  for (uint64_t row : rows_) {
    int p = pivot_index(row, n);
    is_pivot[p] = true;
    pivots.push_back(p);
  }
  std::vector<F2Vector> gens;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    uint64_t w = 1ULL << word_bit(n, f);
    for (size_t r = 0; r < rows_.size(); ++r) {
      if ((rows_[r] >> word_bit(n, f)) & 1) w |= 1ULL << word_bit(n, pivots[r]);
    }
    gens.emplace_back(w, n);
  }
  return from_rows(gens, n);
}

Coset::Coset(F2Subspace space_, const F2Vector& shift)
    : space(std::move(space_)), rep(space.canonical_rep(shift)) {}

bool Coset::member(const F2Vector& u) const {
  if (u.n != space.n) throw ParameterError("Coset::member: dimension mismatch");
  return space.canonical_rep(u) == rep;
}

std::vector<F2Vector> Coset::enumerate() const {
  auto elems = space.enumerate();
  for (auto& e : elems) e = e ^ rep;
  return elems;
}

F2Vector Coset::sample_element(Rng& rng) const {
  return space.sample_element(rng) ^ rep;
}

F2Subspace sample_subspace(int n, int k, Rng& rng) {
  if (n < 1 || n > 64 || k < 0 || k > n) throw ParameterError("sample_subspace: bad dimensions");
  if (k == 0) return F2Subspace::zero(n);
  for (;;) {
    std::vector<uint64_t> rows(static_cast<size_t>(k));
    for (auto& r : rows) r = rng.word(n);
    if (rank_of(rows, n) == k) {
      std::vector<F2Vector> vs;
      for (uint64_t r : rows) vs.emplace_back(r, n);
      return F2Subspace::from_rows(vs, n);
    }
  }
}

CosetPair sample_coset_pair(int n, Rng& rng) {
  if (n < 2 || n % 2 != 0) throw ParameterError("sample_coset_pair: n must be even and >= 2");
  CosetPair p;
  p.space = sample_subspace(n, n / 2, rng);
  p.shift = F2Vector::random(n, rng);
  p.dual_shift = F2Vector::random(n, rng);
  return p;
}

std::vector<F2Subspace> enumerate_subspaces(int n, int k) {
  if (n > 8) throw CapacityError("enumerate_subspaces: n too large");
  if (k < 0 || k > n) throw ParameterError("enumerate_subspaces: bad k");
  if (k == 0) return {F2Subspace::zero(n)};
  std::set<std::vector<uint64_t>> seen;
  std::vector<F2Subspace> out;
  // Walk k-tuples of nonzero vectors in increasing order and keep each RREF
  // signature once.
  std::vector<uint64_t> pick(static_cast<size_t>(k));
  uint64_t top = 1ULL << n;
  auto rec = [&](auto&& self, int depth, uint64_t start) -> void {
    if (depth == k) {
      std::vector<F2Vector> vs;
      for (uint64_t w : pick) vs.emplace_back(w, n);
      F2Subspace s = F2Subspace::from_rows(vs, n);
      if (s.dim() == k && seen.insert(s.rows()).second) out.push_back(s);
      return;
    }
    for (uint64_t w = start; w < top; ++w) {
      pick[static_cast<size_t>(depth)] = w;
      self(self, depth + 1, w + 1);
    }
  };
  rec(rec, 0, 1);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace unclon::gf2
