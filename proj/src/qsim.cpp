#include "unclon/qsim.hpp"

#include <cmath>

#include "unclon/errors.hpp"

namespace unclon::qsim {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

void check_cap(int n, int cap) {
  if (n > cap) throw CapacityError("qsim: register exceeds qubit cap");
  if (n < 1) throw ParameterError("qsim: need at least one qubit");
}

void check_normalized(const StateVector& st) {
  if (std::abs(st.amps.squaredNorm() - 1.0) > 1e-10)
    throw StateError("qsim: state is not normalized");
}

void hadamard_inplace(CVector& a, int n, uint64_t mask_word) {
  // Butterfly per masked qubit; qubit i sits at word bit n-1-i.
  for (int i = 0; i < n; ++i) {
    if (!((mask_word >> (n - 1 - i)) & 1)) continue;
    uint64_t stride = 1ULL << (n - 1 - i);
    for (uint64_t base = 0; base < (1ULL << n); ++base) {
      if (base & stride) continue;
      cx lo = a[static_cast<Eigen::Index>(base)];
      cx hi = a[static_cast<Eigen::Index>(base | stride)];
      a[static_cast<Eigen::Index>(base)] = (lo + hi) * kInvSqrt2;
      a[static_cast<Eigen::Index>(base | stride)] = (lo - hi) * kInvSqrt2;
    }
  }
}

}  // namespace

StateVector StateVector::basis(int n, const gf2::F2Vector& v) {
  if (v.n != n) throw ParameterError("StateVector::basis: length mismatch");
  StateVector st;
  st.n = n;
  st.amps = CVector::Zero(1LL << n);
  st.amps[static_cast<Eigen::Index>(v.bits)] = 1.0;
  return st;
}

StateVector coset_state(const gf2::F2Subspace& A, const gf2::F2Vector& s,
                        const gf2::F2Vector& s_dual, int qubit_cap) {
  int n = A.n;
  check_cap(n, qubit_cap);
  if (s.n != n || s_dual.n != n) throw ParameterError("coset_state: vector length mismatch");
  StateVector st;
  st.n = n;
  st.amps = CVector::Zero(1LL << n);
  double amp = 1.0 / std::sqrt(static_cast<double>(1ULL << A.dim()));
  for (uint64_t idx = 0; idx < (1ULL << A.dim()); ++idx) {
    gf2::F2Vector a = A.element(idx);
    double phase = gf2::inner(a, s_dual) ? -amp : amp;
    st.amps[static_cast<Eigen::Index>((a ^ s).bits)] = phase;
  }
  return st;
}

StateVector coset_state(const gf2::CosetPair& p, int qubit_cap) {
  return coset_state(p.space, p.shift, p.dual_shift, qubit_cap);
}

StateVector bb84_state(const gf2::F2Vector& x, const gf2::F2Vector& theta, int qubit_cap) {
  if (x.n != theta.n) throw ParameterError("bb84_state: length mismatch");
  check_cap(x.n, qubit_cap);
  StateVector st = StateVector::basis(x.n, x);
  hadamard_inplace(st.amps, st.n, theta.bits);
  return st;
}

StateVector hadamard_subset(const StateVector& state, const gf2::F2Vector& mask) {
  if (mask.n != state.n) throw ParameterError("hadamard_subset: mask length mismatch");
  StateVector out = state;
  hadamard_inplace(out.amps, out.n, mask.bits);
  return out;
}

std::pair<gf2::F2Vector, StateVector> measure_computational(const StateVector& state, Rng& rng) {
  check_normalized(state);
  double t = rng.real();
  double acc = 0.0;
  uint64_t dim = 1ULL << state.n;
  uint64_t outcome = dim - 1;
  for (uint64_t v = 0; v < dim; ++v) {
    acc += std::norm(state.amps[static_cast<Eigen::Index>(v)]);
    if (t < acc) {
      outcome = v;
      break;
    }
  }
  gf2::F2Vector ov(outcome, state.n);
  return {ov, StateVector::basis(state.n, ov)};
}

std::map<gf2::F2Vector, double> exact_outcome_distribution(const StateVector& state,
                                                           const gf2::F2Vector& mask) {
  StateVector rotated = hadamard_subset(state, mask);
  std::map<gf2::F2Vector, double> dist;
  for (uint64_t v = 0; v < (1ULL << state.n); ++v) {
    double p = std::norm(rotated.amps[static_cast<Eigen::Index>(v)]);
    if (p > 1e-18) dist.emplace(gf2::F2Vector(v, state.n), p);
  }
  return dist;
}

double operator_norm(const Matrix& m) {
  if (m.rows() != m.cols()) throw ParameterError("operator_norm: matrix must be square");
  if (!m.allFinite()) throw NumericError("operator_norm: non-finite entries");
  if (m.rows() == 0) return 0.0;
  Matrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out;
  out.n = a.n + b.n;
  out.amps = tensor(a.amps, b.amps);
  return out;
}

Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  if (rho.rows() != total || rho.cols() != total)
    throw ParameterError("partial_trace: dims do not match matrix");
  std::vector<bool> kept(dims.size(), false);
  Eigen::Index keep_dim = 1, drop_dim = 1;
  for (int k : keep) {
    if (k < 0 || k >= static_cast<int>(dims.size()) || kept[static_cast<size_t>(k)])
      throw ParameterError("partial_trace: bad keep set");
    kept[static_cast<size_t>(k)] = true;
  }
  for (size_t i = 0; i < dims.size(); ++i) (kept[i] ? keep_dim : drop_dim) *= dims[i];

  // Strides for mixed-radix index (subsystem 0 most significant).
  std::vector<Eigen::Index> stride(dims.size());
  Eigen::Index acc = 1;
  for (size_t i = dims.size(); i-- > 0;) {
    stride[i] = acc;
    acc *= dims[i];
  }
  std::vector<size_t> keep_idx, drop_idx;
  for (size_t i = 0; i < dims.size(); ++i) (kept[i] ? keep_idx : drop_idx).push_back(i);

  auto full_index = [&](Eigen::Index k, Eigen::Index d) {
    Eigen::Index idx = 0;
    Eigen::Index kk = k;
    for (size_t pos = keep_idx.size(); pos-- > 0;) {
      size_t sub = keep_idx[pos];
      idx += (kk % dims[sub]) * stride[sub];
      kk /= dims[sub];
    }
    Eigen::Index dd = d;
    for (size_t pos = drop_idx.size(); pos-- > 0;) {
      size_t sub = drop_idx[pos];
      idx += (dd % dims[sub]) * stride[sub];
      dd /= dims[sub];
    }
    return idx;
  };

  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  for (Eigen::Index i = 0; i < keep_dim; ++i)
    for (Eigen::Index j = 0; j < keep_dim; ++j) {
      cx sum = 0.0;
      for (Eigen::Index d = 0; d < drop_dim; ++d)
        sum += rho(full_index(i, d), full_index(j, d));
      out(i, j) = sum;
    }
  return out;
}

Matrix hadamard_layer(const gf2::F2Vector& theta) {
  Matrix h(2, 2);
  h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  Matrix id = Matrix::Identity(2, 2);
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < theta.n; ++i) out = tensor(out, theta.bit(i) ? h : id);
  return out;
}

double phase_aligned_distance(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw ParameterError("phase_aligned_distance: size mismatch");
  Eigen::Index k = 0;
  b.cwiseAbs().maxCoeff(&k);
  if (std::abs(b[k]) < 1e-14) return (a - b).cwiseAbs().maxCoeff();
  cx phase = (a[k] / b[k]);
  double mag = std::abs(phase);
  if (mag < 1e-14) return (a - b).cwiseAbs().maxCoeff();
  phase /= mag;
  return (a - phase * b).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_projector(const Matrix& m, double tol) {
  return is_hermitian(m, tol) && (m * m - m).cwiseAbs().maxCoeff() <= tol;
}

QuantumRegister QuantumRegister::coset(const gf2::CosetPair& p) {
  QuantumRegister r;
  r.n_ = p.space.n;
  r.form_ = CosetForm{p.primal(), p.dual(), p};
  return r;
}

QuantumRegister QuantumRegister::bb84(const gf2::F2Vector& x, const gf2::F2Vector& theta) {
  if (x.n != theta.n) throw ParameterError("QuantumRegister::bb84: length mismatch");
  QuantumRegister r;
  r.n_ = x.n;
  r.form_ = Bb84Form{x, theta};
  return r;
}

QuantumRegister QuantumRegister::dense(StateVector st) {
  QuantumRegister r;
  r.n_ = st.n;
  r.form_ = std::move(st);
  return r;
}

void QuantumRegister::check_fresh() const {
  if (consumed_) throw ConsumedError("QuantumRegister: already consumed");
}

gf2::F2Vector QuantumRegister::measure(const gf2::F2Vector& mask, Rng& rng) {
  check_fresh();
  if (mask.n != n_) throw ParameterError("QuantumRegister::measure: mask length mismatch");
  consumed_ = true;
  if (auto* c = std::get_if<CosetForm>(&form_)) {
    // Measuring a coset state in the computational basis yields a uniform
    // element of A + s; under a full Hadamard layer, of the dual coset.
    if (mask.is_zero()) return c->primal.sample_element(rng);
    if (mask.weight() == n_) return c->dual.sample_element(rng);
    StateVector st = coset_state(c->pair);
    auto [outcome, post] = qsim::measure_computational(hadamard_subset(st, mask), rng);
    return outcome;
  }
  if (auto* b = std::get_if<Bb84Form>(&form_)) {
    // Product state: matched-basis qubits are deterministic, the rest uniform.
    gf2::F2Vector out = gf2::F2Vector::zero(n_);
    for (int i = 0; i < n_; ++i)
      out.set_bit(i, mask.bit(i) == b->theta.bit(i) ? b->x.bit(i) : rng.bit());
    return out;
  }
  StateVector st = std::get<StateVector>(std::move(form_));
  auto [outcome, post] = qsim::measure_computational(hadamard_subset(st, mask), rng);
  return outcome;
}

gf2::F2Vector QuantumRegister::measure_computational(Rng& rng) {
  return measure(gf2::F2Vector::zero(n_), rng);
}

StateVector QuantumRegister::take_state(int qubit_cap) {
  check_fresh();
  consumed_ = true;
  if (auto* c = std::get_if<CosetForm>(&form_)) return coset_state(c->pair, qubit_cap);
  if (auto* b = std::get_if<Bb84Form>(&form_)) return bb84_state(b->x, b->theta, qubit_cap);
  return std::get<StateVector>(std::move(form_));
}

}  // namespace unclon::qsim
