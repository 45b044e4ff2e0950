#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "unclon/gf2.hpp"
#include "unclon/rng.hpp"

namespace unclon::qsim {

using cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kDefaultQubitCap = 20;

// Dense n-qubit state. Basis index of |v> is the packed word of v, so qubit i
// lives at word bit n-1-i, matching gf2::F2Vector.
struct StateVector {
  int n = 0;
  CVector amps;

  static StateVector basis(int n, const gf2::F2Vector& v);
  double norm() const { return amps.norm(); }
};

StateVector coset_state(const gf2::F2Subspace& A, const gf2::F2Vector& s,
                        const gf2::F2Vector& s_dual, int qubit_cap = kDefaultQubitCap);
StateVector coset_state(const gf2::CosetPair& p, int qubit_cap = kDefaultQubitCap);

StateVector bb84_state(const gf2::F2Vector& x, const gf2::F2Vector& theta,
                       int qubit_cap = kDefaultQubitCap);

// Applies H to exactly the masked qubits.
StateVector hadamard_subset(const StateVector& state, const gf2::F2Vector& mask);

std::pair<gf2::F2Vector, StateVector> measure_computational(const StateVector& state, Rng& rng);

// Exact Born probabilities after an optional Hadamard layer; entries below
// 1e-18 are dropped so support checks stay meaningful.
std::map<gf2::F2Vector, double> exact_outcome_distribution(const StateVector& state,
                                                           const gf2::F2Vector& mask);

// Largest singular value via the Hermitian spectrum of M^dagger M.
double operator_norm(const Matrix& m);

// Kronecker product; handles matrices and column vectors alike.
template <typename DerivedA, typename DerivedB>
Matrix tensor(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b);

// Partial trace over the subsystems not listed in `keep` (indices into dims).
Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                     const std::vector<int>& keep);

// Full H^{theta} layer as a dense matrix (H on qubits with theta_i = 1).
Matrix hadamard_layer(const gf2::F2Vector& theta);

// Largest |a_i - phase*b_i| after aligning b's global phase to a.
double phase_aligned_distance(const CVector& a, const CVector& b);

bool is_hermitian(const Matrix& m, double tol = 1e-10);
bool is_projector(const Matrix& m, double tol = 1e-9);

// One challenge register. Coset and BB84 states are kept in structured form
// so measurements in the standard or fully rotated bases run in closed form
// at any n <= 64; anything else materializes the dense state (capacity
// capped). Registers are consume-on-use: measuring or taking the state
// invalidates them, and copying is forbidden.
class QuantumRegister {
 public:
  QuantumRegister(const QuantumRegister&) = delete;
  QuantumRegister& operator=(const QuantumRegister&) = delete;
  QuantumRegister(QuantumRegister&&) = default;
  QuantumRegister& operator=(QuantumRegister&&) = default;

  static QuantumRegister coset(const gf2::CosetPair& p);
  static QuantumRegister bb84(const gf2::F2Vector& x, const gf2::F2Vector& theta);
  static QuantumRegister dense(StateVector st);

  int qubits() const { return n_; }
  bool consumed() const { return consumed_; }

  // Measures every qubit, in the Hadamard basis where mask_i = 1. Consumes.
  gf2::F2Vector measure(const gf2::F2Vector& mask, Rng& rng);
  gf2::F2Vector measure_computational(Rng& rng);

  // Dense state for general processing. Consumes.
  StateVector take_state(int qubit_cap = kDefaultQubitCap);

 private:
  struct CosetForm {
    gf2::Coset primal;
    gf2::Coset dual;
    gf2::CosetPair pair;
  };
  struct Bb84Form {
    gf2::F2Vector x, theta;
  };
  QuantumRegister() = default;

  void check_fresh() const;

  int n_ = 0;
  bool consumed_ = false;
  std::variant<CosetForm, Bb84Form, StateVector> form_;
};

}  // namespace unclon::qsim
