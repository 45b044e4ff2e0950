#include "unclon/games/finite.hpp"

#include <cmath>

#include "unclon/errors.hpp"

namespace unclon::games {

namespace {

// A Bob-major player vector w (index i_B * dim_c + j_C) seen through a
// column-major map M of shape (dim_c x dim_b) has M(j, i) = w_{ij}, and
// <w|(B (x) C)|w> = Tr[C M B^T M^dag].
template <typename MatLike>
double joint_prob(const MatLike& m, const qsim::Matrix& b, const qsim::Matrix& c) {
  return std::real((c * m * b.transpose() * m.adjoint()).trace());
}

int answer_of(uint64_t x, const gf2::F2Vector& theta, int b) {
  return static_cast<int>(restrict_to(gf2::F2Vector(x, theta.n), theta, b).bits);
}

}  // namespace

bool valid_families(const MeasFamilies& f, double tol) {
  for (const auto& pair : f.fam) {
    for (const auto& fam : pair) {
      qsim::Matrix sum = qsim::Matrix::Zero(f.dim, f.dim);
      for (const auto& op : fam.ops) {
        if (op.rows() != f.dim || op.cols() != f.dim) return false;
        if (!qsim::is_projector(op, tol)) return false;
        sum += op;
      }
      if ((sum - qsim::Matrix::Identity(f.dim, f.dim)).cwiseAbs().maxCoeff() > tol)
        return false;
    }
  }
  return true;
}

bool valid_strategy(const FiniteStrategy& fs, double tol) {
  Eigen::Index dim = fs.alice.cols();
  if (dim != (1LL << fs.n)) return false;
  if (fs.alice.rows() != static_cast<Eigen::Index>(fs.dim_b) * fs.dim_c) return false;
  qsim::Matrix gram = fs.alice.adjoint() * fs.alice;
  if ((gram - qsim::Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol) return false;
  return valid_families(fs.bob, tol) && valid_families(fs.charlie, tol);
}

double exact_moe_value(const FiniteStrategy& fs) {
  auto thetas = theta_list(fs.n);
  Eigen::Index dim = 1LL << fs.n;
  double total = 0.0;
  for (size_t ti = 0; ti < thetas.size(); ++ti) {
    qsim::Matrix layer = qsim::hadamard_layer(thetas[ti]);
    for (int b = 0; b < 2; ++b) {
      const ProjFamily& bf = fs.bob.at(static_cast<int>(ti), b);
      const ProjFamily& cf = fs.charlie.at(static_cast<int>(ti), b);
      for (Eigen::Index x = 0; x < dim; ++x) {
        qsim::CVector w = fs.alice * layer.col(x);
        Eigen::Map<const qsim::Matrix> wm(w.data(), fs.dim_c, fs.dim_b);
        int a = answer_of(static_cast<uint64_t>(x), thetas[ti], b);
        total += joint_prob(wm, bf.ops[static_cast<size_t>(a)],
                            cf.ops[static_cast<size_t>(a)]);
      }
    }
  }
  return total / (static_cast<double>(thetas.size()) * 2.0 * static_cast<double>(dim));
}

double exact_enl_value(const EnlStrategy& es) {
  auto thetas = theta_list(es.n);
  Eigen::Index dim = 1LL << es.n;
  Eigen::Index player_dim = static_cast<Eigen::Index>(es.dim_b) * es.dim_c;
  Eigen::Map<const qsim::Matrix> psi_m(es.psi.data(), player_dim, dim);
  double total = 0.0;
  for (size_t ti = 0; ti < thetas.size(); ++ti) {
    qsim::Matrix layer = qsim::hadamard_layer(thetas[ti]);
    // Columns of rotated are the (unnormalized) player states conditioned on
    // the challenger measuring x in basis theta.
    qsim::Matrix rotated = psi_m * layer.transpose();
    for (int b = 0; b < 2; ++b) {
      const ProjFamily& bf = es.bob.at(static_cast<int>(ti), b);
      const ProjFamily& cf = es.charlie.at(static_cast<int>(ti), b);
      for (Eigen::Index x = 0; x < dim; ++x) {
        qsim::CVector col = rotated.col(x);
        Eigen::Map<const qsim::Matrix> wm(col.data(), es.dim_c, es.dim_b);
        int a = answer_of(static_cast<uint64_t>(x), thetas[ti], b);
        total += joint_prob(wm, bf.ops[static_cast<size_t>(a)],
                            cf.ops[static_cast<size_t>(a)]);
      }
    }
  }
  return total / (static_cast<double>(thetas.size()) * 2.0);
}

EnlStrategy lift_to_extended(const FiniteStrategy& fs) {
  EnlStrategy es;
  es.n = fs.n;
  es.dim_b = fs.dim_b;
  es.dim_c = fs.dim_c;
  es.bob = fs.bob;
  es.charlie = fs.charlie;
  Eigen::Index dim = 1LL << fs.n;
  Eigen::Index player_dim = static_cast<Eigen::Index>(fs.dim_b) * fs.dim_c;
  // |psi> = (I (x) V) sum_r |r>|r> / sqrt(2^n): column r of the player block
  // is V|r> / sqrt(2^n).
  es.psi = qsim::CVector::Zero(dim * player_dim);
  Eigen::Map<qsim::Matrix> psi_m(es.psi.data(), player_dim, dim);
  psi_m = fs.alice / std::sqrt(static_cast<double>(dim));
  return es;
}

WinStats run_extended_nonlocal(const EnlStrategy& es, uint64_t trials, uint64_t seed) {
  auto thetas = theta_list(es.n);
  Eigen::Index dim = 1LL << es.n;
  Eigen::Index player_dim = static_cast<Eigen::Index>(es.dim_b) * es.dim_c;
  Eigen::Map<const qsim::Matrix> psi_m(es.psi.data(), player_dim, dim);

  uint64_t wins = run_trials(trials, seed, [&](uint64_t, Rng& rng) {
    size_t ti = static_cast<size_t>(rng.below(thetas.size()));
    int b = rng.bit();
    qsim::Matrix layer = qsim::hadamard_layer(thetas[ti]);
    qsim::Matrix rotated = psi_m * layer.transpose();

    // Challenger measures the challenge register in basis theta.
    double t = rng.real();
    Eigen::Index x = dim - 1;
    double acc = 0.0;
    for (Eigen::Index col = 0; col < dim; ++col) {
      acc += rotated.col(col).squaredNorm();
      if (t < acc) {
        x = col;
        break;
      }
    }
    qsim::CVector post = rotated.col(x) / rotated.col(x).norm();
    Eigen::Map<qsim::Matrix> w(post.data(), es.dim_c, es.dim_b);

    const ProjFamily& bf = es.bob.at(static_cast<int>(ti), b);
    const ProjFamily& cf = es.charlie.at(static_cast<int>(ti), b);

    // Bob measures his family, then Charlie his; outcomes sampled exactly.
    qsim::Matrix id_c = qsim::Matrix::Identity(es.dim_c, es.dim_c);
    qsim::Matrix id_b = qsim::Matrix::Identity(es.dim_b, es.dim_b);
    double tb = rng.real();
    int a1 = static_cast<int>(bf.ops.size()) - 1;
    acc = 0.0;
    for (size_t a = 0; a < bf.ops.size(); ++a) {
      acc += joint_prob(w, bf.ops[a], id_c);
      if (tb < acc) {
        a1 = static_cast<int>(a);
        break;
      }
    }
    qsim::Matrix wb = w * bf.ops[static_cast<size_t>(a1)].transpose();
    double nb = wb.norm();
    if (nb < 1e-15) return false;  // numerically impossible branch
    wb /= nb;

    double tc = rng.real();
    int a2 = static_cast<int>(cf.ops.size()) - 1;
    acc = 0.0;
    for (size_t a = 0; a < cf.ops.size(); ++a) {
      acc += joint_prob(wb, id_b, cf.ops[a]);
      if (tc < acc) {
        a2 = static_cast<int>(a);
        break;
      }
    }

    int want = answer_of(static_cast<uint64_t>(x), thetas[ti], b);
    return a1 == want && a2 == want;
  });
  return make_win_stats(wins, trials, seed);
}

namespace {

// Diagonal echo family on a register spanned by |b*, v>: answer is the
// restriction of v.
MeasFamilies echo_families(int n, int copies) {
  auto thetas = theta_list(n);
  int answers = 1 << (n / 2);
  Eigen::Index dim = static_cast<Eigen::Index>(copies) << n;
  MeasFamilies mf;
  mf.n = n;
  mf.dim = static_cast<int>(dim);
  for (size_t ti = 0; ti < thetas.size(); ++ti) {
    std::array<ProjFamily, 2> pair;
    for (int b = 0; b < 2; ++b) {
      pair[static_cast<size_t>(b)].ops.assign(static_cast<size_t>(answers),
                                              qsim::Matrix::Zero(dim, dim));
      for (Eigen::Index idx = 0; idx < dim; ++idx) {
        uint64_t v = static_cast<uint64_t>(idx) & ((1ULL << n) - 1);
        int a = answer_of(v, thetas[ti], b);
        pair[static_cast<size_t>(b)].ops[static_cast<size_t>(a)](idx, idx) = 1.0;
      }
    }
    mf.fam.push_back(std::move(pair));
  }
  return mf;
}

}  // namespace

FiniteStrategy finite_trivial_strategy(int n) {
  // Alice measures in a random basis b* and forwards (b*, outcome) to both;
  // as an isometry: |x> -> (1/sqrt2) sum_{b*, v} (H^{b*} )_{v,x} |b*,v>|b*,v>.
  FiniteStrategy fs;
  fs.n = n;
  fs.dim_b = 2 << n;
  fs.dim_c = 2 << n;
  Eigen::Index dim = 1LL << n;
  qsim::Matrix hs[2] = {qsim::Matrix::Identity(dim, dim),
                        qsim::hadamard_layer(gf2::F2Vector(~0ULL, n))};
  fs.alice = qsim::Matrix::Zero(static_cast<Eigen::Index>(fs.dim_b) * fs.dim_c, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    for (int bstar = 0; bstar < 2; ++bstar) {
      for (Eigen::Index v = 0; v < dim; ++v) {
        Eigen::Index reg = static_cast<Eigen::Index>(bstar) * dim + v;
        fs.alice(reg * fs.dim_c + reg, x) = hs[bstar](v, x) / std::sqrt(2.0);
      }
    }
  }
  fs.bob = echo_families(n, 2);
  fs.charlie = fs.bob;
  return fs;
}

FiniteStrategy finite_identity_bob_strategy(int n) {
  FiniteStrategy fs;
  fs.n = n;
  fs.dim_b = 1 << n;
  fs.dim_c = 1;
  fs.alice = qsim::Matrix::Identity(1LL << n, 1LL << n);
  fs.bob = echo_families(n, 1);
  auto thetas = theta_list(n);
  fs.charlie.n = n;
  fs.charlie.dim = 1;
  int answers = 1 << (n / 2);
  for (size_t ti = 0; ti < thetas.size(); ++ti) {
    std::array<ProjFamily, 2> pair;
    for (int b = 0; b < 2; ++b) {
      pair[static_cast<size_t>(b)].ops.assign(static_cast<size_t>(answers),
                                              qsim::Matrix::Zero(1, 1));
      pair[static_cast<size_t>(b)].ops[0](0, 0) = 1.0;  // always answers 0^{n/2}
    }
    fs.charlie.fam.push_back(std::move(pair));
  }
  return fs;
}

ProjFamily random_projective_family(int d, int outcomes, Rng& rng) {
  qsim::Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = qsim::cx(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<qsim::Matrix> qr(g);
  qsim::Matrix q = qr.householderQ();
  ProjFamily fam;
  fam.ops.assign(static_cast<size_t>(outcomes), qsim::Matrix::Zero(d, d));
  for (int col = 0; col < d; ++col) {
    qsim::CVector u = q.col(col);
    fam.ops[static_cast<size_t>(col % outcomes)] += u * u.adjoint();
  }
  return fam;
}

FiniteStrategy random_finite_strategy(int n, int dim_b, int dim_c, Rng& rng) {
  Eigen::Index dim = 1LL << n;
  Eigen::Index player_dim = static_cast<Eigen::Index>(dim_b) * dim_c;
  if (player_dim < dim)
    throw ParameterError("random_finite_strategy: player registers too small for an isometry");
  FiniteStrategy fs;
  fs.n = n;
  fs.dim_b = dim_b;
  fs.dim_c = dim_c;
  qsim::Matrix g(player_dim, dim);
  for (Eigen::Index i = 0; i < player_dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = qsim::cx(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<qsim::Matrix> qr(g);
  fs.alice = qr.householderQ() * qsim::Matrix::Identity(player_dim, dim);

  int answers = 1 << (n / 2);
  auto thetas = theta_list(n);
  for (auto* side : {&fs.bob, &fs.charlie}) {
    side->n = n;
    side->dim = side == &fs.bob ? dim_b : dim_c;
    for (size_t ti = 0; ti < thetas.size(); ++ti) {
      std::array<ProjFamily, 2> pair;
      for (int b = 0; b < 2; ++b)
        pair[static_cast<size_t>(b)] = random_projective_family(side->dim, answers, rng);
      side->fam.push_back(std::move(pair));
    }
  }
  return fs;
}

}  // namespace unclon::games
