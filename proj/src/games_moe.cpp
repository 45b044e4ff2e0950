#include "unclon/games/moe.hpp"

#include <cmath>
#include <set>

#include "unclon/errors.hpp"

namespace unclon::games {

namespace {

void check_even(int n, const char* who) {
  if (n < 2 || n % 2 != 0)
    throw ParameterError(std::string(who) + ": n must be even (Theta_n needs |theta| = n/2)");
}

MoeInstance make_instance(const gf2::CosetPair& pair) {
  return MoeInstance{pair, pair.primal(), pair.dual()};
}

void check_answer(const gf2::F2Vector& u, int n) {
  if (u.n != n) throw StrategyError("strategy answered with the wrong vector length");
}

std::vector<crypto::ObfProgram> membership_programs(const MoeInstance& inst) {
  return {crypto::transparent_io(crypto::Program{crypto::MembershipProgram{inst.primal}}),
          crypto::transparent_io(crypto::Program{crypto::MembershipProgram{inst.dual}})};
}

// Enumerates the distinct cosets of A (resp. of its dual) by canonical
// representative; uniform s over F2^n weights every coset equally, so
// averaging over representatives is exact.
std::vector<gf2::F2Vector> coset_reps(const gf2::F2Subspace& space) {
  std::vector<gf2::F2Vector> reps;
  std::set<uint64_t> seen;
  for (uint64_t u = 0; u < (1ULL << space.n); ++u) {
    gf2::F2Vector rep = space.canonical_rep(gf2::F2Vector(u, space.n));
    if (seen.insert(rep.bits).second) reps.push_back(rep);
  }
  return reps;
}

double enumerate_coset_instances(int n, const std::function<double(const MoeInstance&)>& fn) {
  check_even(n, "exact oracle");
  auto subspaces = gf2::enumerate_subspaces(n, n / 2);
  double total = 0.0;
  uint64_t count = 0;
  for (const auto& A : subspaces) {
    gf2::F2Subspace dual = A.dual();
    auto primal_reps = coset_reps(A);
    auto dual_reps = coset_reps(dual);
    uint64_t instances =
        static_cast<uint64_t>(subspaces.size()) * primal_reps.size() * dual_reps.size();
    if (instances > 10'000'000ULL) throw CapacityError("exact oracle: enumeration too large");
    for (const auto& s : primal_reps) {
      for (const auto& sd : dual_reps) {
        MoeInstance inst;
        inst.pair = gf2::CosetPair{A, s, sd};
        inst.primal = gf2::Coset(A, s);
        inst.dual = gf2::Coset(dual, sd);
        total += fn(inst);
        ++count;
      }
    }
  }
  return total / static_cast<double>(count);
}

}  // namespace

double cross_coset_mass(const MoeInstance& inst) {
  int hits = 0;
  for (const auto& v : inst.primal.enumerate())
    if (inst.dual.member(v)) ++hits;
  return hits / static_cast<double>(1ULL << inst.primal.space.dim());
}

WinStats run_moe_identical_coset(int n, const MoeCosetStrategy& strat, uint64_t trials,
                                 uint64_t seed) {
  check_even(n, "run_moe_identical_coset");
  uint64_t wins = run_trials(trials, seed, [&](uint64_t, Rng& rng) {
    MoeInstance inst = make_instance(gf2::sample_coset_pair(n, rng));
    auto [bob_share, charlie_share] =
        strat.split(qsim::QuantumRegister::coset(inst.pair), {},
                    strat.wants_instance ? &inst : nullptr, rng);
    int b = rng.bit();  // sampled only after the split returns
    MoeQuestion q{inst.pair.space, b};
    gf2::F2Vector u1 = strat.bob(bob_share, q, rng);
    gf2::F2Vector u2 = strat.charlie(charlie_share, q, rng);
    check_answer(u1, n);
    check_answer(u2, n);
    const gf2::Coset& target = b ? inst.dual : inst.primal;
    return target.member(u1) && target.member(u2);
  });
  return make_win_stats(wins, trials, seed);
}

WinStats run_moe_identical_bb84(int n, const Bb84Strategy& strat, uint64_t trials,
                                uint64_t seed) {
  check_even(n, "run_moe_identical_bb84");
  uint64_t wins = run_trials(trials, seed, [&](uint64_t, Rng& rng) {
    gf2::F2Vector x = gf2::F2Vector::random(n, rng);
    gf2::F2Vector theta = sample_theta(n, rng);
    auto [bob_share, charlie_share] =
        strat.split(qsim::QuantumRegister::bb84(x, theta), rng);
    int b = rng.bit();  // after the split
    BbQuestion q{theta, b};
    gf2::F2Vector a1 = strat.bob(bob_share, q, rng);
    gf2::F2Vector a2 = strat.charlie(charlie_share, q, rng);
    check_answer(a1, n / 2);
    check_answer(a2, n / 2);
    gf2::F2Vector want = restrict_to(x, theta, b);
    return a1 == want && a2 == want;
  });
  return make_win_stats(wins, trials, seed);
}

WinStats run_moe_original(int n, const MoeCosetStrategy& strat, uint64_t trials,
                          uint64_t seed) {
  check_even(n, "run_moe_original");
  uint64_t wins = run_trials(trials, seed, [&](uint64_t, Rng& rng) {
    MoeInstance inst = make_instance(gf2::sample_coset_pair(n, rng));
    auto [bob_share, charlie_share] =
        strat.split(qsim::QuantumRegister::coset(inst.pair), {},
                    strat.wants_instance ? &inst : nullptr, rng);
    // No challenge bit here: Bob must land in A+s, Charlie in Adual+s'.
    gf2::F2Vector u1 = strat.bob(bob_share, MoeQuestion{inst.pair.space, 0}, rng);
    gf2::F2Vector u2 = strat.charlie(charlie_share, MoeQuestion{inst.pair.space, 1}, rng);
    check_answer(u1, n);
    check_answer(u2, n);
    return inst.primal.member(u1) && inst.dual.member(u2);
  });
  return make_win_stats(wins, trials, seed);
}

WinStats run_moe_computational(int n, const MoeCosetStrategy& strat, uint64_t trials,
                               uint64_t seed) {
  check_even(n, "run_moe_computational");
  uint64_t wins = run_trials(trials, seed, [&](uint64_t, Rng& rng) {
    MoeInstance inst = make_instance(gf2::sample_coset_pair(n, rng));
    auto programs = membership_programs(inst);
    auto [bob_share, charlie_share] =
        strat.split(qsim::QuantumRegister::coset(inst.pair), programs,
                    strat.wants_instance ? &inst : nullptr, rng);
    int b = rng.bit();
    MoeQuestion q{inst.pair.space, b};
    gf2::F2Vector u1 = strat.bob(bob_share, q, rng);
    gf2::F2Vector u2 = strat.charlie(charlie_share, q, rng);
    check_answer(u1, n);
    check_answer(u2, n);
    const gf2::Coset& target = b ? inst.dual : inst.primal;
    return target.member(u1) && target.member(u2);
  });
  return make_win_stats(wins, trials, seed);
}

WinStats run_moe_parallel(int n, int kappa, const MoeParallelStrategy& strat,
                          uint64_t trials, uint64_t seed) {
  check_even(n, "run_moe_parallel");
  if (kappa < 1) throw ParameterError("run_moe_parallel: kappa must be >= 1");
  uint64_t wins = run_trials(trials, seed, [&](uint64_t, Rng& rng) {
    std::vector<MoeInstance> insts;
    std::vector<qsim::QuantumRegister> regs;
    std::vector<crypto::ObfProgram> programs;
    std::vector<gf2::F2Subspace> spaces;
    for (int i = 0; i < kappa; ++i) {
      insts.push_back(make_instance(gf2::sample_coset_pair(n, rng)));
      regs.push_back(qsim::QuantumRegister::coset(insts.back().pair));
      auto progs = membership_programs(insts.back());
      programs.push_back(std::move(progs[0]));
      programs.push_back(std::move(progs[1]));
      spaces.push_back(insts.back().pair.space);
    }
    auto [bob_share, charlie_share] = strat.split(std::move(regs), programs, rng);
    Bits r = Bits::random(static_cast<size_t>(kappa), rng);  // after the split
    ParallelQuestion q{spaces, r};
    auto u1 = strat.bob(bob_share, q, rng);
    auto u2 = strat.charlie(charlie_share, q, rng);
    if (u1.size() != static_cast<size_t>(kappa) || u2.size() != static_cast<size_t>(kappa))
      throw StrategyError("parallel strategy answered with the wrong vector count");
    for (int i = 0; i < kappa; ++i) {
      check_answer(u1[static_cast<size_t>(i)], n);
      check_answer(u2[static_cast<size_t>(i)], n);
      const gf2::Coset& target =
          r.get(static_cast<size_t>(i)) ? insts[static_cast<size_t>(i)].dual
                                        : insts[static_cast<size_t>(i)].primal;
      if (!target.member(u1[static_cast<size_t>(i)]) ||
          !target.member(u2[static_cast<size_t>(i)]))
        return false;
    }
    return true;
  });
  return make_win_stats(wins, trials, seed);
}

double exact_coset_identical(int n, const MoeCosetStrategy& strat) {
  if (!strat.exact) throw ParameterError("exact_coset_identical: strategy has no exact hook");
  return enumerate_coset_instances(n, [&](const MoeInstance& inst) {
    return 0.5 * (strat.exact(inst, 0) + strat.exact(inst, 1));
  });
}

double exact_bb84_identical(int n, const Bb84Strategy& strat) {
  check_even(n, "exact_bb84_identical");
  if (!strat.exact) throw ParameterError("exact_bb84_identical: strategy has no exact hook");
  auto thetas = theta_list(n);
  uint64_t count = thetas.size() * (1ULL << n) * 2;
  if (count > 10'000'000ULL) throw CapacityError("exact_bb84_identical: enumeration too large");
  double total = 0.0;
  for (const auto& theta : thetas)
    for (uint64_t x = 0; x < (1ULL << n); ++x)
      for (int b = 0; b < 2; ++b) total += strat.exact(gf2::F2Vector(x, n), theta, b);
  return total / static_cast<double>(count);
}

double exact_original(int n, const MoeCosetStrategy& strat) {
  if (!strat.exact) throw ParameterError("exact_original: strategy has no exact hook");
  return enumerate_coset_instances(
      n, [&](const MoeInstance& inst) { return strat.exact(inst, -1); });
}

double exact_computational(int n, const MoeCosetStrategy& strat) {
  return exact_coset_identical(n, strat);
}

double exact_parallel(int n, int kappa, const MoeParallelStrategy& strat) {
  if (!strat.exact_per_register)
    throw ParameterError("exact_parallel: strategy has no per-register exact hook");
  if (kappa < 1) throw ParameterError("exact_parallel: kappa must be >= 1");
  // Independent registers and independent r_i: the product of the
  // single-register averages is exact for product-form strategies.
  double per = enumerate_coset_instances(n, [&](const MoeInstance& inst) {
    return 0.5 * (strat.exact_per_register(inst, 0) + strat.exact_per_register(inst, 1));
  });
  return std::pow(per, kappa);
}

// ---------------------------------------------------------------------------
// Built-in strategies.

namespace {

gf2::F2Vector echo_first(Share& share) {
  if (share.vecs.empty()) throw StrategyError("share carries no vector to echo");
  return share.vecs[0];
}

std::pair<Share, Share> measure_and_forward(qsim::QuantumRegister&& challenge, int basis,
                                            Rng& rng) {
  int n = challenge.qubits();
  gf2::F2Vector mask = basis ? gf2::F2Vector(~0ULL, n) : gf2::F2Vector::zero(n);
  gf2::F2Vector u = challenge.measure(mask, rng);
  Share bob, charlie;
  bob.vecs = {u};
  bob.words = {static_cast<uint64_t>(basis)};
  charlie.vecs = {u};
  charlie.words = {static_cast<uint64_t>(basis)};
  return {std::move(bob), std::move(charlie)};
}

}  // namespace

MoeCosetStrategy coset_trivial_strategy() {
  MoeCosetStrategy s;
  s.name = "trivial";
  s.split = [](qsim::QuantumRegister&& challenge, const std::vector<crypto::ObfProgram>&,
               const MoeInstance*, Rng& rng) {
    return measure_and_forward(std::move(challenge), rng.bit(), rng);
  };
  s.bob = [](Share& share, const MoeQuestion&, Rng&) { return echo_first(share); };
  s.charlie = s.bob;
  s.exact = [](const MoeInstance& inst, int) {
    return 0.5 * (1.0 + cross_coset_mass(inst));
  };
  return s;
}

MoeCosetStrategy coset_answer_zero_strategy() {
  MoeCosetStrategy s;
  s.name = "answer-zero";
  s.split = [](qsim::QuantumRegister&& challenge, const std::vector<crypto::ObfProgram>&,
               const MoeInstance*, Rng&) {
    (void)challenge;  // dropped unmeasured
    return std::pair<Share, Share>{};
  };
  s.bob = [](Share&, const MoeQuestion& q, Rng&) { return gf2::F2Vector::zero(q.A.n); };
  s.charlie = s.bob;
  s.exact = [](const MoeInstance& inst, int b) {
    const gf2::Coset& target = b == 1 ? inst.dual : inst.primal;
    return target.rep.is_zero() ? 1.0 : 0.0;
  };
  return s;
}

MoeCosetStrategy coset_split_roles_strategy() {
  // White-box diagnostic: Bob always answers a primal element, Charlie a dual
  // element, so they are never both right except on cross-coset collisions.
  MoeCosetStrategy s;
  s.name = "split-roles";
  s.wants_instance = true;
  s.split = [](qsim::QuantumRegister&&, const std::vector<crypto::ObfProgram>&,
               const MoeInstance* inst, Rng&) {
    if (!inst) throw StrategyError("split-roles needs the white-box instance");
    Share bob, charlie;
    bob.vecs = {inst->primal.rep};
    charlie.vecs = {inst->dual.rep};
    return std::pair<Share, Share>{std::move(bob), std::move(charlie)};
  };
  s.bob = [](Share& share, const MoeQuestion&, Rng&) { return echo_first(share); };
  s.charlie = s.bob;
  s.exact = [](const MoeInstance& inst, int b) {
    return b == 0 ? (inst.primal.member(inst.dual.rep) ? 1.0 : 0.0)
                  : (inst.dual.member(inst.primal.rep) ? 1.0 : 0.0);
  };
  return s;
}

MoeCosetStrategy original_measure_forward_strategy() {
  MoeCosetStrategy s;
  s.name = "measure-forward";
  s.split = [](qsim::QuantumRegister&& challenge, const std::vector<crypto::ObfProgram>&,
               const MoeInstance*, Rng& rng) {
    return measure_and_forward(std::move(challenge), 0, rng);
  };
  s.bob = [](Share& share, const MoeQuestion&, Rng&) { return echo_first(share); };
  s.charlie = s.bob;
  // Bob is always in A+s; Charlie's echo lands in the dual coset only on the
  // cross-coset collision mass.
  s.exact = [](const MoeInstance& inst, int) { return cross_coset_mass(inst); };
  return s;
}

MoeCosetStrategy original_state_to_bob_strategy() {
  MoeCosetStrategy s;
  s.name = "state-to-bob";
  s.split = [](qsim::QuantumRegister&& challenge, const std::vector<crypto::ObfProgram>&,
               const MoeInstance*, Rng&) {
    Share bob;
    bob.regs.push_back(std::move(challenge));
    return std::pair<Share, Share>{std::move(bob), Share{}};
  };
  s.bob = [](Share& share, const MoeQuestion&, Rng& rng) {
    if (share.regs.empty()) throw StrategyError("state-to-bob: missing register");
    return share.regs[0].measure_computational(rng);
  };
  s.charlie = [](Share&, const MoeQuestion& q, Rng&) { return gf2::F2Vector::zero(q.A.n); };
  s.exact = [](const MoeInstance& inst, int) { return inst.dual.rep.is_zero() ? 1.0 : 0.0; };
  return s;
}

MoeCosetStrategy original_canonical_echo_strategy() {
  MoeCosetStrategy s;
  s.name = "canonical-echo";
  s.split = [](qsim::QuantumRegister&& challenge, const std::vector<crypto::ObfProgram>&,
               const MoeInstance*, Rng& rng) {
    return measure_and_forward(std::move(challenge), 0, rng);
  };
  s.bob = [](Share& share, const MoeQuestion& q, Rng&) {
    return q.A.canonical_rep(echo_first(share));
  };
  s.charlie = [](Share& share, const MoeQuestion& q, Rng&) {
    return q.A.dual().canonical_rep(echo_first(share));
  };
  // Bob's canonical representative is still in A+s; Charlie's answer is in
  // Adual+u, which matches Adual+s' exactly when u collided into it.
  s.exact = [](const MoeInstance& inst, int) { return cross_coset_mass(inst); };
  return s;
}

MoeCosetStrategy computational_program_reader_strategy() {
  // Reads A+s out of the transparent membership program and echoes its
  // canonical representative; wins whenever b = 0. Documents that the
  // transparent obfuscation stand-in is not a secure iO.
  MoeCosetStrategy s;
  s.name = "program-reader";
  s.split = [](qsim::QuantumRegister&&, const std::vector<crypto::ObfProgram>& programs,
               const MoeInstance*, Rng&) {
    if (programs.empty() || !programs[0].inner)
      throw StrategyError("program-reader needs a transparent membership program");
    const auto& mem = std::get<crypto::MembershipProgram>(*programs[0].inner);
    Share bob, charlie;
    bob.vecs = {mem.coset.rep};
    charlie.vecs = {mem.coset.rep};
    return std::pair<Share, Share>{std::move(bob), std::move(charlie)};
  };
  s.bob = [](Share& share, const MoeQuestion&, Rng&) { return echo_first(share); };
  s.charlie = s.bob;
  s.exact = [](const MoeInstance& inst, int b) {
    return b == 0 ? 1.0 : (inst.dual.member(inst.primal.rep) ? 1.0 : 0.0);
  };
  return s;
}

Bb84Strategy bb84_trivial_strategy() {
  Bb84Strategy s;
  s.name = "trivial";
  s.split = [](qsim::QuantumRegister&& challenge, Rng& rng) {
    int basis = rng.bit();
    int n = challenge.qubits();
    gf2::F2Vector mask = basis ? gf2::F2Vector(~0ULL, n) : gf2::F2Vector::zero(n);
    gf2::F2Vector u = challenge.measure(mask, rng);
    Share bob, charlie;
    bob.vecs = {u};
    charlie.vecs = {u};
    return std::pair<Share, Share>{std::move(bob), std::move(charlie)};
  };
  s.bob = [](Share& share, const BbQuestion& q, Rng&) {
    return restrict_to(echo_first(share), q.theta, q.b);
  };
  s.charlie = s.bob;
  // Matching guess: always right. Otherwise every T_b position was measured
  // in the wrong basis, so the echo matches with probability 2^{-n/2}.
  s.exact = [](const gf2::F2Vector& x, const gf2::F2Vector&, int) {
    return 0.5 * (1.0 + std::pow(2.0, -x.n / 2.0));
  };
  return s;
}

Bb84Strategy bb84_measure_computational_strategy() {
  Bb84Strategy s;
  s.name = "measure-computational";
  s.split = [](qsim::QuantumRegister&& challenge, Rng& rng) {
    gf2::F2Vector u = challenge.measure_computational(rng);
    Share bob, charlie;
    bob.vecs = {u};
    charlie.vecs = {u};
    return std::pair<Share, Share>{std::move(bob), std::move(charlie)};
  };
  s.bob = [](Share& share, const BbQuestion& q, Rng&) {
    return restrict_to(echo_first(share), q.theta, q.b);
  };
  s.charlie = s.bob;
  s.exact = [](const gf2::F2Vector& x, const gf2::F2Vector&, int b) {
    return b == 0 ? 1.0 : std::pow(2.0, -x.n / 2.0);
  };
  return s;
}

MoeParallelStrategy parallel_trivial_strategy() {
  MoeParallelStrategy s;
  s.name = "trivial";
  s.split = [](std::vector<qsim::QuantumRegister>&& regs,
               const std::vector<crypto::ObfProgram>&, Rng& rng) {
    Share bob, charlie;
    for (auto& reg : regs) {
      int basis = rng.bit();
      int n = reg.qubits();
      gf2::F2Vector mask = basis ? gf2::F2Vector(~0ULL, n) : gf2::F2Vector::zero(n);
      gf2::F2Vector u = reg.measure(mask, rng);
      bob.vecs.push_back(u);
      charlie.vecs.push_back(u);
      bob.words.push_back(static_cast<uint64_t>(basis));
      charlie.words.push_back(static_cast<uint64_t>(basis));
    }
    return std::pair<Share, Share>{std::move(bob), std::move(charlie)};
  };
  s.bob = [](Share& share, const ParallelQuestion&, Rng&) { return share.vecs; };
  s.charlie = s.bob;
  s.exact_per_register = [](const MoeInstance& inst, int) {
    return 0.5 * (1.0 + cross_coset_mass(inst));
  };
  return s;
}

MoeParallelStrategy parallel_program_reader_strategy() {
  MoeParallelStrategy s;
  s.name = "program-reader";
  s.split = [](std::vector<qsim::QuantumRegister>&&,
               const std::vector<crypto::ObfProgram>& programs, Rng&) {
    Share bob, charlie;
    bob.programs = programs;
    charlie.programs = programs;
    return std::pair<Share, Share>{std::move(bob), std::move(charlie)};
  };
  auto answer = [](Share& share, const ParallelQuestion& q, Rng&) {
    std::vector<gf2::F2Vector> out;
    for (size_t i = 0; i < q.r.size(); ++i) {
      const auto& prog = share.programs[2 * i + static_cast<size_t>(q.r.get(i))];
      if (!prog.inner) throw StrategyError("program-reader needs transparent programs");
      out.push_back(std::get<crypto::MembershipProgram>(*prog.inner).coset.rep);
    }
    return out;
  };
  s.bob = answer;
  s.charlie = answer;
  s.exact_per_register = [](const MoeInstance&, int) { return 1.0; };
  return s;
}

}  // namespace unclon::games
