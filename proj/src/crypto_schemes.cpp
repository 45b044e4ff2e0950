#include "unclon/crypto/schemes.hpp"

#include <cmath>

#include "unclon/errors.hpp"

namespace unclon::crypto {

namespace {

MembershipProgram membership(const gf2::Coset& c) { return MembershipProgram{c}; }

}  // namespace

SdKeys sd_setup(int n, int kappa, int msg_bits, Rng& rng) {
  if (n < 2 || n % 2 != 0) throw ParameterError("sd_setup: n must be even and >= 2");
  if (kappa < 1) throw ParameterError("sd_setup: kappa must be >= 1");
  if (msg_bits < 1) throw ParameterError("sd_setup: empty message space");
  SdKeys keys;
  keys.n = n;
  keys.kappa = kappa;
  keys.msg_bits = msg_bits;
  for (int i = 0; i < kappa; ++i) {
    auto pair = gf2::sample_coset_pair(n, rng);
    keys.pk.push_back(transparent_io(Program{membership(pair.primal())}));
    keys.pk.push_back(transparent_io(Program{membership(pair.dual())}));
    keys.sk.push_back(std::move(pair));
  }
  return keys;
}

SdQuantumKey sd_qkeygen(const SdKeys& keys) {
  SdQuantumKey qk;
  for (const auto& pair : keys.sk) qk.regs.push_back(qsim::QuantumRegister::coset(pair));
  return qk;
}

SdCiphertext sd_enc(const std::vector<ObfProgram>& pk, const Bits& m, const Bits& coins) {
  if (pk.empty() || pk.size() % 2 != 0) throw ParameterError("sd_enc: malformed public key");
  size_t kappa = pk.size() / 2;
  if (coins.size() < kappa) throw ParameterError("sd_enc: not enough coins");
  SdCiphertext ct;
  ct.r = coins.slice(0, kappa);
  QProgram q;
  for (size_t i = 0; i < kappa; ++i) {
    const ObfProgram& sel = pk[2 * i + static_cast<size_t>(ct.r.get(i))];
    if (!sel.inner) throw ParameterError("sd_enc: simulated membership program");
    q.checks.push_back(std::get<MembershipProgram>(*sel.inner));
  }
  q.message = m;
  // Remaining coins are the obfuscator's random tape; the transparent
  // stand-in ignores them, keeping sd_enc deterministic in (m, coins).
  ct.prog = transparent_io(Program{std::move(q)});
  return ct;
}

std::optional<Bits> sd_dec(SdQuantumKey&& key, const SdCiphertext& ct, Rng& rng) {
  if (ct.r.size() != key.regs.size()) return std::nullopt;
  if (!ct.prog.inner && !ct.prog.simulated) return std::nullopt;
  ProgramInput in;
  for (size_t i = 0; i < key.regs.size(); ++i) {
    int n = key.regs[i].qubits();
    gf2::F2Vector mask = ct.r.get(i) ? gf2::F2Vector(~0ULL, n) : gf2::F2Vector::zero(n);
    in.vecs.push_back(key.regs[i].measure(mask, rng));
  }
  return ct.prog.eval(in);
}

std::vector<uint8_t> serialize(const SdCiphertext& ct) {
  std::vector<uint8_t> out;
  out.push_back(static_cast<uint8_t>(ct.r.size()));
  auto rb = ct.r.bytes();
  out.insert(out.end(), rb.begin(), rb.end());
  auto pb = serialize_obf(ct.prog);
  out.insert(out.end(), pb.begin(), pb.end());
  return out;
}

CpPrfKey cpprf_protect(const LengthProfile& prof, Rng& rng) {
  PrfKey k1 = prf_keygen({prof.n(), prof.m}, rng);
  return cpprf_protect_key(k1, prof, rng);
}

CpPrfKey cpprf_protect_key(const PrfKey& k1, const LengthProfile& prof, Rng& rng) {
  if (k1.params.in_bits != prof.n() || k1.params.out_bits != prof.m)
    throw ParameterError("cpprf_protect_key: key does not match profile");
  if (prof.l2 - prof.l0 < trigger_payload_bits(prof))
    throw ParameterError("cpprf_protect_key: profile cannot embed trigger programs");
  CpPrfKey key;
  key.prof = prof;
  key.k1 = k1;
  key.k2 = prf_keygen({prof.l2, prof.l1}, rng);
  key.k3 = prf_keygen({prof.l1, prof.l2}, rng);
  HiddenTriggerProgram p;
  p.prof = prof;
  p.k1 = key.k1;
  p.k2 = key.k2;
  p.k3 = key.k3;
  for (int i = 0; i < prof.l0; ++i) {
    auto pair = gf2::sample_coset_pair(prof.coset_n, rng);
    p.mem.push_back({membership(pair.primal()), membership(pair.dual())});
    key.cosets.push_back(std::move(pair));
  }
  key.p_hat = transparent_io(Program{std::move(p)});
  return key;
}

std::optional<Bits> cpprf_eval(const CpPrfKey& key, const Bits& x, Rng& rng) {
  if (static_cast<int>(x.size()) != key.prof.n())
    throw ParameterError("cpprf_eval: bad input length");
  ProgramInput in;
  in.x = x;
  for (int i = 0; i < key.prof.l0; ++i) {
    // Fresh preparation per evaluation; stands in for the coherent
    // non-demolition run of the honest evaluator.
    auto reg = qsim::QuantumRegister::coset(key.cosets[static_cast<size_t>(i)]);
    int n = key.prof.coset_n;
    gf2::F2Vector mask =
        x.get(static_cast<size_t>(i)) ? gf2::F2Vector(~0ULL, n) : gf2::F2Vector::zero(n);
    in.vecs.push_back(reg.measure(mask, rng));
  }
  return key.p_hat.eval(in);
}

Bits gen_trigger_for(const CpPrfKey& key, const Bits& x0, const Bits& y) {
  return gen_trigger(x0, y, key.k2, key.k3, key.cosets, key.prof);
}

double OutputDistribution::prob_of(const std::optional<Bits>& v) const {
  for (const auto& [k, p] : entries)
    if (k == v) return p;
  return 0.0;
}

namespace {

void add_prob(OutputDistribution& dist, const std::optional<Bits>& v, double p) {
  for (auto& [k, q] : dist.entries) {
    if (k == v) {
      q += p;
      return;
    }
  }
  dist.entries.emplace_back(v, p);
}

}  // namespace

OutputDistribution cpprf_measured_distribution(const CpPrfKey& key, const Bits& x) {
  // Exact pushforward of the per-register measurement distributions through
  // the classical program.
  if (key.prof.l0 != 1)
    throw CapacityError("cpprf_measured_distribution: implemented for l0 = 1");
  const auto& pair = key.cosets[0];
  gf2::Coset coset = x.get(0) ? pair.dual() : pair.primal();
  auto elems = coset.enumerate();
  OutputDistribution dist;
  double p = 1.0 / static_cast<double>(elems.size());
  for (const auto& v : elems) {
    ProgramInput in;
    in.x = x;
    in.vecs = {v};
    add_prob(dist, key.p_hat.eval(in), p);
  }
  return dist;
}

OutputDistribution cpprf_coherent_distribution(const CpPrfKey& key, const Bits& x,
                                               int qubit_cap) {
  // Coherent route: rotate the register state per x^(0), apply the classical
  // program as an isometry into an output register, trace out the input, and
  // read the diagonal. Exercises the dense tensor/partial-trace machinery
  // rather than the classical pushforward above.
  if (key.prof.l0 != 1)
    throw CapacityError("cpprf_coherent_distribution: implemented for l0 = 1");
  int n = key.prof.coset_n;
  qsim::StateVector st = qsim::coset_state(key.cosets[0], qubit_cap);
  if (x.get(0)) st = qsim::hadamard_subset(st, gf2::F2Vector(~0ULL, n));

  std::vector<std::optional<Bits>> labels;
  std::vector<Eigen::Index> outcome_of(static_cast<size_t>(1) << n);
  for (uint64_t v = 0; v < (1ULL << n); ++v) {
    ProgramInput in;
    in.x = x;
    in.vecs = {gf2::F2Vector(v, n)};
    auto out = key.p_hat.eval(in);
    Eigen::Index idx = -1;
    for (size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == out) idx = static_cast<Eigen::Index>(i);
    if (idx < 0) {
      labels.push_back(out);
      idx = static_cast<Eigen::Index>(labels.size() - 1);
    }
    outcome_of[v] = idx;
  }
  Eigen::Index out_dim = static_cast<Eigen::Index>(labels.size());
  Eigen::Index in_dim = st.amps.size();
  qsim::Matrix isometry = qsim::Matrix::Zero(in_dim * out_dim, in_dim);
  for (Eigen::Index v = 0; v < in_dim; ++v)
    isometry(v * out_dim + outcome_of[static_cast<size_t>(v)], v) = 1.0;
  qsim::CVector joint = isometry * st.amps;
  qsim::Matrix rho = joint * joint.adjoint();
  qsim::Matrix out_rho =
      qsim::partial_trace(rho, {static_cast<int>(in_dim), static_cast<int>(out_dim)}, {1});
  OutputDistribution dist;
  for (Eigen::Index i = 0; i < out_dim; ++i)
    add_prob(dist, labels[static_cast<size_t>(i)], std::real(out_rho(i, i)));
  return dist;
}

CppfProtected cppf_protect(const Bits& y, const LengthProfile& prof, Rng& rng) {
  if (static_cast<int>(y.size()) != prof.n()) throw ParameterError("cppf_protect: bad point length");
  CppfProtected prog;
  prog.key = cpprf_protect(prof, rng);
  prog.z = prf_eval(prog.key.k1, y);
  return prog;
}

int cppf_eval(const CppfProtected& prog, const Bits& x, Rng& rng) {
  auto z = cpprf_eval(prog.key, x, rng);
  return (z && *z == prog.z) ? 1 : 0;
}

Bits ue_keygen(const LengthProfile& prof, Rng& rng) {
  return Bits::random(static_cast<size_t>(prof.n()), rng);
}

UeCiphertext ue_enc(const Bits& key, int bit, const LengthProfile& prof, Rng& rng) {
  if (static_cast<int>(key.size()) != prof.n()) throw ParameterError("ue_enc: bad key length");
  if (bit != 0 && bit != 1) throw ParameterError("ue_enc: message must be one bit");
  UeCiphertext ct;
  ct.prf_key = cpprf_protect(prof, rng);
  ct.r = Bits::random(key.size(), rng);
  Bits c0 = prf_eval(ct.prf_key.k1, key ^ ct.r);
  Bits c1 = Bits::random(static_cast<size_t>(prof.m), rng);
  ct.c = bit ? c1 : c0;
  return ct;
}

int ue_dec(const Bits& key, const UeCiphertext& ct, Rng& rng) {
  // The decryptor only holds the quantum part, so the comparison value comes
  // from the copy-protected evaluation, not from k1 directly.
  auto cstar = cpprf_eval(ct.prf_key, key ^ ct.r, rng);
  return (cstar && *cstar == ct.c) ? 0 : 1;
}

std::vector<Bits> ue_keygen_multi(int ell, const LengthProfile& prof, Rng& rng) {
  if (ell < 1) throw ParameterError("ue_keygen_multi: bad length");
  std::vector<Bits> keys;
  for (int i = 0; i < ell; ++i) keys.push_back(Bits::random(static_cast<size_t>(prof.n()), rng));
  return keys;
}

UeCiphertextMulti ue_enc_multi(const std::vector<Bits>& keys, const Bits& msg,
                               const LengthProfile& prof, Rng& rng) {
  if (keys.size() != msg.size()) throw ParameterError("ue_enc_multi: length mismatch");
  UeCiphertextMulti ct;
  ct.prf_key = cpprf_protect(prof, rng);  // one key for every bit position
  for (size_t i = 0; i < keys.size(); ++i) {
    Bits r = Bits::random(keys[i].size(), rng);
    Bits c0 = prf_eval(ct.prf_key.k1, keys[i] ^ r);
    Bits c1 = Bits::random(static_cast<size_t>(prof.m), rng);
    ct.r.push_back(std::move(r));
    ct.c.push_back(msg.get(i) ? c1 : c0);
  }
  return ct;
}

Bits ue_dec_multi(const std::vector<Bits>& keys, const UeCiphertextMulti& ct, Rng& rng) {
  if (keys.size() != ct.r.size() || keys.size() != ct.c.size())
    throw ParameterError("ue_dec_multi: malformed ciphertext");
  Bits msg(keys.size());
  for (size_t i = 0; i < keys.size(); ++i) {
    auto cstar = cpprf_eval(ct.prf_key, keys[i] ^ ct.r[i], rng);
    msg.set(i, (cstar && *cstar == ct.c[i]) ? 0 : 1);
  }
  return msg;
}

TsKeys ts_keygen(int n, Rng& rng) {
  if (n < 2 || n % 2 != 0) throw ParameterError("ts_keygen: n must be even and >= 2");
  TsKeys keys;
  keys.n = n;
  keys.sk = gf2::sample_coset_pair(n, rng);
  keys.vk = {transparent_io(Program{membership(keys.sk.primal())}),
             transparent_io(Program{membership(keys.sk.dual())})};
  return keys;
}

qsim::QuantumRegister ts_tokengen(const TsKeys& keys) {
  return qsim::QuantumRegister::coset(keys.sk);
}

TsSignature ts_sign(qsim::QuantumRegister&& token, int bit, Rng& rng) {
  if (bit != 0 && bit != 1) throw ParameterError("ts_sign: message must be one bit");
  int n = token.qubits();
  gf2::F2Vector mask = bit ? gf2::F2Vector(~0ULL, n) : gf2::F2Vector::zero(n);
  return TsSignature{bit, token.measure(mask, rng)};
}

bool ts_verify(const std::array<ObfProgram, 2>& vk, int bit, const gf2::F2Vector& sigma) {
  if (bit != 0 && bit != 1) return false;
  const ObfProgram& c = vk[static_cast<size_t>(bit)];
  if (static_cast<uint32_t>(sigma.n) != c.params.in_bits) return false;
  ProgramInput in;
  in.vecs = {sigma};
  auto out = c.eval(in);
  return out && out->size() == 1 && out->get(0) == 1;
}

}  // namespace unclon::crypto
