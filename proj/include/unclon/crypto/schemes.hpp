#pragma once

#include <optional>
#include <vector>

#include "unclon/crypto/program.hpp"
#include "unclon/qsim.hpp"

namespace unclon::crypto {

// ---------------------------------------------------------------------------
// Single-decryptor encryption: the decryption key is a tuple of coset states.

struct SdKeys {
  int n = 0;
  int kappa = 0;
  int msg_bits = 0;
  std::vector<gf2::CosetPair> sk;  // {A_i, s_i, s'_i}
  std::vector<ObfProgram> pk;      // [2i] primal membership, [2i+1] dual
};

// Quantum decryption key; consumed by sd_dec.
struct SdQuantumKey {
  std::vector<qsim::QuantumRegister> regs;
};

struct SdCiphertext {
  Bits r;           // kappa bits
  ObfProgram prog;  // iO(Q_{m,r})
};

SdKeys sd_setup(int n, int kappa, int msg_bits, Rng& rng);
SdQuantumKey sd_qkeygen(const SdKeys& keys);
// Deterministic in coins: the first kappa bits are r, the rest feeds the
// obfuscator. Identical coins give bit-identical ciphertexts.
SdCiphertext sd_enc(const std::vector<ObfProgram>& pk, const Bits& m, const Bits& coins);
std::optional<Bits> sd_dec(SdQuantumKey&& key, const SdCiphertext& ct, Rng& rng);
std::vector<uint8_t> serialize(const SdCiphertext& ct);

// ---------------------------------------------------------------------------
// Copy-protected PRF (hidden-trigger construction).

struct CpPrfKey {
  LengthProfile prof;
  std::vector<gf2::CosetPair> cosets;  // the quantum part, kept in structured form
  PrfKey k1, k2, k3;
  ObfProgram p_hat;  // iO(P)
};

CpPrfKey cpprf_protect(const LengthProfile& prof, Rng& rng);
// Protect an externally chosen prf1 key (the scheme's KeyGen output).
CpPrfKey cpprf_protect_key(const PrfKey& k1, const LengthProfile& prof, Rng& rng);

// Measure-then-evaluate: applies H per x^(0) bit to a fresh preparation of
// each register, measures, then runs P-hat classically. The substitution for
// a coherent run is validated against qsim (same output distribution for
// deterministic programs on product inputs).
std::optional<Bits> cpprf_eval(const CpPrfKey& key, const Bits& x, Rng& rng);

Bits gen_trigger_for(const CpPrfKey& key, const Bits& x0, const Bits& y);

// Exact output distribution of evaluating `key` on x, both ways. Used by the
// coherent-vs-measured equivalence check; capacity-capped.
struct OutputDistribution {
  // nullopt key is bot; probabilities sum to 1 within numeric error.
  std::vector<std::pair<std::optional<Bits>, double>> entries;
  double prob_of(const std::optional<Bits>& v) const;
};
OutputDistribution cpprf_measured_distribution(const CpPrfKey& key, const Bits& x);
OutputDistribution cpprf_coherent_distribution(const CpPrfKey& key, const Bits& x,
                                               int qubit_cap = qsim::kDefaultQubitCap);

// ---------------------------------------------------------------------------
// Copy-protection of point functions (point y hidden behind the PRF).

struct CppfProtected {
  CpPrfKey key;
  Bits z;  // prf(k1, y)
};

CppfProtected cppf_protect(const Bits& y, const LengthProfile& prof, Rng& rng);
int cppf_eval(const CppfProtected& prog, const Bits& x, Rng& rng);

// ---------------------------------------------------------------------------
// One-time unclonable encryption (single bit and multi-bit).

struct UeCiphertext {
  Bits r;
  Bits c;
  CpPrfKey prf_key;  // quantum part of the ciphertext
};

Bits ue_keygen(const LengthProfile& prof, Rng& rng);
UeCiphertext ue_enc(const Bits& key, int bit, const LengthProfile& prof, Rng& rng);
int ue_dec(const Bits& key, const UeCiphertext& ct, Rng& rng);

struct UeCiphertextMulti {
  std::vector<Bits> r;
  std::vector<Bits> c;
  CpPrfKey prf_key;  // one protected key shared across bit positions
};

std::vector<Bits> ue_keygen_multi(int ell, const LengthProfile& prof, Rng& rng);
UeCiphertextMulti ue_enc_multi(const std::vector<Bits>& keys, const Bits& msg,
                               const LengthProfile& prof, Rng& rng);
Bits ue_dec_multi(const std::vector<Bits>& keys, const UeCiphertextMulti& ct, Rng& rng);

// ---------------------------------------------------------------------------
// Tokenized signatures over hidden coset states.

struct TsKeys {
  int n = 0;
  gf2::CosetPair sk;
  std::array<ObfProgram, 2> vk;  // C_0 accepts A+s, C_1 accepts A-dual+s'
};

struct TsSignature {
  int bit = 0;
  gf2::F2Vector sigma;
};

TsKeys ts_keygen(int n, Rng& rng);
qsim::QuantumRegister ts_tokengen(const TsKeys& keys);
// Consumes the token: measures it (after a full Hadamard layer when bit = 1).
TsSignature ts_sign(qsim::QuantumRegister&& token, int bit, Rng& rng);
bool ts_verify(const std::array<ObfProgram, 2>& vk, int bit, const gf2::F2Vector& sigma);

}  // namespace unclon::crypto
