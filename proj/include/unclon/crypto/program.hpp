#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "unclon/bits.hpp"
#include "unclon/crypto/prf.hpp"
#include "unclon/gf2.hpp"

namespace unclon::crypto {

// Desk-scale length profile for the hidden-trigger construction. The paper's
// parameter inequalities matter for the security proofs, not functionality;
// the crypto profile enforces them at configuration time while desk/tiny
// profiles only report which ones are waived.
struct LengthProfile {
  std::string name = "desk";
  int l0 = 0, l1 = 0, l2 = 0;  // input split, n = l0 + l1 + l2
  int m = 0;                   // prf1 output bits
  int coset_n = 0;             // coset register width (paper ties this to n)
  int lambda = 0;

  int n() const { return l0 + l1 + l2; }

  static LengthProfile desk();
  static LengthProfile crypto_scale();
  // Auto-sized minimal profile; l2 is exactly big enough for the trigger.
  static LengthProfile tiny(int coset_n, int l0, int m);

  struct Constraint {
    std::string name;
    bool holds;
  };
  std::vector<Constraint> constraints() const;
  // Throws ParameterError unless every paper inequality holds.
  void enforce() const;
};

// Exact bit length of the serialized trigger program for a profile.
int trigger_payload_bits(const LengthProfile& prof);

struct ProgramParams {
  uint32_t in_bits = 0;
  uint32_t out_bits = 0;
  uint32_t size_bytes = 0;

  bool operator==(const ProgramParams&) const = default;
};

// Classical inputs a program can see: a bitstring and/or measured vectors.
struct ProgramInput {
  Bits x;
  std::vector<gf2::F2Vector> vecs;
};

struct MembershipProgram {
  gf2::Coset coset;
};

// Q_{m,r}: release the message iff every vector passes its membership check.
struct QProgram {
  std::vector<MembershipProgram> checks;
  Bits message;
};

// The f inside a compute-and-compare program.
struct PrfFn {
  PrfKey key;
};
struct CanonicalFn {
  std::vector<gf2::Coset> cosets;  // basis already selected per challenge bit
};
struct CcFunction {
  std::variant<PrfFn, CanonicalFn> fn;
  Bits eval(const ProgramInput& in) const;
  uint32_t in_bits() const;
};

// CC[f, y, m]: outputs message iff f(x) = lock.
struct CcProgram {
  CcFunction f;
  Bits lock;
  Bits message;
};

// Program P of the hidden-trigger construction.
struct HiddenTriggerProgram {
  LengthProfile prof;
  PrfKey k1, k2, k3;
  std::vector<std::array<MembershipProgram, 2>> mem;  // [i][basis bit]
};

using Program =
    std::variant<MembershipProgram, QProgram, CcProgram, HiddenTriggerProgram>;

// bot is nullopt. Deterministic in its inputs.
std::optional<Bits> eval_program(const Program& p, const ProgramInput& in);

ProgramParams program_params(const Program& p);

// Canonical versioned byte encoding; round-trips bit-exactly.
std::vector<uint8_t> serialize_program(const Program& p);
Program deserialize_program(const std::vector<uint8_t>& bytes);
// Total parse of a byte prefix (attacker-controlled trigger payloads).
std::optional<Program> try_deserialize_program(const std::vector<uint8_t>& bytes);

// Functionality-preserving obfuscation stand-in. The transparent wrapper
// carries the program unchanged; the simulator yields a constant-bot program
// that knows only the parameters. The harnesses document which games become
// winnable under transparency.
struct ObfProgram {
  bool simulated = false;
  ProgramParams params;
  std::optional<Program> inner;

  std::optional<Bits> eval(const ProgramInput& in) const;
};

ObfProgram transparent_io(Program p);
ObfProgram transparent_ccobf(const CcProgram& cc, const Bits& coins);
ObfProgram cc_simulate(const ProgramParams& params);

std::vector<uint8_t> serialize_obf(const ObfProgram& p);
ObfProgram deserialize_obf(const std::vector<uint8_t>& bytes);

// GenTrigger: builds x^(0) || x'^(1) || x'^(2) passing P's hidden-trigger
// test, embedding the program that releases y when all vectors land in the
// x^(0)-indexed cosets.
Bits gen_trigger(const Bits& x0, const Bits& y, const PrfKey& k2, const PrfKey& k3,
                 const std::vector<gf2::CosetPair>& cosets, const LengthProfile& prof);

}  // namespace unclon::crypto
