#include <map>
#include <set>

#include "doctest.h"
#include "unclon/crypto/prf.hpp"
#include "unclon/crypto/program.hpp"
#include "unclon/crypto/schemes.hpp"

using namespace unclon;
using namespace unclon::crypto;

TEST_CASE("ggm puncturing agrees everywhere off the point, 2^10 domain") {
  Rng rng(1);
  PrfKey key = prf_keygen({10, 16}, rng);
  Bits point = Bits::random(10, rng);
  PrfPuncturedKey pk = prf_puncture(key, point);
  for (uint64_t x = 0; x < 1024; ++x) {
    Bits xb = Bits::from_u64(x, 10);
    if (xb == point) {
      CHECK_THROWS_AS(prf_eval_punctured(pk, xb), PuncturedPointError);
    } else {
      CHECK(prf_eval_punctured(pk, xb) == prf_eval(key, xb));
    }
  }
}

TEST_CASE("prf evaluation is deterministic and domain-checked") {
  Rng rng(2);
  PrfKey key = prf_keygen({24, 48}, rng);
  Bits x = Bits::random(24, rng);
  CHECK(prf_eval(key, x) == prf_eval(key, x));
  CHECK_THROWS_AS(prf_eval(key, Bits::random(23, rng)), ParameterError);
}

TEST_CASE("distinct keys give distinct truth tables on a 2^10 domain") {
  Rng rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    PrfKey a = prf_keygen({10, 16}, rng);
    PrfKey b = prf_keygen({10, 16}, rng);
    bool differ = false;
    for (uint64_t x = 0; x < 1024 && !differ; ++x) {
      Bits xb = Bits::from_u64(x, 10);
      differ = prf_eval(a, xb) != prf_eval(b, xb);
    }
    CHECK(differ);
  }
}

TEST_CASE("prf2-style keys are injective on a 2^8 domain when the range is wide") {
  // Statistical injectivity asserted only at tiny profiles; at desk scale it
  // is reported, not enforced.
  Rng rng(4);
  for (int rep = 0; rep < 10; ++rep) {
    PrfKey key = prf_keygen({8, 40}, rng);
    std::set<std::string> images;
    for (uint64_t x = 0; x < 256; ++x)
      images.insert(prf_eval(key, Bits::from_u64(x, 8)).to_string());
    CHECK(images.size() == 256);
  }
}

TEST_CASE("prf output bits are unbiased on a tiny domain (extracting smoke check)") {
  Rng rng(5);
  PrfKey key = prf_keygen({12, 8}, rng);
  std::vector<int> ones(8, 0);
  for (uint64_t x = 0; x < 4096; ++x) {
    Bits y = prf_eval(key, Bits::from_u64(x, 12));
    for (size_t j = 0; j < 8; ++j) ones[j] += y.get(j);
  }
  for (int c : ones) {
    double freq = c / 4096.0;
    CHECK(std::abs(freq - 0.5) < 4.0 * std::sqrt(0.25 / 4096.0));
  }
}

TEST_CASE("obfuscated membership programs agree with the coset oracle") {
  Rng rng(6);
  auto pair = gf2::sample_coset_pair(8, rng);
  ObfProgram prog = transparent_io(Program{MembershipProgram{pair.primal()}});
  gf2::Coset primal = pair.primal();
  for (int i = 0; i < 1000; ++i) {
    gf2::F2Vector u = gf2::F2Vector::random(8, rng);
    ProgramInput in;
    in.vecs = {u};
    auto out = prog.eval(in);
    REQUIRE(out.has_value());
    CHECK(out->get(0) == (primal.member(u) ? 1 : 0));
  }
}

TEST_CASE("simulated programs are constant bot and carry only parameters") {
  Rng rng(7);
  auto pair = gf2::sample_coset_pair(6, rng);
  CcProgram cc;
  cc.f.fn = CanonicalFn{{pair.primal()}};
  cc.lock = Bits::from_f2(pair.primal().rep);
  cc.message = Bits::from_string("10101010");
  ObfProgram sim = cc_simulate(program_params(Program{cc}));
  CHECK(sim.simulated);
  for (int i = 0; i < 20; ++i) {
    ProgramInput in;
    in.vecs = {gf2::F2Vector::random(6, rng)};
    CHECK_FALSE(sim.eval(in).has_value());
  }
}

TEST_CASE("cc programs release the message exactly on the lock preimage") {
  Rng rng(8);
  auto pair = gf2::sample_coset_pair(6, rng);
  CcProgram cc;
  cc.f.fn = CanonicalFn{{pair.primal()}};
  cc.lock = Bits::from_f2(pair.primal().rep);
  cc.message = Bits::from_string("1100");
  gf2::Coset primal = pair.primal();
  for (int i = 0; i < 200; ++i) {
    gf2::F2Vector u = gf2::F2Vector::random(6, rng);
    ProgramInput in;
    in.vecs = {u};
    auto out = eval_program(Program{cc}, in);
    if (primal.member(u)) {
      REQUIRE(out.has_value());
      CHECK(*out == cc.message);
    } else {
      CHECK_FALSE(out.has_value());
    }
  }
}

TEST_CASE("program serialization round-trips bit-exactly for every kind") {
  Rng rng(9);
  std::vector<Program> programs;
  auto pair = gf2::sample_coset_pair(6, rng);
  programs.push_back(MembershipProgram{pair.primal()});
  QProgram q;
  q.checks = {MembershipProgram{pair.primal()}, MembershipProgram{pair.dual()}};
  q.message = Bits::random(16, rng);
  programs.push_back(q);
  CcProgram cc;
  cc.f.fn = PrfFn{prf_keygen({12, 8}, rng)};
  cc.lock = Bits::random(8, rng);
  cc.message = Bits::random(8, rng);
  programs.push_back(cc);
  auto prof = LengthProfile::tiny(4, 1, 8);
  CpPrfKey key = cpprf_protect(prof, rng);
  programs.push_back(*key.p_hat.inner);

  for (const auto& p : programs) {
    auto bytes = serialize_program(p);
    Program back = deserialize_program(bytes);
    CHECK(serialize_program(back) == bytes);
    auto obytes = serialize_obf(transparent_io(p));
    ObfProgram oback = deserialize_obf(obytes);
    CHECK(serialize_obf(oback) == obytes);
  }

  // Obfuscate-serialize-deserialize preserves outputs bit-exactly.
  ObfProgram obf = transparent_io(programs[0]);
  ObfProgram back = deserialize_obf(serialize_obf(obf));
  for (int i = 0; i < 100; ++i) {
    ProgramInput in;
    in.vecs = {gf2::F2Vector::random(6, rng)};
    CHECK(obf.eval(in) == back.eval(in));
  }
}

TEST_CASE("single-decryptor round-trip, 100 random messages at n=4 kappa=2") {
  Rng rng(10);
  SdKeys keys = sd_setup(4, 2, 16, rng);
  for (int i = 0; i < 100; ++i) {
    Bits m = Bits::random(16, rng);
    SdCiphertext ct = sd_enc(keys.pk, m, Bits::random(64, rng));
    auto out = sd_dec(sd_qkeygen(keys), ct, rng);
    REQUIRE(out.has_value());
    CHECK(*out == m);
  }
}

TEST_CASE("single-decryptor rejects a wrong quantum key almost always") {
  Rng rng(11);
  SdKeys keys = sd_setup(4, 2, 16, rng);
  const int kTrials = 1000;
  int rejected = 0;
  for (int i = 0; i < kTrials; ++i) {
    SdCiphertext ct = sd_enc(keys.pk, Bits::random(16, rng), Bits::random(64, rng));
    SdKeys other = sd_setup(4, 2, 16, rng);  // fresh cosets
    if (!sd_dec(sd_qkeygen(other), ct, rng).has_value()) ++rejected;
  }
  // Accept probability per trial is 2^{-kappa*n/2} = 1/16.
  double p = 1.0 - std::pow(2.0, -4.0);
  double sigma = std::sqrt(p * (1 - p) / kTrials);
  CHECK(rejected >= static_cast<int>(kTrials * (p - 3 * sigma)));
}

TEST_CASE("sd_enc is deterministic given coins") {
  Rng rng(12);
  SdKeys keys = sd_setup(4, 2, 16, rng);
  Bits m = Bits::random(16, rng);
  Bits coins = Bits::random(64, rng);
  CHECK(serialize(sd_enc(keys.pk, m, coins)) == serialize(sd_enc(keys.pk, m, coins)));
  // Different r bits change the ciphertext.
  Bits coins2 = coins;
  coins2.set(0, 1 - coins2.get(0));
  CHECK(serialize(sd_enc(keys.pk, m, coins)) != serialize(sd_enc(keys.pk, m, coins2)));
}

TEST_CASE("cp-prf evaluation equals the bare prf on random inputs (desk profile)") {
  Rng rng(13);
  auto prof = LengthProfile::desk();
  CpPrfKey key = cpprf_protect(prof, rng);
  for (int i = 0; i < 100; ++i) {
    Bits x = Bits::random(static_cast<size_t>(prof.n()), rng);
    auto y = cpprf_eval(key, x, rng);
    REQUIRE(y.has_value());
    CHECK(*y == prf_eval(key.k1, x));
  }
}

TEST_CASE("cp-prf evaluation is deterministic per input") {
  Rng rng(14);
  auto prof = LengthProfile::tiny(4, 2, 16);
  CpPrfKey key = cpprf_protect(prof, rng);
  Bits x = Bits::random(static_cast<size_t>(prof.n()), rng);
  auto a = cpprf_eval(key, x, rng);
  auto b = cpprf_eval(key, x, rng);
  REQUIRE(a.has_value());
  CHECK(a == b);
}

TEST_CASE("normal mode rejects corrupted vectors") {
  Rng rng(15);
  auto prof = LengthProfile::tiny(4, 2, 16);
  CpPrfKey key = cpprf_protect(prof, rng);
  Bits x = Bits::random(static_cast<size_t>(prof.n()), rng);
  ProgramInput in;
  in.x = x;
  for (int i = 0; i < prof.l0; ++i) {
    // Vector outside both cosets of register i with overwhelming likelihood.
    gf2::F2Vector v = gf2::F2Vector::random(4, rng);
    while (key.cosets[static_cast<size_t>(i)].primal().member(v) ||
           key.cosets[static_cast<size_t>(i)].dual().member(v))
      v = gf2::F2Vector::random(4, rng);
    in.vecs.push_back(v);
  }
  CHECK_FALSE(key.p_hat.eval(in).has_value());
}

TEST_CASE("trigger inputs evaluate to the planted value, 100 instances") {
  Rng rng(16);
  auto prof = LengthProfile::tiny(4, 2, 16);
  CpPrfKey key = cpprf_protect(prof, rng);
  for (int i = 0; i < 100; ++i) {
    Bits x0 = Bits::random(static_cast<size_t>(prof.l0), rng);
    Bits y = Bits::random(static_cast<size_t>(prof.m), rng);
    Bits trig = gen_trigger_for(key, x0, y);
    CHECK(trig.slice(0, static_cast<size_t>(prof.l0)) == x0);
    auto out = cpprf_eval(key, trig, rng);
    REQUIRE(out.has_value());
    CHECK(*out == y);
  }
}

TEST_CASE("direct trigger evaluation releases y only on coset members") {
  Rng rng(17);
  auto prof = LengthProfile::tiny(4, 2, 16);
  CpPrfKey key = cpprf_protect(prof, rng);
  Bits x0 = Bits::from_string("10");
  Bits y = Bits::random(16, rng);
  Bits trig = gen_trigger_for(key, x0, y);
  ProgramInput in;
  in.x = trig;
  in.vecs = {key.cosets[0].dual().sample_element(rng),
             key.cosets[1].primal().sample_element(rng)};
  auto out = key.p_hat.eval(in);
  REQUIRE(out.has_value());
  CHECK(*out == y);
  in.vecs[0] = in.vecs[0] ^ key.cosets[0].dual().space.dual().basis()[0];
  // A flipped vector leaves the coset with high probability; if it did, the
  // trigger program must refuse.
  if (!key.cosets[0].dual().member(in.vecs[0])) CHECK_FALSE(key.p_hat.eval(in).has_value());
}

TEST_CASE("uniformly random inputs never hit the trigger at the tiny profile") {
  Rng rng(18);
  auto prof = LengthProfile::tiny(4, 1, 8);
  CpPrfKey key = cpprf_protect(prof, rng);
  for (int i = 0; i < 10000; ++i) {
    Bits x = Bits::random(static_cast<size_t>(prof.n()), rng);
    auto y = cpprf_eval(key, x, rng);
    REQUIRE(y.has_value());
    CHECK(*y == prf_eval(key.k1, x));  // normal mode took it
  }
}

TEST_CASE("gen_trigger overflow against an undersized profile is an error") {
  Rng rng(19);
  auto prof = LengthProfile::tiny(4, 2, 16);
  CpPrfKey key = cpprf_protect(prof, rng);
  LengthProfile cramped = prof;
  cramped.l2 = prof.l0 + 8;  // far too small for the encoded program
  CHECK_THROWS_AS(gen_trigger(Bits::random(2, rng), Bits::random(16, rng), key.k2, key.k3,
                              key.cosets, cramped),
                  ParameterError);
}

TEST_CASE("cp-pf accepts its point and rejects non-points") {
  Rng rng(20);
  auto prof = LengthProfile::tiny(4, 1, 16);
  Bits y = Bits::random(static_cast<size_t>(prof.n()), rng);
  CppfProtected prog = cppf_protect(y, prof, rng);
  for (int i = 0; i < 100; ++i) CHECK(cppf_eval(prog, y, rng) == 1);
  for (int i = 0; i < 100; ++i) {
    Bits x = Bits::random(static_cast<size_t>(prof.n()), rng);
    if (x == y) continue;
    CHECK(cppf_eval(prog, x, rng) == 0);
  }
  // Two protections of the same point use independent keys.
  CppfProtected other = cppf_protect(y, prof, rng);
  CHECK(other.z != prog.z);
}

TEST_CASE("unclonable encryption round-trips both bits") {
  Rng rng(21);
  auto prof = LengthProfile::tiny(4, 1, 32);
  Bits key = ue_keygen(prof, rng);
  for (int i = 0; i < 200; ++i) {
    CHECK(ue_dec(key, ue_enc(key, 0, prof, rng), rng) == 0);
  }
  for (int i = 0; i < 200; ++i) {
    CHECK(ue_dec(key, ue_enc(key, 1, prof, rng), rng) == 1);
  }
}

TEST_CASE("multi-bit unclonable encryption recovers 8-bit messages") {
  Rng rng(22);
  auto prof = LengthProfile::tiny(4, 1, 32);
  auto keys = ue_keygen_multi(8, prof, rng);
  for (int i = 0; i < 100; ++i) {
    Bits msg = Bits::random(8, rng);
    UeCiphertextMulti ct = ue_enc_multi(keys, msg, prof, rng);
    CHECK(ue_dec_multi(keys, ct, rng) == msg);
  }
}

TEST_CASE("tokenized signatures verify for both bits") {
  Rng rng(23);
  for (int bit = 0; bit <= 1; ++bit) {
    int ok = 0;
    for (int i = 0; i < 200; ++i) {
      TsKeys keys = ts_keygen(8, rng);
      TsSignature sig = ts_sign(ts_tokengen(keys), bit, rng);
      ok += ts_verify(keys.vk, bit, sig.sigma) ? 1 : 0;
    }
    CHECK(ok == 200);
  }
}

TEST_CASE("cross-verification rate matches the intersection mass at n=4") {
  Rng rng(24);
  // Oracle: E over (A, s, s', sigma in A+s) of [sigma in Adual+s'] = 2^{-n/2}.
  const int kTrials = 4000;
  int accepted = 0;
  for (int i = 0; i < kTrials; ++i) {
    TsKeys keys = ts_keygen(4, rng);
    TsSignature sig = ts_sign(ts_tokengen(keys), 0, rng);
    accepted += ts_verify(keys.vk, 1, sig.sigma) ? 1 : 0;
  }
  double expect = 0.25;
  double sigma = std::sqrt(expect * (1 - expect) / kTrials);
  CHECK(std::abs(accepted / static_cast<double>(kTrials) - expect) < 3.5 * sigma);
}

TEST_CASE("signatures of the wrong length are rejected") {
  Rng rng(25);
  TsKeys keys = ts_keygen(6, rng);
  CHECK_FALSE(ts_verify(keys.vk, 0, gf2::F2Vector::random(5, rng)));
}

TEST_CASE("length profiles report the paper inequalities") {
  auto desk = LengthProfile::desk();
  auto cs = desk.constraints();
  REQUIRE(cs.size() == 4);
  CHECK(cs[0].holds);        // n >= m + 2 lambda + 4
  CHECK_FALSE(cs[1].holds);  // l1 >= 2 l2 + lambda is waived at desk scale
  CHECK(cs[2].holds);
  CHECK_FALSE(cs[3].holds);  // coset_n decoupled from n
  CHECK_THROWS_AS(desk.enforce(), ParameterError);

  auto crypto = LengthProfile::crypto_scale();
  CHECK_NOTHROW(crypto.enforce());
}
