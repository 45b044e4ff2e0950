#include "unclon/crypto/program.hpp"

#include <cstring>

#include "unclon/errors.hpp"

namespace unclon::crypto {

namespace {

constexpr uint8_t kMagic0 = 'U';
constexpr uint8_t kVersion = 1;
constexpr uint8_t kTagMembership = 1;
constexpr uint8_t kTagQ = 2;
constexpr uint8_t kTagCc = 3;
constexpr uint8_t kTagTrigger = 4;
constexpr uint8_t kFnPrf = 1;
constexpr uint8_t kFnCanonical = 2;

class Writer {
 public:
  void u8(uint8_t v) { out_.push_back(v); }
  void u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  void u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  void bits(const Bits& b) {
    u32(static_cast<uint32_t>(b.size()));
    out_.insert(out_.end(), b.bytes().begin(), b.bytes().end());
  }
  std::vector<uint8_t> take() { return std::move(out_); }

 private:
  std::vector<uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(const std::vector<uint8_t>& in) : in_(in) {}
  uint8_t u8() {
    need(1);
    return in_[pos_++];
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  Bits bits() {
    uint32_t n = u32();
    if (n > (1u << 24)) throw SerializationError("bits field too long");
    size_t nb = (n + 7) / 8;
    need(nb);
    std::vector<uint8_t> raw(in_.begin() + static_cast<long>(pos_),
                             in_.begin() + static_cast<long>(pos_ + nb));
    pos_ += nb;
    return Bits::from_bytes(raw, n);
  }

 private:
  void need(size_t k) {
    if (pos_ + k > in_.size()) throw SerializationError("truncated program encoding");
  }
  const std::vector<uint8_t>& in_;
  size_t pos_ = 0;
};

void write_coset(Writer& w, const gf2::Coset& c) {
  w.u8(static_cast<uint8_t>(c.space.n));
  w.u8(static_cast<uint8_t>(c.space.dim()));
  for (const auto& row : c.space.basis()) w.bits(Bits::from_f2(row));
  w.bits(Bits::from_f2(c.rep));
}

gf2::Coset read_coset(Reader& r) {
  int n = r.u8();
  int k = r.u8();
  if (n < 1 || n > 64 || k < 0 || k > n) throw SerializationError("bad coset dims");
  std::vector<gf2::F2Vector> rows;
  for (int i = 0; i < k; ++i) {
    Bits b = r.bits();
    if (static_cast<int>(b.size()) != n) throw SerializationError("bad row length");
    rows.push_back(b.to_f2());
  }
  Bits rep = r.bits();
  if (static_cast<int>(rep.size()) != n) throw SerializationError("bad rep length");
  gf2::F2Subspace space = gf2::F2Subspace::from_rows(rows, n);
  if (space.dim() != k) throw SerializationError("basis not independent");
  return gf2::Coset(space, rep.to_f2());
}

void write_prf_key(Writer& w, const PrfKey& k) {
  w.u32(static_cast<uint32_t>(k.params.in_bits));
  w.u32(static_cast<uint32_t>(k.params.out_bits));
  w.u64(k.seed);
}

PrfKey read_prf_key(Reader& r) {
  PrfKey k;
  k.params.in_bits = static_cast<int>(r.u32());
  k.params.out_bits = static_cast<int>(r.u32());
  k.seed = r.u64();
  if (k.params.in_bits < 1 || k.params.out_bits < 1 || k.params.in_bits > (1 << 20) ||
      k.params.out_bits > (1 << 20))
    throw SerializationError("bad prf params");
  return k;
}

void write_program(Writer& w, const Program& p);

void write_body(Writer& w, const MembershipProgram& p) {
  w.u8(kTagMembership);
  write_coset(w, p.coset);
}

void write_body(Writer& w, const QProgram& p) {
  w.u8(kTagQ);
  w.u8(static_cast<uint8_t>(p.checks.size()));
  for (const auto& c : p.checks) write_coset(w, c.coset);
  w.bits(p.message);
}

void write_body(Writer& w, const CcProgram& p) {
  w.u8(kTagCc);
  if (const auto* f = std::get_if<PrfFn>(&p.f.fn)) {
    w.u8(kFnPrf);
    write_prf_key(w, f->key);
  } else {
    const auto& cf = std::get<CanonicalFn>(p.f.fn);
    w.u8(kFnCanonical);
    w.u8(static_cast<uint8_t>(cf.cosets.size()));
    for (const auto& c : cf.cosets) write_coset(w, c);
  }
  w.bits(p.lock);
  w.bits(p.message);
}

void write_body(Writer& w, const HiddenTriggerProgram& p) {
  w.u8(kTagTrigger);
  w.u8(static_cast<uint8_t>(p.prof.l0));
  w.u32(static_cast<uint32_t>(p.prof.l1));
  w.u32(static_cast<uint32_t>(p.prof.l2));
  w.u32(static_cast<uint32_t>(p.prof.m));
  w.u8(static_cast<uint8_t>(p.prof.coset_n));
  write_prf_key(w, p.k1);
  write_prf_key(w, p.k2);
  write_prf_key(w, p.k3);
  for (const auto& pair : p.mem) {
    write_coset(w, pair[0].coset);
    write_coset(w, pair[1].coset);
  }
}

void write_program(Writer& w, const Program& p) {
  w.u8(kMagic0);
  w.u8(kVersion);
  std::visit([&](const auto& body) { write_body(w, body); }, p);
}

Program read_program(Reader& r) {
  if (r.u8() != kMagic0 || r.u8() != kVersion)
    throw SerializationError("bad program header");
  switch (r.u8()) {
    case kTagMembership:
      return MembershipProgram{read_coset(r)};
    case kTagQ: {
      QProgram q;
      int count = r.u8();
      for (int i = 0; i < count; ++i) q.checks.push_back({read_coset(r)});
      q.message = r.bits();
      return q;
    }
    case kTagCc: {
      CcProgram cc;
      uint8_t fn = r.u8();
      if (fn == kFnPrf) {
        cc.f.fn = PrfFn{read_prf_key(r)};
      } else if (fn == kFnCanonical) {
        CanonicalFn cf;
        int count = r.u8();
        for (int i = 0; i < count; ++i) cf.cosets.push_back(read_coset(r));
        cc.f.fn = std::move(cf);
      } else {
        throw SerializationError("bad cc function tag");
      }
      cc.lock = r.bits();
      cc.message = r.bits();
      return cc;
    }
    case kTagTrigger: {
      HiddenTriggerProgram p;
      p.prof.name = "decoded";
      p.prof.l0 = r.u8();
      p.prof.l1 = static_cast<int>(r.u32());
      p.prof.l2 = static_cast<int>(r.u32());
      p.prof.m = static_cast<int>(r.u32());
      p.prof.coset_n = r.u8();
      p.k1 = read_prf_key(r);
      p.k2 = read_prf_key(r);
      p.k3 = read_prf_key(r);
      for (int i = 0; i < p.prof.l0; ++i) {
        auto a = read_coset(r);
        auto b = read_coset(r);
        p.mem.push_back({MembershipProgram{a}, MembershipProgram{b}});
      }
      return p;
    }
    default:
      throw SerializationError("unknown program tag");
  }
}

std::optional<Bits> eval_membership(const MembershipProgram& p, const ProgramInput& in) {
  if (in.vecs.size() != 1 || in.vecs[0].n != p.coset.space.n)
    throw ParameterError("membership: expected one vector of matching length");
  Bits out(1);
  out.set(0, p.coset.member(in.vecs[0]) ? 1 : 0);
  return out;
}

std::optional<Bits> eval_q(const QProgram& p, const ProgramInput& in) {
  if (in.vecs.size() != p.checks.size())
    throw ParameterError("Q program: wrong number of vectors");
  for (size_t i = 0; i < p.checks.size(); ++i) {
    if (in.vecs[i].n != p.checks[i].coset.space.n)
      throw ParameterError("Q program: vector length mismatch");
    if (!p.checks[i].coset.member(in.vecs[i])) return std::nullopt;
  }
  return p.message;
}

std::optional<Bits> eval_cc(const CcProgram& p, const ProgramInput& in) {
  if (p.f.eval(in) == p.lock) return p.message;
  return std::nullopt;
}

std::optional<Bits> eval_trigger(const HiddenTriggerProgram& p, const ProgramInput& in) {
  const auto& prof = p.prof;
  if (static_cast<int>(in.x.size()) != prof.n())
    throw ParameterError("hidden-trigger program: bad input length");
  if (static_cast<int>(in.vecs.size()) != prof.l0)
    throw ParameterError("hidden-trigger program: wrong vector count");
  Bits x0 = in.x.slice(0, static_cast<size_t>(prof.l0));
  Bits x1 = in.x.slice(static_cast<size_t>(prof.l0), static_cast<size_t>(prof.l1));
  Bits x2 = in.x.slice(static_cast<size_t>(prof.l0 + prof.l1), static_cast<size_t>(prof.l2));

  // Hidden trigger mode.
  Bits t = prf_eval(p.k3, x1) ^ x2;
  if (t.slice(0, static_cast<size_t>(prof.l0)) == x0 && prf_eval(p.k2, t) == x1) {
    Bits qbits = t.slice(static_cast<size_t>(prof.l0), static_cast<size_t>(prof.l2 - prof.l0));
    if (auto q = try_deserialize_program(qbits.bytes())) {
      ProgramInput qin;
      qin.vecs = in.vecs;
      return eval_program(*q, qin);
    }
    return std::nullopt;
  }

  // Normal mode.
  for (int i = 0; i < prof.l0; ++i) {
    if (in.vecs[static_cast<size_t>(i)].n != prof.coset_n)
      throw ParameterError("hidden-trigger program: vector length mismatch");
    if (!p.mem[static_cast<size_t>(i)][static_cast<size_t>(x0.get(static_cast<size_t>(i)))]
             .coset.member(in.vecs[static_cast<size_t>(i)]))
      return std::nullopt;
  }
  return prf_eval(p.k1, in.x);
}

}  // namespace

Bits CcFunction::eval(const ProgramInput& in) const {
  if (const auto* f = std::get_if<PrfFn>(&fn)) return prf_eval(f->key, in.x);
  const auto& cf = std::get<CanonicalFn>(fn);
  if (in.vecs.size() != cf.cosets.size())
    throw ParameterError("canonical fn: wrong number of vectors");
  Bits out;
  for (size_t i = 0; i < cf.cosets.size(); ++i)
    out = out.concat(Bits::from_f2(cf.cosets[i].space.canonical_rep(in.vecs[i])));
  return out;
}

uint32_t CcFunction::in_bits() const {
  if (const auto* f = std::get_if<PrfFn>(&fn))
    return static_cast<uint32_t>(f->key.params.in_bits);
  const auto& cf = std::get<CanonicalFn>(fn);
  uint32_t total = 0;
  for (const auto& c : cf.cosets) total += static_cast<uint32_t>(c.space.n);
  return total;
}

std::optional<Bits> eval_program(const Program& p, const ProgramInput& in) {
  return std::visit(
      [&](const auto& body) -> std::optional<Bits> {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, MembershipProgram>) return eval_membership(body, in);
        if constexpr (std::is_same_v<T, QProgram>) return eval_q(body, in);
        if constexpr (std::is_same_v<T, CcProgram>) return eval_cc(body, in);
        if constexpr (std::is_same_v<T, HiddenTriggerProgram>) return eval_trigger(body, in);
      },
      p);
}

ProgramParams program_params(const Program& p) {
  ProgramParams params;
  params.size_bytes = static_cast<uint32_t>(serialize_program(p).size());
  std::visit(
      [&](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, MembershipProgram>) {
          params.in_bits = static_cast<uint32_t>(body.coset.space.n);
          params.out_bits = 1;
        } else if constexpr (std::is_same_v<T, QProgram>) {
          uint32_t total = 0;
          for (const auto& c : body.checks) total += static_cast<uint32_t>(c.coset.space.n);
          params.in_bits = total;
          params.out_bits = static_cast<uint32_t>(body.message.size());
        } else if constexpr (std::is_same_v<T, CcProgram>) {
          params.in_bits = body.f.in_bits();
          params.out_bits = static_cast<uint32_t>(body.message.size());
        } else if constexpr (std::is_same_v<T, HiddenTriggerProgram>) {
          params.in_bits = static_cast<uint32_t>(body.prof.n() + body.prof.l0 * body.prof.coset_n);
          params.out_bits = static_cast<uint32_t>(body.prof.m);
        }
      },
      p);
  return params;
}

std::vector<uint8_t> serialize_program(const Program& p) {
  Writer w;
  write_program(w, p);
  return w.take();
}

Program deserialize_program(const std::vector<uint8_t>& bytes) {
  Reader r(bytes);
  return read_program(r);
}

std::optional<Program> try_deserialize_program(const std::vector<uint8_t>& bytes) {
  try {
    return deserialize_program(bytes);
  } catch (const SerializationError&) {
    return std::nullopt;
  } catch (const ParameterError&) {
    return std::nullopt;
  }
}

std::optional<Bits> ObfProgram::eval(const ProgramInput& in) const {
  if (simulated) return std::nullopt;
  return eval_program(*inner, in);
}

ObfProgram transparent_io(Program p) {
  ObfProgram o;
  o.simulated = false;
  o.params = program_params(p);
  o.inner = std::move(p);
  return o;
}

ObfProgram transparent_ccobf(const CcProgram& cc, const Bits& coins) {
  (void)coins;  // the transparent wrapper is deterministic regardless
  return transparent_io(Program{cc});
}

ObfProgram cc_simulate(const ProgramParams& params) {
  ObfProgram o;
  o.simulated = true;
  o.params = params;
  return o;
}

std::vector<uint8_t> serialize_obf(const ObfProgram& p) {
  Writer w;
  w.u8('U');
  w.u8('O');
  w.u8(kVersion);
  w.u8(p.simulated ? 1 : 0);
  w.u32(p.params.in_bits);
  w.u32(p.params.out_bits);
  w.u32(p.params.size_bytes);
  if (!p.simulated) {
    auto body = serialize_program(*p.inner);
    w.u32(static_cast<uint32_t>(body.size()));
    auto out = w.take();
    out.insert(out.end(), body.begin(), body.end());
    return out;
  }
  return w.take();
}

ObfProgram deserialize_obf(const std::vector<uint8_t>& bytes) {
  Reader r(bytes);
  if (r.u8() != 'U' || r.u8() != 'O' || r.u8() != kVersion)
    throw SerializationError("bad obf header");
  ObfProgram o;
  o.simulated = r.u8() != 0;
  o.params.in_bits = r.u32();
  o.params.out_bits = r.u32();
  o.params.size_bytes = r.u32();
  if (!o.simulated) {
    uint32_t len = r.u32();
    std::vector<uint8_t> body;
    body.reserve(len);
    for (uint32_t i = 0; i < len; ++i) body.push_back(r.u8());
    o.inner = deserialize_program(body);
  }
  return o;
}

Bits gen_trigger(const Bits& x0, const Bits& y, const PrfKey& k2, const PrfKey& k3,
                 const std::vector<gf2::CosetPair>& cosets, const LengthProfile& prof) {
  if (static_cast<int>(x0.size()) != prof.l0) throw ParameterError("gen_trigger: bad x0 length");
  if (static_cast<int>(y.size()) != prof.m) throw ParameterError("gen_trigger: bad y length");
  if (static_cast<int>(cosets.size()) != prof.l0)
    throw ParameterError("gen_trigger: wrong coset count");

  QProgram q;
  for (int i = 0; i < prof.l0; ++i)
    q.checks.push_back({x0.get(static_cast<size_t>(i))
                            ? cosets[static_cast<size_t>(i)].dual()
                            : cosets[static_cast<size_t>(i)].primal()});
  q.message = y;

  auto bytes = serialize_program(Program{q});
  Bits qbits = Bits::from_bytes(bytes, bytes.size() * 8);
  if (static_cast<int>(qbits.size()) > prof.l2 - prof.l0)
    throw ParameterError("gen_trigger: program encoding overflows the length profile");
  Bits t = x0.concat(qbits.padded_to(static_cast<size_t>(prof.l2 - prof.l0)));
  Bits x1p = prf_eval(k2, t);
  Bits x2p = prf_eval(k3, x1p) ^ t;
  return x0.concat(x1p).concat(x2p);
}

int trigger_payload_bits(const LengthProfile& prof) {
  // Deterministic for a profile: serialize a dummy trigger program.
  Rng rng(0);
  QProgram q;
  for (int i = 0; i < prof.l0; ++i) {
    auto pair = gf2::sample_coset_pair(prof.coset_n, rng);
    q.checks.push_back({pair.primal()});
  }
  q.message = Bits::zeros(static_cast<size_t>(prof.m));
  return static_cast<int>(serialize_program(Program{q}).size() * 8);
}

LengthProfile LengthProfile::desk() {
  LengthProfile p;
  p.name = "desk";
  p.coset_n = 4;
  p.l0 = 2;
  p.m = 32;
  p.lambda = 16;
  p.l2 = p.l0 + trigger_payload_bits(p);
  p.l1 = 96;
  return p;
}

LengthProfile LengthProfile::crypto_scale() {
  LengthProfile p;
  p.name = "crypto";
  p.coset_n = 64;
  p.l0 = 2;
  p.m = 128;
  p.lambda = 128;
  p.l2 = p.l0 + trigger_payload_bits(p);
  p.l1 = 2 * p.l2 + p.lambda;
  return p;
}

LengthProfile LengthProfile::tiny(int coset_n, int l0, int m) {
  LengthProfile p;
  p.name = "tiny";
  p.coset_n = coset_n;
  p.l0 = l0;
  p.m = m;
  p.lambda = 8;
  p.l2 = p.l0 + trigger_payload_bits(p);
  p.l1 = 32;
  return p;
}

std::vector<LengthProfile::Constraint> LengthProfile::constraints() const {
  std::vector<Constraint> out;
  out.push_back({"n >= m + 2*lambda + 4 (extracting prf1)", n() >= m + 2 * lambda + 4});
  out.push_back({"l1 >= 2*l2 + lambda (injective prf2)", l1 >= 2 * l2 + lambda});
  out.push_back({"l2 - l0 fits the trigger program encoding",
                 l2 - l0 >= trigger_payload_bits(*this)});
  out.push_back({"coset registers sized to the prf domain (coset_n == n)", coset_n == n()});
  return out;
}

void LengthProfile::enforce() const {
  // The coset_n == n identity is reported but never enforced: subspace
  // vectors are capped at 64 bits while n grows with the profile.
  auto cs = constraints();
  for (size_t i = 0; i + 1 < cs.size(); ++i)
    if (!cs[i].holds)
      throw ParameterError("length profile violates: " + cs[i].name);
}

}  // namespace unclon::crypto
