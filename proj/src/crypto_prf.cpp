#include "unclon/crypto/prf.hpp"

#include "unclon/errors.hpp"

namespace unclon::crypto {

namespace {

constexpr uint64_t kLeft = 0xa0761d6478bd642fULL;
constexpr uint64_t kRight = 0xe7037ed1a0b428dbULL;
constexpr uint64_t kLeaf = 0x8ebc6af09c88c6e3ULL;

inline uint64_t child(uint64_t seed, int bit) {
  return splitmix64(seed ^ (bit ? kRight : kLeft));
}

// Walks the subtree rooted at `seed` along x[from..), then expands the leaf.
Bits expand_leaf(uint64_t seed, int out_bits) {
  Bits out(static_cast<size_t>(out_bits));
  int words = (out_bits + 63) / 64;
  size_t pos = 0;
  for (int w = 0; w < words; ++w) {
    uint64_t v = splitmix64(seed ^ kLeaf ^ (0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(w + 1)));
    for (int b = 0; b < 64 && pos < out.size(); ++b, ++pos)
      out.set(pos, static_cast<int>((v >> (63 - b)) & 1));
  }
  return out;
}

Bits eval_from(uint64_t seed, const Bits& x, size_t from, int out_bits) {
  for (size_t d = from; d < x.size(); ++d) seed = child(seed, x.get(d));
  return expand_leaf(seed, out_bits);
}

void check_domain(const PrfParams& p, const Bits& x) {
  if (static_cast<int>(x.size()) != p.in_bits)
    throw ParameterError("prf: input length does not match domain");
}

}  // namespace

PrfKey prf_keygen(const PrfParams& params, Rng& rng) {
  if (params.in_bits < 1 || params.out_bits < 1)
    throw ParameterError("prf_keygen: bad parameters");
  return PrfKey{params, rng.u64()};
}

Bits prf_eval(const PrfKey& key, const Bits& x) {
  check_domain(key.params, x);
  return eval_from(key.seed, x, 0, key.params.out_bits);
}

PrfPuncturedKey prf_puncture(const PrfKey& key, const Bits& point) {
  check_domain(key.params, point);
  PrfPuncturedKey pk;
  pk.params = key.params;
  pk.point = point;
  uint64_t seed = key.seed;
  for (size_t d = 0; d < point.size(); ++d) {
    pk.copath.push_back(child(seed, 1 - point.get(d)));
    seed = child(seed, point.get(d));
  }
  return pk;
}

Bits prf_eval_punctured(const PrfPuncturedKey& key, const Bits& x) {
  check_domain(key.params, x);
  for (size_t d = 0; d < x.size(); ++d) {
    if (x.get(d) != key.point.get(d))
      return eval_from(key.copath[d], x, d + 1, key.params.out_bits);
  }
  throw PuncturedPointError("prf_eval_punctured: evaluation at the punctured point");
}

}  // namespace unclon::crypto
