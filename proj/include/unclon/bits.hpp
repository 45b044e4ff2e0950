#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unclon/errors.hpp"
#include "unclon/gf2.hpp"
#include "unclon/rng.hpp"

namespace unclon {

// Arbitrary-length bitstring for PRF domains, program encodings, and message
// spaces. Bit 0 is the most significant of byte 0, so to_string reads the
// same way as gf2::F2Vector. Trailing pad bits in the last byte are kept zero
// so byte-level serialization is canonical.
class Bits {
 public:
  Bits() = default;
  explicit Bits(size_t n) : n_(n), bytes_((n + 7) / 8, 0) {}

  static Bits zeros(size_t n) { return Bits(n); }

  static Bits random(size_t n, Rng& rng) {
    Bits b(n);
    for (size_t i = 0; i < b.bytes_.size(); ++i) b.bytes_[i] = static_cast<uint8_t>(rng.u64());
    b.clear_pad();
    return b;
  }

  static Bits from_string(const std::string& s) {
    Bits b(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '0' && s[i] != '1') throw ParameterError("Bits: bad character");
      b.set(i, s[i] - '0');
    }
    return b;
  }

  static Bits from_bytes(const std::vector<uint8_t>& bytes, size_t nbits) {
    if (nbits > bytes.size() * 8) throw ParameterError("Bits: not enough bytes");
    Bits b(nbits);
    std::copy(bytes.begin(), bytes.begin() + static_cast<long>((nbits + 7) / 8),
              b.bytes_.begin());
    b.clear_pad();
    return b;
  }

  static Bits from_u64(uint64_t w, size_t n) {
    if (n > 64) throw ParameterError("Bits: from_u64 needs n <= 64");
    Bits b(n);
    for (size_t i = 0; i < n; ++i) b.set(i, static_cast<int>((w >> (n - 1 - i)) & 1));
    return b;
  }

  static Bits from_f2(const gf2::F2Vector& v) {
    return from_u64(v.bits, static_cast<size_t>(v.n));
  }

  size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  int get(size_t i) const {
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1;
  }

  void set(size_t i, int v) {
    uint8_t m = static_cast<uint8_t>(0x80u >> (i & 7));
    if (v)
      bytes_[i >> 3] |= m;
    else
      bytes_[i >> 3] &= static_cast<uint8_t>(~m);
  }

  Bits operator^(const Bits& o) const {
    if (n_ != o.n_) throw ParameterError("Bits: xor length mismatch");
    Bits out(n_);
    for (size_t i = 0; i < bytes_.size(); ++i)
      out.bytes_[i] = static_cast<uint8_t>(bytes_[i] ^ o.bytes_[i]);
    return out;
  }

  bool operator==(const Bits& o) const { return n_ == o.n_ && bytes_ == o.bytes_; }
  bool operator!=(const Bits& o) const { return !(*this == o); }
  bool operator<(const Bits& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return bytes_ < o.bytes_;
  }

  Bits concat(const Bits& o) const {
    Bits out(n_ + o.n_);
    for (size_t i = 0; i < n_; ++i) out.set(i, get(i));
    for (size_t i = 0; i < o.n_; ++i) out.set(n_ + i, o.get(i));
    return out;
  }

  Bits slice(size_t pos, size_t len) const {
    if (pos + len > n_) throw ParameterError("Bits: slice out of range");
    Bits out(len);
    for (size_t i = 0; i < len; ++i) out.set(i, get(pos + i));
    return out;
  }

  // Zero-extends on the right.
  Bits padded_to(size_t len) const {
    if (len < n_) throw ParameterError("Bits: padded_to shorter than value");
    Bits out(len);
    for (size_t i = 0; i < n_; ++i) out.set(i, get(i));
    return out;
  }

  std::string to_string() const {
    std::string s(n_, '0');
    for (size_t i = 0; i < n_; ++i) s[i] = static_cast<char>('0' + get(i));
    return s;
  }

  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(bytes_.size() * 2);
    for (uint8_t b : bytes_) {
      s.push_back(digits[b >> 4]);
      s.push_back(digits[b & 0xf]);
    }
    return s;
  }

  const std::vector<uint8_t>& bytes() const { return bytes_; }

  uint64_t to_u64() const {
    if (n_ > 64) throw ParameterError("Bits: to_u64 needs n <= 64");
    uint64_t w = 0;
    for (size_t i = 0; i < n_; ++i) w = (w << 1) | static_cast<uint64_t>(get(i));
    return w;
  }

  gf2::F2Vector to_f2() const {
    return gf2::F2Vector(to_u64(), static_cast<int>(n_));
  }

 private:
  void clear_pad() {
    if (n_ % 8) bytes_.back() &= static_cast<uint8_t>(0xff << (8 - n_ % 8));
  }

  size_t n_ = 0;
  std::vector<uint8_t> bytes_;
};

}  // namespace unclon
