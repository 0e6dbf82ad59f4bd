#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace symcube {

enum class CertificateMode { colored, uncolored };

inline const char* to_string(CertificateMode m) { return m == CertificateMode::colored ? "colored" : "uncolored"; }

/// Canonical byte string. Equality of the full bytes is the equivalence test.
struct Certificate {
  CertificateMode mode = CertificateMode::colored;
  std::vector<std::uint8_t> bytes;

  friend bool operator==(const Certificate&, const Certificate&) = default;
  friend std::strong_ordering operator<=>(const Certificate& a, const Certificate& b) {
    if (a.mode != b.mode) return a.mode <=> b.mode;
    return a.bytes <=> b.bytes;
  }

  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (auto b : bytes) {
      s.push_back(digits[b >> 4]);
      s.push_back(digits[b & 15]);
    }
    return s;
  }

  /// 64-bit FNV-1a digest, for display only.
  std::uint64_t digest() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (auto b : bytes) h = (h ^ b) * 0x100000001b3ull;
    return h;
  }

  std::string short_hex() const {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = digest();
    std::string s(12, '0');
    for (int i = 11; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = digits[h & 15];
    return s;
  }
};

namespace detail {
inline void put_varint(std::vector<std::uint8_t>& out, std::uint64_t x) {
  while (x >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(x | 0x80));
    x >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(x));
}
}  // namespace detail

/// Header integers, then the sorted block list (packed 16 bits per point)
/// flattened and delta-encoded as zigzag varints.
inline Certificate encode_certificate(CertificateMode mode, std::span<const std::uint64_t> header,
                                      const std::vector<std::uint64_t>& form, std::uint32_t block_size) {
  Certificate c;
  c.mode = mode;
  detail::put_varint(c.bytes, header.size());
  for (auto h : header) detail::put_varint(c.bytes, h);
  detail::put_varint(c.bytes, form.size());
  std::int64_t prev = 0;
  for (auto key : form)
    for (std::uint32_t i = 0; i < block_size; ++i) {
      auto x = static_cast<std::int64_t>((key >> (16 * (block_size - 1 - i))) & 0xffff);
      std::int64_t d = x - prev;
      prev = x;
      detail::put_varint(c.bytes, static_cast<std::uint64_t>((d << 1) ^ (d >> 63)));
    }
  return c;
}

}  // namespace symcube
