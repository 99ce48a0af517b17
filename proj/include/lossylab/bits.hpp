#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lossylab {

// Fixed-length bit string, stored MSB-first as an integer plus a length.
// "01" has value 1 at width 2; hex round-trips zero-padded and lowercase.
struct Bits {
  std::uint32_t value = 0;
  int width = 0;

  Bits() = default;
  Bits(std::uint32_t v, int w) : value(v), width(w) {
    if (w < 0 || w > 24) throw std::invalid_argument("bit length out of range [0,24]");
    if (w < 32 && (v >> w) != 0) throw std::invalid_argument("bit value wider than declared length");
  }

  int popcount() const { return std::popcount(value); }
  int parity() const { return popcount() & 1; }

  bool operator==(const Bits&) const = default;
};

inline std::string to_hex(std::uint32_t value, int width) {
  int digits = (width + 3) / 4;
  if (digits == 0) digits = 1;
  static const char* k = "0123456789abcdef";
  std::string s(static_cast<std::size_t>(digits), '0');
  for (int i = digits - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = k[value & 0xf];
    value >>= 4;
  }
  return s;
}

inline std::uint32_t parse_hex(const std::string& s, int width) {
  if (s.empty()) throw std::invalid_argument("empty hex string");
  std::uint64_t v = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw std::invalid_argument("bad hex digit in '" + s + "'");
    v = (v << 4) | static_cast<std::uint64_t>(d);
    if (v >> 32) throw std::invalid_argument("hex string too wide: " + s);
  }
  Bits check(static_cast<std::uint32_t>(v), width);  // validates range
  return check.value;
}

inline std::string to_bin(std::uint32_t value, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = width - 1; i >= 0; --i) {
    if (value & 1u) s[static_cast<std::size_t>(i)] = '1';
    value >>= 1;
  }
  return s;
}

}  // namespace lossylab
