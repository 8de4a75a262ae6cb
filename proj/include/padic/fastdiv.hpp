#pragma once

#include <cassert>
#include <cstdint>

namespace padic {

using u128 = unsigned __int128;

// Division by a runtime-invariant divisor d >= 2 via one 64x64->128 multiply.
// magic = floor(2^64 / d); the quotient estimate is off by at most one.
struct FastDiv {
  std::uint64_t d = 2;
  std::uint64_t magic = 0;

  FastDiv() = default;
  explicit FastDiv(std::uint64_t div) { reset(div); }

  void reset(std::uint64_t div) {
    assert(div >= 2);
    d = div;
    magic = std::uint64_t((u128(1) << 64) / div);
  }

  struct QuotRem {
    std::uint64_t q;
    std::uint64_t r;
  };

  QuotRem divmod(std::uint64_t n) const {
    std::uint64_t q = std::uint64_t((u128(n) * magic) >> 64);
    std::uint64_t r = n - q * d;
    if (r >= d) {
      ++q;
      r -= d;
    }
    return {q, r};
  }

  std::uint64_t div(std::uint64_t n) const { return divmod(n).q; }
  std::uint64_t mod(std::uint64_t n) const { return divmod(n).r; }
};

// (a * b) mod fm.d, exact for any a, b < 2^64. The single-multiply path covers
// operands below 2^32, which includes every residue when p^E < 2^32.
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, const FastDiv& fm) {
  if ((a | b) < (std::uint64_t(1) << 32)) return fm.mod(a * b);
  return std::uint64_t((u128(a) * b) % fm.d);
}

}  // namespace padic
