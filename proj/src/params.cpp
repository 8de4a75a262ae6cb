#include "padic/params.hpp"

#include <string>

namespace padic {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return std::uint64_t((u128(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

// Deterministic Miller-Rabin; this base set is exact for all 64-bit inputs.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t s : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % s == 0) return n == s;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < r - 1; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

constexpr std::uint64_t kResidueLimit = std::uint64_t(1) << 62;

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, const char* what) {
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    acc *= base;
    if (acc >= kResidueLimit) {
      throw ConfigError(std::string(what) + " exceeds the 62-bit working range");
    }
  }
  return std::uint64_t(acc);
}

}  // namespace

Params::Params(std::uint64_t prime, std::uint32_t accuracy, std::uint32_t norm_exponent,
               std::uint32_t dim)
    : p(prime), E(accuracy), q(norm_exponent), D(dim) {
  if (!is_prime(p)) throw ConfigError("p must be prime, got " + std::to_string(p));
  if (E < 1) throw ConfigError("E must be >= 1");
  if (q < 1) throw ConfigError("q must be >= 1");
  if (D < 1) throw ConfigError("D must be >= 1");

  pe = checked_pow(p, E, "p^E");
  p_pow.resize(E + 1);
  p_pow[0] = 1;
  for (std::uint32_t e = 1; e <= E; ++e) p_pow[e] = p_pow[e - 1] * p;

  // Largest rescaled unit is p^{(E-1)q}; a D-entry vector norm must fit int64.
  std::uint64_t unit_max = checked_pow(p, std::uint64_t(E - 1) * q, "p^{(E-1)q}");
  if (u128(unit_max) * D >= kResidueLimit) {
    throw ConfigError("D * p^{(E-1)q} exceeds the 62-bit working range");
  }

  eps_hat.resize(E + 1);
  eps_hat[E] = 0;
  for (std::uint32_t e = 0; e < E; ++e) {
    std::uint64_t v = 1;
    for (std::uint32_t k = 0; k < std::uint64_t(E - 1 - e) * q; ++k) v *= p;
    eps_hat[e] = std::int64_t(v);
  }

  div_p.reset(p);
  div_p_pow.resize(E + 1);
  for (std::uint32_t m = 1; m <= E; ++m) div_p_pow[m].reset(p_pow[m]);
}

}  // namespace padic
