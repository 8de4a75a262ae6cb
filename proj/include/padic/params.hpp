#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "padic/fastdiv.hpp"

namespace padic {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using Residue = std::uint64_t;
using ResidueVector = std::vector<Residue>;

bool is_prime(std::uint64_t n);

// Arithmetic context. Residues live in N_{<p^E}; norms are rescaled by
// p^{(E-1)q} so that every value handled downstream is an exact integer.
// Construction rejects non-prime p and parameter combinations whose
// per-vector norms would not fit in a signed 64-bit rescaled unit
// (p^E < 2^62 and D * p^{(E-1)q} < 2^62).
class Params {
 public:
  Params(std::uint64_t prime, std::uint32_t accuracy, std::uint32_t norm_exponent,
         std::uint32_t dim);

  std::uint64_t p;
  std::uint32_t E;
  std::uint32_t q;
  std::uint32_t D;

  std::uint64_t pe;                     // p^E
  std::vector<std::uint64_t> p_pow;     // p^0 .. p^E
  std::vector<std::int64_t> eps_hat;    // eps_hat[e] = p^{(E-1-e)q} for e < E, 0 at e = E
  FastDiv div_p;
  std::vector<FastDiv> div_p_pow;       // div_p_pow[m] divides by p^m, m = 1..E

  const FastDiv& mod_exp(std::uint32_t m) const { return div_p_pow[m]; }
};

}  // namespace padic
