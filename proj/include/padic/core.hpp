#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "padic/int128.hpp"
#include "padic/params.hpp"

namespace padic {

struct NotAUnit : std::domain_error {
  using std::domain_error::domain_error;
};

// Additive p-adic valuation capped at E; valuation(0) = E.
std::uint32_t valuation(Residue x, const Params& P);

struct ValUnit {
  std::uint32_t v;
  Residue unit;  // x / p^v; 0 when x = 0
};
ValUnit val_unit(Residue x, const Params& P);

// Inverse of a unit u modulo p^m (1 <= m <= E): Euclid mod p, then Hensel lifting.
Residue mod_inverse(Residue u, std::uint32_t m, const Params& P);

// |x| rescaled by p^{(E-1)q}: 0 for x = 0, else p^{(E-1-v(x))q}.
std::int64_t rescaled_abs(Residue x, const Params& P);

// Rescaled l^q norm, exact. The i64 variant is for vectors of length <= D,
// which the Params guard keeps inside int64.
Wide norm_q(const ResidueVector& v, const Params& P);
std::int64_t row_norm(const ResidueVector& v, const Params& P);

// Per-coordinate ratio rho_d = v0_d / v1_d mod p^{E-nu_d} with nu_d = v(v1_d),
// or the dummy pair (0, E) when v1_d = 0 or v(v0_d) < v(v1_d).
struct RatioData {
  std::vector<Residue> rho;
  std::vector<std::uint8_t> nu;
};
RatioData ratio_valuation(const ResidueVector& v0, const ResidueVector& v1, const Params& P);

// (v - c*x) mod p^E, coordinatewise.
ResidueVector axpy_mod(const ResidueVector& v, Residue c, const ResidueVector& x, const Params& P);
void axpy_mod_inplace(ResidueVector& v, Residue c, const ResidueVector& x, const Params& P);

inline Residue mul_mod_pe(Residue a, Residue b, const Params& P) {
  return mul_mod(a, b, P.div_p_pow[P.E]);
}

inline Residue sub_mod_pe(Residue a, Residue b, const Params& P) {
  return a >= b ? a - b : a + P.pe - b;
}

bool is_zero_vector(const ResidueVector& v);

}  // namespace padic
