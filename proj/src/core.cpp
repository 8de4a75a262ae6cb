#include "padic/core.hpp"

#include <cassert>
#include <string>

namespace padic {

std::uint32_t valuation(Residue x, const Params& P) {
  return val_unit(x, P).v;
}

ValUnit val_unit(Residue x, const Params& P) {
  if (x == 0) return {P.E, 0};
  std::uint32_t v = 0;
  for (;;) {
    auto qr = P.div_p.divmod(x);
    if (qr.r != 0) break;
    x = qr.q;
    ++v;
  }
  return {v, x};
}

Residue mod_inverse(Residue u, std::uint32_t m, const Params& P) {
  assert(m >= 1 && m <= P.E);
  Residue u0 = P.div_p.mod(u);
  if (u0 == 0) throw NotAUnit("mod_inverse: argument divisible by p");

  // Extended Euclid modulo p.
  std::int64_t p = std::int64_t(P.p);
  std::int64_t a = std::int64_t(u0), b = p, x0 = 1, x1 = 0;
  while (b != 0) {
    std::int64_t t = a / b;
    a -= t * b;
    std::swap(a, b);
    x0 -= t * x1;
    std::swap(x0, x1);
  }
  Residue w = Residue(x0 < 0 ? x0 + p : x0);

  // Newton lift: w <- w(2 - uw), doubling the valid precision each round.
  std::uint32_t have = 1;
  while (have < m) {
    have = have * 2 < m ? have * 2 : m;
    const FastDiv& fm = P.mod_exp(have);
    Residue um = fm.mod(u);
    Residue t = mul_mod(um, w, fm);
    Residue two_minus = t <= 2 ? 2 - t : fm.d + 2 - t;
    if (two_minus >= fm.d) two_minus -= fm.d;
    w = mul_mod(w, two_minus, fm);
  }
  return w;
}

std::int64_t rescaled_abs(Residue x, const Params& P) {
  return P.eps_hat[val_unit(x, P).v];
}

Wide norm_q(const ResidueVector& v, const Params& P) {
  Wide sum = 0;
  for (Residue x : v) sum += P.eps_hat[val_unit(x, P).v];
  return sum;
}

std::int64_t row_norm(const ResidueVector& v, const Params& P) {
  assert(v.size() <= P.D);
  std::int64_t sum = 0;
  for (Residue x : v) sum += P.eps_hat[val_unit(x, P).v];
  return sum;
}

RatioData ratio_valuation(const ResidueVector& v0, const ResidueVector& v1, const Params& P) {
  if (v0.size() != v1.size()) {
    throw std::invalid_argument("ratio_valuation: length mismatch");
  }
  RatioData rd;
  rd.rho.resize(v0.size());
  rd.nu.resize(v0.size());
  for (std::size_t d = 0; d < v0.size(); ++d) {
    ValUnit a = val_unit(v0[d], P);
    ValUnit b = val_unit(v1[d], P);
    if (v1[d] == 0 || a.v < b.v) {
      rd.rho[d] = 0;
      rd.nu[d] = std::uint8_t(P.E);
      continue;
    }
    std::uint32_t m = P.E - b.v;
    const FastDiv& fm = P.mod_exp(m);
    Residue inv = mod_inverse(b.unit, m, P);
    Residue r = mul_mod(fm.mod(a.unit), inv, fm);
    if (a.v > b.v) r = mul_mod(r, fm.mod(P.p_pow[a.v - b.v]), fm);
    rd.rho[d] = r;
    rd.nu[d] = std::uint8_t(b.v);
  }
  return rd;
}

ResidueVector axpy_mod(const ResidueVector& v, Residue c, const ResidueVector& x, const Params& P) {
  ResidueVector out = v;
  axpy_mod_inplace(out, c, x, P);
  return out;
}

void axpy_mod_inplace(ResidueVector& v, Residue c, const ResidueVector& x, const Params& P) {
  if (v.size() != x.size()) throw std::invalid_argument("axpy_mod: length mismatch");
  const FastDiv& fm = P.div_p_pow[P.E];
  for (std::size_t d = 0; d < v.size(); ++d) {
    Residue t = mul_mod(c, x[d], fm);
    v[d] = sub_mod_pe(v[d], t, P);
  }
}

bool is_zero_vector(const ResidueVector& v) {
  for (Residue x : v) {
    if (x != 0) return false;
  }
  return true;
}

}  // namespace padic
