#include "padic/datagen.hpp"

#include <iostream>
#include <stdexcept>

#include "padic/rng.hpp"

namespace padic {

namespace {

ResidueVector uniform_row(Rng& rng, std::uint32_t dims, std::uint64_t bound) {
  ResidueVector row(dims);
  for (auto& x : row) x = rng.below(bound);
  return row;
}

void check_generator_params(const Params& P, std::uint32_t rate) {
  if (P.E < 2) throw ConfigError("generator needs E >= 2 so the p^2 radius is representable");
  if (rate >= 100) throw ConfigError("anomaly rate must be an integer percentage below 100");
}

}  // namespace

DataMatrix gen_uniform(std::size_t count, std::uint32_t dims, const Params& P,
                       std::uint64_t seed) {
  if (count < 1 || dims < 1) throw ConfigError("gen_uniform: count and dims must be >= 1");
  Rng rng(seed);
  DataMatrix Y(count);
  for (auto& row : Y) row = uniform_row(rng, dims, P.pe);
  return Y;
}

LabeledDataset gen_balls(std::uint32_t B, std::uint32_t rate, std::size_t count, const Params& P,
                         std::uint64_t seed, const BallOptions& opts) {
  if (B < 1) throw ConfigError("gen_balls: B must be >= 1");
  check_generator_params(P, rate);

  Rng rng(seed);
  const std::uint64_t p2 = P.p_pow[2];
  const std::uint64_t noise_bound = P.p_pow[P.E - 2];

  // Centres first: even labels uniform, odd labels divisible by p.
  std::vector<ResidueVector> centers(B);
  for (std::uint32_t b = 0; b < B; ++b) {
    centers[b].resize(P.D);
    for (auto& x : centers[b]) {
      x = b % 2 == 0 ? rng.below(P.pe) : P.p * rng.below(P.p_pow[P.E - 1]);
    }
  }
  for (std::uint32_t a = 0; a < B; ++a) {
    for (std::uint32_t b = a + 1; b < B; ++b) {
      bool same = true;
      for (std::uint32_t d = 0; d < P.D && same; ++d) {
        same = centers[a][d] % p2 == centers[b][d] % p2;
      }
      if (same) {
        std::cerr << "warning: ball centres " << a << " and " << b
                  << " coincide modulo p^2; the balls overlap\n";
      }
    }
  }

  LabeledDataset ds;
  ds.meta = {"balls", seed, rate, B};
  ds.Y.resize(count);
  ds.labels.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (rng.below(100) < rate) {
      ds.Y[i] = uniform_row(rng, P.D, P.pe);
      ds.labels[i] = kAnomalousLabel;
      continue;
    }
    std::uint32_t b = std::uint32_t(rng.below(B));
    ResidueVector row(P.D);
    for (std::uint32_t d = 0; d < P.D; ++d) {
      std::uint64_t v = centers[b][d] + p2 * rng.below(noise_bound);
      row[d] = v >= P.pe ? v - P.pe : v;
    }
    ds.Y[i] = std::move(row);
    ds.labels[i] = std::int32_t(b);
  }
  if (opts.centers_out) *opts.centers_out = std::move(centers);
  return ds;
}

LabeledDataset gen_affine(std::uint32_t d_prime, std::uint32_t rate, std::size_t count,
                          const Params& P, std::uint64_t seed, const AffineOptions& opts) {
  if (d_prime < 1 || d_prime >= P.D) throw ConfigError("gen_affine: need 1 <= D' < D");
  check_generator_params(P, rate);

  Rng rng(seed);
  const std::uint64_t p2 = P.p_pow[2];
  const std::uint64_t noise_bound = P.p_pow[P.E - 2];
  const FastDiv& fpe = P.div_p_pow[P.E];

  // Basis vectors labeled 0..D'; the last one is the affine offset.
  std::vector<ResidueVector> basis(d_prime + 1);
  for (std::uint32_t j = 0; j <= d_prime; ++j) {
    basis[j].resize(P.D);
    for (auto& x : basis[j]) {
      x = j % 2 == 0 ? rng.below(P.pe) : P.p * rng.below(P.p_pow[P.E - 1]);
    }
  }

  LabeledDataset ds;
  ds.meta = {"affine", seed, rate, d_prime};
  ds.Y.resize(count);
  ds.labels.resize(count);
  if (opts.coords_out) opts.coords_out->clear();
  for (std::size_t i = 0; i < count; ++i) {
    if (rng.below(100) < rate) {
      ds.Y[i] = uniform_row(rng, P.D, P.pe);
      ds.labels[i] = kAnomalousLabel;
      continue;
    }
    ResidueVector w(d_prime);
    for (auto& x : w) x = rng.below(P.pe);
    ResidueVector row(P.D, 0);
    for (std::uint32_t j = 0; j < d_prime; ++j) {
      if (w[j] == 0) continue;
      for (std::uint32_t d = 0; d < P.D; ++d) {
        Residue t = mul_mod(w[j], basis[j][d], fpe);
        row[d] = row[d] + t >= P.pe ? row[d] + t - P.pe : row[d] + t;
      }
    }
    for (std::uint32_t d = 0; d < P.D; ++d) {
      row[d] = row[d] + basis[d_prime][d] >= P.pe ? row[d] + basis[d_prime][d] - P.pe
                                                  : row[d] + basis[d_prime][d];
    }
    if (!opts.zero_noise) {
      for (std::uint32_t d = 0; d < P.D; ++d) {
        std::uint64_t v = row[d] + p2 * rng.below(noise_bound);
        row[d] = v >= P.pe ? v - P.pe : v;
      }
    }
    ds.Y[i] = std::move(row);
    ds.labels[i] = kPlainNormalLabel;
    if (opts.coords_out) opts.coords_out->push_back(std::move(w));
  }
  if (opts.basis_out) *opts.basis_out = std::move(basis);
  return ds;
}

}  // namespace padic
