#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padic/pca.hpp"

namespace padic {

// Ground-truth tags: kAnomalousLabel for injected anomalies, a non-negative
// ball id for ball data, kPlainNormalLabel for normals with no subgroup.
constexpr std::int32_t kAnomalousLabel = -1;
constexpr std::int32_t kPlainNormalLabel = -2;

struct DatasetMeta {
  std::string generator;  // "balls" | "affine" | "uniform" | "external"
  std::uint64_t seed = 0;
  std::uint32_t rate = 0;       // anomaly percentage
  std::uint32_t group_param = 0;  // B for balls, D' for affine
};

struct LabeledDataset {
  DataMatrix Y;
  std::vector<std::int32_t> labels;
  DatasetMeta meta;
};

// count rows with i.i.d. uniform entries in N_{<p^E}.
DataMatrix gen_uniform(std::size_t count, std::uint32_t dims, const Params& P,
                       std::uint64_t seed);

struct BallOptions {
  std::vector<ResidueVector>* centers_out = nullptr;
};

// Union of B balls of radius |p|^2: even-label centres uniform in N_{<p^E},
// odd-label centres uniform in p * N_{<p^{E-1}} per coordinate. Each sample
// is anomalous (uniform) with probability rate%, otherwise a uniform ball
// choice plus p^2-scaled noise around its centre. Needs E >= 2.
LabeledDataset gen_balls(std::uint32_t B, std::uint32_t rate, std::size_t count, const Params& P,
                         std::uint64_t seed, const BallOptions& opts = {});

struct AffineOptions {
  bool zero_noise = false;  // test hook: drop the p^2 noise term
  std::vector<ResidueVector>* basis_out = nullptr;   // D'+1 labeled vectors
  std::vector<ResidueVector>* coords_out = nullptr;  // drawn w per normal sample
};

// Noisy affine subspace: basis vectors labeled 0..D' (even labels uniform,
// odd labels in p * N_{<p^{E-1}}), samples B*w + p^2 noise with the last
// coordinate of w pinned to 1. Needs E >= 2 and D' < D.
LabeledDataset gen_affine(std::uint32_t d_prime, std::uint32_t rate, std::size_t count,
                          const Params& P, std::uint64_t seed, const AffineOptions& opts = {});

}  // namespace padic
