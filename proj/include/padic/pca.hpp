#pragma once

#include <cstdint>
#include <vector>

#include "padic/ortho.hpp"

namespace padic {

struct BudgetTooLarge : ConfigError {
  using ConfigError::ConfigError;
};

using DataMatrix = std::vector<ResidueVector>;

// One rank-1 factor: a coefficient per sample plus the component vector.
// The two rescaled norms are kept so components sort by exact score
// (their integer product) without recomputation.
struct Component {
  std::vector<Residue> coeffs;
  ResidueVector basis;
  Wide coeff_norm = 0;
  Wide basis_norm = 0;
};

struct FactorModel {
  std::vector<Component> components;
  std::size_t rank() const { return components.size(); }
};

// -1, 0, 1 comparison of exact score products coeff_norm * basis_norm.
int compare_scores(const Component& a, const Component& b);
// Stable descending sort; ties keep insertion order.
void sort_by_score_desc(FactorModel& model);

// Projects every row onto x; returns false and leaves everything untouched
// when all components vanish, otherwise subtracts and appends (c, x).
bool pca_body(DataMatrix& Y, FactorModel& model, const ResidueVector& x, const Params& P);

struct NrpcaOptions {
  // Over-provisioned budget; 0 keeps the plain budget d_minus, otherwise run
  // with d_prime >= d_minus and drop the lowest-scoring components after the
  // final sort.
  std::uint32_t d_prime = 0;
  // Skip pivot rows the recursion has already reduced by a full valuation
  // level: what is left of them no longer represents a new direction. The
  // plain rule only skips rows reduced all the way to zero.
  bool skip_reduced = false;
};

// Greedy factorization pivoting on the current rows in order.
FactorModel nrpca(DataMatrix& Y, std::uint32_t d_minus, const Params& P,
                  const NrpcaOptions& opts = {});

struct RpcaOptions {
  // Take pivot values from the orthogonalised system itself, sorted by
  // descending surviving norm, and stop after d_minus successful pivots with
  // no score pruning. Mutual reduction rewrites surviving rows into mixtures
  // of data directions, so this variant loses cluster structure; it is kept
  // for comparison. The default treats the orthogonalised copy as a ranking
  // instead: rows whose norm the pass mostly removed are members of shared
  // directions and pivot (as their current in-recursion values, largest
  // original norm first), the recursion is over-provisioned, and the model
  // keeps the d_minus top-scoring components.
  bool mutated_pivots = false;
  std::uint32_t survey_budget = 0;  // 0: min(#rows, 2 * (D + d_minus))
};

// Pre-orthogonalises a copy of Y to rank the rows, then runs the recursion
// against Y with pivots drawn in that order (see RpcaOptions).
FactorModel rpca(DataMatrix& Y, std::uint32_t d_minus, const OrthoConfig& cfg, const Params& P,
                 const RpcaOptions& opts = {});

DataMatrix residual(const DataMatrix& original, const FactorModel& model, const Params& P);
ResidueVector residual_row(const ResidueVector& row, const FactorModel& model, std::size_t i,
                           const Params& P);

Wide total_loss(const DataMatrix& Y, const Params& P);

}  // namespace padic
