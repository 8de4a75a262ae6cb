#pragma once

#include <cstdint>
#include <vector>

#include "padic/pca.hpp"

namespace padic {

// H candidate directions; directions[h] holds one coefficient per model
// component, so direction h is sum_d directions[h][d] * x_d.
struct DirectionSet {
  std::vector<std::vector<Residue>> directions;
  std::size_t count() const { return directions.size(); }
};

struct RefineConfig {
  // Cap on line-search steps; 0 selects the default 50 * H,
  // kInfiniteThreshold disables the cap.
  std::uint64_t t_ls = 0;
};

struct LineSearchStats {
  std::uint64_t steps = 0;
  std::uint64_t updating_steps = 0;
  bool hit_threshold = false;
};

// Cycles through the directions, folding each nonzero projection of the
// residual rows back into the coefficients. Stops after H consecutive
// no-update steps (the model is then locally optimal for the set) or at the
// step cap. X is never modified.
LineSearchStats line_search(const DataMatrix& original, FactorModel& model,
                            const DirectionSet& dirs, const RefineConfig& cfg, const Params& P);

DirectionSet identity_directions(std::size_t d_minus);

// Line search over the model's own components.
LineSearchStats coordinate_descent(const DataMatrix& original, FactorModel& model,
                                   const RefineConfig& cfg, const Params& P);

// count coefficient vectors drawn uniformly from N_{<p^E}^{d_minus}.
DirectionSet random_direction_set(std::size_t d_minus, std::size_t count, std::uint64_t seed,
                                  const Params& P);

// True iff every residual row projects to 0 on every direction.
bool is_locally_optimal(const DataMatrix& original, const FactorModel& model,
                        const DirectionSet& dirs, const Params& P);

struct RefineProtocolResult {
  Wide loss_initial = 0;
  Wide loss_after_cd = 0;
  Wide loss_after_ls = 0;
};

// Coordinate descent followed by a line search over `random_count` seeded
// random directions, reporting the exact loss after each stage.
RefineProtocolResult refine_protocol(const DataMatrix& original, FactorModel& model,
                                     std::uint64_t seed, const RefineConfig& cfg, const Params& P,
                                     std::size_t random_count = 20);

}  // namespace padic
