#include "padic/refine.hpp"

#include <stdexcept>

#include "padic/rng.hpp"

namespace padic {

namespace {

void check_dims(const FactorModel& model, const DirectionSet& dirs) {
  for (const auto& row : dirs.directions) {
    if (row.size() != model.rank()) {
      throw std::invalid_argument("direction set does not match model rank");
    }
  }
}

// x = sum_d theta_d * basis_d mod p^E.
ResidueVector combine_direction(const FactorModel& model, const std::vector<Residue>& theta,
                                const Params& P) {
  ResidueVector x(P.D, 0);
  for (std::size_t d = 0; d < theta.size(); ++d) {
    if (theta[d] == 0) continue;
    const ResidueVector& basis = model.components[d].basis;
    const FastDiv& fm = P.div_p_pow[P.E];
    for (std::size_t k = 0; k < x.size(); ++k) {
      Residue t = mul_mod(theta[d], basis[k], fm);
      x[k] = x[k] + t >= P.pe ? x[k] + t - P.pe : x[k] + t;
    }
  }
  return x;
}

}  // namespace

LineSearchStats line_search(const DataMatrix& original, FactorModel& model,
                            const DirectionSet& dirs, const RefineConfig& cfg, const Params& P) {
  check_dims(model, dirs);
  LineSearchStats stats;
  const std::size_t H = dirs.count();
  if (H == 0 || model.rank() == 0 || original.empty()) return stats;

  const std::uint64_t cap = cfg.t_ls == 0 ? 50 * std::uint64_t(H) : cfg.t_ls;
  DataMatrix res = residual(original, model, P);
  const std::int64_t n = std::int64_t(res.size());

  std::size_t h = 0;
  std::uint64_t silent = 0;
  bool done = false;
  std::vector<Residue> cs(res.size());
  while (!done && stats.steps < cap) {
    ++stats.steps;
    const std::vector<Residue>& theta = dirs.directions[h];
    ResidueVector x = combine_direction(model, theta, P);
    PivotContext ctx(x, P);
    int any = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(| : any)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
      static thread_local ProjectionWorkspace ws;
      ProjectionOutcome out = project_onto(res[std::size_t(i)], ctx, P, ws);
      cs[std::size_t(i)] = out.c;
      if (out.c != 0) any = 1;
    }
    if (any) {
      ++stats.updating_steps;
      const FastDiv& fm = P.div_p_pow[P.E];
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
      for (std::int64_t i = 0; i < n; ++i) {
        Residue c = cs[std::size_t(i)];
        if (c == 0) continue;
        for (std::size_t d = 0; d < model.rank(); ++d) {
          Residue delta = mul_mod(c, theta[d], fm);
          Residue& cd = model.components[d].coeffs[std::size_t(i)];
          cd = cd + delta >= P.pe ? cd + delta - P.pe : cd + delta;
        }
        axpy_mod_inplace(res[std::size_t(i)], c, x, P);
      }
      silent = 0;
    } else {
      ++silent;
      if (silent == H) done = true;  // locally optimal for the whole set
    }
    h = h + 1 == H ? 0 : h + 1;
  }
  if (!done) stats.hit_threshold = true;
  if (stats.updating_steps != 0) {
    // Coefficient norms change with C; refresh so scores stay consistent.
    for (Component& comp : model.components) comp.coeff_norm = norm_q(comp.coeffs, P);
  }
  return stats;
}

DirectionSet identity_directions(std::size_t d_minus) {
  DirectionSet dirs;
  dirs.directions.assign(d_minus, std::vector<Residue>(d_minus, 0));
  for (std::size_t d = 0; d < d_minus; ++d) dirs.directions[d][d] = 1;
  return dirs;
}

LineSearchStats coordinate_descent(const DataMatrix& original, FactorModel& model,
                                   const RefineConfig& cfg, const Params& P) {
  return line_search(original, model, identity_directions(model.rank()), cfg, P);
}

DirectionSet random_direction_set(std::size_t d_minus, std::size_t count, std::uint64_t seed,
                                  const Params& P) {
  if (count < 1) throw std::invalid_argument("random_direction_set: count must be >= 1");
  Rng rng(seed);
  DirectionSet dirs;
  dirs.directions.assign(count, std::vector<Residue>(d_minus, 0));
  for (std::size_t h = 0; h < count; ++h) {
    for (std::size_t d = 0; d < d_minus; ++d) dirs.directions[h][d] = rng.below(P.pe);
  }
  return dirs;
}

bool is_locally_optimal(const DataMatrix& original, const FactorModel& model,
                        const DirectionSet& dirs, const Params& P) {
  check_dims(model, dirs);
  DataMatrix res = residual(original, model, P);
  for (const auto& theta : dirs.directions) {
    ResidueVector x = combine_direction(model, theta, P);
    PivotContext ctx(x, P);
    if (ctx.zero_pivot()) continue;
    const std::int64_t n = std::int64_t(res.size());
    int bad = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(| : bad)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
      static thread_local ProjectionWorkspace ws;
      if (bad) continue;
      if (project_onto(res[std::size_t(i)], ctx, P, ws).c != 0) bad = 1;
    }
    if (bad) return false;
  }
  return true;
}

RefineProtocolResult refine_protocol(const DataMatrix& original, FactorModel& model,
                                     std::uint64_t seed, const RefineConfig& cfg, const Params& P,
                                     std::size_t random_count) {
  RefineProtocolResult r;
  r.loss_initial = total_loss(residual(original, model, P), P);
  coordinate_descent(original, model, cfg, P);
  r.loss_after_cd = total_loss(residual(original, model, P), P);
  DirectionSet dirs = random_direction_set(model.rank(), random_count, seed, P);
  line_search(original, model, dirs, cfg, P);
  r.loss_after_ls = total_loss(residual(original, model, P), P);
  return r;
}

}  // namespace padic
