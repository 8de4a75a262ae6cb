#include "padic/ortho.hpp"

#include <stdexcept>

namespace padic {

bool is_orthogonal(const ResidueVector& v, const ResidueVector& x, const Params& P) {
  ProjectionOutcome out = project_onto(v, x, P);
  return out.residual_norm() == row_norm(v, P);
}

ResidueVector orthogonalize(ResidueVector v, const VectorSystem& xs, const Params& P) {
  ProjectionWorkspace ws;
  for (const ResidueVector& x : xs) {
    if (v.size() != x.size()) throw std::invalid_argument("orthogonalize: length mismatch");
    PivotContext ctx(x, P);
    if (ctx.zero_pivot()) continue;
    ProjectionOutcome out = project_onto(v, ctx, P, ws);
    if (out.c != 0) axpy_mod_inplace(v, out.c, x, P);
  }
  return v;
}

OrthoStats iterated_orthogonalization(VectorSystem& xs, const OrthoConfig& cfg, const Params& P,
                                      const VisitObserver* observer) {
  OrthoStats stats;
  const std::size_t n = xs.size();
  if (n == 0) return stats;
  const std::uint64_t cap =
      cfg.t_io == 0 ? 50 * std::uint64_t(n) : cfg.t_io;

  // Residual norms double as a cheap "row is zero" test.
  std::vector<std::int64_t> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = row_norm(xs[j], P);

  std::uint64_t silent = 0;
  for (;;) {
    for (std::size_t j = 0; j < n; ++j) {
      if (stats.pivot_visits == cap) {
        stats.hit_threshold = true;
        return stats;
      }
      ++stats.pivot_visits;
      bool updated = false;
      if (norms[j] != 0) {
        PivotContext ctx(xs[j], P);
        int flag = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(| : flag)
#endif
        for (std::int64_t k = 0; k < std::int64_t(n); ++k) {
          std::size_t j2 = std::size_t(k);
          if (j2 == j || norms[j2] == 0) continue;
          static thread_local ProjectionWorkspace ws;
          ProjectionOutcome out = project_onto(xs[j2], ctx, P, ws);
          if (out.c != 0) {
            axpy_mod_inplace(xs[j2], out.c, xs[j], P);
            norms[j2] = out.residual_norm();
            flag = 1;
          }
        }
        updated = flag != 0;
      }
      if (observer) {
        PivotVisit visit{stats.pivot_visits, j, updated};
        (*observer)(visit, xs);
      }
      silent = updated ? 0 : silent + 1;
      if (silent == n) return stats;
    }
  }
}

}  // namespace padic
