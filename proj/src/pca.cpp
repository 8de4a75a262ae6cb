#include "padic/pca.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace padic {

namespace {

boost::multiprecision::int256_t to_int256(Wide v) {
  bool neg = v < 0;
  UWide u = neg ? UWide(-(v + 1)) + 1 : UWide(v);
  boost::multiprecision::int256_t r = std::uint64_t(u >> 64);
  r <<= 64;
  r += std::uint64_t(u);
  return neg ? -r : r;
}

}  // namespace

int compare_scores(const Component& a, const Component& b) {
  auto sa = to_int256(a.coeff_norm) * to_int256(a.basis_norm);
  auto sb = to_int256(b.coeff_norm) * to_int256(b.basis_norm);
  if (sa < sb) return -1;
  if (sa > sb) return 1;
  return 0;
}

void sort_by_score_desc(FactorModel& model) {
  std::stable_sort(model.components.begin(), model.components.end(),
                   [](const Component& a, const Component& b) { return compare_scores(a, b) > 0; });
}

bool pca_body(DataMatrix& Y, FactorModel& model, const ResidueVector& x, const Params& P) {
  PivotContext ctx(x, P);
  const std::int64_t n = std::int64_t(Y.size());
  std::vector<Residue> coeffs(Y.size(), 0);
  int any = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(| : any)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    static thread_local ProjectionWorkspace ws;
    ProjectionOutcome out = project_onto(Y[std::size_t(i)], ctx, P, ws);
    coeffs[std::size_t(i)] = out.c;
    if (out.c != 0) any = 1;
  }
  if (!any) return false;

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    if (coeffs[std::size_t(i)] != 0) {
      axpy_mod_inplace(Y[std::size_t(i)], coeffs[std::size_t(i)], x, P);
    }
  }

  Component comp;
  comp.coeff_norm = norm_q(coeffs, P);
  comp.basis_norm = norm_q(x, P);
  comp.coeffs = std::move(coeffs);
  comp.basis = x;
  model.components.push_back(std::move(comp));
  return true;
}

FactorModel nrpca(DataMatrix& Y, std::uint32_t d_minus, const Params& P,
                  const NrpcaOptions& opts) {
  if (d_minus > P.D) throw BudgetTooLarge("nrpca: d_minus exceeds D");
  if (opts.d_prime != 0 && opts.d_prime < d_minus) {
    throw BudgetTooLarge("nrpca: d_prime below d_minus");
  }
  if (opts.d_prime > P.D) throw BudgetTooLarge("nrpca: d_prime exceeds D");
  std::uint32_t budget = opts.d_prime == 0 ? d_minus : opts.d_prime;

  std::vector<std::int64_t> initial;
  Wide level = 1;
  if (opts.skip_reduced) {
    initial.resize(Y.size());
    for (std::size_t j = 0; j < Y.size(); ++j) initial[j] = row_norm(Y[j], P);
    for (std::uint32_t k = 0; k < P.q && level < (Wide(1) << 80); ++k) level *= Wide(P.p);
  }

  FactorModel model;
  for (std::size_t j = 0; j < Y.size(); ++j) {
    if (budget == 0) break;
    if (is_zero_vector(Y[j])) continue;
    if (opts.skip_reduced && Wide(row_norm(Y[j], P)) * level <= Wide(initial[j])) continue;
    ResidueVector pivot = Y[j];  // current, partially reduced row
    if (pca_body(Y, model, pivot, P)) --budget;
  }
  sort_by_score_desc(model);
  while (model.components.size() > d_minus) model.components.pop_back();
  return model;
}

FactorModel rpca(DataMatrix& Y, std::uint32_t d_minus, const OrthoConfig& cfg, const Params& P,
                 const RpcaOptions& opts) {
  if (d_minus > P.D) throw BudgetTooLarge("rpca: d_minus exceeds D");
  if (d_minus == 0) return {};

  VectorSystem work = Y;  // orthogonalised copy; Y itself is reduced below
  iterated_orthogonalization(work, cfg, P);

  const std::size_t n = Y.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::vector<std::int64_t> surviving(n);
  for (std::size_t j = 0; j < n; ++j) surviving[j] = row_norm(work[j], P);

  FactorModel model;
  if (opts.mutated_pivots) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return surviving[a] > surviving[b];
    });
    std::uint32_t budget = d_minus;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (budget == 0 || surviving[order[k]] == 0) break;
      if (pca_body(Y, model, work[order[k]], P)) --budget;
    }
    sort_by_score_desc(model);
    return model;
  }

  // A row whose norm the orthogonalisation mostly removed is a member of a
  // direction shared across the system, and its current value doubles as
  // that direction's representative. Rows left mostly intact are isolated
  // directions and never pivot. When no row qualifies (the system was
  // already orthogonal, or nothing reduces against anything) the surviving
  // rows themselves are the directions, largest first.
  std::vector<std::int64_t> initial(n);
  for (std::size_t j = 0; j < n; ++j) initial[j] = row_norm(Y[j], P);
  std::vector<std::size_t> candidates;
  for (std::size_t j : order) {
    if (initial[j] > 0 && 2 * surviving[j] <= initial[j]) candidates.push_back(j);
  }
  if (candidates.empty()) {
    candidates = order;
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      return surviving[a] > surviving[b];
    });
  } else {
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      return initial[a] > initial[b];
    });
  }
  order = std::move(candidates);

  Wide level = 1;
  for (std::uint32_t k = 0; k < P.q && level < (Wide(1) << 80); ++k) level *= Wide(P.p);

  std::uint64_t budget = opts.survey_budget != 0
                             ? opts.survey_budget
                             : std::min<std::uint64_t>(n, 2 * (std::uint64_t(P.D) + d_minus));
  for (std::size_t k = 0; k < order.size() && budget != 0; ++k) {
    std::size_t j = order[k];
    std::int64_t cur = row_norm(Y[j], P);
    if (cur == 0) continue;
    // A row the recursion already reduced by a full valuation level points
    // in a direction the model covers; pivoting on what is left of it would
    // only spend budget on residue.
    if (Wide(cur) * level <= Wide(initial[j])) continue;
    // Pivot on the current state of the row, consistent with the reductions
    // already applied to Y.
    ResidueVector pivot = Y[j];
    if (pca_body(Y, model, pivot, P)) --budget;
  }
  sort_by_score_desc(model);
  while (model.components.size() > d_minus) model.components.pop_back();
  return model;
}

ResidueVector residual_row(const ResidueVector& row, const FactorModel& model, std::size_t i,
                           const Params& P) {
  ResidueVector out = row;
  for (const Component& comp : model.components) {
    axpy_mod_inplace(out, comp.coeffs[i], comp.basis, P);
  }
  return out;
}

DataMatrix residual(const DataMatrix& original, const FactorModel& model, const Params& P) {
  for (const Component& comp : model.components) {
    if (comp.coeffs.size() != original.size()) {
      throw std::invalid_argument("residual: coefficient rows do not match sample count");
    }
  }
  DataMatrix out(original.size());
  const std::int64_t n = std::int64_t(original.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    out[std::size_t(i)] = residual_row(original[std::size_t(i)], model, std::size_t(i), P);
  }
  return out;
}

Wide total_loss(const DataMatrix& Y, const Params& P) {
  Wide sum = 0;
  for (const ResidueVector& row : Y) sum += row_norm(row, P);
  return sum;
}

}  // namespace padic
