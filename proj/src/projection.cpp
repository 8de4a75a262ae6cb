#include "padic/projection.hpp"

#include <stdexcept>

namespace padic {

std::int32_t WeightedTrie::insert_linked(std::int32_t n, std::uint32_t digit) {
  std::int32_t prev = -1;
  std::int32_t c = nodes_[std::size_t(n)].first_child;
  while (c >= 0 && nodes_[std::size_t(c)].digit < digit) {
    prev = c;
    c = nodes_[std::size_t(c)].next_sibling;
  }
  if (c >= 0 && nodes_[std::size_t(c)].digit == digit) return c;
  std::int32_t idx = std::int32_t(nodes_.size());
  Node fresh;
  fresh.digit = digit;
  fresh.next_sibling = c;
  nodes_.push_back(fresh);
  if (prev < 0) {
    nodes_[std::size_t(n)].first_child = idx;
  } else {
    nodes_[std::size_t(prev)].next_sibling = idx;
  }
  return idx;
}

std::int32_t WeightedTrie::find_or_insert_child(std::int32_t n, std::uint32_t digit) {
  if (!direct_ || digit >= kDirectDigits) return insert_linked(n, digit);
  std::int32_t hit = nodes_[std::size_t(n)].kids[digit];
  if (hit >= 0) return hit;
  std::int32_t idx = insert_linked(n, digit);
  nodes_[std::size_t(n)].kids[digit] = idx;
  return idx;
}

void build_trie(const RatioData& rd, const Params& P, WeightedTrie& out) {
  out.reset(P.p);
  for (std::size_t d = 0; d < rd.rho.size(); ++d) {
    std::uint32_t nu = rd.nu[d];
    out.add_weight(out.root(), P.eps_hat[nu]);
    Residue rho = rd.rho[d];
    std::int32_t n = out.root();
    for (std::uint32_t e = 0; e + nu < P.E; ++e) {
      std::uint32_t digit = 0;
      if (rho != 0) {  // once the ratio is exhausted only zero digits remain
        auto qr = P.div_p.divmod(rho);
        rho = qr.q;
        digit = std::uint32_t(qr.r);
      }
      n = out.find_or_insert_child(n, digit);
      out.add_weight(n, P.eps_hat[nu + e + 1] - P.eps_hat[nu + e]);
    }
  }
}

WeightedTrie build_trie(const RatioData& rd, const Params& P) {
  WeightedTrie t;
  build_trie(rd, P, t);
  return t;
}

ProjectionResult trie_dfs(const WeightedTrie& t, const Params& P,
                          std::vector<DfsFrame>* scratch) {
  std::vector<DfsFrame> local;
  std::vector<DfsFrame>& stack = scratch ? *scratch : local;
  stack.clear();
  stack.push_back({t.root(), 0, 0, t.node(t.root()).weight});

  ProjectionResult best;
  bool have_best = false;
  std::int64_t best_w = 0;

  while (!stack.empty()) {
    DfsFrame f = stack.back();
    stack.pop_back();
    std::int32_t child = t.node(f.node).first_child;
    if (child < 0) {
      if (!have_best || best_w > f.w) {
        have_best = true;
        best_w = f.w;
        best = {f.c, f.w};
      }
      continue;
    }
    // Children are linked in ascending digit order; push in reverse so the
    // smallest digit pops first and the first minimal leaf wins ties.
    std::size_t mark = stack.size();
    for (; child >= 0; child = t.node(child).next_sibling) {
      const auto& cn = t.node(child);
      stack.push_back({child, f.depth + 1, f.c + Residue(cn.digit) * P.p_pow[f.depth],
                       f.w + cn.weight});
    }
    for (std::size_t lo = mark, hi = stack.size(); lo + 1 < hi; ++lo, --hi) {
      std::swap(stack[lo], stack[hi - 1]);
    }
  }
  return best;
}

PivotContext::PivotContext(const ResidueVector& x, const Params& P) {
  coords_.resize(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (x[d] == 0) continue;
    ValUnit b = val_unit(x[d], P);
    coords_[d].active = true;
    coords_[d].nu = b.v;
    coords_[d].inv = mod_inverse(b.unit, P.E - b.v, P);
    zero_pivot_ = false;
  }
}

void PivotContext::ratio_row(const ResidueVector& v0, const Params& P, RatioData& rd,
                             std::int64_t& dummy_norm) const {
  rd.rho.resize(v0.size());
  rd.nu.resize(v0.size());
  dummy_norm = 0;
  for (std::size_t d = 0; d < v0.size(); ++d) {
    const Coord& cd = coords_[d];
    ValUnit a = val_unit(v0[d], P);
    if (!cd.active || a.v < cd.nu) {
      rd.rho[d] = 0;
      rd.nu[d] = std::uint8_t(P.E);
      dummy_norm += P.eps_hat[a.v];
      continue;
    }
    std::uint32_t m = P.E - cd.nu;
    const FastDiv& fm = P.mod_exp(m);
    Residue unit = a.unit < fm.d ? a.unit : fm.mod(a.unit);
    Residue r = mul_mod(unit, cd.inv, fm);
    if (a.v > cd.nu) {
      Residue shift = P.p_pow[a.v - cd.nu];
      r = mul_mod(r, shift < fm.d ? shift : fm.mod(shift), fm);
    }
    rd.rho[d] = r;
    rd.nu[d] = std::uint8_t(cd.nu);
  }
}

ProjectionOutcome project_onto(const ResidueVector& v0, const PivotContext& ctx,
                               const Params& P, ProjectionWorkspace& ws) {
  ProjectionOutcome out;
  ctx.ratio_row(v0, P, ws.rd, out.dummy_norm);
  build_trie(ws.rd, P, ws.trie);
  ProjectionResult r = trie_dfs(ws.trie, P, &ws.stack);
  out.c = r.c_opt;
  out.path_weight = r.weight;
  return out;
}

ProjectionOutcome project_onto(const ResidueVector& v0, const ResidueVector& v1,
                               const Params& P) {
  if (v0.size() != v1.size()) throw std::invalid_argument("project_onto: length mismatch");
  PivotContext ctx(v1, P);
  ProjectionWorkspace ws;
  return project_onto(v0, ctx, P, ws);
}

Residue nearest_component(const ResidueVector& v0, const ResidueVector& v1, const Params& P) {
  return project_onto(v0, v1, P).c;
}

BruteForceResult brute_force_component(const ResidueVector& v0, const ResidueVector& v1,
                                       const Params& P) {
  if (P.pe > 1000000) {
    throw std::invalid_argument("brute_force_component: p^E above enumeration guard");
  }
  if (v0.size() != v1.size()) {
    throw std::invalid_argument("brute_force_component: length mismatch");
  }
  BruteForceResult best{0, norm_q(v0, P)};
  ResidueVector tmp;
  for (Residue c = 1; c < P.pe; ++c) {
    tmp = axpy_mod(v0, c, v1, P);
    Wide n = norm_q(tmp, P);
    if (n < best.norm) best = {c, n};
  }
  return best;
}

}  // namespace padic
