#include "padic/pipeline.hpp"

#include "padic/rng.hpp"

namespace padic {

void apply_paper_preset(RunConfig& cfg) {
  cfg.p = 7;
  cfg.E = 5;
  cfg.q = 1;
  cfg.D = 100;
  cfg.count = 10000;
  cfg.d_minus = 20;
  cfg.eps_ad = "1/5";
}

Params params_from(const RunConfig& cfg) {
  return Params(cfg.p, cfg.E, cfg.q, cfg.D);
}

DetectConfig detect_from(const RunConfig& cfg) {
  DetectConfig dc;
  dc.eps_ad = parse_rational(cfg.eps_ad);
  validate(dc);
  return dc;
}

void validate_config(const RunConfig& cfg) {
  Params P = params_from(cfg);  // primality and range checks
  (void)P;
  if (cfg.algorithm != "rpca" && cfg.algorithm != "nrpca") {
    throw ConfigError("algorithm must be rpca or nrpca, got " + cfg.algorithm);
  }
  if (cfg.d_minus > cfg.D) throw ConfigError("d_minus exceeds D");
  if (cfg.d_prime_minus != 0 &&
      (cfg.d_prime_minus < cfg.d_minus || cfg.d_prime_minus > cfg.D)) {
    throw ConfigError("d_prime_minus must lie in [d_minus, D]");
  }
  if (cfg.generator != "balls" && cfg.generator != "affine") {
    throw ConfigError("generator must be balls or affine, got " + cfg.generator);
  }
  if (cfg.E < 2) throw ConfigError("generators need E >= 2");
  if (cfg.rate >= 100) throw ConfigError("rate must be below 100");
  if (cfg.count < 1) throw ConfigError("count must be >= 1");
  detect_from(cfg);
}

namespace {

constexpr std::uint64_t kDatagenStream = 0;
constexpr std::uint64_t kDirectionStream = 1;

std::uint64_t substream(std::uint64_t seed, std::uint64_t tag) {
  return seed + 0x9e3779b97f4a7c15ull * (tag + 1);
}

}  // namespace

LabeledDataset run_generate(const RunConfig& cfg) {
  validate_config(cfg);
  Params P = params_from(cfg);
  std::uint64_t seed = substream(cfg.seed, kDatagenStream);
  if (cfg.generator == "balls") {
    return gen_balls(cfg.balls, cfg.rate, cfg.count, P, seed);
  }
  return gen_affine(cfg.affine_dim, cfg.rate, cfg.count, P, seed);
}

FitResult run_fit(const RunConfig& cfg, DataMatrix Y) {
  Params P = params_from(cfg);
  FitResult r;
  r.loss_before = total_loss(Y, P);

  DataMatrix original = Y;

  if (cfg.algorithm == "nrpca") {
    NrpcaOptions no;
    no.d_prime = cfg.d_prime_minus;
    no.skip_reduced = true;
    r.model = nrpca(Y, cfg.d_minus, P, no);
  } else {
    OrthoConfig oc;
    oc.t_io = cfg.t_io != 0 ? cfg.t_io : 2 * std::uint64_t(Y.size());
    r.model = rpca(Y, cfg.d_minus, oc, P);
  }
  // Both fits prune components after the score sort, so Y alone is
  // over-reduced; always recompute the loss from the pruned model.
  r.loss_after_fit = total_loss(residual(original, r.model, P), P);
  r.loss_final = r.loss_after_fit;

  RefineConfig rc;
  rc.t_ls = cfg.t_ls;
  if (cfg.run_coordinate_descent) {
    coordinate_descent(original, r.model, rc, P);
    r.refined_cd = true;
    r.loss_after_cd = total_loss(residual(original, r.model, P), P);
    r.loss_final = r.loss_after_cd;
  }
  if (cfg.line_search_random > 0) {
    DirectionSet dirs = random_direction_set(r.model.rank(), cfg.line_search_random,
                                             substream(cfg.seed, kDirectionStream), P);
    line_search(original, r.model, dirs, rc, P);
    r.refined_ls = true;
    r.loss_after_ls = total_loss(residual(original, r.model, P), P);
    r.loss_final = r.loss_after_ls;
  }
  return r;
}

ExperimentReport run_detect(const RunConfig& cfg, const DataMatrix& original,
                            const FactorModel& model, const std::vector<std::int32_t>& labels) {
  Params P = params_from(cfg);
  return build_report(original, model, labels, detect_from(cfg), P);
}

ExperimentArtifacts run_experiment(const RunConfig& cfg) {
  validate_config(cfg);
  ExperimentArtifacts art;
  art.dataset = run_generate(cfg);
  art.fit = run_fit(cfg, art.dataset.Y);
  art.report = run_detect(cfg, art.dataset.Y, art.fit.model, art.dataset.labels);
  return art;
}

}  // namespace padic
