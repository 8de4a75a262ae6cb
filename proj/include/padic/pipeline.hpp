#pragma once

#include <cstdint>
#include <string>

#include "padic/io.hpp"
#include "padic/refine.hpp"

namespace padic {

// One experiment configuration; a single seed drives generation and the
// random direction set through fixed substreams (tags 0 and 1).
struct RunConfig {
  std::uint64_t p = 7;
  std::uint32_t E = 5;
  std::uint32_t q = 1;
  std::uint32_t D = 100;

  std::string algorithm = "rpca";  // "rpca" | "nrpca"
  std::uint32_t d_minus = 20;
  std::uint32_t d_prime_minus = 0;  // 0: no over-provisioning
  std::uint64_t t_io = 0;           // 0: default 50 * #J
  std::uint64_t t_ls = 0;           // 0: default 50 * H
  std::string eps_ad = "1/5";

  std::string generator = "balls";  // "balls" | "affine"
  std::uint32_t balls = 10;
  std::uint32_t affine_dim = 10;
  std::uint32_t rate = 1;
  std::uint64_t count = 10000;
  std::uint64_t seed = 1;

  bool run_coordinate_descent = false;
  std::uint32_t line_search_random = 0;  // 0: skip the random line search

  int threads = 0;  // 0: library default
};

// The constants used throughout the experiments in this repository:
// p=7, E=5, q=1, D=100, 10^4 samples, d_minus=20, eps_ad=1/5.
void apply_paper_preset(RunConfig& cfg);

Params params_from(const RunConfig& cfg);
DetectConfig detect_from(const RunConfig& cfg);
void validate_config(const RunConfig& cfg);

LabeledDataset run_generate(const RunConfig& cfg);

struct FitResult {
  FactorModel model;
  Wide loss_before = 0;
  Wide loss_after_fit = 0;
  bool refined_cd = false;
  bool refined_ls = false;
  Wide loss_after_cd = 0;
  Wide loss_after_ls = 0;
  Wide loss_final = 0;
};

// Consumes Y (reduced in place); the caller keeps its own copy when the
// original rows are still needed.
FitResult run_fit(const RunConfig& cfg, DataMatrix Y);

ExperimentReport run_detect(const RunConfig& cfg, const DataMatrix& original,
                            const FactorModel& model, const std::vector<std::int32_t>& labels);

struct ExperimentArtifacts {
  LabeledDataset dataset;
  FitResult fit;
  ExperimentReport report;
};

ExperimentArtifacts run_experiment(const RunConfig& cfg);

}  // namespace padic
