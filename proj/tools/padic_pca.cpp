#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "padic/pipeline.hpp"

namespace {

using padic::RunConfig;

void add_param_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--p", cfg.p, "prime base");
  app->add_option("--E", cfg.E, "accuracy exponent (residues live below p^E)");
  app->add_option("--q", cfg.q, "norm exponent (integer >= 1)");
  app->add_option("--D", cfg.D, "ambient dimension");
  app->add_option("--seed", cfg.seed, "master seed for the run")
      ->envname("PADIC_PCA_SEED");
  app->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  app->add_flag_callback(
      "--paper-preset", [&cfg] { padic::apply_paper_preset(cfg); },
      "p=7 E=5 q=1 D=100 count=10000 d_minus=20 eps_ad=1/5");
}

void add_generator_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--generator", cfg.generator, "balls | affine");
  app->add_option("--B", cfg.balls, "number of balls");
  app->add_option("--D-prime", cfg.affine_dim, "affine subspace dimension");
  app->add_option("--rate", cfg.rate, "anomaly percentage (integer below 100)");
  app->add_option("--count", cfg.count, "sample count");
}

void add_fit_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--algorithm", cfg.algorithm, "rpca | nrpca");
  app->add_option("--d-minus", cfg.d_minus, "component budget");
  app->add_option("--d-prime-minus", cfg.d_prime_minus,
                  "over-provisioned budget for nrpca (0 = off)");
  app->add_option("--t-io", cfg.t_io,
                  "pivot-visit cap for the orthogonalisation pass (0 = twice the sample count)");
  app->add_option("--t-ls", cfg.t_ls, "step cap for line searches");
  app->add_flag("--coordinate-descent", cfg.run_coordinate_descent,
                "refine coefficients by coordinate descent");
  app->add_option("--line-search-random", cfg.line_search_random,
                  "refine with a line search over K random directions");
}

void apply_threads(const RunConfig& cfg) {
#ifdef _OPENMP
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#else
  (void)cfg;
#endif
}

void print_fit_metrics(const padic::FitResult& fit) {
  std::cout << "components: " << fit.model.rank() << "\n";
  std::cout << "loss before: " << padic::to_string(fit.loss_before) << "\n";
  std::cout << "loss after fit: " << padic::to_string(fit.loss_after_fit) << "\n";
  if (fit.refined_cd) {
    std::cout << "loss after coordinate descent: " << padic::to_string(fit.loss_after_cd) << "\n";
  }
  if (fit.refined_ls) {
    std::cout << "loss after line search: " << padic::to_string(fit.loss_after_ls) << "\n";
  }
}

void check_header(std::uint64_t p, std::uint32_t E, std::uint32_t D, const RunConfig& cfg,
                  const std::string& path) {
  if (p != cfg.p || E != cfg.E || D != cfg.D) {
    throw padic::ConfigError("dataset header of " + path +
                             " does not match the configured p/E/D");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact p-adic low-rank approximation and anomaly detection"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML-style file");

  RunConfig cfg;
  std::string data_path, model_path, data_out, model_out, report_out, report_json_out;
  std::string format = "text";

  auto* gen = app.add_subcommand("generate", "write a synthetic labeled dataset");
  add_param_options(gen, cfg);
  add_generator_options(gen, cfg);
  gen->add_option("--data-out", data_out, "output dataset path")->required();
  gen->add_option("--format", format, "text | binary");

  auto* fit = app.add_subcommand("fit", "factorize a dataset and write the model");
  add_param_options(fit, cfg);
  add_fit_options(fit, cfg);
  fit->add_option("--data", data_path, "input dataset path")->required();
  fit->add_option("--model-out", model_out, "output model path")->required();

  auto* det = app.add_subcommand("detect", "score a dataset against a model");
  add_param_options(det, cfg);
  det->add_option("--eps-ad", cfg.eps_ad, "anomaly threshold, rational or decimal");
  det->add_option("--data", data_path, "input dataset path")->required();
  det->add_option("--model", model_path, "input model path")->required();
  det->add_option("--report-out", report_out, "CSV report path");
  det->add_option("--report-json-out", report_json_out, "JSON report path");

  auto* exp = app.add_subcommand("experiment", "generate, fit and detect in one run");
  add_param_options(exp, cfg);
  add_generator_options(exp, cfg);
  add_fit_options(exp, cfg);
  exp->add_option("--eps-ad", cfg.eps_ad, "anomaly threshold, rational or decimal");
  exp->add_option("--data-out", data_out, "also write the dataset here");
  exp->add_option("--model-out", model_out, "also write the model here");
  exp->add_option("--report-out", report_out, "CSV report path");
  exp->add_option("--report-json-out", report_json_out, "JSON report path");
  exp->add_option("--format", format, "text | binary (dataset output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    apply_threads(cfg);
    if (format != "text" && format != "binary") {
      throw padic::ConfigError("format must be text or binary");
    }

    if (gen->parsed()) {
      padic::validate_config(cfg);
      padic::Params P = padic::params_from(cfg);
      padic::LabeledDataset ds = padic::run_generate(cfg);
      padic::save_dataset(data_out, ds, P, format == "binary");
      std::cout << "wrote " << ds.Y.size() << " samples to " << data_out << "\n";
    } else if (fit->parsed()) {
      padic::Params P = padic::params_from(cfg);
      padic::DatasetFile df = padic::load_dataset(data_path);
      check_header(df.p, df.E, df.D, cfg, data_path);
      padic::FitResult result = padic::run_fit(cfg, std::move(df.data.Y));
      padic::save_model(model_out, result.model, P);
      print_fit_metrics(result);
    } else if (det->parsed()) {
      padic::DatasetFile df = padic::load_dataset(data_path);
      check_header(df.p, df.E, df.D, cfg, data_path);
      padic::ModelFile mf = padic::load_model(model_path);
      if (mf.p != cfg.p || mf.E != cfg.E || mf.D != cfg.D) {
        throw padic::ConfigError("model header does not match the configured p/E/D");
      }
      for (const auto& comp : mf.model.components) {
        if (comp.coeffs.size() != df.data.Y.size()) {
          throw padic::ConfigError("model coefficient rows do not match the dataset");
        }
      }
      padic::ExperimentReport report =
          padic::run_detect(cfg, df.data.Y, mf.model, df.data.labels);
      if (!report_out.empty()) padic::save_report_csv(report_out, report);
      if (!report_json_out.empty()) padic::save_report_json(report_json_out, report);
      std::cout << padic::render_report_table(report);
    } else if (exp->parsed()) {
      padic::validate_config(cfg);
      padic::Params P = padic::params_from(cfg);
      padic::ExperimentArtifacts art = padic::run_experiment(cfg);
      if (!data_out.empty()) padic::save_dataset(data_out, art.dataset, P, format == "binary");
      if (!model_out.empty()) padic::save_model(model_out, art.fit.model, P);
      if (!report_out.empty()) padic::save_report_csv(report_out, art.report);
      if (!report_json_out.empty()) padic::save_report_json(report_json_out, art.report);
      print_fit_metrics(art.fit);
      std::cout << padic::render_report_table(art.report);
    }
  } catch (const padic::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const padic::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
