#pragma once

#include <cstdint>
#include <string>

#include "padic/detect.hpp"

namespace padic {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dataset files. Text: a "p=.. E=.. D=.. count=.. labeled=.." header line, an
// optional "# meta <json>" line, then one CSV row per sample with an optional
// trailing label column (A, N, or N<group>). Binary: a one-line JSON preamble
// followed by row-major little-endian entries sized to hold p^E - 1, then
// int32 labels when labeled.
struct DatasetFile {
  std::uint64_t p = 0;
  std::uint32_t E = 0;
  std::uint32_t D = 0;
  LabeledDataset data;
};

void save_dataset(const std::string& path, const LabeledDataset& ds, const Params& P,
                  bool binary);
DatasetFile load_dataset(const std::string& path);

// Model files: JSON with params and per-component score pair, coefficient row
// and component vector; integers above 2^53 are written as strings.
struct ModelFile {
  std::uint64_t p = 0;
  std::uint32_t E = 0;
  std::uint32_t q = 0;
  std::uint32_t D = 0;
  FactorModel model;
};

void save_model(const std::string& path, const FactorModel& model, const Params& P);
ModelFile load_model(const std::string& path);

void save_report_csv(const std::string& path, const ExperimentReport& report);
void save_report_json(const std::string& path, const ExperimentReport& report);
ExperimentReport load_report_json(const std::string& path);
std::string render_report_table(const ExperimentReport& report);

}  // namespace padic
