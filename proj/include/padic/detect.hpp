#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "padic/datagen.hpp"

namespace padic {

using Rational = boost::multiprecision::cpp_rational;

Rational rational_from_wide(Wide num, Wide den);
// Parses "a/b" or a plain decimal such as "0.2" into an exact rational.
Rational parse_rational(const std::string& text);
// Two decimal places, round half to even; values must lie in [0, 1].
std::string format_ratio_2dp(const Rational& r);

struct DetectConfig {
  Rational eps_ad = Rational(1, 5);
};
void validate(const DetectConfig& cfg);

// 1 - (residual norm mass / original norm mass) over the subset; exact.
// An all-zero subset compresses perfectly by convention.
Rational compress_ratio(const std::vector<std::size_t>& subset, const DataMatrix& original,
                        const FactorModel& model, const Params& P);

// Anomalous iff r_C({i}) < eps_ad, strict, in exact arithmetic.
bool classify_anomalous(std::size_t i, const DataMatrix& original, const FactorModel& model,
                        const DetectConfig& cfg, const Params& P);

Rational deduced_anomaly_ratio(const std::vector<std::size_t>& subset, const DataMatrix& original,
                               const FactorModel& model, const DetectConfig& cfg, const Params& P);

struct ReportRow {
  std::string group;
  std::uint64_t deduced_normal = 0;
  std::uint64_t deduced_anomalous = 0;
  std::optional<Rational> r_a;  // absent for empty groups
  std::optional<Rational> r_c;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
  const ReportRow* find(const std::string& group) const;
};

// Rows: A first, labeled normal subgroups in ascending label order, then the
// aggregate N row over all normal samples. Unlabeled datasets produce a
// single "all" row.
ExperimentReport build_report(const DataMatrix& original, const FactorModel& model,
                              const std::vector<std::int32_t>& labels, const DetectConfig& cfg,
                              const Params& P);

}  // namespace padic
