#include "padic/detect.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace padic {

namespace {

boost::multiprecision::cpp_int cpp_from_wide(Wide v) {
  bool neg = v < 0;
  UWide u = neg ? UWide(-(v + 1)) + 1 : UWide(v);
  boost::multiprecision::cpp_int r = std::uint64_t(u >> 64);
  r <<= 64;
  r += std::uint64_t(u);
  return neg ? -r : r;
}

// Per-sample rescaled norms of the original rows and of the model residual.
struct RowNorms {
  std::vector<Wide> orig;
  std::vector<Wide> res;
};

RowNorms make_row_norms(const DataMatrix& original, const FactorModel& model, const Params& P) {
  RowNorms rn;
  rn.orig.resize(original.size());
  rn.res.resize(original.size());
  const std::int64_t n = std::int64_t(original.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    std::size_t s = std::size_t(i);
    rn.orig[s] = row_norm(original[s], P);
    rn.res[s] = row_norm(residual_row(original[s], model, s, P), P);
  }
  return rn;
}

Rational subset_compress_ratio(const std::vector<std::size_t>& subset, const RowNorms& rn) {
  if (subset.empty()) throw std::invalid_argument("compress_ratio: empty subset");
  Wide orig = 0, res = 0;
  for (std::size_t i : subset) {
    orig += rn.orig[i];
    res += rn.res[i];
  }
  if (orig == 0) return Rational(1);
  return Rational(1) - rational_from_wide(res, orig);
}

bool anomalous_from_norms(Wide orig, Wide res, const Rational& eps_ad) {
  Rational rc = orig == 0 ? Rational(1) : Rational(1) - rational_from_wide(res, orig);
  return rc < eps_ad;
}

}  // namespace

Rational rational_from_wide(Wide num, Wide den) {
  return Rational(cpp_from_wide(num), cpp_from_wide(den));
}

namespace {

// Decimal-only integer parse; cpp_int's string constructor would read a
// leading zero as octal.
boost::multiprecision::cpp_int parse_decimal(const std::string& s) {
  if (s.empty()) throw ConfigError("cannot parse rational: empty integer part");
  boost::multiprecision::cpp_int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw ConfigError("cannot parse rational near '" + s + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ConfigError("empty rational");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    auto num = parse_decimal(text.substr(0, slash));
    auto den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw ConfigError("rational with zero denominator: " + text);
    return Rational(num, den);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_decimal(text));
  auto num = parse_decimal(text.substr(0, dot) + text.substr(dot + 1));
  boost::multiprecision::cpp_int den = 1;
  for (std::size_t k = dot + 1; k < text.size(); ++k) den *= 10;
  return Rational(num, den);
}

std::string format_ratio_2dp(const Rational& r) {
  using boost::multiprecision::cpp_int;
  if (r < 0) return "-" + format_ratio_2dp(-r);
  cpp_int num = numerator(r) * 100;
  cpp_int den = denominator(r);
  cpp_int a = num / den;
  cpp_int rem = num % den;
  if (2 * rem > den || (2 * rem == den && a % 2 != 0)) ++a;
  std::uint64_t v = a.convert_to<std::uint64_t>();
  std::string out = std::to_string(v / 100) + ".";
  out += char('0' + (v / 10) % 10);
  out += char('0' + v % 10);
  return out;
}

void validate(const DetectConfig& cfg) {
  if (cfg.eps_ad <= 0 || cfg.eps_ad > 1) {
    throw ConfigError("eps_ad must lie in (0, 1]");
  }
}

Rational compress_ratio(const std::vector<std::size_t>& subset, const DataMatrix& original,
                        const FactorModel& model, const Params& P) {
  if (subset.empty()) throw std::invalid_argument("compress_ratio: empty subset");
  Wide orig = 0, res = 0;
  for (std::size_t i : subset) {
    orig += row_norm(original[i], P);
    res += row_norm(residual_row(original[i], model, i, P), P);
  }
  if (orig == 0) return Rational(1);
  return Rational(1) - rational_from_wide(res, orig);
}

bool classify_anomalous(std::size_t i, const DataMatrix& original, const FactorModel& model,
                        const DetectConfig& cfg, const Params& P) {
  Wide orig = row_norm(original[i], P);
  Wide res = row_norm(residual_row(original[i], model, i, P), P);
  return anomalous_from_norms(orig, res, cfg.eps_ad);
}

Rational deduced_anomaly_ratio(const std::vector<std::size_t>& subset, const DataMatrix& original,
                               const FactorModel& model, const DetectConfig& cfg, const Params& P) {
  if (subset.empty()) throw std::invalid_argument("deduced_anomaly_ratio: empty subset");
  std::uint64_t hits = 0;
  for (std::size_t i : subset) {
    if (classify_anomalous(i, original, model, cfg, P)) ++hits;
  }
  return Rational(hits, subset.size());
}

const ReportRow* ExperimentReport::find(const std::string& group) const {
  for (const ReportRow& row : rows) {
    if (row.group == group) return &row;
  }
  return nullptr;
}

ExperimentReport build_report(const DataMatrix& original, const FactorModel& model,
                              const std::vector<std::int32_t>& labels, const DetectConfig& cfg,
                              const Params& P) {
  validate(cfg);
  if (!labels.empty() && labels.size() != original.size()) {
    throw std::invalid_argument("build_report: labels do not cover the sample set");
  }

  RowNorms rn = make_row_norms(original, model, P);
  std::vector<char> is_anom(original.size());
  for (std::size_t i = 0; i < original.size(); ++i) {
    is_anom[i] = anomalous_from_norms(rn.orig[i], rn.res[i], cfg.eps_ad) ? 1 : 0;
  }

  auto make_row = [&](const std::string& name, const std::vector<std::size_t>& members) {
    ReportRow row;
    row.group = name;
    for (std::size_t i : members) {
      if (is_anom[i]) {
        ++row.deduced_anomalous;
      } else {
        ++row.deduced_normal;
      }
    }
    if (!members.empty()) {
      row.r_a = Rational(row.deduced_anomalous, members.size());
      row.r_c = subset_compress_ratio(members, rn);
    }
    return row;
  };

  ExperimentReport report;
  if (labels.empty()) {
    std::vector<std::size_t> all(original.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    report.rows.push_back(make_row("all", all));
    return report;
  }

  std::vector<std::size_t> anomalous, normals;
  std::map<std::int32_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == kAnomalousLabel) {
      anomalous.push_back(i);
    } else {
      normals.push_back(i);
      if (labels[i] >= 0) groups[labels[i]].push_back(i);
    }
  }

  report.rows.push_back(make_row("A", anomalous));
  for (const auto& [gid, members] : groups) {
    report.rows.push_back(make_row("ball" + std::to_string(gid), members));
  }
  report.rows.push_back(make_row("N", normals));
  return report;
}

}  // namespace padic
