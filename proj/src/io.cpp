#include "padic/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace padic {

namespace {

using nlohmann::json;

constexpr std::uint64_t kJsonSafeInt = std::uint64_t(1) << 53;

json int_to_json(std::uint64_t v) {
  if (v <= kJsonSafeInt) return json(v);
  return json(std::to_string(v));
}

json wide_to_json(Wide v) {
  if (v >= 0 && UWide(v) <= kJsonSafeInt) return json(std::uint64_t(v));
  return json(to_string(v));
}

std::uint64_t json_to_u64(const json& j, const char* what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return std::uint64_t(j.get<std::int64_t>());
  if (j.is_string()) {
    Wide w = wide_from_string(j.get<std::string>());
    if (w < 0 || UWide(w) > UWide(~std::uint64_t(0))) throw IoError(std::string(what) + ": out of range");
    return std::uint64_t(w);
  }
  throw IoError(std::string(what) + ": expected integer");
}

Wide json_to_wide(const json& j, const char* what) {
  if (j.is_number_unsigned()) return Wide(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Wide(j.get<std::int64_t>());
  if (j.is_string()) return wide_from_string(j.get<std::string>());
  throw IoError(std::string(what) + ": expected integer");
}

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw IoError("cannot open for reading: " + path);
  return in;
}

unsigned entry_bytes_for(std::uint64_t pe) {
  std::uint64_t max = pe - 1;
  if (max < (1ull << 8)) return 1;
  if (max < (1ull << 16)) return 2;
  if (max < (1ull << 32)) return 4;
  return 8;
}

json meta_to_json(const DatasetMeta& meta) {
  return json{{"generator", meta.generator},
              {"seed", int_to_json(meta.seed)},
              {"rate", meta.rate},
              {"group_param", meta.group_param}};
}

DatasetMeta meta_from_json(const json& j) {
  DatasetMeta meta;
  meta.generator = j.value("generator", std::string("external"));
  if (j.contains("seed")) meta.seed = json_to_u64(j.at("seed"), "meta.seed");
  meta.rate = j.value("rate", 0u);
  meta.group_param = j.value("group_param", 0u);
  return meta;
}

std::string label_to_text(std::int32_t label) {
  if (label == kAnomalousLabel) return "A";
  if (label == kPlainNormalLabel) return "N";
  return "N" + std::to_string(label);
}

std::int32_t label_from_text(const std::string& s) {
  if (s == "A") return kAnomalousLabel;
  if (s == "N") return kPlainNormalLabel;
  if (s.size() > 1 && s[0] == 'N') return std::int32_t(std::stol(s.substr(1)));
  throw IoError("bad label: " + s);
}

void save_dataset_text(std::ofstream& out, const LabeledDataset& ds, const Params& P) {
  const bool labeled = !ds.labels.empty();
  out << "p=" << P.p << " E=" << P.E << " D=" << P.D << " count=" << ds.Y.size()
      << " labeled=" << (labeled ? 1 : 0) << "\n";
  out << "# meta " << meta_to_json(ds.meta).dump() << "\n";
  for (std::size_t i = 0; i < ds.Y.size(); ++i) {
    const ResidueVector& row = ds.Y[i];
    for (std::size_t d = 0; d < row.size(); ++d) {
      if (d) out << ',';
      out << row[d];
    }
    if (labeled) out << ',' << label_to_text(ds.labels[i]);
    out << '\n';
  }
}

DatasetFile load_dataset_text(std::ifstream& in, const std::string& path) {
  DatasetFile f;
  std::string header;
  if (!std::getline(in, header)) throw IoError("empty dataset file: " + path);
  std::istringstream hs(header);
  std::size_t count = 0;
  int labeled = 0;
  std::string tok;
  while (hs >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw IoError("bad dataset header: " + path);
    std::string key = tok.substr(0, eq);
    std::string val = tok.substr(eq + 1);
    if (key == "p") f.p = std::stoull(val);
    else if (key == "E") f.E = std::uint32_t(std::stoul(val));
    else if (key == "D") f.D = std::uint32_t(std::stoul(val));
    else if (key == "count") count = std::stoull(val);
    else if (key == "labeled") labeled = std::stoi(val);
    else throw IoError("unknown dataset header key " + key + ": " + path);
  }
  if (f.p == 0 || f.E == 0 || f.D == 0) throw IoError("incomplete dataset header: " + path);

  std::string line;
  bool have_line = false;
  if (std::getline(in, line)) {
    if (line.rfind("# meta ", 0) == 0) {
      f.data.meta = meta_from_json(json::parse(line.substr(7)));
    } else {
      have_line = true;
    }
  }

  f.data.Y.reserve(count);
  if (labeled) f.data.labels.reserve(count);
  while (have_line || std::getline(in, line)) {
    have_line = false;
    if (line.empty()) continue;
    ResidueVector row(f.D);
    std::size_t pos = 0;
    for (std::uint32_t d = 0; d < f.D; ++d) {
      std::size_t next = line.find(',', pos);
      row[d] = std::stoull(line.substr(pos, next - pos));
      pos = next == std::string::npos ? line.size() : next + 1;
    }
    f.data.Y.push_back(std::move(row));
    if (labeled) {
      if (pos >= line.size()) throw IoError("missing label column: " + path);
      f.data.labels.push_back(label_from_text(line.substr(pos)));
    }
  }
  if (f.data.Y.size() != count) throw IoError("row count does not match header: " + path);
  return f;
}

void save_dataset_binary(std::ofstream& out, const LabeledDataset& ds, const Params& P) {
  const bool labeled = !ds.labels.empty();
  const unsigned eb = entry_bytes_for(P.pe);
  json preamble{{"format", "padic-dataset-bin"},
                {"p", int_to_json(P.p)},
                {"E", P.E},
                {"D", P.D},
                {"count", ds.Y.size()},
                {"labeled", labeled},
                {"entry_bytes", eb},
                {"meta", meta_to_json(ds.meta)}};
  out << preamble.dump() << "\n";
  std::string buf;
  buf.reserve(ds.Y.size() * P.D * eb);
  for (const ResidueVector& row : ds.Y) {
    for (Residue v : row) {
      for (unsigned b = 0; b < eb; ++b) buf.push_back(char((v >> (8 * b)) & 0xff));
    }
  }
  if (labeled) {
    for (std::int32_t label : ds.labels) {
      std::uint32_t u = std::uint32_t(label);
      for (unsigned b = 0; b < 4; ++b) buf.push_back(char((u >> (8 * b)) & 0xff));
    }
  }
  out.write(buf.data(), std::streamsize(buf.size()));
}

DatasetFile load_dataset_binary(std::ifstream& in, const std::string& path) {
  std::string preamble_line;
  if (!std::getline(in, preamble_line)) throw IoError("empty dataset file: " + path);
  json preamble = json::parse(preamble_line);
  if (preamble.value("format", std::string()) != "padic-dataset-bin") {
    throw IoError("not a binary dataset: " + path);
  }
  DatasetFile f;
  f.p = json_to_u64(preamble.at("p"), "p");
  f.E = preamble.at("E").get<std::uint32_t>();
  f.D = preamble.at("D").get<std::uint32_t>();
  std::size_t count = preamble.at("count").get<std::size_t>();
  bool labeled = preamble.at("labeled").get<bool>();
  unsigned eb = preamble.at("entry_bytes").get<unsigned>();
  if (preamble.contains("meta")) f.data.meta = meta_from_json(preamble.at("meta"));

  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t need = count * f.D * eb + (labeled ? count * 4 : 0);
  if (buf.size() != need) throw IoError("binary payload size mismatch: " + path);

  f.data.Y.assign(count, ResidueVector(f.D));
  std::size_t pos = 0;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::uint32_t d = 0; d < f.D; ++d) {
      Residue v = 0;
      for (unsigned b = 0; b < eb; ++b) v |= Residue(std::uint8_t(buf[pos++])) << (8 * b);
      f.data.Y[i][d] = v;
    }
  }
  if (labeled) {
    f.data.labels.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::uint32_t u = 0;
      for (unsigned b = 0; b < 4; ++b) u |= std::uint32_t(std::uint8_t(buf[pos++])) << (8 * b);
      f.data.labels[i] = std::int32_t(u);
    }
  }
  return f;
}

}  // namespace

void save_dataset(const std::string& path, const LabeledDataset& ds, const Params& P,
                  bool binary) {
  if (!ds.labels.empty() && ds.labels.size() != ds.Y.size()) {
    throw IoError("labels do not match row count");
  }
  for (const ResidueVector& row : ds.Y) {
    if (row.size() != P.D) throw IoError("row length does not match D");
  }
  auto out = open_out(path, binary);
  if (binary) {
    save_dataset_binary(out, ds, P);
  } else {
    save_dataset_text(out, ds, P);
  }
  if (!out) throw IoError("write failed: " + path);
}

DatasetFile load_dataset(const std::string& path) {
  auto in = open_in(path, true);
  int first = in.peek();
  DatasetFile f = first == '{' ? load_dataset_binary(in, path) : load_dataset_text(in, path);
  std::uint64_t pe = 1;
  for (std::uint32_t e = 0; e < f.E; ++e) pe *= f.p;
  for (const ResidueVector& row : f.data.Y) {
    for (Residue v : row) {
      if (v >= pe) throw IoError("entry out of range for p^E: " + path);
    }
  }
  return f;
}

void save_model(const std::string& path, const FactorModel& model, const Params& P) {
  json comps = json::array();
  for (const Component& comp : model.components) {
    json c_row = json::array();
    for (Residue v : comp.coeffs) c_row.push_back(int_to_json(v));
    json x_row = json::array();
    for (Residue v : comp.basis) x_row.push_back(int_to_json(v));
    comps.push_back(json{{"score", json::array({wide_to_json(comp.coeff_norm),
                                                wide_to_json(comp.basis_norm)})},
                         {"c_row", std::move(c_row)},
                         {"x_row", std::move(x_row)}});
  }
  json doc{{"format", "padic-model"},
           {"params", json{{"p", int_to_json(P.p)}, {"E", P.E}, {"q", P.q}, {"D", P.D}}},
           {"components", std::move(comps)}};
  auto out = open_out(path, false);
  out << doc.dump(1, '\t') << "\n";
  if (!out) throw IoError("write failed: " + path);
}

ModelFile load_model(const std::string& path) {
  auto in = open_in(path, false);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw IoError("bad model JSON in " + path + ": " + e.what());
  }
  if (doc.value("format", std::string()) != "padic-model") {
    throw IoError("not a model file: " + path);
  }
  ModelFile f;
  const json& params = doc.at("params");
  f.p = json_to_u64(params.at("p"), "p");
  f.E = params.at("E").get<std::uint32_t>();
  f.q = params.at("q").get<std::uint32_t>();
  f.D = params.at("D").get<std::uint32_t>();
  for (const json& jc : doc.at("components")) {
    Component comp;
    comp.coeff_norm = json_to_wide(jc.at("score").at(0), "score");
    comp.basis_norm = json_to_wide(jc.at("score").at(1), "score");
    for (const json& v : jc.at("c_row")) comp.coeffs.push_back(json_to_u64(v, "c_row"));
    for (const json& v : jc.at("x_row")) comp.basis.push_back(json_to_u64(v, "x_row"));
    if (comp.basis.size() != f.D) throw IoError("component length mismatch: " + path);
    f.model.components.push_back(std::move(comp));
  }
  return f;
}

namespace {

std::string ratio_cell(const std::optional<Rational>& r) {
  return r ? format_ratio_2dp(*r) : std::string();
}

json rational_to_json(const std::optional<Rational>& r) {
  if (!r) return json();
  return json{{"num", numerator(*r).str()}, {"den", denominator(*r).str()},
              {"2dp", format_ratio_2dp(*r)}};
}

}  // namespace

void save_report_csv(const std::string& path, const ExperimentReport& report) {
  auto out = open_out(path, false);
  out << "group,deduced_normal,deduced_anomalous,r_A,r_C\n";
  for (const ReportRow& row : report.rows) {
    out << row.group << ',' << row.deduced_normal << ',' << row.deduced_anomalous << ','
        << ratio_cell(row.r_a) << ',' << ratio_cell(row.r_c) << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void save_report_json(const std::string& path, const ExperimentReport& report) {
  json rows = json::array();
  for (const ReportRow& row : report.rows) {
    rows.push_back(json{{"group", row.group},
                        {"deduced_normal", row.deduced_normal},
                        {"deduced_anomalous", row.deduced_anomalous},
                        {"r_A", rational_to_json(row.r_a)},
                        {"r_C", rational_to_json(row.r_c)}});
  }
  json doc{{"format", "padic-report"}, {"rows", std::move(rows)}};
  auto out = open_out(path, false);
  out << doc.dump(1, '\t') << "\n";
  if (!out) throw IoError("write failed: " + path);
}

ExperimentReport load_report_json(const std::string& path) {
  auto in = open_in(path, false);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw IoError("bad report JSON in " + path + ": " + e.what());
  }
  if (doc.value("format", std::string()) != "padic-report") {
    throw IoError("not a report file: " + path);
  }
  ExperimentReport report;
  for (const json& jr : doc.at("rows")) {
    ReportRow row;
    row.group = jr.at("group").get<std::string>();
    row.deduced_normal = jr.at("deduced_normal").get<std::uint64_t>();
    row.deduced_anomalous = jr.at("deduced_anomalous").get<std::uint64_t>();
    for (auto [key, dst] : {std::pair{"r_A", &row.r_a}, std::pair{"r_C", &row.r_c}}) {
      const json& jv = jr.at(key);
      if (!jv.is_null()) {
        *dst = Rational(boost::multiprecision::cpp_int(jv.at("num").get<std::string>()),
                        boost::multiprecision::cpp_int(jv.at("den").get<std::string>()));
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string render_report_table(const ExperimentReport& report) {
  std::ostringstream out;
  std::size_t name_w = 5;
  for (const ReportRow& row : report.rows) name_w = std::max(name_w, row.group.size());
  auto pad = [](const std::string& s, std::size_t w, bool left) {
    std::string t = s;
    while (t.size() < w) {
      if (left) t += ' ';
      else t.insert(t.begin(), ' ');
    }
    return t;
  };
  out << pad("group", name_w, true) << "  " << pad("deduced_normal", 14, false) << "  "
      << pad("deduced_anomalous", 17, false) << "  " << pad("r_A", 5, false) << "  "
      << pad("r_C", 5, false) << "\n";
  for (const ReportRow& row : report.rows) {
    out << pad(row.group, name_w, true) << "  "
        << pad(std::to_string(row.deduced_normal), 14, false) << "  "
        << pad(std::to_string(row.deduced_anomalous), 17, false) << "  "
        << pad(row.r_a ? format_ratio_2dp(*row.r_a) : "-", 5, false) << "  "
        << pad(row.r_c ? format_ratio_2dp(*row.r_c) : "-", 5, false) << "\n";
  }
  return out.str();
}

}  // namespace padic
