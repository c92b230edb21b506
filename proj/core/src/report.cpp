#include "tbechart/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tbechart/errors.hpp"

namespace tbechart {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string percentile_label(double level) {
  const double percent = level * 100.0;
  const double rounded = std::round(percent);
  char buf[32];
  if (std::abs(percent - rounded) < 1e-9) {
    std::snprintf(buf, sizeof(buf), "p%02d", static_cast<int>(rounded));
  } else {
    std::snprintf(buf, sizeof(buf), "p%04.1f", percent);
  }
  return buf;
}

std::string study_to_csv(const std::vector<StudyRow>& rows,
                         const std::vector<double>& levels) {
  std::ostringstream out;
  out << "eta0,beta0,m,acarl,sdcarl,epc";
  for (double level : levels) out << ',' << percentile_label(level);
  out << '\n';
  for (const StudyRow& row : rows) {
    out << fmt(row.eta0) << ',' << fmt(row.beta0) << ',' << row.m << ','
        << fmt(row.summary.acarl) << ',' << fmt(row.summary.sdcarl) << ','
        << fmt(row.summary.epc);
    for (double level : levels) out << ',' << fmt(row.summary.percentiles.at(level));
    out << '\n';
  }
  return out.str();
}

std::string study_to_json(const StudyConfig& cfg, const std::vector<StudyRow>& rows) {
  json doc;
  doc["alpha0"] = cfg.alpha0;
  doc["target_arl"] = cfg.target_arl;
  doc["replications"] = cfg.replications;
  doc["seed"] = cfg.seed;
  doc["delta1"] = cfg.shift.delta1;
  doc["delta2"] = cfg.shift.delta2;
  doc["rows"] = json::array();
  for (const StudyRow& row : rows) {
    json r;
    r["eta0"] = row.eta0;
    r["beta0"] = row.beta0;
    r["m"] = row.m;
    r["acarl"] = row.summary.acarl;
    r["sdcarl"] = row.summary.sdcarl;
    r["epc"] = row.summary.epc;
    r["carl_sup"] = row.summary.carl_sup;
    json pct = json::object();
    for (const auto& [level, value] : row.summary.percentiles)
      pct[percentile_label(level)] = value;
    r["percentiles"] = pct;
    doc["rows"].push_back(std::move(r));
  }
  return doc.dump(2);
}

std::string study_config_to_json(const StudyConfig& cfg) {
  json doc;
  doc["alpha0"] = cfg.alpha0;
  doc["param_grid"] = json::array();
  for (const auto& [eta0, beta0] : cfg.param_grid)
    doc["param_grid"].push_back(json::array({eta0, beta0}));
  doc["m_list"] = cfg.m_list;
  doc["replications"] = cfg.replications;
  doc["percentile_levels"] = cfg.percentile_levels;
  doc["target_arl"] = cfg.target_arl;
  doc["seed"] = cfg.seed;
  doc["delta1"] = cfg.shift.delta1;
  doc["delta2"] = cfg.shift.delta2;
  return doc.dump(2);
}

StudyConfig study_config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("study config: ") + err.what());
  }
  StudyConfig cfg;
  if (doc.contains("alpha0")) cfg.alpha0 = doc["alpha0"].get<double>();
  if (doc.contains("param_grid")) {
    cfg.param_grid.clear();
    for (const auto& pair : doc["param_grid"])
      cfg.param_grid.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  if (doc.contains("m_list")) cfg.m_list = doc["m_list"].get<std::vector<std::size_t>>();
  if (doc.contains("replications"))
    cfg.replications = doc["replications"].get<std::size_t>();
  if (doc.contains("percentile_levels"))
    cfg.percentile_levels = doc["percentile_levels"].get<std::vector<double>>();
  if (doc.contains("target_arl")) cfg.target_arl = doc["target_arl"].get<double>();
  if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("delta1")) cfg.shift.delta1 = doc["delta1"].get<double>();
  if (doc.contains("delta2")) cfg.shift.delta2 = doc["delta2"].get<double>();
  if (doc.contains("threads")) cfg.threads = doc["threads"].get<unsigned>();
  validate(cfg);
  return cfg;
}

std::string design_to_json(const ChartDesign& d) {
  json doc;
  doc["alpha0"] = d.alpha0;
  doc["eta0"] = d.eta0;
  doc["scale_used"] = d.scale_used;
  doc["a1"] = d.a1;
  doc["a2"] = d.a2;
  doc["lcl"] = d.lcl;
  doc["ucl"] = d.ucl;
  doc["cl"] = d.cl;
  doc["source"] = d.source == LimitSource::known ? "known" : "estimated";
  return doc.dump(2);
}

ChartDesign design_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("design file: ") + err.what());
  }
  ChartDesign d;
  try {
    d.alpha0 = doc.at("alpha0").get<double>();
    d.eta0 = doc.at("eta0").get<double>();
    d.scale_used = doc.at("scale_used").get<double>();
    d.a1 = doc.at("a1").get<double>();
    d.a2 = doc.at("a2").get<double>();
    d.lcl = doc.at("lcl").get<double>();
    d.ucl = doc.at("ucl").get<double>();
    d.cl = doc.at("cl").get<double>();
    const std::string source = doc.at("source").get<std::string>();
    if (source == "known")
      d.source = LimitSource::known;
    else if (source == "estimated")
      d.source = LimitSource::estimated;
    else
      throw std::invalid_argument("design file: unknown source '" + source + "'");
  } catch (const json::exception& err) {
    throw std::invalid_argument(std::string("design file: ") + err.what());
  }
  if (!(d.alpha0 > 0.0 && d.alpha0 < 1.0) || !(d.eta0 > 0.0) ||
      !(d.scale_used > 0.0) || !(d.lcl > 0.0) || !(d.lcl < d.ucl))
    throw std::invalid_argument("design file: inconsistent limit fields");
  return d;
}

std::vector<double> read_tbe_series(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::size_t pos = 0;
    double value = 0.0;
    try {
      value = std::stod(line.substr(start), &pos);
    } catch (const std::exception&) {
      throw DataFormatError("line " + std::to_string(line_no) + ": not a number: '" +
                                line + "'",
                            line_no);
    }
    const std::string rest = line.substr(start + pos);
    if (rest.find_first_not_of(" \t\r") != std::string::npos)
      throw DataFormatError(
          "line " + std::to_string(line_no) + ": trailing garbage: '" + line + "'",
          line_no);
    if (!(value > 0.0) || !std::isfinite(value))
      throw DataFormatError("line " + std::to_string(line_no) +
                                ": value must be positive: '" + line + "'",
                            line_no);
    values.push_back(value);
  }
  return values;
}

std::vector<double> read_tbe_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open data file: " + path);
  return read_tbe_series(in);
}

}  // namespace tbechart
