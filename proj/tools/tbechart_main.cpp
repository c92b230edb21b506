// Command-line front end: chart design, performance evaluation, simulation
// studies, limit adjustment, and Phase II monitoring of TBE data files.
//
// Exit codes: 0 success / no signal, 1 usage or config error,
//             2 signal detected (monitor), 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tbechart/adjustment.hpp"
#include "tbechart/carl.hpp"
#include "tbechart/chart.hpp"
#include "tbechart/errors.hpp"
#include "tbechart/estimation.hpp"
#include "tbechart/monitor.hpp"
#include "tbechart/report.hpp"
#include "tbechart/simulation.hpp"

namespace {

using nlohmann::json;
using namespace tbechart;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSignal = 2;
constexpr int kExitNumerical = 3;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  out << text;
}

json design_json(const ChartDesign& d, const std::optional<PhaseIEstimate>& est) {
  json doc = json::parse(design_to_json(d));
  if (est) {
    doc["m"] = est->m;
    doc["beta_hat"] = est->beta_hat;
  }
  return doc;
}

std::string design_table(const ChartDesign& d, const std::optional<PhaseIEstimate>& est) {
  std::ostringstream out;
  out << "chart design (" << (d.source == LimitSource::known ? "known" : "estimated")
      << " scale)\n";
  char line[128];
  std::snprintf(line, sizeof(line), "  alpha0 %-12.6g eta0 %-12.6g scale %-12.10g\n",
                d.alpha0, d.eta0, d.scale_used);
  out << line;
  std::snprintf(line, sizeof(line), "  A1  %-16.10g A2  %-16.10g\n", d.a1, d.a2);
  out << line;
  std::snprintf(line, sizeof(line), "  LCL %-16.10g CL  %-16.10g UCL %-16.10g\n",
                d.lcl, d.cl, d.ucl);
  out << line;
  if (est) {
    std::snprintf(line, sizeof(line), "  phase I: m = %zu, beta_hat = %.10g\n",
                  est->m, est->beta_hat);
    out << line;
  }
  return out.str();
}

struct DesignFlags {
  double alpha = 0.0027;
  double eta = 1.0;
  double beta = 0.0;
  std::string phase1_path;
  std::string design_path;

  // Builds the design; fills est when the scale was estimated.
  ChartDesign build(std::optional<PhaseIEstimate>& est) const {
    if (!design_path.empty()) {
      std::ifstream in(design_path);
      if (!in) throw std::invalid_argument("cannot open design file: " + design_path);
      std::stringstream buffer;
      buffer << in.rdbuf();
      return design_from_json(buffer.str());
    }
    if (!phase1_path.empty()) {
      const std::vector<double> data = read_tbe_file(phase1_path);
      const PhaseIEstimate e = mle_scale(data, eta);
      est = e;
      return plugin_limits(e, alpha, eta);
    }
    if (beta > 0.0) return design_limits(alpha, eta, beta);
    throw std::invalid_argument(
        "supply --beta (known scale), --phase1 <file> (estimated scale), or --design <file>");
  }
};

int cmd_design(const DesignFlags& flags, const std::string& format,
               const std::string& out_path) {
  std::optional<PhaseIEstimate> est;
  const ChartDesign d = flags.build(est);
  if (format == "json")
    emit(design_json(d, est).dump(2), out_path);
  else
    emit(design_table(d, est), out_path);
  return kExitOk;
}

int cmd_eval_known(double alpha, double eta, double beta, const ShiftSpec& shift,
                   const std::string& format, const std::string& out_path) {
  const ChartDesign d = design_limits(alpha, eta, beta);
  const double ps = prob_signal(d, shift);
  const double arl = average_run_length(d, shift);
  if (format == "json") {
    json doc;
    doc["case"] = "known";
    doc["alpha0"] = alpha;
    doc["eta0"] = eta;
    doc["beta0"] = beta;
    doc["delta1"] = shift.delta1;
    doc["delta2"] = shift.delta2;
    doc["prob_signal"] = ps;
    doc["arl"] = arl;
    doc["run_length_p50"] = run_length_quantile(d, shift, 0.5);
    doc["run_length_p95"] = run_length_quantile(d, shift, 0.95);
    emit(doc.dump(2), out_path);
  } else {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line),
                  "case K  alpha0 %.6g  eta0 %.6g  beta0 %.6g  delta1 %.6g  delta2 %.6g\n",
                  alpha, eta, beta, shift.delta1, shift.delta2);
    out << line;
    std::snprintf(line, sizeof(line), "  PS  %.10g\n  ARL %.10g\n", ps, arl);
    out << line;
    std::snprintf(line, sizeof(line), "  run length p50 %lld  p95 %lld\n",
                  static_cast<long long>(run_length_quantile(d, shift, 0.5)),
                  static_cast<long long>(run_length_quantile(d, shift, 0.95)));
    out << line;
    emit(out.str(), out_path);
  }
  return kExitOk;
}

int cmd_eval_estimated(std::size_t m, double alpha, double eta, const ShiftSpec& shift,
                       double target, const std::vector<double>& levels,
                       const std::string& format, const std::string& out_path) {
  const CarlAnalysis analysis(m, alpha, eta, shift);
  const double e = analysis.ecarl();
  const double sd = analysis.sdcarl();
  const double epc = analysis.exceedance_probability(target);
  const CarlSupremum sup{analysis.curve().critical_pivot(),
                         analysis.curve().carl_supremum()};
  if (format == "json") {
    json doc;
    doc["case"] = "estimated";
    doc["m"] = m;
    doc["alpha0"] = alpha;
    doc["eta0"] = eta;
    doc["delta1"] = shift.delta1;
    doc["delta2"] = shift.delta2;
    doc["target_arl"] = target;
    doc["ecarl"] = e;
    doc["sdcarl"] = sd;
    doc["epc"] = epc;
    doc["carl_sup"] = sup.carl_max;
    doc["w_star"] = sup.w_star;
    json pct = json::object();
    for (double level : levels)
      pct[percentile_label(level)] = analysis.carl_quantile(level);
    doc["percentiles"] = pct;
    emit(doc.dump(2), out_path);
  } else {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "case U  m %zu  alpha0 %.6g  eta0 %.6g\n", m,
                  alpha, eta);
    out << line;
    std::snprintf(line, sizeof(line),
                  "  ECARL %.6f\n  SDCARL %.6f\n  EPC(%.6g) %.6f\n  CARL sup %.6f at w* %.6f\n",
                  e, sd, target, epc, sup.carl_max, sup.w_star);
    out << line;
    out << "  percentiles:";
    for (double level : levels) {
      std::snprintf(line, sizeof(line), " %s=%.4f", percentile_label(level).c_str(),
                    analysis.carl_quantile(level));
      out << line;
    }
    out << '\n';
    emit(out.str(), out_path);
  }
  return kExitOk;
}

std::string study_table_text(const StudyConfig& cfg, const std::vector<StudyRow>& rows) {
  std::ostringstream out;
  out << "eta0     beta0    m        acarl      sdcarl     epc     ";
  for (double level : cfg.percentile_levels) {
    char head[16];
    std::snprintf(head, sizeof(head), " %-9s", percentile_label(level).c_str());
    out << head;
  }
  out << '\n';
  for (const StudyRow& row : rows) {
    char line[64];
    std::snprintf(line, sizeof(line), "%-8.4g %-8.4g %-8zu ", row.eta0, row.beta0, row.m);
    out << line;
    std::snprintf(line, sizeof(line), "%-10.4f %-10.4f %-7.4f ", row.summary.acarl,
                  row.summary.sdcarl, row.summary.epc);
    out << line;
    for (double level : cfg.percentile_levels) {
      std::snprintf(line, sizeof(line), " %-9.3f", row.summary.percentiles.at(level));
      out << line;
    }
    out << '\n';
  }
  return out.str();
}

int cmd_table1(const StudyConfig& cfg, const std::string& format,
               const std::string& out_path) {
  const std::vector<StudyRow> rows = run_table1(cfg);
  if (format == "json")
    emit(study_to_json(cfg, rows), out_path);
  else if (format == "csv")
    emit(study_to_csv(rows, cfg.percentile_levels), out_path);
  else
    emit(study_table_text(cfg, rows), out_path);
  return kExitOk;
}

int cmd_adjust(std::size_t m, const AdjustmentCriterion& crit, std::size_t verify_reps,
               std::uint64_t seed, const std::string& format,
               const std::string& out_path) {
  const AdjustmentResult res = adjust(m, crit);

  // Post-verification: re-evaluate all three in-control summaries at the
  // adjusted rate, plus an independent simulation when requested.
  const CarlAnalysis at_adj(m, res.alpha_adj);
  const double ecarl_adj = at_adj.ecarl();
  const double sdcarl_adj = at_adj.sdcarl();
  const double epc_adj = at_adj.exceedance_probability(crit.target_arl);

  std::optional<CarlSummary> mc;
  if (verify_reps > 0) {
    StudyConfig cfg;
    cfg.alpha0 = res.alpha_adj;
    cfg.replications = verify_reps;
    cfg.target_arl = crit.target_arl;
    cfg.seed = seed;
    mc = simulate_carl_distribution(cfg, m, WeibullParams(1.0, 1.0));
  }

  if (format == "json") {
    json doc;
    doc["m"] = m;
    doc["criterion"] = crit.kind == CriterionKind::ecarl_match ? "ecarl"
                       : crit.kind == CriterionKind::epc_cap   ? "epc"
                                                               : "sdcarl";
    doc["target_arl"] = crit.target_arl;
    if (crit.kind != CriterionKind::ecarl_match) doc["epsilon"] = crit.epsilon;
    doc["alpha_adj"] = res.alpha_adj;
    doc["achieved"] = res.achieved;
    doc["iterations"] = res.iterations;
    doc["bracket"] = json::array({res.bracket_lo, res.bracket_hi});
    doc["verify"] = {{"ecarl", ecarl_adj}, {"sdcarl", sdcarl_adj}, {"epc", epc_adj}};
    if (mc) {
      doc["verify"]["mc_acarl"] = mc->acarl;
      doc["verify"]["mc_sdcarl"] = mc->sdcarl;
      doc["verify"]["mc_epc"] = mc->epc;
      doc["verify"]["mc_replications"] = verify_reps;
    }
    emit(doc.dump(2), out_path);
  } else {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "adjusted alpha %.10g (m=%zu, %d bisection steps)\n",
                  res.alpha_adj, m, res.iterations);
    out << line;
    std::snprintf(line, sizeof(line), "  criterion value at alpha_adj: %.6f\n",
                  res.achieved);
    out << line;
    std::snprintf(line, sizeof(line),
                  "  verification: ECARL %.4f  SDCARL %.4f  EPC %.4f\n", ecarl_adj,
                  sdcarl_adj, epc_adj);
    out << line;
    if (mc) {
      std::snprintf(line, sizeof(line),
                    "  simulation (%zu reps): ACARL %.4f  SDCARL %.4f  EPC %.4f\n",
                    verify_reps, mc->acarl, mc->sdcarl, mc->epc);
      out << line;
    }
    emit(out.str(), out_path);
  }
  return kExitOk;
}

int cmd_monitor(const DesignFlags& flags, const std::string& data_path,
                const std::string& format, const std::string& out_path) {
  std::optional<PhaseIEstimate> est;
  const ChartDesign d = flags.build(est);
  const std::vector<double> data = read_tbe_file(data_path);
  const MonitorReport report = monitor_series(d, data);

  if (format == "json") {
    json doc;
    doc["design"] = design_json(d, est);
    doc["points"] = data.size();
    doc["signals"] = report.signal_count;
    if (report.first_signal)
      doc["first_signal"] = *report.first_signal;
    else
      doc["first_signal"] = nullptr;
    doc["records"] = json::array();
    for (const MonitorRecord& rec : report.records) {
      const char* status = rec.status == PointStatus::in_limits  ? "in_limits"
                           : rec.status == PointStatus::below_lcl ? "below_lcl"
                                                                  : "above_ucl";
      doc["records"].push_back({{"index", rec.index}, {"value", rec.value},
                                {"status", status}});
    }
    emit(doc.dump(2), out_path);
  } else {
    std::ostringstream out;
    out << design_table(d, est);
    for (const MonitorRecord& rec : report.records) {
      if (rec.status == PointStatus::in_limits) continue;
      char line[96];
      std::snprintf(line, sizeof(line), "  point %zu: %.10g %s\n", rec.index, rec.value,
                    rec.status == PointStatus::below_lcl ? "below LCL" : "above UCL");
      out << line;
    }
    char tail[96];
    if (report.first_signal)
      std::snprintf(tail, sizeof(tail), "%zu point(s), %zu signal(s), first at %zu\n",
                    data.size(), report.signal_count, *report.first_signal);
    else
      std::snprintf(tail, sizeof(tail), "%zu point(s), no signal\n", data.size());
    out << tail;
    emit(out.str(), out_path);
  }
  return report.signal_count > 0 ? kExitSignal : kExitOk;
}

std::pair<double, double> parse_param_pair(const std::string& text) {
  std::string s = text;
  std::erase_if(s, [](char c) { return c == '(' || c == ')' || c == ' '; });
  const std::size_t comma = s.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("--params expects \"(eta0,beta0)\", got '" + text + "'");
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sided Weibull control charts for time-between-events data"};
  app.require_subcommand(1);

  std::string format = "table";
  std::string out_path;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--out", out_path, "Write the report to a file instead of stdout");

  // design ------------------------------------------------------------
  DesignFlags dflags;
  auto* design = app.add_subcommand("design", "Compute control limits");
  design->fallthrough();
  design->add_option("--alpha", dflags.alpha, "False-alarm rate alpha0");
  design->add_option("--eta", dflags.eta, "Known shape parameter eta0");
  design->add_option("--beta", dflags.beta, "Known scale parameter beta0");
  design->add_option("--phase1", dflags.phase1_path, "Phase I data file (estimated scale)");

  // eval --------------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "Evaluate chart performance");
  eval->fallthrough();
  std::string eval_case = "k";
  double e_alpha = 0.0027, e_eta = 1.0, e_beta = 1.0, e_target = 370.4;
  std::size_t e_m = 0;
  ShiftSpec e_shift;
  std::vector<double> e_levels = {0.05, 0.10, 0.25, 0.50, 0.75, 0.90, 0.95};
  eval->add_option("--case", eval_case, "k = known parameters, u = estimated scale")
      ->check(CLI::IsMember({"k", "u"}));
  eval->add_option("--alpha", e_alpha, "False-alarm rate alpha0");
  eval->add_option("--eta", e_eta, "Shape parameter eta0");
  eval->add_option("--beta", e_beta, "Scale parameter beta0 (case k)");
  eval->add_option("--m", e_m, "Phase I sample size (case u)");
  eval->add_option("--delta1", e_shift.delta1, "Scale shift beta1/beta0");
  eval->add_option("--delta2", e_shift.delta2, "Shape shift eta1/eta0");
  eval->add_option("--target", e_target, "Nominal ARL for the exceedance probability");

  // table1 ------------------------------------------------------------
  auto* table1 = app.add_subcommand("table1", "Simulate the conditional ARL study");
  table1->fallthrough();
  std::string config_path;
  std::vector<std::size_t> t_m;
  std::vector<std::string> t_params;
  std::size_t t_reps = 0;
  double t_alpha = 0.0, t_target = 0.0, t_delta1 = 0.0, t_delta2 = 0.0;
  std::uint64_t t_seed = 0;
  bool t_seed_set = false, t_reps_set = false;
  table1->add_option("--config", config_path, "Study config JSON file");
  table1->add_option("--m", t_m, "Phase I sizes (overrides config)");
  table1->add_option("--params", t_params, "Parameter pair \"(eta0,beta0)\" (repeatable)");
  table1->add_option("--reps", t_reps, "Replications")->each([&](const std::string&) {
    t_reps_set = true;
  });
  table1->add_option("--seed", t_seed, "Master seed")->each([&](const std::string&) {
    t_seed_set = true;
  });
  table1->add_option("--alpha", t_alpha, "False-alarm rate alpha0");
  table1->add_option("--target", t_target, "Nominal ARL for the EPC column");
  table1->add_option("--delta1", t_delta1, "Phase II scale shift");
  table1->add_option("--delta2", t_delta2, "Phase II shape shift");

  // adjust ------------------------------------------------------------
  auto* adjust_cmd = app.add_subcommand("adjust", "Adjust alpha for nominal IC behavior");
  adjust_cmd->fallthrough();
  std::size_t a_m = 0;
  std::string a_criterion = "ecarl";
  double a_target = 370.4, a_epsilon = 0.5;
  std::size_t a_verify_reps = 0;
  std::uint64_t a_seed = kDefaultSeed;
  adjust_cmd->add_option("--m", a_m, "Phase I sample size")->required();
  adjust_cmd->add_option("--criterion", a_criterion, "ecarl | epc | sdcarl")
      ->check(CLI::IsMember({"ecarl", "epc", "sdcarl"}));
  adjust_cmd->add_option("--target", a_target, "Nominal ARL");
  adjust_cmd->add_option("--epsilon", a_epsilon, "Cap parameter (epc/sdcarl)");
  adjust_cmd->add_option("--verify-reps", a_verify_reps,
                         "Replications for the simulation cross-check (0 = skip)");
  adjust_cmd->add_option("--seed", a_seed, "Seed for the simulation cross-check");

  // monitor -----------------------------------------------------------
  DesignFlags mflags;
  std::string data_path;
  auto* monitor = app.add_subcommand("monitor", "Check Phase II data against limits");
  monitor->fallthrough();
  monitor->add_option("--design", mflags.design_path, "Design JSON written by `design --out`");
  monitor->add_option("--alpha", mflags.alpha, "False-alarm rate alpha0");
  monitor->add_option("--eta", mflags.eta, "Shape parameter eta0");
  monitor->add_option("--beta", mflags.beta, "Known scale parameter beta0");
  monitor->add_option("--phase1", mflags.phase1_path, "Phase I data file");
  monitor->add_option("--data", data_path, "Phase II data file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (design->parsed()) return cmd_design(dflags, format, out_path);
    if (eval->parsed()) {
      if (eval_case == "u") {
        if (e_m == 0) throw std::invalid_argument("eval --case u requires --m");
        return cmd_eval_estimated(e_m, e_alpha, e_eta, e_shift, e_target, e_levels,
                                  format, out_path);
      }
      return cmd_eval_known(e_alpha, e_eta, e_beta, e_shift, format, out_path);
    }
    if (table1->parsed()) {
      StudyConfig cfg;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        cfg = study_config_from_json(buffer.str());
      }
      if (!t_m.empty()) cfg.m_list = t_m;
      if (!t_params.empty()) {
        cfg.param_grid.clear();
        for (const std::string& p : t_params) cfg.param_grid.push_back(parse_param_pair(p));
      }
      if (t_reps_set) cfg.replications = t_reps;
      if (t_seed_set) cfg.seed = t_seed;
      if (t_alpha > 0.0) cfg.alpha0 = t_alpha;
      if (t_target > 0.0) cfg.target_arl = t_target;
      if (t_delta1 > 0.0) cfg.shift.delta1 = t_delta1;
      if (t_delta2 > 0.0) cfg.shift.delta2 = t_delta2;
      validate(cfg);
      const std::string fmt = (format == "table" && !out_path.empty()) ? "csv" : format;
      return cmd_table1(cfg, fmt, out_path);
    }
    if (adjust_cmd->parsed()) {
      AdjustmentCriterion crit;
      crit.kind = a_criterion == "ecarl" ? CriterionKind::ecarl_match
                  : a_criterion == "epc" ? CriterionKind::epc_cap
                                         : CriterionKind::sdcarl_cap;
      crit.target_arl = a_target;
      crit.epsilon = a_epsilon;
      return cmd_adjust(a_m, crit, a_verify_reps, a_seed, format, out_path);
    }
    if (monitor->parsed()) return cmd_monitor(mflags, data_path, format, out_path);
  } catch (const InfeasibleCriterion& err) {
    std::cerr << "infeasible: " << err.what() << '\n';
    return kExitNumerical;
  } catch (const NumericalError& err) {
    std::cerr << "numerical failure: " << err.what() << '\n';
    return kExitNumerical;
  } catch (const DataFormatError& err) {
    std::cerr << "data error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
