#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "tbechart/chart.hpp"
#include "tbechart/random.hpp"
#include "tbechart/weibull.hpp"

namespace tbechart {

inline constexpr std::uint64_t kDefaultSeed = 0x1d872b41157b9f9fULL;

/// Configuration of a conditional-run-length study. Results are a pure
/// function of this struct: the replicate streams are derived from the
/// seed and the block identity by counter-based splitting, so neither
/// thread count nor scheduling can change any output.
struct StudyConfig {
  double alpha0 = 0.0027;
  std::vector<std::pair<double, double>> param_grid = {{1.0, 1.0}};
  std::vector<std::size_t> m_list = {30, 50, 100, 200, 500, 800, 1000, 2000, 5000, 8000};
  std::size_t replications = 200000;
  std::vector<double> percentile_levels = {0.05, 0.10, 0.25, 0.50, 0.75, 0.90, 0.95};
  double target_arl = 370.4;
  std::uint64_t seed = kDefaultSeed;
  ShiftSpec shift;       ///< Phase II shift; defaults to in control
  unsigned threads = 0;  ///< 0 = TBECHART_THREADS env var, else hardware
};

void validate(const StudyConfig& cfg);

/// Summary of the simulated conditional-ARL distribution.
struct CarlSummary {
  double acarl = 0.0;
  double sdcarl = 0.0;
  double epc = 0.0;  ///< fraction of replicates with CARL strictly below target
  std::map<double, double> percentiles;  ///< level -> nearest-rank value
  double carl_sup = 0.0;                 ///< analytic supremum bound
};

/// One study block: draw `replications` Phase I samples of size m from
/// W(eta0, beta0), estimate the scale by MLE, and evaluate the
/// conditional ARL of the resulting plug-in chart analytically per
/// replicate.
CarlSummary simulate_carl_distribution(const StudyConfig& cfg, std::size_t m,
                                       const WeibullParams& params);

struct StudyRow {
  double eta0;
  double beta0;
  std::size_t m;
  CarlSummary summary;
};

/// Full cross of param_grid x m_list, in that (stable) row order.
std::vector<StudyRow> run_table1(const StudyConfig& cfg);

struct RunLengthStats {
  double mean = 0.0;
  double sd = 0.0;
  std::size_t replications = 0;
  std::size_t capped = 0;  ///< replicates cut off at the cap (excluded from moments)
};

inline constexpr std::size_t kRunLengthCap = 10'000'000;

/// Direct run-length simulation: plot observations from the shifted
/// distribution until one falls beyond the limits. Validation oracle for
/// the geometric run-length model.
RunLengthStats simulate_run_lengths(const ChartDesign& d, const ShiftSpec& s,
                                    std::size_t reps, RandomStream& stream);

}  // namespace tbechart
