#include <doctest.h>

#include <cmath>
#include <vector>

#include "tbechart/carl.hpp"
#include "tbechart/chart.hpp"
#include "tbechart/simulation.hpp"
#include "test_util.hpp"

using namespace tbechart;
using testutil::rel_err;

namespace {

StudyConfig small_config(std::size_t reps, std::uint64_t seed = 99) {
  StudyConfig cfg;
  cfg.replications = reps;
  cfg.seed = seed;
  return cfg;
}

bool summaries_equal(const CarlSummary& a, const CarlSummary& b) {
  if (a.acarl != b.acarl || a.sdcarl != b.sdcarl || a.epc != b.epc) return false;
  if (a.percentiles.size() != b.percentiles.size()) return false;
  for (const auto& [level, value] : a.percentiles) {
    auto it = b.percentiles.find(level);
    if (it == b.percentiles.end() || it->second != value) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("single replicate gives a degenerate summary") {
  const StudyConfig cfg = small_config(1);
  const CarlSummary s = simulate_carl_distribution(cfg, 25, WeibullParams{1.0, 1.0});
  CHECK(s.sdcarl == 0.0);
  CHECK(s.acarl > 0.0);
  CHECK(s.acarl <= s.carl_sup);
  for (const auto& [level, value] : s.percentiles) CHECK(value == s.acarl);
}

TEST_CASE("summaries are bit-identical across runs and thread counts") {
  StudyConfig cfg = small_config(2000);
  cfg.threads = 1;
  const CarlSummary a = simulate_carl_distribution(cfg, 30, WeibullParams{1.0, 1.0});
  const CarlSummary b = simulate_carl_distribution(cfg, 30, WeibullParams{1.0, 1.0});
  CHECK(summaries_equal(a, b));
  cfg.threads = 4;
  const CarlSummary c = simulate_carl_distribution(cfg, 30, WeibullParams{1.0, 1.0});
  CHECK(summaries_equal(a, c));
}

TEST_CASE("different seeds decorrelate the study") {
  const CarlSummary a =
      simulate_carl_distribution(small_config(500, 1), 30, WeibullParams{1.0, 1.0});
  const CarlSummary b =
      simulate_carl_distribution(small_config(500, 2), 30, WeibullParams{1.0, 1.0});
  CHECK(a.acarl != b.acarl);
}

TEST_CASE("simulated summaries agree with the analytic distribution") {
  const std::size_t reps = 20'000;
  const StudyConfig cfg = small_config(reps, 314159);
  const CarlSummary s = simulate_carl_distribution(cfg, 30, WeibullParams{1.0, 1.0});
  const CarlAnalysis analysis(30, cfg.alpha0);

  const double e = analysis.ecarl();
  const double sd = analysis.sdcarl();
  const double se_mean = sd / std::sqrt(static_cast<double>(reps));
  CHECK(std::abs(s.acarl - e) < 4.0 * se_mean);

  const double epc = analysis.exceedance_probability(cfg.target_arl);
  const double se_epc = std::sqrt(epc * (1.0 - epc) / static_cast<double>(reps));
  CHECK(std::abs(s.epc - epc) < 3.0 * se_epc);

  for (const auto& [level, value] : s.percentiles) {
    CHECK(rel_err(value, analysis.carl_quantile(level)) < 0.03);
    CHECK(value <= s.carl_sup);
  }
}

TEST_CASE("percentile estimates tighten with more replications") {
  const CarlAnalysis analysis(30, 0.0027);
  const double truth = analysis.carl_quantile(0.5);
  const CarlSummary coarse =
      simulate_carl_distribution(small_config(2'000, 5), 30, WeibullParams{1.0, 1.0});
  const CarlSummary fine =
      simulate_carl_distribution(small_config(50'000, 5), 30, WeibullParams{1.0, 1.0});
  CHECK(std::abs(fine.percentiles.at(0.5) - truth) <=
        std::abs(coarse.percentiles.at(0.5) - truth) + 1.0);
  CHECK(rel_err(fine.percentiles.at(0.5), truth) < 0.01);
}

TEST_CASE("run_table1 row order and consistency with direct blocks") {
  StudyConfig cfg = small_config(300);
  cfg.param_grid = {{1.0, 1.0}, {2.0, 5.0}};
  cfg.m_list = {10, 20};
  const std::vector<StudyRow> rows = run_table1(cfg);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].eta0 == 1.0);
  CHECK(rows[0].m == 10);
  CHECK(rows[1].m == 20);
  CHECK(rows[2].eta0 == 2.0);
  CHECK(rows[3].beta0 == 5.0);

  const CarlSummary direct =
      simulate_carl_distribution(cfg, 20, WeibullParams{2.0, 5.0});
  CHECK(summaries_equal(rows[3].summary, direct));
}

TEST_CASE("run_table1 with an empty m list is empty") {
  StudyConfig cfg = small_config(10);
  cfg.m_list.clear();
  CHECK(run_table1(cfg).empty());
}

TEST_CASE("config validation") {
  StudyConfig bad = small_config(10);
  bad.alpha0 = 1.5;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = small_config(0);
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = small_config(10);
  bad.percentile_levels = {0.5, 0.25};
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = small_config(10);
  bad.param_grid = {{-1.0, 1.0}};
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("run-length simulation matches geometric moments at PS = 0.5") {
  const ChartDesign d = design_limits(0.5, 1.0, 1.0);
  RandomStream stream(606);
  const RunLengthStats stats = simulate_run_lengths(d, ShiftSpec{}, 100'000, stream);
  CHECK(stats.capped == 0);
  CHECK(rel_err(stats.mean, 2.0) < 0.02);
  CHECK(rel_err(stats.sd, std::sqrt(2.0)) < 0.04);
}

TEST_CASE("run-length simulation reproduces the in-control ARL") {
  const ChartDesign d = design_limits(0.0027, 1.0, 1.0);
  RandomStream stream(607);
  const RunLengthStats stats = simulate_run_lengths(d, ShiftSpec{}, 100'000, stream);
  CHECK(stats.capped == 0);
  CHECK(rel_err(stats.mean, 370.3703703703703) < 0.02);
}

TEST_CASE("run-length simulation tracks the shifted ARL") {
  const ChartDesign d = design_limits(0.0027, 1.0, 1.0);
  RandomStream stream(608);
  const ShiftSpec s{2.0, 1.0};
  const RunLengthStats stats = simulate_run_lengths(d, s, 100'000, stream);
  CHECK(rel_err(stats.mean, 26.725409752904365) < 0.02);
}

TEST_CASE("run-length cap is reported, not silently truncated") {
  // An absurdly small alpha makes a signal astronomically unlikely.
  const ChartDesign d = design_limits(1e-12, 1.0, 1.0);
  RandomStream stream(609);
  const RunLengthStats stats = simulate_run_lengths(d, ShiftSpec{}, 1, stream);
  CHECK(stats.capped == 1);
  CHECK(stats.mean == 0.0);
}
