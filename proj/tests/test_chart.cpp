#include <doctest.h>

#include <cmath>
#include <vector>

#include "tbechart/chart.hpp"
#include "tbechart/random.hpp"
#include "tbechart/weibull.hpp"
#include "test_util.hpp"

using namespace tbechart;
using testutil::rel_err;

TEST_CASE("design_limits closed-form coefficients") {
  const ChartDesign d1 = design_limits(0.0027, 1.0, 1.0);
  CHECK(rel_err(d1.a1, 0.0013509120709562744) < 1e-14);
  CHECK(rel_err(d1.a2, 6.607650686531799) < 1e-14);
  CHECK(rel_err(d1.cl, 1.0) < 1e-13);
  CHECK(d1.lcl == d1.a1);
  CHECK(d1.ucl == d1.a2);
  CHECK(d1.source == LimitSource::known);

  const ChartDesign d2 = design_limits(0.0027, 2.0, 1.0);
  CHECK(rel_err(d2.a1, 0.03675475575971461) < 1e-14);
  CHECK(rel_err(d2.a2, 2.570535097315693) < 1e-14);
  CHECK(d2.a1 < d2.a2);
}

TEST_CASE("limits scale linearly in beta0, coefficients do not") {
  const ChartDesign d = design_limits(0.0027, 1.7, 3.0);
  const ChartDesign dd = design_limits(0.0027, 1.7, 6.0);
  CHECK(dd.a1 == d.a1);
  CHECK(dd.a2 == d.a2);
  CHECK(rel_err(dd.lcl, 2.0 * d.lcl) < 1e-15);
  CHECK(rel_err(dd.ucl, 2.0 * d.ucl) < 1e-15);
  CHECK(rel_err(dd.cl, 2.0 * d.cl) < 1e-15);
}

TEST_CASE("limits place equal tails") {
  for (double alpha : {0.001, 0.0027, 0.01, 0.1}) {
    for (double eta : {0.5, 1.0, 2.0, 3.5}) {
      const ChartDesign d = design_limits(alpha, eta, 4.2);
      const WeibullParams p{eta, 4.2};
      CHECK(rel_err(weibull_cdf(d.lcl, p), alpha / 2.0) < 1e-13);
      CHECK(rel_err(weibull_survival(d.ucl, p), alpha / 2.0) < 1e-13);
    }
  }
}

TEST_CASE("design_limits validates alpha0") {
  CHECK_THROWS_AS(design_limits(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(design_limits(1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(design_limits(1.5, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("in-control signal probability reduces to alpha0") {
  RandomStream stream(11);
  for (int i = 0; i < 50; ++i) {
    const double alpha = 0.0005 + 0.2 * stream.uniform01();
    const double eta = 0.4 + 4.0 * stream.uniform01();
    const double beta = 0.05 + 30.0 * stream.uniform01();
    const ChartDesign d = design_limits(alpha, eta, beta);
    CHECK(rel_err(prob_signal(d, ShiftSpec{}), alpha) < 1e-12);
  }
}

TEST_CASE("prob_signal closed-form examples") {
  const ChartDesign d = design_limits(0.0027, 1.0, 1.0);
  CHECK(rel_err(prob_signal(d, {2.0, 1.0}), 0.037417574108150976) < 1e-12);
  // At eta0 = 1 a downward scale shift to half leaves PS at alpha0: the
  // two tail changes cancel exactly, which is why the chart is blind to it.
  CHECK(rel_err(prob_signal(d, {0.5, 1.0}), 0.0027) < 1e-12);
}

TEST_CASE("prob_signal is invariant to beta0 at fixed shift") {
  const ShiftSpec s{1.7, 0.8};
  for (double eta : {0.5, 1.0, 2.0}) {
    const double ps1 = prob_signal(design_limits(0.0027, eta, 1.0), s);
    const double ps2 = prob_signal(design_limits(0.0027, eta, 2.0), s);
    CHECK(rel_err(ps1, ps2) < 1e-13);
  }
}

TEST_CASE("prob_signal matches Monte Carlo over the shift grid") {
  const ChartDesign d = design_limits(0.0027, 1.0, 1.0);
  RandomStream stream(424242);
  const std::size_t n = 100'000;
  for (double delta1 : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    for (double delta2 : {0.5, 1.0, 2.0}) {
      const ShiftSpec s{delta1, delta2};
      const double ps = prob_signal(d, s);
      const WeibullParams shifted{delta2 * d.eta0, delta1 * d.scale_used};
      std::size_t hits = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double x = weibull_sample(shifted, stream);
        if (x < d.lcl || x > d.ucl) ++hits;
      }
      const double frac = static_cast<double>(hits) / static_cast<double>(n);
      const double se = std::sqrt(ps * (1.0 - ps) / static_cast<double>(n));
      CHECK(std::abs(frac - ps) <= 3.0 * se + 1e-12);
    }
  }
}

TEST_CASE("average run length") {
  const ChartDesign d = design_limits(0.0027, 1.0, 1.0);
  CHECK(rel_err(average_run_length(d, ShiftSpec{}), 370.3703703703703) < 1e-12);
  CHECK(rel_err(average_run_length(d, {2.0, 1.0}), 26.725409752904365) < 1e-12);
  CHECK(geometric_mean_run_length(0.5) == 2.0);
  CHECK(std::isinf(geometric_mean_run_length(0.0)));
}

TEST_CASE("geometric quantiles against pmf summation") {
  CHECK(geometric_quantile(0.5, 0.5) == 1);
  CHECK(geometric_quantile(0.0027, 0.5) == 257);
  CHECK(geometric_quantile(1.0, 0.7) == 1);

  // Oracle: accumulate the geometric pmf directly.
  auto by_summation = [](double ps, double q) {
    double cdf = 0.0;
    std::int64_t n = 0;
    while (cdf < q) {
      ++n;
      cdf += ps * std::pow(1.0 - ps, static_cast<double>(n - 1));
    }
    return n;
  };
  for (double ps : {0.0027, 0.037, 0.5}) {
    for (double q : {0.05, 0.5, 0.95}) {
      CHECK(geometric_quantile(ps, q) == by_summation(ps, q));
    }
  }
  CHECK_THROWS_AS(geometric_quantile(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(geometric_quantile(0.0, 0.5), std::invalid_argument);
}

TEST_CASE("run_length_quantile through a design") {
  const ChartDesign d = design_limits(0.0027, 1.0, 1.0);
  CHECK(run_length_quantile(d, ShiftSpec{}, 0.5) == 257);
  CHECK(run_length_quantile(d, ShiftSpec{}, 0.95) == 1109);
}
