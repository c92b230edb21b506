#include "tbechart/chart.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tbechart/special_functions.hpp"
#include "tbechart/weibull.hpp"

namespace tbechart {

ChartDesign design_limits(double alpha0, double eta0, double beta0) {
  if (!(alpha0 > 0.0 && alpha0 < 1.0))
    throw std::invalid_argument("design_limits: alpha0 must lie in (0, 1)");
  if (!(eta0 > 0.0)) throw std::invalid_argument("design_limits: eta0 must be > 0");
  if (!(beta0 > 0.0)) throw std::invalid_argument("design_limits: beta0 must be > 0");

  const double inv_eta = 1.0 / eta0;
  const double a1 = std::pow(-std::log1p(-0.5 * alpha0), inv_eta);
  const double a2 = std::pow(-std::log(0.5 * alpha0), inv_eta);
  const double cl = beta0 * gamma_function(1.0 + inv_eta);
  return ChartDesign{alpha0, eta0, beta0, a1, a2, beta0 * a1, beta0 * a2, cl,
                     LimitSource::known};
}

double prob_signal(const ChartDesign& d, const ShiftSpec& s) {
  if (!(s.delta1 > 0.0) || !(s.delta2 > 0.0))
    throw std::invalid_argument("prob_signal: shifts must be positive");
  const WeibullParams shifted(s.delta2 * d.eta0, s.delta1 * d.scale_used);
  return weibull_cdf(d.lcl, shifted) + weibull_survival(d.ucl, shifted);
}

double geometric_mean_run_length(double ps) {
  if (!(ps >= 0.0 && ps <= 1.0))
    throw std::invalid_argument("geometric_mean_run_length: ps must lie in [0, 1]");
  if (ps == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / ps;
}

std::int64_t geometric_quantile(double ps, double q) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("geometric_quantile: q must lie in (0, 1)");
  if (!(ps > 0.0 && ps < 1.0)) {
    if (ps == 1.0) return 1;
    throw std::invalid_argument("geometric_quantile: ps must lie in (0, 1]");
  }
  // n = ceil(ln(1-q) / ln(1-ps)), then nudge to the exact smallest n since
  // the division can land a hair on either side of an integer.
  const double ratio = std::log1p(-q) / std::log1p(-ps);
  auto cdf_at = [ps](std::int64_t n) {
    return -std::expm1(static_cast<double>(n) * std::log1p(-ps));
  };
  std::int64_t n = static_cast<std::int64_t>(std::ceil(ratio));
  if (n < 1) n = 1;
  while (n > 1 && cdf_at(n - 1) >= q) --n;
  while (cdf_at(n) < q) ++n;
  return n;
}

double average_run_length(const ChartDesign& d, const ShiftSpec& s) {
  return geometric_mean_run_length(prob_signal(d, s));
}

std::int64_t run_length_quantile(const ChartDesign& d, const ShiftSpec& s, double q) {
  return geometric_quantile(prob_signal(d, s), q);
}

}  // namespace tbechart
