#include "tbechart/weibull.hpp"

#include <cmath>
#include <stdexcept>

#include "tbechart/special_functions.hpp"

namespace tbechart {

WeibullParams::WeibullParams(double shape, double scale) : eta(shape), beta(scale) {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("WeibullParams: shape must be positive and finite");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("WeibullParams: scale must be positive and finite");
}

double weibull_pdf(double x, const WeibullParams& p) {
  if (x < 0.0) throw std::invalid_argument("weibull_pdf: x must be >= 0");
  if (x == 0.0) {
    if (p.eta > 1.0) return 0.0;
    if (p.eta == 1.0) return 1.0 / p.beta;
    return std::numeric_limits<double>::infinity();
  }
  const double z = x / p.beta;
  return (p.eta / p.beta) * std::pow(z, p.eta - 1.0) * std::exp(-std::pow(z, p.eta));
}

double weibull_cdf(double x, const WeibullParams& p) {
  if (x < 0.0) throw std::invalid_argument("weibull_cdf: x must be >= 0");
  if (x == 0.0) return 0.0;
  return -std::expm1(-std::pow(x / p.beta, p.eta));
}

double weibull_survival(double x, const WeibullParams& p) {
  if (x < 0.0) throw std::invalid_argument("weibull_survival: x must be >= 0");
  if (x == 0.0) return 1.0;
  return std::exp(-std::pow(x / p.beta, p.eta));
}

double weibull_quantile(double u, const WeibullParams& p) {
  if (!(u > 0.0 && u < 1.0))
    throw std::invalid_argument("weibull_quantile: u must lie in (0, 1)");
  // -log1p(-u) = -ln(1-u) without cancellation for small u.
  const double e = -std::log1p(-u);
  if (p.eta == 1.0) return p.beta * e;
  return p.beta * std::pow(e, 1.0 / p.eta);
}

Moments weibull_moments(const WeibullParams& p) {
  const double g1 = gamma_function(1.0 + 1.0 / p.eta);
  const double g2 = gamma_function(1.0 + 2.0 / p.eta);
  const double mean = p.beta * g1;
  return {mean, p.beta * p.beta * (g2 - g1 * g1)};
}

double weibull_sample(const WeibullParams& p, RandomStream& stream) {
  return weibull_quantile(stream.uniform01(), p);
}

}  // namespace tbechart
