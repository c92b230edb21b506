#pragma once

#include "tbechart/random.hpp"

namespace tbechart {

/// Shape/scale pair of the monitored time-between-events distribution.
/// Construction rejects non-positive values.
struct WeibullParams {
  WeibullParams(double shape, double scale);

  double eta;   ///< shape
  double beta;  ///< scale (time units)
};

struct Moments {
  double mean;
  double variance;
};

/// Density (eta/beta) (x/beta)^(eta-1) exp(-(x/beta)^eta) for x >= 0.
double weibull_pdf(double x, const WeibullParams& p);

/// 1 - exp(-(x/beta)^eta), evaluated with expm1 so small tail
/// probabilities keep full relative precision.
double weibull_cdf(double x, const WeibullParams& p);

/// Upper tail exp(-(x/beta)^eta); exact complement of the CDF.
double weibull_survival(double x, const WeibullParams& p);

/// beta * (-ln(1-u))^(1/eta) for u in (0, 1).
double weibull_quantile(double u, const WeibullParams& p);

/// mean = beta Gamma(1 + 1/eta); variance = beta^2 (Gamma(1 + 2/eta)
/// - Gamma(1 + 1/eta)^2).
Moments weibull_moments(const WeibullParams& p);

/// Inverse-transform draw: quantile(U) with U from the stream. The stream
/// yields uniforms strictly inside (0, 1), so the result is positive and
/// finite, and the sequence is fully determined by the stream state.
double weibull_sample(const WeibullParams& p, RandomStream& stream);

}  // namespace tbechart
