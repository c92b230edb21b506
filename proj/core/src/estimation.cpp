#include "tbechart/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace tbechart {

namespace {

double power_mean(std::span<const double> sample, double eta0) {
  if (sample.empty()) throw std::invalid_argument("mle_scale: empty Phase I sample");
  if (!(eta0 > 0.0)) throw std::invalid_argument("mle_scale: eta0 must be > 0");
  double sum = 0.0, comp = 0.0;
  for (double x : sample) {
    if (!(x > 0.0) || !std::isfinite(x))
      throw std::invalid_argument("mle_scale: sample values must be positive");
    const double term = (eta0 == 1.0) ? x : std::pow(x, eta0);
    const double t = sum + term;
    comp += (sum >= term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return (sum + comp) / static_cast<double>(sample.size());
}

}  // namespace

PhaseIEstimate mle_scale(std::span<const double> phase1, double eta0) {
  const double mean_pow = power_mean(phase1, eta0);
  const double beta_hat =
      (eta0 == 1.0) ? mean_pow : std::pow(mean_pow, 1.0 / eta0);
  return PhaseIEstimate{phase1.size(), beta_hat, std::nullopt};
}

PhaseIEstimate mle_scale(std::span<const double> phase1, double eta0, double beta0) {
  if (!(beta0 > 0.0)) throw std::invalid_argument("mle_scale: beta0 must be > 0");
  PhaseIEstimate est = mle_scale(phase1, eta0);
  est.pivot = std::pow(est.beta_hat / beta0, eta0);
  return est;
}

ChartDesign plugin_limits(const PhaseIEstimate& est, double alpha0, double eta0) {
  if (est.m == 0 || !(est.beta_hat > 0.0))
    throw std::invalid_argument("plugin_limits: invalid Phase I estimate");
  ChartDesign d = design_limits(alpha0, eta0, est.beta_hat);
  d.source = LimitSource::estimated;
  return d;
}

}  // namespace tbechart
