#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "tbechart/chart.hpp"

namespace tbechart {

/// Phase I scale estimate. `pivot` is w = (beta_hat / beta0)^eta0 and is
/// only present when a reference scale was supplied; under in-control
/// Phase I data, 2*m*w follows a chi-squared law with 2m degrees of
/// freedom.
struct PhaseIEstimate {
  std::size_t m = 0;
  double beta_hat = 0.0;
  std::optional<double> pivot;
};

/// Closed-form MLE of the scale with the shape held at eta0:
/// beta_hat = (sum x_i^eta0 / m)^(1/eta0).
PhaseIEstimate mle_scale(std::span<const double> phase1, double eta0);

/// Same, also forming the pivot against a known reference scale.
PhaseIEstimate mle_scale(std::span<const double> phase1, double eta0, double beta0);

/// Plug-in limits: the known-parameter coefficients applied to beta_hat.
ChartDesign plugin_limits(const PhaseIEstimate& est, double alpha0, double eta0);

}  // namespace tbechart
