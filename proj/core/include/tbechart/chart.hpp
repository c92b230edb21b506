#pragma once

#include <cstdint>

namespace tbechart {

enum class LimitSource { known, estimated };

/// Two-sided probability-limit design. The limit coefficients place
/// alpha0/2 of in-control probability outside each limit:
///   A1 = (-ln(1 - alpha0/2))^(1/eta0),  A2 = (-ln(alpha0/2))^(1/eta0),
///   LCL = scale * A1,  UCL = scale * A2,  CL = scale * Gamma(1 + 1/eta0),
/// where scale is the true scale (known case) or the Phase I estimate.
struct ChartDesign {
  double alpha0;
  double eta0;
  double scale_used;
  double a1;
  double a2;
  double lcl;
  double ucl;
  double cl;
  LimitSource source;
};

/// Multiplicative out-of-control shift: the monitored variable moves from
/// W(eta0, beta0) to W(delta2 * eta0, delta1 * beta0). delta1 = delta2 = 1
/// is in control.
struct ShiftSpec {
  double delta1 = 1.0;
  double delta2 = 1.0;

  bool in_control() const { return delta1 == 1.0 && delta2 == 1.0; }
};

/// Limits from known parameters.
ChartDesign design_limits(double alpha0, double eta0, double beta0);

/// Probability that one plotted observation falls beyond the limits when
/// the process sits at shift `s`. Evaluated through the Weibull CDF and
/// survival function at the limits under the shifted parameters, so the
/// in-control value reduces to alpha0 exactly (to rounding).
double prob_signal(const ChartDesign& d, const ShiftSpec& s);

/// Run lengths are geometric with parameter ps.
double geometric_mean_run_length(double ps);

/// Smallest n with 1 - (1-ps)^n >= q.
std::int64_t geometric_quantile(double ps, double q);

/// 1 / prob_signal; +infinity when the signal probability underflows to
/// zero (an unbounded run, as opposed to overflow).
double average_run_length(const ChartDesign& d, const ShiftSpec& s);

std::int64_t run_length_quantile(const ChartDesign& d, const ShiftSpec& s, double q);

}  // namespace tbechart
