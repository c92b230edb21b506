#pragma once

#include <cstddef>

#include "tbechart/chart.hpp"

namespace tbechart {

/// Conditional probability-to-signal as a function of the Phase I pivot
/// w = (beta_hat / beta0)^eta0, at false-alarm rate alpha0 and shift s:
///
///   CPS(w) = 1 - exp(-w^d2 * t1) + exp(-w^d2 * t2),
///   t_j = a_j^d2 / delta1^(d2 * eta0),
///   a1 = -ln(1 - alpha0/2), a2 = -ln(alpha0/2).
///
/// CPS decreases to a single interior minimum at the critical pivot and
/// increases back toward 1, so the conditional ARL 1/CPS is bounded.
class CpsCurve {
 public:
  CpsCurve(double alpha0, double eta0, const ShiftSpec& s);

  double cps(double w) const;
  /// 1 / cps(w); +infinity if cps underflows to zero.
  double carl(double w) const;

  /// Pivot value minimizing CPS (closed form).
  double critical_pivot() const;
  /// Supremum of the conditional ARL, attained at the critical pivot.
  double carl_supremum() const;

  double tail_lower() const { return t1_; }
  double tail_upper() const { return t2_; }

 private:
  double t1_;
  double t2_;
  double delta2_;
};

double conditional_ps(double w, double alpha0, double eta0, const ShiftSpec& s);
double conditional_arl(double w, double alpha0, double eta0, const ShiftSpec& s);

struct CarlSupremum {
  double w_star;
  double carl_max;
};

/// In-control supremum of the conditional ARL over the pivot, with the
/// pivot value attaining it: w* = ln(a2/a1) / (a2 - a1).
CarlSupremum carl_sup(double alpha0);

/// Distribution of the conditional ARL over the Phase I sampling law of
/// the pivot (w ~ Gamma with shape m and mean 1, i.e. 2mw ~ chi^2_{2m}).
/// Expectations are deterministic composite Gauss-Legendre quadrature over
/// the probability transform u = F_W(w), on a mesh graded into both
/// endpoints; each result is certified by an order-doubling check at
/// relative tolerance 1e-8. CDF and quantiles come from bracketed
/// bisection on the two CPS branches.
class CarlAnalysis {
 public:
  CarlAnalysis(std::size_t m, double alpha0, double eta0 = 1.0,
               const ShiftSpec& s = ShiftSpec{});

  /// E[CARL(W)].
  double ecarl() const;
  /// sqrt(E[CARL^2] - E[CARL]^2). A variance driven negative by roundoff
  /// throws NumericalError rather than being clamped.
  double sdcarl() const;
  /// P(CARL <= c) for 1 < c; returns 1 for c >= the supremum.
  double carl_cdf(double c) const;
  /// Inverse of carl_cdf by bisection (relative tolerance 1e-9).
  double carl_quantile(double gamma) const;
  /// P(CARL < target); CARL is continuous in the pivot, so the strict
  /// inequality coincides with carl_cdf.
  double exceedance_probability(double target_arl) const;

  const CpsCurve& curve() const { return curve_; }
  std::size_t phase1_size() const { return m_; }

 private:
  double integrate_certified(bool squared) const;

  std::size_t m_;
  CpsCurve curve_;
};

/// Convenience wrappers.
double ecarl(std::size_t m, double alpha0, const ShiftSpec& s = ShiftSpec{},
             double eta0 = 1.0);
double sdcarl(std::size_t m, double alpha0, const ShiftSpec& s = ShiftSpec{},
              double eta0 = 1.0);
double carl_cdf(double c, std::size_t m, double alpha0,
                const ShiftSpec& s = ShiftSpec{}, double eta0 = 1.0);
double carl_quantile(double gamma, std::size_t m, double alpha0,
                     const ShiftSpec& s = ShiftSpec{}, double eta0 = 1.0);
double exceedance_probability(std::size_t m, double alpha0, double target_arl,
                              const ShiftSpec& s = ShiftSpec{}, double eta0 = 1.0);

}  // namespace tbechart
