#include "tbechart/carl.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "tbechart/errors.hpp"
#include "tbechart/quadrature.hpp"
#include "tbechart/roots.hpp"
#include "tbechart/special_functions.hpp"

namespace tbechart {

namespace {

constexpr double kQuadRelTol = 1e-8;
constexpr int kPanelOrder = 16;

// Quadrature abscissas of the pivot distribution: for each node u of the
// graded-mesh composite rule over (0,1), the Gamma(m, mean 1) quantile at
// u plus the combined panel weight. The pivot values depend only on m, so
// the table is cached and shared; the inverse CDF is evaluated through the
// upper tail on the right half of the mesh to keep extreme quantiles exact.
struct PivotTable {
  std::vector<double> w;
  std::vector<double> weight;
};

PivotTable compute_pivot_table(std::size_t m, int order) {
  const GaussLegendreRule& rule = gauss_legendre(order);
  const std::vector<double> mesh = graded_mesh01();
  const double md = static_cast<double>(m);
  PivotTable table;
  table.w.reserve((mesh.size() - 1) * rule.nodes.size());
  table.weight.reserve(table.w.capacity());
  for (std::size_t p = 0; p + 1 < mesh.size(); ++p) {
    const double a = mesh[p], b = mesh[p + 1];
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const bool upper = mid > 0.5;
    // 1-a, 1-b and their midpoint are exact for the graded mesh points.
    const double vmid = 0.5 * ((1.0 - a) + (1.0 - b));
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      double quantile;
      if (upper) {
        const double v = vmid - half * rule.nodes[k];  // = 1 - u, no cancellation
        quantile = regularized_gamma_q_inv(md, v);
      } else {
        const double u = mid + half * rule.nodes[k];
        quantile = regularized_gamma_p_inv(md, u);
      }
      table.w.push_back(quantile / md);
      table.weight.push_back(half * rule.weights[k]);
    }
  }
  return table;
}

const PivotTable& pivot_table(std::size_t m, int order) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, int>, PivotTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(m, order);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compute_pivot_table(m, order)).first;
  return it->second;
}

double sum_table(const PivotTable& table, const CpsCurve& curve, bool squared) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < table.w.size(); ++i) {
    double value = curve.carl(table.w[i]);
    if (squared) value *= value;
    const double term = table.weight[i] * value;
    const double t = sum + term;
    comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

CpsCurve::CpsCurve(double alpha0, double eta0, const ShiftSpec& s) {
  if (!(alpha0 > 0.0 && alpha0 < 1.0))
    throw std::invalid_argument("CpsCurve: alpha0 must lie in (0, 1)");
  if (!(eta0 > 0.0)) throw std::invalid_argument("CpsCurve: eta0 must be > 0");
  if (!(s.delta1 > 0.0) || !(s.delta2 > 0.0))
    throw std::invalid_argument("CpsCurve: shifts must be positive");
  const double a1 = -std::log1p(-0.5 * alpha0);
  const double a2 = -std::log(0.5 * alpha0);
  delta2_ = s.delta2;
  if (s.delta2 == 1.0) {
    t1_ = a1;
    t2_ = a2;
  } else {
    t1_ = std::pow(a1, s.delta2);
    t2_ = std::pow(a2, s.delta2);
  }
  if (s.delta1 != 1.0) {
    const double denom = std::pow(s.delta1, s.delta2 * eta0);
    t1_ /= denom;
    t2_ /= denom;
  }
}

double CpsCurve::cps(double w) const {
  if (!(w > 0.0)) throw std::invalid_argument("CpsCurve::cps: pivot must be > 0");
  const double v = (delta2_ == 1.0) ? w : std::pow(w, delta2_);
  return -std::expm1(-v * t1_) + std::exp(-v * t2_);
}

double CpsCurve::carl(double w) const {
  const double p = cps(w);
  if (p == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / p;
}

double CpsCurve::critical_pivot() const {
  const double v_star = std::log(t2_ / t1_) / (t2_ - t1_);
  return (delta2_ == 1.0) ? v_star : std::pow(v_star, 1.0 / delta2_);
}

double CpsCurve::carl_supremum() const { return carl(critical_pivot()); }

double conditional_ps(double w, double alpha0, double eta0, const ShiftSpec& s) {
  return CpsCurve(alpha0, eta0, s).cps(w);
}

double conditional_arl(double w, double alpha0, double eta0, const ShiftSpec& s) {
  return CpsCurve(alpha0, eta0, s).carl(w);
}

CarlSupremum carl_sup(double alpha0) {
  const CpsCurve curve(alpha0, 1.0, ShiftSpec{});
  return {curve.critical_pivot(), curve.carl_supremum()};
}

CarlAnalysis::CarlAnalysis(std::size_t m, double alpha0, double eta0,
                           const ShiftSpec& s)
    : m_(m), curve_(alpha0, eta0, s) {
  if (m == 0) throw std::invalid_argument("CarlAnalysis: m must be >= 1");
}

double CarlAnalysis::integrate_certified(bool squared) const {
  const double coarse = sum_table(pivot_table(m_, kPanelOrder), curve_, squared);
  const double fine = sum_table(pivot_table(m_, 2 * kPanelOrder), curve_, squared);
  const double rel_err = std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300);
  if (rel_err > kQuadRelTol) {
    std::ostringstream msg;
    msg << "CARL quadrature did not converge at m=" << m_
        << ": achieved relative error estimate " << rel_err << " exceeds "
        << kQuadRelTol << " (estimate " << fine << ")";
    throw NumericalError(msg.str());
  }
  return fine;
}

double CarlAnalysis::ecarl() const { return integrate_certified(false); }

double CarlAnalysis::sdcarl() const {
  const double e1 = integrate_certified(false);
  const double e2 = integrate_certified(true);
  const double variance = e2 - e1 * e1;
  if (variance < 0.0) {
    std::ostringstream msg;
    msg << "sdcarl: quadrature variance is negative (" << variance
        << ") at m=" << m_;
    throw NumericalError(msg.str());
  }
  return std::sqrt(variance);
}

double CarlAnalysis::carl_cdf(double c) const {
  if (!(c > 1.0)) throw std::invalid_argument("carl_cdf: c must be > 1");
  const double w_star = curve_.critical_pivot();
  const double cps_min = curve_.cps(w_star);
  const double level = 1.0 / c;
  if (level <= cps_min) return 1.0;  // c at or above the supremum

  auto f = [this, level](double w) { return curve_.cps(w) - level; };

  // Lower branch: CPS decreases from 1 toward its minimum.
  double lo = w_star;
  while (f(lo) < 0.0) lo *= 0.5;
  const double w_lo = bisect_root(f, lo, w_star).root;

  // Upper branch: CPS increases back toward 1.
  double hi = w_star;
  while (f(hi) < 0.0) hi *= 2.0;
  const double w_hi = bisect_root(f, w_star, hi).root;

  const double md = static_cast<double>(m_);
  return regularized_gamma_p(md, md * w_lo) + regularized_gamma_q(md, md * w_hi);
}

double CarlAnalysis::carl_quantile(double gamma) const {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("carl_quantile: gamma must lie in (0, 1)");
  const double carl_max = curve_.carl_supremum();
  auto f = [this](double c) { return carl_cdf(c); };
  double lo = 1.0 + 1e-9;
  double hi = carl_max;
  if (f(lo) >= gamma) return lo;
  return bisect_root([&](double c) { return f(c) - gamma; }, lo, hi, 1e-9).root;
}

double CarlAnalysis::exceedance_probability(double target_arl) const {
  if (!(target_arl > 1.0))
    throw std::invalid_argument("exceedance_probability: target must be > 1");
  return carl_cdf(target_arl);
}

double ecarl(std::size_t m, double alpha0, const ShiftSpec& s, double eta0) {
  return CarlAnalysis(m, alpha0, eta0, s).ecarl();
}

double sdcarl(std::size_t m, double alpha0, const ShiftSpec& s, double eta0) {
  return CarlAnalysis(m, alpha0, eta0, s).sdcarl();
}

double carl_cdf(double c, std::size_t m, double alpha0, const ShiftSpec& s,
                double eta0) {
  return CarlAnalysis(m, alpha0, eta0, s).carl_cdf(c);
}

double carl_quantile(double gamma, std::size_t m, double alpha0, const ShiftSpec& s,
                     double eta0) {
  return CarlAnalysis(m, alpha0, eta0, s).carl_quantile(gamma);
}

double exceedance_probability(std::size_t m, double alpha0, double target_arl,
                              const ShiftSpec& s, double eta0) {
  return CarlAnalysis(m, alpha0, eta0, s).exceedance_probability(target_arl);
}

}  // namespace tbechart
