#include "tbechart/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tbechart/errors.hpp"

namespace tbechart {

namespace {

GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double integrate_on_mesh(const std::function<double(double)>& f,
                         const std::vector<double>& mesh, int order) {
  const GaussLegendreRule& rule = gauss_legendre(order);
  // Neumaier-compensated accumulation in a fixed order.
  double sum = 0.0, comp = 0.0;
  for (std::size_t p = 0; p + 1 < mesh.size(); ++p) {
    const double mid = 0.5 * (mesh[p] + mesh[p + 1]);
    const double half = 0.5 * (mesh[p + 1] - mesh[p]);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double term = half * rule.weights[k] * f(mid + half * rule.nodes[k]);
      const double t = sum + term;
      comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
      sum = t;
    }
  }
  return sum + comp;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  static std::mutex mu;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

std::vector<double> graded_mesh01() {
  std::vector<double> mesh;
  mesh.push_back(0.0);
  for (int k = 52; k >= 1; --k) mesh.push_back(std::ldexp(1.0, -k));
  for (int k = 2; k <= 52; ++k) mesh.push_back(1.0 - std::ldexp(1.0, -k));
  mesh.push_back(1.0);
  return mesh;
}

double integrate_graded01_nocheck(const std::function<double(double)>& f, int order) {
  static const std::vector<double> mesh = graded_mesh01();
  return integrate_on_mesh(f, mesh, order);
}

double integrate_graded01(const std::function<double(double)>& f, int order,
                          double rel_tol) {
  static const std::vector<double> mesh = graded_mesh01();
  const double coarse = integrate_on_mesh(f, mesh, order);
  const double fine = integrate_on_mesh(f, mesh, 2 * order);
  const double scale = std::max(std::abs(fine), 1e-300);
  const double rel_err = std::abs(fine - coarse) / scale;
  if (rel_err > rel_tol) {
    std::ostringstream msg;
    msg << "quadrature did not converge: achieved relative error estimate "
        << rel_err << " exceeds tolerance " << rel_tol
        << " (estimate " << fine << ")";
    throw NumericalError(msg.str());
  }
  return fine;
}

}  // namespace tbechart
