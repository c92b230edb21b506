#pragma once

#include <functional>
#include <vector>

namespace tbechart {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights by Newton iteration on the Legendre recurrence.
/// Rules are cached per order; thread safe.
const GaussLegendreRule& gauss_legendre(int order);

/// Abscissas of a composite rule over (0, 1) on a mesh graded
/// geometrically into both endpoints (panel widths halve down to 2^-52).
/// Integrating on this mesh resolves integrands with boundary layers at
/// 0 or 1 that defeat a single global rule.
std::vector<double> graded_mesh01();

/// Integral of f over (0, 1) on the graded mesh. The result at
/// `order` per panel is certified against the doubled order; if the two
/// differ by more than rel_tol (relative), throws NumericalError carrying
/// the achieved estimate.
double integrate_graded01(const std::function<double(double)>& f, int order,
                          double rel_tol);

/// Same composite rule without the certification pass.
double integrate_graded01_nocheck(const std::function<double(double)>& f, int order);

}  // namespace tbechart
