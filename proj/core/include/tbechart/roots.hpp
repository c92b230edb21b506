#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "tbechart/errors.hpp"

namespace tbechart {

struct RootResult {
  double root = 0.0;
  int iterations = 0;
};

/// Bisection on [lo, hi] for f(root) = 0. Requires a sign change across the
/// bracket; throws NumericalError (with the endpoint values) otherwise.
/// Terminates when the bracket width drops below rel_tol * |midpoint|
/// (plus a tiny absolute floor for roots near zero).
inline RootResult bisect_root(const std::function<double(double)>& f, double lo,
                              double hi, double rel_tol = 1e-12) {
  if (!(lo < hi)) throw std::invalid_argument("bisect_root: empty bracket");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0};
  if (fhi == 0.0) return {hi, 0};
  if (std::signbit(flo) == std::signbit(fhi)) {
    std::ostringstream msg;
    msg << "bisect_root: no sign change on [" << lo << ", " << hi << "]: f(lo)="
        << flo << ", f(hi)=" << fhi;
    throw NumericalError(msg.str());
  }
  int it = 0;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= rel_tol * std::abs(mid) + 1e-300 || it >= 200) return {mid, it};
    ++it;
    const double fmid = f(mid);
    if (fmid == 0.0) return {mid, it};
    if (std::signbit(fmid) == std::signbit(flo)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
}

}  // namespace tbechart
