#include "tbechart/adjustment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "tbechart/carl.hpp"

namespace tbechart {

namespace {

double criterion_value(std::size_t m, double alpha, const AdjustmentCriterion& crit) {
  const CarlAnalysis analysis(m, alpha);
  switch (crit.kind) {
    case CriterionKind::ecarl_match:
      return analysis.ecarl();
    case CriterionKind::epc_cap:
      return analysis.exceedance_probability(crit.target_arl);
    case CriterionKind::sdcarl_cap:
      return analysis.sdcarl();
  }
  throw std::logic_error("criterion_value: unknown criterion kind");
}

double criterion_target(const AdjustmentCriterion& crit) {
  switch (crit.kind) {
    case CriterionKind::ecarl_match:
      return crit.target_arl;
    case CriterionKind::epc_cap:
      return crit.epsilon;
    case CriterionKind::sdcarl_cap:
      return crit.epsilon * crit.target_arl;
  }
  throw std::logic_error("criterion_target: unknown criterion kind");
}

const char* kind_name(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::ecarl_match:
      return "ecarl_match";
    case CriterionKind::epc_cap:
      return "epc_cap";
    case CriterionKind::sdcarl_cap:
      return "sdcarl_cap";
  }
  return "?";
}

}  // namespace

AdjustmentResult adjust(std::size_t m, const AdjustmentCriterion& crit) {
  if (m < 2) throw std::invalid_argument("adjust: m must be >= 2");
  if (!(crit.target_arl > 1.0))
    throw std::invalid_argument("adjust: target_arl must be > 1");
  if (crit.kind != CriterionKind::ecarl_match &&
      !(crit.epsilon > 0.0 && crit.epsilon < 1.0))
    throw std::invalid_argument("adjust: epsilon must lie in (0, 1)");

  const double nominal_alpha = 1.0 / crit.target_arl;
  const double lo = nominal_alpha / 50.0;
  const double hi = std::min(0.5, 50.0 * nominal_alpha);
  const double target = criterion_target(crit);

  auto gap = [&](double alpha) { return criterion_value(m, alpha, crit) - target; };
  const double gap_lo = gap(lo);
  const double gap_hi = gap(hi);

  if (crit.kind == CriterionKind::sdcarl_cap && gap_lo <= 0.0) {
    // SDCARL is already under the cap everywhere in the bracket; the
    // smallest in-bracket alpha wins.
    return {lo, gap_lo + target, 0, lo, hi};
  }
  if (std::signbit(gap_lo) == std::signbit(gap_hi) && gap_lo != 0.0 && gap_hi != 0.0) {
    std::ostringstream msg;
    msg << "criterion " << kind_name(crit.kind) << " unsatisfiable at m=" << m
        << ": value " << (gap_lo + target) << " at alpha=" << lo << ", value "
        << (gap_hi + target) << " at alpha=" << hi << ", target " << target;
    throw InfeasibleCriterion(msg.str(), gap_lo + target, gap_hi + target);
  }

  double a = lo, b = hi;
  double ga = gap_lo;
  int iterations = 0;
  while (b - a > 1e-6 * (0.5 * (a + b))) {
    ++iterations;
    const double mid = 0.5 * (a + b);
    const double gm = gap(mid);
    if (gm == 0.0) {
      a = b = mid;
      break;
    }
    if (std::signbit(gm) == std::signbit(ga)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  const double alpha_adj = 0.5 * (a + b);
  return {alpha_adj, criterion_value(m, alpha_adj, crit), iterations, lo, hi};
}

std::vector<CriterionCurveRow> criterion_curve(const std::vector<std::size_t>& m_list,
                                               const AdjustmentCriterion& crit) {
  std::vector<CriterionCurveRow> rows;
  rows.reserve(m_list.size());
  for (std::size_t m : m_list) {
    CriterionCurveRow row;
    row.m = m;
    try {
      const AdjustmentResult res = adjust(m, crit);
      row.alpha_adj = res.alpha_adj;
      row.achieved = res.achieved;
      row.feasible = true;
    } catch (const InfeasibleCriterion& err) {
      row.feasible = false;
      row.note = err.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace tbechart
