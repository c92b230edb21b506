#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tbechart/errors.hpp"

namespace tbechart {

/// What "nominal in-control behavior" means for the adjusted chart:
///  - ecarl_match:  E[CARL] equals target_arl.
///  - epc_cap:      P(CARL < target_arl) equals epsilon.
///  - sdcarl_cap:   smallest alpha with SDCARL <= epsilon * target_arl.
enum class CriterionKind { ecarl_match, epc_cap, sdcarl_cap };

struct AdjustmentCriterion {
  CriterionKind kind = CriterionKind::ecarl_match;
  double target_arl = 370.4;
  double epsilon = 0.5;  ///< used by epc_cap and sdcarl_cap
};

struct AdjustmentResult {
  double alpha_adj = 0.0;
  double achieved = 0.0;  ///< criterion value re-evaluated at alpha_adj
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

/// Raised when the criterion has no solution inside the search bracket;
/// carries the criterion values at both endpoints for diagnosis.
class InfeasibleCriterion : public NumericalError {
 public:
  InfeasibleCriterion(const std::string& what, double at_lo, double at_hi)
      : NumericalError(what), at_lo_(at_lo), at_hi_(at_hi) {}
  double value_at_lo() const { return at_lo_; }
  double value_at_hi() const { return at_hi_; }

 private:
  double at_lo_;
  double at_hi_;
};

/// Solves for the false-alarm rate alpha that restores the requested
/// in-control behavior at Phase I size m. The knob is alpha itself (the
/// equal-tail structure of the limits is preserved); the solver is
/// bisection over [a0/50, min(0.5, 50 a0)] with a0 = 1/target_arl,
/// to relative tolerance 1e-6 on alpha.
AdjustmentResult adjust(std::size_t m, const AdjustmentCriterion& crit);

struct CriterionCurveRow {
  std::size_t m = 0;
  double alpha_adj = 0.0;
  double achieved = 0.0;
  bool feasible = false;
  std::string note;  ///< diagnostics for infeasible rows
};

/// adjust() across a list of m values; infeasible rows are flagged and
/// retained rather than aborting the sweep.
std::vector<CriterionCurveRow> criterion_curve(const std::vector<std::size_t>& m_list,
                                               const AdjustmentCriterion& crit);

}  // namespace tbechart
