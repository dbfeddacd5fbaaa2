#pragma once

#include <Eigen/Dense>

namespace cubehc {

/// Solution of  min 1^T x  s.t.  A x = b, x >= 0.
struct SimplexResult {
  Eigen::VectorXd x;       // primal solution, one entry per column of A
  Eigen::VectorXd prices;  // dual solution y: A^T y <= 1, b^T y = objective
  double objective = 0.0;
  int iterations = 0;
};

/// Two-phase revised simplex with a dense basis inverse and Dantzig pricing
/// (Bland's rule after a run of degenerate pivots). Sized for a few dozen rows
/// and some thousands of columns.
///
/// Throws FeasibilityError when b is outside the cone of the columns and
/// NumericError if the iteration cap is hit.
SimplexResult solve_unit_cost_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iterations = 20000);

}  // namespace cubehc
