#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubehc/cube_function.hpp"
#include "cubehc/scan.hpp"

namespace cubehc {

/// Knobs shared by the named verification scans. Unused fields are ignored
/// by scans that do not need them.
struct VerifyOptions {
  double p = 2.5;
  double q = 2.5;
  Complex z{1.0, 0.0};
  int grid = 32;        // points per continuous axis
  int lmax = 12;        // largest index for cap / coefficient scans
  int terms = 64;       // series truncation
  double w_radius = 0.2;  // two-point scans sample |w| <= w_radius
  std::optional<double> tolerance;  // replaces each scan's own pass threshold
  bool refine = true;
};

// Margin problems over the reduced domain 0 <= a <= a + t <= pi/2,
// 0 <= c(t) y <= 1, parameterized by unit fractions of each range.
MarginProblem reduced_problem(double p, int grid);
MarginProblem series_problem(double s, int grid, int terms);
MarginProblem final_chain_problem(double s, int grid);
MarginProblem self_improvement_problem(double p, int grid);

MarginProblem two_point_problem(double p, double q, Complex z, int grid, double w_radius);
MarginProblem necessity_problem(double p, double q, Complex z);
MarginProblem cap_problem(int lmax, int grid);
MarginProblem coefficient_ratio_problem(int lmax, int s_count);
MarginProblem mock_logsob_monotonicity_problem(double p);

/// Identifiers accepted by verify(): reduced, two-point, necessity, mock-logsob,
/// series, cap, coeff-ratio, final-chain, self-improvement, endgame.
std::vector<std::string> verification_ids();

/// Runs the named check. For mock-logsob with 2 < p < 3 the result records the
/// counterexample and is marked as an expected violation; for two-point and
/// necessity with an inadmissible z it is likewise expected to fail.
VerificationReport verify(const std::string& id, const VerifyOptions& opts, int threads = 1);

}  // namespace cubehc
