#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cubehc/cube_function.hpp"

namespace cubehc {

/// Least-TV representation of the multiplier phi(0..d) as moments
///   int z^j dmu(z) = phi(j),  j = 0..d
/// of a complex measure on the admissible domain for (p, q).
struct MomentProblem {
  double p = 2.0;
  double q = 2.0;
  int d = 0;
  std::vector<Complex> phi;  // d + 1 values
  int M = 0;                 // boundary samples; 0 picks max(64, 16(d+1))
  double gap_tolerance = 1e-6;
  double feasibility_tolerance = 1e-8;  // max moment residual of returned measures
  bool real_only = false;    // atoms and constraints restricted to the real interval
  int max_exchange = 24;     // atom-insertion rounds

  int boundary_points() const { return M > 0 ? M : std::max(64, 16 * (d + 1)); }

  /// Throws InvalidInput unless 1 < p <= q, phi is finite with d + 1 entries
  /// and M >= 8(d + 1).
  void validate() const;
};

struct Atom {
  Complex z;
  Complex weight;
};

struct AtomicMeasure {
  std::vector<Atom> atoms;

  double tv_norm() const;
  /// Moments int z^j dmu for j = 0..d.
  std::vector<Complex> moments(int d) const;
  /// max_j |int z^j dmu - phi(j)|.
  double moment_residual(std::span<const Complex> phi) const;
};

struct DualBound {
  double value = 0.0;         // |sum phi_j a_j| / sup_Omega |P_a|
  std::vector<Complex> a;     // P_a(z) = sum a_j z^j, scaled to sup 1
};

struct NormSandwich {
  double lower = 0.0;
  double upper = 0.0;
  double gap = 0.0;
  AtomicMeasure measure;      // feasible measure with tv_norm() == upper
  DualBound dual;
  int rounds = 0;             // exchange rounds performed
};

/// Lower bound on the least multiplier constant from the best polynomial
/// certificate found by the solver. Always at least |phi(0)|.
DualBound dual_lower_bound(const MomentProblem& prob);

/// Feasible measure of (near) least total variation. Throws FeasibilityError
/// if the moments cannot be matched on the candidate atoms.
AtomicMeasure primal_measure(const MomentProblem& prob);

/// Both bounds from one run. Throws NumericError if lower > upper + gap_tolerance.
NormSandwich solve(const MomentProblem& prob);

/// a_S -> phi(|S|) a_S. Throws InvalidInput if f has spectrum above d.
CubeFunction apply_multiplier(const CubeFunction& f, std::span<const Complex> phi, int d);

struct CubeCertificate {
  double worst_ratio = 0.0;  // max ||apply_multiplier(f)||_q / ||f||_p over the trials
  double tv_bound = 0.0;     // tv_norm of the measure under test
  int trials = 0;

  bool holds(double slack = 1e-6) const { return worst_ratio <= tv_bound + slack; }
};

/// Tests the bound ||phi(Delta) f||_q <= tv(mu) ||f||_p on `trials` random
/// complex functions of degree <= d on {-1,1}^n (n <= 8). Trial i is drawn
/// from stream (seed, i).
CubeCertificate certify_on_cube(const AtomicMeasure& measure, std::span<const Complex> phi, int d, double p,
                                double q, int trials, int n, std::uint64_t seed);

}  // namespace cubehc
