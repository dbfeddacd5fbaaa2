#pragma once

#include <complex>

#include "cubehc/cube_function.hpp"

namespace cubehc {

/// Points within this distance of the boundary count as admissible.
inline constexpr double kBoundaryTolerance = 1e-12;

/**
 * Exponent pair (p, q) with the derived lens geometry.
 *
 * The lens fields are only meaningful when p == q: the admissible set is then
 * the intersection of the two disks |z -/+ i center_offset| <= radius, both of
 * whose circles pass through z = -1 and z = +1.
 */
struct LensParams {
  double p = 2.0;
  double q = 2.0;

  double center_offset = 0.0;  // |p-2| / (2 sqrt(p-1))
  double radius = 1.0;         // p / (2 sqrt(p-1))
  double alpha = 1.0;          // exterior-angle exponent
  double s = 1.0;              // p / 2
  double axis_radius = 1.0;    // r(pi/2) = min{sqrt(p-1), 1/sqrt(p-1)}
  double real_half_width = 1.0;  // sqrt((p-1)/(q-1)): the real interval [-w, w]

  bool symmetric() const { return p == q; }

  /// Validates 1 < p <= q and fills the derived fields.
  static LensParams make(double p, double q);
  static LensParams make(double p) { return make(p, p); }
};

struct AdmissibilityMargin {
  double lhs = 0.0;  // |p - 2 - z^2 (q - 2)|
  double rhs = 0.0;  // p - |z|^2 q
  double margin() const { return rhs - lhs; }
};

/// Both sides of |p-2-z^2(q-2)| <= p - |z|^2 q. Requires 1 <= p <= q.
AdmissibilityMargin admissibility_margin(double p, double q, Complex z);

/// Whether z lies in the closed admissible domain for (p, q).
/// q == 1 is handled as the segment [-1, 1].
bool is_admissible(double p, double q, Complex z);

/// r(t): polar radius of the boundary in direction e^{it}, as the infimum over
/// beta of sqrt((1+(p-2)cos^2 beta) / (1+(q-2)cos^2(t+beta))).
/// Coarse 512-point scan of [0, pi) followed by golden-section refinement.
double boundary_radius_inf(double p, double q, double t);

/// r(t) for p == q from the lens circle by the law of cosines.
/// Valid for every p > 1; t is folded into [0, pi/2] by evenness and pi-periodicity.
double boundary_radius_closed(double p, double t);

/// c(t) = 1 / r(t) for p == q.
inline double boundary_scale(double p, double t) { return 1.0 / boundary_radius_closed(p, t); }

/// alpha_p = 1 + (2/pi) arctan(|p-2| / (2 sqrt(p-1))).
double alpha(double p);

/// p' = p / (p - 1).
double dual_exponent(double p);

/// Folds an angle into [0, pi/2] using r(-t) = r(t) = r(pi - t).
double fold_angle(double t);

}  // namespace cubehc
