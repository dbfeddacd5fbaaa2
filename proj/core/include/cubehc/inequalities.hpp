#pragma once

#include <complex>

#include "cubehc/cube_function.hpp"

// Margin functions for the two-point inequality and the chain of estimates
// that reduces it to a scalar fact. Every margin is oriented so that a value
// >= 0 means the inequality holds at the given point.

namespace cubehc {

/// ((|1+w|^p + |1-w|^p)/2)^{q/p} - (|1+wz|^q + |1-wz|^q)/2.
double two_point_margin(double p, double q, Complex z, Complex w);

/// (|v|^2 + (p-2)(Re v)^2) - (|vz|^2 + (q-2)(Re vz)^2) for a unit vector v.
double necessity_margin(double p, double q, Complex z, Complex v);

struct NecessityMinimum {
  double margin = 0.0;
  double beta = 0.0;  // v = e^{i beta}
};

/// Minimum of necessity_margin over the unit circle: a 720-point grid refined
/// by golden section around the best grid point.
NecessityMinimum necessity_minimum(double p, double q, Complex z);

/// Parameters of the reduced two-point inequality.
struct ReducedPoint {
  double s = 1.25;  // p / 2
  double c = 1.0;   // c(t) = 1 / r(t) >= 1
  double a = 0.0;
  double t = 0.0;
  double y = 0.0;
};

/// (c^2y^2+1+2cy cos(a+t))^s + (c^2y^2+1-2cy cos(a+t))^s
///   - (y^2+1+2y cos a)^s - (y^2+1-2y cos a)^s.
double reduced_margin(const ReducedPoint& pt);

/// Reduced point on the lens boundary: c = c(t) from the closed form at p = 2s.
ReducedPoint reduced_point_on_boundary(double p, double a, double t, double y);

/// The two-term map (1 + x^2 b +/- 2 x cos(theta) sqrt(b))^{p/2} summed,
/// with b = 1 / (1 + (p-2) cos^2 theta). Requires p > 2.
double mock_logsob_value(double p, double x, double theta);
long double mock_logsob_value_ext(long double p, long double x, long double theta);

/// Forward-difference slope of the mock log-Sobolev map in theta, computed in
/// extended precision.
double mock_logsob_slope(double p, double x, double theta, double step);

struct MonotonicityScan {
  double min_slope = 0.0;
  double x = 0.0;
  double theta = 0.0;
  long evaluated = 0;
};

/// Minimum forward-difference slope over x in {0.1, 0.2, ..., x_max} and a
/// uniform grid of `intervals` cells on [0, pi/2].
MonotonicityScan mock_logsob_scan(double p, double x_max = 5.0, int intervals = 512);

struct LogSobCounterexample {
  double x = 0.0;
  double theta = 0.0;
  double slope = 0.0;
};

/// For 2 < p < 3, a point where the mock log-Sobolev map strictly decreases.
/// Searches x in (0, sqrt(p-1)) and theta near 0, where b = 1/(p-1).
/// Throws InvalidInput outside (2, 3) and SearchFailure if nothing is found.
LogSobCounterexample mock_logsob_counterexample(double p);

/// Generalized binomial coefficient binom(s, k) by the falling-factorial product.
double binomial(double s, int k);

/// a_l = 2 |binom(1/2, l)|.
double half_binomial_weight(int l);

/// b_l = sqrt(2l) ((2l-1)/(2l))^{(2l-1)/2} |binom(s, 2l)|.
double cap_weight(int l, double s);

/// (l - 1/2)/(l + 1) - b_{l+1}/b_l.
double coefficient_ratio_check(int l, double s);

/// sup_x cos^{2l-1}(x) sin(x) = ((2l-1)/(2l))^{(2l-1)/2} / sqrt(2l).
double cap_sup(int l);

/// cap_sup(l) sin(t) - (cos^{2l} a - cos^{2l}(a+t)) / (2l).
double cap_integral_margin(int l, double a, double t);

struct SeriesBound {
  double margin = 0.0;       // RHS - truncated series
  double uncertainty = 0.0;  // upper bound on the discarded tail
};

/// RHS - sum_{l=2}^{L} (2y/(1+y^2))^{2l} (cos^{2l} a - cos^{2l}(a+t)) binom(s,2l),
/// with RHS = (sqrt3/4) s(s-1)(s-2)(s-3)/2 (2y/(1+y^2))^2 y^2 sin t.
SeriesBound series_bound_margin(double s, double a, double t, double y, int terms = 64);

/// Linear-in-u inequality left after the Bernoulli sharpening, evaluated at
/// u = y^2 in {0, 1/C}; returns the smaller endpoint value.
double final_chain_margin(double s, double C, double a, double t);

/// The angle t in [0, pi/2] at which the lens boundary has c(t)^2 = C, for
/// C in [1, 2s-1]: (s-1) sin t = (C-1) sqrt(2s-1) / (2 sqrt C).
double angle_for_scale(double s, double C);

/// (s - 3/2)^2 + (4/sqrt3 - 9/4).
double endgame_scalar(double s);

/// 4/sqrt3 >= 9/4 reduces to 3 <= 256/81; compared over the integers.
bool endgame_rational_certificate();

/// LHS - RHS of the self-improvement step, valid when c y > 1:
/// (c^2 + 1/(c^2y^2) +/- (2/y) cos a)^s summed minus (1 + 1/y^2 +/- (2/y) cos a)^s summed.
double self_improvement_margin(double s, double c, double a, double y);

}  // namespace cubehc
