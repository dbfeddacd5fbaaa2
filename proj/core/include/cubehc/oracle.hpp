#pragma once

#include <cstdint>

#include "cubehc/cube_function.hpp"

namespace cubehc {

/// ||T_z f||_q / ||f||_p. Throws InvalidInput for the zero function.
double norm_ratio(const CubeFunction& f, double p, double q, Complex z);

struct SearchConfig {
  int n = 1;               // cube dimension, at most 10
  int restarts = 1000;
  int steps = 200;         // proposals per restart
  double initial_step = 0.5;
  double step_floor = 1e-7;
  int plateau = 12;        // rejections in a row before the step is halved
  std::uint64_t seed = 1;
  int threads = 1;
};

struct SearchResult {
  double best_ratio = 0.0;
  CubeFunction witness;
  int restart = -1;        // restart that produced the witness
  long long evaluations = 0;
};

/// Random-restart hill climbing on ||T_z f||_q / ||f||_p.
///
/// For n = 1 the search runs over f = 1 + w x_1 (w in C), which covers every
/// function up to scaling except multiples of x_1, whose ratio is |z|; that
/// case is folded in as a candidate. For n >= 2 all 2^n complex coefficients
/// move, with f rescaled to ||f||_p = 1 after each accepted step.
///
/// Restart r draws from its own stream seeded by (seed, r), so the result is
/// identical for every thread count.
SearchResult search_violation(double p, double q, Complex z, const SearchConfig& cfg);

/// |ratio(F) - ratio(f)^k| for F = tensor_power(f, k).
double tensorization_check(const CubeFunction& f, int k, double p, double q, Complex z);

/// The chain used to pass from one coordinate to n coordinates. Writing
/// f = A(x') + x_1 B(x') and A_z = T_z A, B_z = T_z B:
///   noise     = ||T_z f||_q^p
///   sliced    = (E_{x'} (E_{x_1} |A_z + x_1 B_z|^p)^{q/p})^{p/q}
///   swapped   = E_{x_1} (E_{x'} |A_z + x_1 B_z|^q)^{p/q}
///   base      = E |f|^p
/// with noise <= sliced (two-point inequality per slice), sliced <= swapped
/// (Minkowski, uses q/p >= 1) and swapped <= base (the statement in n-1 coordinates).
struct InductionChain {
  double noise = 0.0;
  double sliced = 0.0;
  double swapped = 0.0;
  double base = 0.0;

  double two_point_gap() const { return sliced - noise; }
  double minkowski_gap() const { return swapped - sliced; }
  double induction_gap() const { return base - swapped; }
};

InductionChain induction_chain(const CubeFunction& f, double p, double q, Complex z);

/// min(two_point_gap, minkowski_gap) of induction_chain.
double induction_step_check(const CubeFunction& f, double p, double q, Complex z);

}  // namespace cubehc
