#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cubehc {

using Complex = std::complex<double>;

/// Largest supported cube dimension (2^24 complex doubles = 256 MiB).
inline constexpr int kMaxDimension = 24;

/// Subset of {1..n} encoded as a bitmask; bit j-1 stands for coordinate j.
using Subset = std::uint32_t;

inline int subset_size(Subset s) { return __builtin_popcount(s); }

/// Coordinate x_j (1-based) of the vertex with index `vertex`.
/// Bit j-1 set means x_j = +1, clear means x_j = -1.
inline int vertex_coordinate(std::size_t vertex, int j) {
  return ((vertex >> (j - 1)) & 1u) ? 1 : -1;
}

/// Walsh character w_S evaluated at a vertex.
inline int walsh(Subset s, std::size_t vertex) {
  // w_S(x) = (-1)^{#coordinates of S at -1}
  return (subset_size(s & ~static_cast<Subset>(vertex)) & 1) ? -1 : 1;
}

/**
 * A complex-valued function on {-1,1}^n held by its Fourier-Walsh
 * coefficients a_S, stored at index S (subset bitmask).
 *
 * Immutable once built; every operation below returns a new function.
 */
class CubeFunction {
 public:
  /// The zero function on the 0-dimensional cube.
  CubeFunction();

  /// The zero function on {-1,1}^n.
  explicit CubeFunction(int n);

  /// Takes ownership of a coefficient array; its length must be 2^n.
  static CubeFunction from_coefficients(std::vector<Complex> coeffs);

  static CubeFunction constant(int n, Complex value);

  /// The single character w_S (coefficient 1 at S).
  static CubeFunction character(int n, Subset s);

  int dimension() const { return n_; }
  std::size_t size() const { return coeffs_.size(); }

  std::span<const Complex> coefficients() const { return coeffs_; }
  Complex coefficient(Subset s) const { return coeffs_.at(s); }

  /// Largest |S| with a_S != 0; -1 for the zero function.
  int degree() const;

  bool is_zero() const;

 private:
  CubeFunction(int n, std::vector<Complex> coeffs);

  int n_;
  std::vector<Complex> coeffs_;
};

/// Fourier-Walsh coefficients a_S = E[f w_S] of a table of 2^n values,
/// via an in-place Walsh-Hadamard butterfly.
CubeFunction analyze(std::span<const Complex> values);

/// Values f(x) at every vertex (inverse of analyze).
std::vector<Complex> synthesize(const CubeFunction& f);

/// (E|f|^p)^{1/p} with respect to the uniform measure. Requires p >= 1.
double lp_norm(const CubeFunction& f, double p);

/// Same as lp_norm, but for a table of vertex values.
double lp_norm_values(std::span<const Complex> values, double p);

/// T_z: a_S -> z^{|S|} a_S.
CubeFunction apply_noise(const CubeFunction& f, Complex z);

/// Multiplies a_S by level_factors[|S|]. Every populated level must have a factor.
CubeFunction apply_level_multiplier(const CubeFunction& f, std::span<const Complex> level_factors);

/// Delta: a_S -> |S| a_S.
CubeFunction laplacian(const CubeFunction& f);

/// D_j f(x) = (f(x) - f(x with x_j flipped)) / 2, for 1 <= j <= n.
CubeFunction partial(const CubeFunction& f, int j);

struct GradientSquare {
  std::vector<double> values;  // sum_j |D_j f(x)|^2 at every vertex
  bool complex_input = false;  // f had imaginary parts above 1e-12
};

/// |grad f|^2 at every vertex.
GradientSquare gradient_sq(const CubeFunction& f);

/// e^{-t Delta} = T_{e^{-t}}, t >= 0.
CubeFunction heat(const CubeFunction& f, double t);

/// F(x^1, ..., x^k) = f(x^1) ... f(x^k) on {-1,1}^{kn}.
CubeFunction tensor_power(const CubeFunction& f, int k);

}  // namespace cubehc
