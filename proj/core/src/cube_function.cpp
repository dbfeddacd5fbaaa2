#include "cubehc/cube_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cubehc/errors.hpp"

namespace cubehc {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

void require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidInput(std::string(what) + " must be finite");
  }
}

void require_dimension(int n) {
  if (n < 0) throw InvalidInput("cube dimension must be nonnegative");
  if (n > kMaxDimension) {
    throw ResourceError("cube dimension " + std::to_string(n) + " exceeds cap " +
                        std::to_string(kMaxDimension));
  }
}

}  // namespace

CubeFunction::CubeFunction() : CubeFunction(0) {}

CubeFunction::CubeFunction(int n) : n_(n) {
  require_dimension(n);
  coeffs_.assign(std::size_t{1} << n, Complex{});
}

CubeFunction::CubeFunction(int n, std::vector<Complex> coeffs) : n_(n), coeffs_(std::move(coeffs)) {}

CubeFunction CubeFunction::from_coefficients(std::vector<Complex> coeffs) {
  if (!is_power_of_two(coeffs.size())) {
    throw InvalidInput("coefficient array length " + std::to_string(coeffs.size()) +
                       " is not a power of two");
  }
  const int n = log2_exact(coeffs.size());
  require_dimension(n);
  for (const auto& c : coeffs) require_finite(c, "coefficient");
  return CubeFunction(n, std::move(coeffs));
}

CubeFunction CubeFunction::constant(int n, Complex value) {
  require_finite(value, "constant");
  CubeFunction f(n);
  f.coeffs_[0] = value;
  return f;
}

CubeFunction CubeFunction::character(int n, Subset s) {
  CubeFunction f(n);
  if (s >= f.coeffs_.size()) throw InvalidInput("subset outside {1..n}");
  f.coeffs_[s] = 1.0;
  return f;
}

int CubeFunction::degree() const {
  int d = -1;
  for (std::size_t s = 0; s < coeffs_.size(); ++s) {
    if (coeffs_[s] != Complex{}) d = std::max(d, subset_size(static_cast<Subset>(s)));
  }
  return d;
}

bool CubeFunction::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex{}; });
}

CubeFunction analyze(std::span<const Complex> values) {
  if (!is_power_of_two(values.size())) {
    throw InvalidInput("value table length " + std::to_string(values.size()) +
                       " is not a power of two");
  }
  std::vector<Complex> a(values.begin(), values.end());
  for (const auto& v : a) require_finite(v, "function value");
  const std::size_t size = a.size();
  for (std::size_t bit = 1; bit < size; bit <<= 1) {
    for (std::size_t i = 0; i < size; ++i) {
      if (i & bit) continue;
      const Complex lo = a[i];        // x_j = -1
      const Complex hi = a[i | bit];  // x_j = +1
      a[i] = 0.5 * (hi + lo);
      a[i | bit] = 0.5 * (hi - lo);
    }
  }
  return CubeFunction::from_coefficients(std::move(a));
}

std::vector<Complex> synthesize(const CubeFunction& f) {
  std::vector<Complex> v(f.coefficients().begin(), f.coefficients().end());
  const std::size_t size = v.size();
  for (std::size_t bit = 1; bit < size; bit <<= 1) {
    for (std::size_t i = 0; i < size; ++i) {
      if (i & bit) continue;
      const Complex without = v[i];
      const Complex with = v[i | bit];
      v[i] = without - with;
      v[i | bit] = without + with;
    }
  }
  return v;
}

double lp_norm_values(std::span<const Complex> values, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidInput("L^p norm requires finite p >= 1");
  if (values.empty()) return 0.0;
  double peak = 0.0;
  for (const auto& v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& v : values) sum += std::pow(std::abs(v) / peak, p);
  return peak * std::pow(sum / static_cast<double>(values.size()), 1.0 / p);
}

double lp_norm(const CubeFunction& f, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidInput("L^p norm requires finite p >= 1");
  return lp_norm_values(synthesize(f), p);
}

CubeFunction apply_noise(const CubeFunction& f, Complex z) {
  require_finite(z, "noise parameter");
  std::vector<Complex> powers(static_cast<std::size_t>(f.dimension()) + 1);
  powers[0] = 1.0;
  for (std::size_t k = 1; k < powers.size(); ++k) powers[k] = powers[k - 1] * z;
  return apply_level_multiplier(f, powers);
}

CubeFunction apply_level_multiplier(const CubeFunction& f, std::span<const Complex> level_factors) {
  std::vector<Complex> c(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t s = 0; s < c.size(); ++s) {
    if (c[s] == Complex{}) continue;
    const auto level = static_cast<std::size_t>(subset_size(static_cast<Subset>(s)));
    if (level >= level_factors.size()) {
      throw InvalidInput("multiplier has no factor for level " + std::to_string(level));
    }
    c[s] *= level_factors[level];
  }
  return CubeFunction::from_coefficients(std::move(c));
}

CubeFunction laplacian(const CubeFunction& f) {
  std::vector<Complex> c(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t s = 0; s < c.size(); ++s) c[s] *= static_cast<double>(subset_size(static_cast<Subset>(s)));
  return CubeFunction::from_coefficients(std::move(c));
}

CubeFunction partial(const CubeFunction& f, int j) {
  if (j < 1 || j > f.dimension()) {
    throw InvalidInput("coordinate index " + std::to_string(j) + " outside 1.." +
                       std::to_string(f.dimension()));
  }
  const Subset bit = Subset{1} << (j - 1);
  std::vector<Complex> c(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t s = 0; s < c.size(); ++s) {
    if (!(s & bit)) c[s] = 0.0;
  }
  return CubeFunction::from_coefficients(std::move(c));
}

GradientSquare gradient_sq(const CubeFunction& f) {
  const auto v = synthesize(f);
  GradientSquare out;
  out.values.assign(v.size(), 0.0);
  out.complex_input = std::any_of(v.begin(), v.end(), [](Complex x) { return std::abs(x.imag()) > 1e-12; });
  for (int j = 1; j <= f.dimension(); ++j) {
    const std::size_t bit = std::size_t{1} << (j - 1);
    for (std::size_t b = 0; b < v.size(); ++b) {
      out.values[b] += std::norm(0.5 * (v[b] - v[b ^ bit]));
    }
  }
  return out;
}

CubeFunction heat(const CubeFunction& f, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("heat time must be finite and >= 0");
  return apply_noise(f, Complex{std::exp(-t), 0.0});
}

CubeFunction tensor_power(const CubeFunction& f, int k) {
  if (k < 1) throw InvalidInput("tensor power requires k >= 1");
  if (static_cast<long>(k) * f.dimension() > kMaxDimension) {
    throw ResourceError("tensor power dimension " + std::to_string(k * f.dimension()) +
                        " exceeds cap " + std::to_string(kMaxDimension));
  }
  const auto base = f.coefficients();
  std::vector<Complex> acc(base.begin(), base.end());
  for (int copy = 1; copy < k; ++copy) {
    const int shift = copy * f.dimension();
    std::vector<Complex> next(acc.size() * base.size());
    for (std::size_t hi = 0; hi < base.size(); ++hi) {
      if (base[hi] == Complex{}) continue;
      for (std::size_t lo = 0; lo < acc.size(); ++lo) next[lo | (hi << shift)] = acc[lo] * base[hi];
    }
    acc = std::move(next);
  }
  return CubeFunction::from_coefficients(std::move(acc));
}

}  // namespace cubehc
