#include "cubehc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "cubehc/errors.hpp"
#include "cubehc/rng.hpp"

namespace cubehc {
namespace {

constexpr int kMaxSearchDimension = 10;

void check_exponents(double p, double q) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw InvalidInput("exponents must satisfy p, q >= 1");
}

// ratio for f = 1 + w x_1
double two_point_ratio(double p, double q, Complex z, Complex w) {
  const Complex zw = z * w;
  const double num = std::pow((std::pow(std::abs(1.0 + zw), q) + std::pow(std::abs(1.0 - zw), q)) / 2.0, 1.0 / q);
  const double den = std::pow((std::pow(std::abs(1.0 + w), p) + std::pow(std::abs(1.0 - w), p)) / 2.0, 1.0 / p);
  return num / den;
}

struct Climb {
  double ratio = -1.0;
  std::vector<Complex> coeffs;
  long long evaluations = 0;
};

Climb climb_line(double p, double q, Complex z, const SearchConfig& cfg, Rng& rng) {
  Complex w = std::polar(std::pow(10.0, rng.uniform(-2.0, 1.0)), rng.uniform(0.0, 2.0 * std::numbers::pi));
  double best = two_point_ratio(p, q, z, w);
  long long evals = 1;
  double step = cfg.initial_step;
  int rejected = 0;
  for (int s = 0; s < cfg.steps && step >= cfg.step_floor; ++s) {
    const double scale = step * (1.0 + std::abs(w));
    const double gr = rng.normal();
    const double gi = rng.normal();
    const Complex cand = w + scale * Complex(gr, gi);
    const double r = two_point_ratio(p, q, z, cand);
    ++evals;
    if (r > best) {
      best = r;
      w = cand;
      rejected = 0;
    } else if (++rejected >= cfg.plateau) {
      step /= 2.0;
      rejected = 0;
    }
  }
  return {best, {Complex(1.0, 0.0), w}, evals};
}

Climb climb_cube(double p, double q, Complex z, const SearchConfig& cfg, Rng& rng) {
  const std::size_t size = std::size_t{1} << cfg.n;
  std::vector<Complex> c(size);
  for (auto& v : c) v = Complex(rng.normal(), rng.normal());
  auto evaluate = [&](std::vector<Complex>& coeffs) {
    auto f = CubeFunction::from_coefficients(coeffs);
    const double den = lp_norm(f, p);
    if (!(den > 0.0)) return -1.0;
    for (auto& v : coeffs) v /= den;
    return lp_norm(apply_noise(CubeFunction::from_coefficients(coeffs), z), q);
  };
  double best = evaluate(c);
  long long evals = 1;
  double step = cfg.initial_step;
  int rejected = 0;
  std::vector<Complex> cand(size);
  for (int s = 0; s < cfg.steps && step >= cfg.step_floor; ++s) {
    const double scale = step / std::sqrt(static_cast<double>(size));
    for (std::size_t i = 0; i < size; ++i) {
      const double gr = rng.normal();
      const double gi = rng.normal();
      cand[i] = c[i] + scale * Complex(gr, gi);
    }
    const double r = evaluate(cand);
    ++evals;
    if (r > best) {
      best = r;
      c.swap(cand);
      rejected = 0;
    } else if (++rejected >= cfg.plateau) {
      step /= 2.0;
      rejected = 0;
    }
  }
  return {best, std::move(c), evals};
}

}  // namespace

double norm_ratio(const CubeFunction& f, double p, double q, Complex z) {
  check_exponents(p, q);
  const double den = lp_norm(f, p);
  if (f.is_zero() || !(den > 0.0)) throw InvalidInput("norm ratio is undefined for the zero function");
  return lp_norm(apply_noise(f, z), q) / den;
}

SearchResult search_violation(double p, double q, Complex z, const SearchConfig& cfg) {
  check_exponents(p, q);
  if (cfg.n < 1 || cfg.n > kMaxSearchDimension) throw InvalidInput("search dimension must be in [1, 10]");
  if (cfg.restarts < 1 || cfg.steps < 0) throw InvalidInput("search needs at least one restart");
  if (!(cfg.initial_step > 0.0)) throw InvalidInput("initial step must be positive");

  const int restarts = cfg.restarts;
  std::vector<Climb> results(static_cast<std::size_t>(restarts));
  auto run = [&](int begin, int end) {
    for (int r = begin; r < end; ++r) {
      Rng rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(r)));
      Climb c = cfg.n == 1 ? climb_line(p, q, z, cfg, rng) : climb_cube(p, q, z, cfg, rng);
      results[static_cast<std::size_t>(r)] = std::move(c);
    }
  };
  const int workers = std::clamp(cfg.threads, 1, restarts);
  if (workers == 1) {
    run(0, restarts);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(run, static_cast<int>(static_cast<long long>(restarts) * w / workers),
                        static_cast<int>(static_cast<long long>(restarts) * (w + 1) / workers));
    }
  }

  SearchResult out;
  if (cfg.n == 1) {
    // multiples of x_1 sit outside the 1 + w x_1 chart
    out.best_ratio = std::abs(z);
    out.witness = CubeFunction::character(1, 1u);
    out.evaluations = 1;
  }
  for (int r = 0; r < restarts; ++r) {
    auto& c = results[static_cast<std::size_t>(r)];
    out.evaluations += c.evaluations;
    if (c.ratio > out.best_ratio) {
      out.best_ratio = c.ratio;
      out.witness = CubeFunction::from_coefficients(std::move(c.coeffs));
      out.restart = r;
    }
  }
  return out;
}

double tensorization_check(const CubeFunction& f, int k, double p, double q, Complex z) {
  if (k < 1) throw InvalidInput("tensor power must be at least 1");
  const double single = norm_ratio(f, p, q, z);
  const double full = norm_ratio(tensor_power(f, k), p, q, z);
  return std::abs(full - std::pow(single, k));
}

InductionChain induction_chain(const CubeFunction& f, double p, double q, Complex z) {
  check_exponents(p, q);
  const int n = f.dimension();
  if (n < 1) throw InvalidInput("induction chain needs at least one coordinate");
  const std::size_t half = f.size() / 2;
  const auto coeffs = f.coefficients();
  std::vector<Complex> a(half), b(half);
  for (std::size_t s = 0; s < half; ++s) {
    a[s] = coeffs[2 * s];
    b[s] = coeffs[2 * s + 1];
  }
  const auto az = synthesize(apply_noise(CubeFunction::from_coefficients(std::move(a)), z));
  const auto bz = synthesize(apply_noise(CubeFunction::from_coefficients(std::move(b)), z));

  // Everything is computed on max-scaled values so large inputs do not overflow.
  double scale = 0.0;
  for (std::size_t v = 0; v < half; ++v) scale = std::max(scale, std::abs(az[v]) + std::abs(bz[v]));
  const auto values = synthesize(f);
  for (const auto& v : values) scale = std::max(scale, std::abs(v));
  if (!(scale > 0.0)) return {};

  double noise = 0.0, sliced = 0.0, plus_q = 0.0, minus_q = 0.0;
  for (std::size_t v = 0; v < half; ++v) {
    const Complex u = az[v] / scale;
    const Complex w = bz[v] / scale;
    noise += (std::pow(std::abs(u + z * w), q) + std::pow(std::abs(u - z * w), q)) / 2.0;
    const double slice_p = (std::pow(std::abs(u + w), p) + std::pow(std::abs(u - w), p)) / 2.0;
    sliced += std::pow(slice_p, q / p);
    plus_q += std::pow(std::abs(u + w), q);
    minus_q += std::pow(std::abs(u - w), q);
  }
  const double m = static_cast<double>(half);
  double base = 0.0;
  for (const auto& v : values) base += std::pow(std::abs(v) / scale, p);
  base /= static_cast<double>(values.size());

  const double unit = std::pow(scale, p);
  InductionChain chain;
  chain.noise = std::pow(noise / m, p / q) * unit;
  chain.sliced = std::pow(sliced / m, p / q) * unit;
  chain.swapped = (std::pow(plus_q / m, p / q) + std::pow(minus_q / m, p / q)) / 2.0 * unit;
  chain.base = base * unit;
  return chain;
}

double induction_step_check(const CubeFunction& f, double p, double q, Complex z) {
  const auto chain = induction_chain(f, p, q, z);
  return std::min(chain.two_point_gap(), chain.minkowski_gap());
}

}  // namespace cubehc
