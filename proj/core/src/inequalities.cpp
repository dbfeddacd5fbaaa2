#include "cubehc/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "cubehc/errors.hpp"
#include "cubehc/lens_geometry.hpp"

namespace cubehc {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt3 = std::numbers::sqrt3;

double nonneg_pow(double base, double e) { return std::pow(std::max(base, 0.0), e); }

void require_open_s(double s) {
  if (!(s > 1.0 && s <= 1.5)) throw InvalidInput("s must lie in (1, 3/2]");
}

}  // namespace

double two_point_margin(double p, double q, Complex z, Complex w) {
  if (!(p >= 1.0 && p <= q)) throw InvalidInput("two-point margin requires 1 <= p <= q");
  const double mean_p = 0.5 * (std::pow(std::abs(1.0 + w), p) + std::pow(std::abs(1.0 - w), p));
  const Complex wz = w * z;
  const double mean_q = 0.5 * (std::pow(std::abs(1.0 + wz), q) + std::pow(std::abs(1.0 - wz), q));
  return std::pow(mean_p, q / p) - mean_q;
}

double necessity_margin(double p, double q, Complex z, Complex v) {
  if (std::abs(std::abs(v) - 1.0) > 1e-12) throw InvalidInput("necessity margin requires |v| = 1");
  const Complex vz = v * z;
  const double own = std::norm(v) + (p - 2.0) * v.real() * v.real();
  const double moved = std::norm(vz) + (q - 2.0) * vz.real() * vz.real();
  return own - moved;
}

NecessityMinimum necessity_minimum(double p, double q, Complex z) {
  auto g = [&](double beta) { return necessity_margin(p, q, z, std::polar(1.0, beta)); };
  constexpr int kGrid = 720;
  const double h = 2.0 * kPi / kGrid;
  int best = 0;
  double best_val = g(0.0);
  for (int k = 1; k < kGrid; ++k) {
    const double v = g(k * h);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = (best - 1) * h;
  double hi = (best + 1) * h;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = g(x1);
  double f2 = g(x2);
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    if (f1 < f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = g(x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = g(x2);
    }
  }
  NecessityMinimum out{best_val, best * h};
  if (f1 < out.margin) out = {f1, x1};
  if (f2 < out.margin) out = {f2, x2};
  return out;
}

double reduced_margin(const ReducedPoint& pt) {
  const double cy = pt.c * pt.y;
  const double moved_base = cy * cy + 1.0;
  const double moved_cross = 2.0 * cy * std::cos(pt.a + pt.t);
  const double fixed_base = pt.y * pt.y + 1.0;
  const double fixed_cross = 2.0 * pt.y * std::cos(pt.a);
  return nonneg_pow(moved_base + moved_cross, pt.s) + nonneg_pow(moved_base - moved_cross, pt.s) -
         nonneg_pow(fixed_base + fixed_cross, pt.s) - nonneg_pow(fixed_base - fixed_cross, pt.s);
}

ReducedPoint reduced_point_on_boundary(double p, double a, double t, double y) {
  return {p / 2.0, boundary_scale(p, t), a, t, y};
}

long double mock_logsob_value_ext(long double p, long double x, long double theta) {
  if (!(p > 2.0L)) throw InvalidInput("mock log-Sobolev map requires p > 2");
  const long double c = std::cos(theta);
  const long double b = 1.0L / (1.0L + (p - 2.0L) * c * c);
  const long double base = 1.0L + x * x * b;
  const long double cross = 2.0L * x * c * std::sqrt(b);
  const long double e = p / 2.0L;
  return std::pow(std::max(base + cross, 0.0L), e) + std::pow(std::max(base - cross, 0.0L), e);
}

double mock_logsob_value(double p, double x, double theta) {
  if (!(p > 2.0)) throw InvalidInput("mock log-Sobolev map requires p > 2");
  const double c = std::cos(theta);
  const double b = 1.0 / (1.0 + (p - 2.0) * c * c);
  const double base = 1.0 + x * x * b;
  const double cross = 2.0 * x * c * std::sqrt(b);
  return nonneg_pow(base + cross, p / 2.0) + nonneg_pow(base - cross, p / 2.0);
}

double mock_logsob_slope(double p, double x, double theta, double step) {
  const long double lp = p;
  const long double lx = x;
  const long double hi = mock_logsob_value_ext(lp, lx, static_cast<long double>(theta) + step);
  const long double lo = mock_logsob_value_ext(lp, lx, theta);
  return static_cast<double>((hi - lo) / static_cast<long double>(step));
}

MonotonicityScan mock_logsob_scan(double p, double x_max, int intervals) {
  if (intervals < 1) throw InvalidInput("monotonicity scan needs at least one interval");
  const double h = (kPi / 2.0) / intervals;
  MonotonicityScan out;
  out.min_slope = INFINITY;
  const int x_count = static_cast<int>(std::floor(x_max * 10.0 + 1e-9));
  for (int xi = 1; xi <= x_count; ++xi) {
    const long double x = xi / 10.0L;
    long double prev = mock_logsob_value_ext(p, x, 0.0L);
    for (int k = 0; k < intervals; ++k) {
      const long double next = mock_logsob_value_ext(p, x, static_cast<long double>(k + 1) * h);
      const double slope = static_cast<double>((next - prev) / static_cast<long double>(h));
      ++out.evaluated;
      if (slope < out.min_slope) {
        out.min_slope = slope;
        out.x = static_cast<double>(x);
        out.theta = k * h;
      }
      prev = next;
    }
  }
  return out;
}

LogSobCounterexample mock_logsob_counterexample(double p) {
  if (!(p > 2.0 && p < 3.0)) throw InvalidInput("counterexample search requires 2 < p < 3");
  // At theta = 0 the map's b-derivative reverses sign for x/sqrt(p-1) in (0, 1).
  constexpr int kXs = 400;
  constexpr int kThetas = 256;
  constexpr double kStep = (kPi / 2.0) / 512.0;
  const double x_hi = std::sqrt(p - 1.0);
  LogSobCounterexample best{0.0, 0.0, INFINITY};
  for (int i = 1; i < kXs; ++i) {
    const double x = x_hi * i / kXs;
    for (int k = 0; k < kThetas; ++k) {
      const double theta = k * kStep;
      const double slope = mock_logsob_slope(p, x, theta, kStep);
      if (slope < best.slope) best = {x, theta, slope};
    }
  }
  if (!(best.slope < -1e-6)) {
    throw SearchFailure("no decreasing point of the mock log-Sobolev map found at p=" + std::to_string(p));
  }
  return best;
}

double binomial(double s, int k) {
  if (k < 0) return 0.0;
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= (s - i) / (i + 1);
  return out;
}

double half_binomial_weight(int l) { return 2.0 * std::abs(binomial(0.5, l)); }

double cap_sup(int l) {
  if (l < 1) throw InvalidInput("cap bound requires l >= 1");
  const double two_l = 2.0 * l;
  return std::pow((two_l - 1.0) / two_l, (two_l - 1.0) / 2.0) / std::sqrt(two_l);
}

double cap_weight(int l, double s) { return 2.0 * l * cap_sup(l) * std::abs(binomial(s, 2 * l)); }

double coefficient_ratio_check(int l, double s) {
  if (l < 2) throw InvalidInput("coefficient ratio requires l >= 2");
  const double L = l;
  // b_{l+1}/b_l in factored form; avoids dividing two tiny binomials.
  const double root = std::sqrt((L + 1.0) / L);
  const double binom_ratio = std::abs((2.0 * L - s) * (2.0 * L + 1.0 - s)) / ((2.0 * L + 1.0) * (2.0 * L + 2.0));
  const double log_pow = (2.0 * L + 1.0) / 2.0 * std::log1p(-1.0 / (2.0 * L + 2.0)) -
                         (2.0 * L - 1.0) / 2.0 * std::log1p(-1.0 / (2.0 * L));
  const double ratio = root * binom_ratio * std::exp(log_pow);
  return (L - 0.5) / (L + 1.0) - ratio;
}

double cap_integral_margin(int l, double a, double t) {
  if (l < 2) throw InvalidInput("cap bound requires l >= 2");
  const double ca = std::cos(a);
  const double cb = std::cos(a + t);
  const double integral = (std::pow(ca, 2.0 * l) - std::pow(cb, 2.0 * l)) / (2.0 * l);
  return cap_sup(l) * std::sin(t) - integral;
}

SeriesBound series_bound_margin(double s, double a, double t, double y, int terms) {
  if (terms < 16) throw InvalidInput("series truncation must keep at least 16 terms");
  if (!(y >= 0.0)) throw InvalidInput("series bound requires y >= 0");
  const double w = 2.0 * y / (1.0 + y * y);
  const double w2 = w * w;
  const double ca2 = std::cos(a) * std::cos(a);
  const double cb2 = std::cos(a + t) * std::cos(a + t);
  const double st = std::sin(t);

  const double lead = s * (s - 1.0) * (s - 2.0) * (s - 3.0) / 2.0;
  const double rhs = kSqrt3 / 4.0 * lead * w2 * y * y * st;

  double binom = binomial(s, 4);
  double wl = w2 * w2;
  double pa = ca2 * ca2;
  double pb = cb2 * cb2;
  double aw = half_binomial_weight(2);
  double partial = 0.0;
  double majorant_partial = 0.0;
  for (int l = 2; l <= terms; ++l) {
    partial += wl * (pa - pb) * binom;
    majorant_partial += aw * wl;
    const double k = 2.0 * l;
    binom *= (s - k) * (s - k - 1.0) / ((k + 1.0) * (k + 2.0));
    aw *= (l - 0.5) / (l + 1.0);
    wl *= w2;
    pa *= ca2;
    pb *= cb2;
  }

  // Each discarded term is at most sin(t) b_l w^{2l} <= sin(t) (b_2/a_2) a_l w^{2l},
  // and sum_{l>=2} a_l w^{2l} = (1 - sqrt(1 - w^2))^2 in closed form.
  const double closed = w2 / (1.0 + std::sqrt(std::max(0.0, 1.0 - w2)));
  const double majorant_tail = std::max(0.0, closed * closed - majorant_partial);
  const double b2_over_a2 = kSqrt3 / 4.0 * lead;

  return {rhs - partial, st * b2_over_a2 * majorant_tail};
}

double final_chain_margin(double s, double C, double a, double t) {
  const double ca2 = std::cos(a) * std::cos(a);
  const double cb2 = std::cos(a + t) * std::cos(a + t);
  const double constant = (C - 1.0) * (1.0 + 2.0 * (s - 1.0) * cb2) - 2.0 * (s - 1.0) * (ca2 - cb2);
  const double slope = (C - 1.0) * (1.0 - 2.0 * (s - 1.0) * (2.0 - s) * C * cb2) -
                       kSqrt3 / 2.0 * (s - 1.0) * (s - 2.0) * (s - 3.0) * std::sin(t);
  return std::min(constant, constant + slope / C);
}

double angle_for_scale(double s, double C) {
  require_open_s(s);
  if (!(C >= 1.0 - 1e-12 && C <= 2.0 * s - 1.0 + 1e-12)) throw InvalidInput("C must lie in [1, 2s-1]");
  const double sin_t = (C - 1.0) * std::sqrt(2.0 * s - 1.0) / (2.0 * std::sqrt(C) * (s - 1.0));
  return std::asin(std::clamp(sin_t, 0.0, 1.0));
}

double endgame_scalar(double s) { return (s - 1.5) * (s - 1.5) + (4.0 / kSqrt3 - 9.0 / 4.0); }

bool endgame_rational_certificate() {
  // 4/sqrt3 >= 9/4  <=>  16 >= 9 sqrt3  <=>  256 >= 243  <=>  3 <= 256/81.
  constexpr std::int64_t lhs_num = 3, lhs_den = 1;
  constexpr std::int64_t rhs_num = 256, rhs_den = 81;
  return lhs_num * rhs_den <= rhs_num * lhs_den;
}

double self_improvement_margin(double s, double c, double a, double y) {
  if (!(c >= 1.0)) throw InvalidInput("self-improvement requires c >= 1");
  if (!(c * y > 1.0)) throw InvalidInput("self-improvement requires c y > 1");
  const double cross = 2.0 / y * std::cos(a);
  const double moved = c * c + 1.0 / (c * c * y * y);
  const double fixed = 1.0 + 1.0 / (y * y);
  return nonneg_pow(moved + cross, s) + nonneg_pow(moved - cross, s) - nonneg_pow(fixed + cross, s) -
         nonneg_pow(fixed - cross, s);
}

}  // namespace cubehc
