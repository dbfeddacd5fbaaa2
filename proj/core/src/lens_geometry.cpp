#include "cubehc/lens_geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cubehc/errors.hpp"

namespace cubehc {
namespace {

constexpr double kPi = std::numbers::pi;

void require_order(double p, double q) {
  if (!std::isfinite(p) || !std::isfinite(q)) throw InvalidInput("exponents must be finite");
  if (p < 1.0) throw InvalidInput("exponent p must be >= 1");
  if (p > q) throw InvalidInput("exponents must satisfy p <= q");
}

void require_finite(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InvalidInput("z must be finite");
}

}  // namespace

LensParams LensParams::make(double p, double q) {
  require_order(p, q);
  if (!(p > 1.0)) throw InvalidInput("lens geometry requires p > 1");
  LensParams lp;
  lp.p = p;
  lp.q = q;
  lp.real_half_width = std::sqrt((p - 1.0) / (q - 1.0));
  const double root = std::sqrt(p - 1.0);
  lp.center_offset = std::abs(p - 2.0) / (2.0 * root);
  lp.radius = p / (2.0 * root);
  lp.alpha = cubehc::alpha(p);
  lp.s = p / 2.0;
  lp.axis_radius = std::min(root, 1.0 / root);
  return lp;
}

AdmissibilityMargin admissibility_margin(double p, double q, Complex z) {
  require_order(p, q);
  require_finite(z);
  return {std::abs((p - 2.0) - z * z * (q - 2.0)), p - std::norm(z) * q};
}

bool is_admissible(double p, double q, Complex z) {
  require_order(p, q);
  require_finite(z);
  if (q == 1.0) {
    // p = q = 1: the domain degenerates to the real segment [-1, 1].
    return std::abs(z.imag()) <= kBoundaryTolerance && std::abs(z.real()) <= 1.0 + kBoundaryTolerance;
  }
  return admissibility_margin(p, q, z).margin() >= -kBoundaryTolerance;
}

double boundary_radius_inf(double p, double q, double t) {
  require_order(p, q);
  if (!(p > 1.0)) throw InvalidInput("boundary radius requires p, q > 1");
  if (!std::isfinite(t)) throw InvalidInput("angle must be finite");

  auto ratio = [&](double beta) {
    const double cb = std::cos(beta);
    const double ct = std::cos(t + beta);
    return (1.0 + (p - 2.0) * cb * cb) / (1.0 + (q - 2.0) * ct * ct);
  };

  constexpr int kCoarse = 512;
  const double h = kPi / kCoarse;
  int best = 0;
  double best_val = ratio(0.0);
  for (int k = 1; k < kCoarse; ++k) {
    const double v = ratio(k * h);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }

  // Golden-section on the bracket around the best grid point.
  constexpr double kInvPhi = 0.6180339887498949;
  constexpr double kTol = 1e-11;
  constexpr int kMaxIter = 200;
  double lo = (best - 1) * h;
  double hi = (best + 1) * h;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = ratio(x1);
  double f2 = ratio(x2);
  int iter = 0;
  while (hi - lo > kTol) {
    if (++iter > kMaxIter) {
      std::ostringstream msg;
      msg << "boundary_radius_inf: golden section did not converge (p=" << p << ", q=" << q
          << ", t=" << t << ", bracket width=" << (hi - lo) << ")";
      throw NumericError(msg.str());
    }
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = ratio(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = ratio(x2);
    }
  }
  const double refined = std::min({best_val, f1, f2, ratio(0.5 * (lo + hi))});
  return std::sqrt(refined);
}

double fold_angle(double t) {
  double u = std::fmod(std::abs(t), kPi);
  if (u > kPi / 2.0) u = kPi - u;
  return u;
}

double boundary_radius_closed(double p, double t) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidInput("closed-form boundary requires p > 1");
  if (!std::isfinite(t)) throw InvalidInput("angle must be finite");
  const double root = std::sqrt(p - 1.0);
  const double offset = std::abs(p - 2.0) / (2.0 * root);
  const double radius = p / (2.0 * root);
  const double st = std::sin(fold_angle(t));
  // r^2 + 2 r offset sin t + offset^2 - radius^2 = 0, positive root.
  const double disc = offset * offset * st * st + (radius - offset) * (radius + offset);
  if (disc < 0.0) {
    std::ostringstream msg;
    msg << "boundary_radius_closed: negative discriminant " << disc << " at p=" << p << ", t=" << t;
    throw NumericError(msg.str());
  }
  return std::sqrt(disc) - offset * st;
}

double alpha(double p) {
  if (!(p > 1.0)) throw InvalidInput("alpha requires p > 1");
  return 1.0 + (2.0 / kPi) * std::atan(std::abs(p - 2.0) / (2.0 * std::sqrt(p - 1.0)));
}

double dual_exponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidInput("dual exponent requires p > 1");
  return p / (p - 1.0);
}

}  // namespace cubehc
