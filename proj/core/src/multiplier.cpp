#include "cubehc/multiplier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "cubehc/errors.hpp"
#include "cubehc/lens_geometry.hpp"
#include "cubehc/rng.hpp"
#include "cubehc/simplex.hpp"

namespace cubehc {
namespace {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

constexpr double kPi = std::numbers::pi;
constexpr int kPhases = 16;          // polygon used by the linear relaxation
constexpr int kDenseLens = 4096;     // samples of the boundary curve for sup |P|
constexpr int kDenseSegment = 2049;
constexpr int kRefinedPeaks = 6;

Complex horner(std::span<const Complex> a, Complex z) {
  Complex v = 0.0;
  for (std::size_t j = a.size(); j-- > 0;) v = v * z + a[j];
  return v;
}

// The closed domain as a curve u -> z(u) that carries the maximum of |P|:
// the lens boundary for complex atoms, the real interval otherwise.
class Domain {
 public:
  explicit Domain(const MomentProblem& prob)
      : lens_(LensParams::make(prob.p, prob.q)), real_only_(prob.real_only) {
    const int dense = real_only_ ? kDenseSegment : kDenseLens;
    du_ = real_only_ ? 2.0 * lens_.real_half_width / (dense - 1) : 2.0 * kPi / dense;
    dense_.reserve(static_cast<std::size_t>(dense));
    for (int i = 0; i < dense; ++i) dense_.push_back(at(u_of(i)));
  }

  bool periodic() const { return !real_only_; }
  double u_of(int i) const { return real_only_ ? -lens_.real_half_width + i * du_ : i * du_; }

  Complex at(double u) const {
    if (real_only_) return {std::clamp(u, -lens_.real_half_width, lens_.real_half_width), 0.0};
    const double r = lens_.symmetric() ? boundary_radius_closed(lens_.p, u) : boundary_radius_inf(lens_.p, lens_.q, u);
    return std::polar(r, u);
  }

  // Candidate atoms: M boundary points, the origin and real samples.
  std::vector<Complex> candidates(int M, int d) const {
    std::vector<Complex> out;
    const double w = lens_.real_half_width;
    if (real_only_) {
      const int k = M + 1;
      for (int i = 0; i < k; ++i) out.emplace_back(-w + 2.0 * w * i / (k - 1), 0.0);
      return out;
    }
    for (int i = 0; i < M; ++i) out.push_back(at(2.0 * kPi * i / M));
    const int k = 4 * (d + 1) + 1;  // odd, so 0 is included
    for (int i = 1; i < k - 1; ++i) out.emplace_back(-w + 2.0 * w * i / (k - 1), 0.0);
    return out;
  }

  struct Peak {
    double value = -1.0;
    Complex z;
  };

  // max over the domain of g(z); g is continuous along the curve.
  template <class G>
  Peak maximize(const G& g) const {
    const int n = static_cast<int>(dense_.size());
    std::vector<double> vals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = g(dense_[static_cast<std::size_t>(i)]);
    auto val = [&](int i) {
      if (periodic()) return vals[static_cast<std::size_t>((i % n + n) % n)];
      return (i < 0 || i >= n) ? -std::numeric_limits<double>::infinity() : vals[static_cast<std::size_t>(i)];
    };
    std::vector<int> peaks;
    for (int i = 0; i < n; ++i) {
      if (vals[static_cast<std::size_t>(i)] >= val(i - 1) && vals[static_cast<std::size_t>(i)] >= val(i + 1)) {
        peaks.push_back(i);
      }
    }
    std::sort(peaks.begin(), peaks.end(), [&](int a, int b) {
      return vals[static_cast<std::size_t>(a)] > vals[static_cast<std::size_t>(b)];
    });
    if (peaks.size() > kRefinedPeaks) peaks.resize(kRefinedPeaks);

    Peak best;
    for (int i : peaks) {
      double lo = u_of(i) - du_;
      double hi = u_of(i) + du_;
      auto h = [&](double u) { return g(at(u)); };
      // golden section, maximizing
      const double inv = (std::sqrt(5.0) - 1.0) / 2.0;
      double x1 = hi - inv * (hi - lo), x2 = lo + inv * (hi - lo);
      double f1 = h(x1), f2 = h(x2);
      while (hi - lo > 1e-13) {
        if (f1 < f2) {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + inv * (hi - lo);
          f2 = h(x2);
        } else {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - inv * (hi - lo);
          f1 = h(x1);
        }
      }
      const double u = (lo + hi) / 2.0;
      Peak cand{h(u), at(u)};
      if (vals[static_cast<std::size_t>(i)] > cand.value) cand = {vals[static_cast<std::size_t>(i)], dense_[static_cast<std::size_t>(i)]};
      if (cand.value > best.value) best = cand;
    }
    return best;
  }

 private:
  LensParams lens_;
  bool real_only_;
  double du_ = 0.0;
  std::vector<Complex> dense_;
};

CMatrix vandermonde(const std::vector<Complex>& zs, int d) {
  CMatrix V(d + 1, static_cast<Eigen::Index>(zs.size()));
  for (std::size_t k = 0; k < zs.size(); ++k) {
    Complex pw = 1.0;
    for (int j = 0; j <= d; ++j) {
      V(j, static_cast<Eigen::Index>(k)) = pw;
      pw *= zs[k];
    }
  }
  return V;
}

struct Weights {
  CVector c;
  std::vector<Complex> certificate;  // P with |P| = 1 on the support at optimality
  double tv() const { return c.cwiseAbs().sum(); }
};

// Polygonal relaxation: weights restricted to 16 phases, solved exactly as an LP.
Weights solve_polygonal(const std::vector<Complex>& zs, std::span<const Complex> phi, int d) {
  const auto K = static_cast<Eigen::Index>(zs.size());
  Eigen::MatrixXd A(2 * (d + 1), K * kPhases);
  Eigen::VectorXd b(2 * (d + 1));
  for (int j = 0; j <= d; ++j) {
    b(2 * j) = phi[static_cast<std::size_t>(j)].real();
    b(2 * j + 1) = phi[static_cast<std::size_t>(j)].imag();
  }
  for (Eigen::Index k = 0; k < K; ++k) {
    for (int m = 0; m < kPhases; ++m) {
      const Complex omega = std::polar(1.0, 2.0 * kPi * m / kPhases);
      Complex v = omega;
      for (int j = 0; j <= d; ++j) {
        A(2 * j, k * kPhases + m) = v.real();
        A(2 * j + 1, k * kPhases + m) = v.imag();
        v *= zs[static_cast<std::size_t>(k)];
      }
    }
  }
  const auto lp = solve_unit_cost_lp(A, b);
  Weights w;
  w.c = CVector::Zero(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    for (int m = 0; m < kPhases; ++m) {
      w.c(k) += lp.x(k * kPhases + m) * std::polar(1.0, 2.0 * kPi * m / kPhases);
    }
  }
  w.certificate.resize(static_cast<std::size_t>(d + 1));
  for (int j = 0; j <= d; ++j) w.certificate[static_cast<std::size_t>(j)] = {lp.prices(2 * j), -lp.prices(2 * j + 1)};
  return w;
}

// Least-norm correction of the moments on the support of c.
void correct_moments(const CMatrix& V, const CVector& target, CVector& c) {
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    if (c(k) != 0.0) support.push_back(k);
  }
  if (support.empty()) return;
  CMatrix Vs(V.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i) Vs.col(static_cast<Eigen::Index>(i)) = V.col(support[i]);
  const CVector residual = target - V * c;
  const CVector delta = Vs.completeOrthogonalDecomposition().solve(residual);
  for (std::size_t i = 0; i < support.size(); ++i) c(support[i]) += delta(static_cast<Eigen::Index>(i));
}

// min sum |c_k| s.t. V c = phi by iteratively reweighted least squares with
// smoothing eps from 1e-3 down to 1e-10.
Weights solve_irls(const CMatrix& V, const CVector& phi, const CVector& warm) {
  const Eigen::Index K = V.cols();
  const Eigen::Index rows = V.rows();
  Eigen::VectorXd w = warm.cwiseAbs().array() + 1e-3;
  CVector c = warm;
  CVector y = CVector::Zero(rows);
  for (double eps = 1e-3; eps >= 1e-10 * 0.999; eps /= 10.0) {
    for (int it = 0; it < 200; ++it) {
      const Eigen::VectorXd root = w.cwiseSqrt();
      // B = V W^{1/2}; minimum-norm u with B u = phi via QR of B^H.
      const CMatrix Bh = (V * root.asDiagonal()).adjoint();
      Eigen::HouseholderQR<CMatrix> qr(Bh);
      const CMatrix R = qr.matrixQR().topRows(rows).triangularView<Eigen::Upper>();
      const CVector s = R.adjoint().triangularView<Eigen::Lower>().solve(phi);
      y = R.triangularView<Eigen::Upper>().solve(s);
      const CVector u = qr.householderQ() * (CVector(K) << s, CVector::Zero(K - rows)).finished();
      c = root.cwiseProduct(u);
      const Eigen::VectorXd next = (c.cwiseAbs2().array() + eps * eps).sqrt();
      const double change = (next - w).cwiseAbs().maxCoeff();
      w = next;
      if (change <= 1e-12 * std::max(1.0, w.maxCoeff())) break;
    }
  }
  Weights out;
  const double cap = c.cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < K; ++k) {
    if (std::abs(c(k)) <= 1e-9 * cap) c(k) = 0.0;
  }
  correct_moments(V, phi, c);
  out.c = c;
  out.certificate.resize(static_cast<std::size_t>(rows));
  for (Eigen::Index j = 0; j < rows; ++j) out.certificate[static_cast<std::size_t>(j)] = std::conj(y(j));
  return out;
}

AtomicMeasure to_measure(const std::vector<Complex>& zs, const CVector& c) {
  AtomicMeasure m;
  for (std::size_t k = 0; k < zs.size(); ++k) {
    if (c(static_cast<Eigen::Index>(k)) != 0.0) m.atoms.push_back({zs[k], c(static_cast<Eigen::Index>(k))});
  }
  return m;
}

// |sum phi_j a_j| / sup |P_a|, with a rescaled to sup 1.
DualBound evaluate_certificate(const Domain& dom, std::span<const Complex> phi, std::vector<Complex> a) {
  const auto peak = dom.maximize([&](Complex z) { return std::abs(horner(a, z)); });
  DualBound db;
  if (!(peak.value > 0.0) || !std::isfinite(peak.value)) return db;
  Complex value = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    a[j] /= peak.value;
    value += phi[j] * a[j];
  }
  db.value = std::abs(value);
  db.a = std::move(a);
  return db;
}

void insert_candidate(std::vector<Complex>& zs, Complex z) {
  for (const auto& x : zs) {
    if (std::abs(x - z) < 1e-12) return;
  }
  zs.push_back(z);
}

}  // namespace

void MomentProblem::validate() const {
  if (!(p > 1.0 && q >= p && std::isfinite(q))) throw InvalidInput("moment problem requires 1 < p <= q");
  if (d < 0 || d > 32) throw InvalidInput("moment problem degree must be in [0, 32]");
  if (phi.size() != static_cast<std::size_t>(d + 1)) {
    throw InvalidInput("phi must have d + 1 = " + std::to_string(d + 1) + " entries, got " + std::to_string(phi.size()));
  }
  for (const auto& v : phi) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InvalidInput("phi must be finite");
  }
  if (boundary_points() < 8 * (d + 1)) {
    throw InvalidInput("M must be at least 8(d+1) = " + std::to_string(8 * (d + 1)));
  }
  if (!(gap_tolerance >= 0.0) || !(feasibility_tolerance > 0.0)) throw InvalidInput("tolerances must be positive");
}

double AtomicMeasure::tv_norm() const {
  double s = 0.0;
  for (const auto& a : atoms) s += std::abs(a.weight);
  return s;
}

std::vector<Complex> AtomicMeasure::moments(int d) const {
  std::vector<Complex> m(static_cast<std::size_t>(std::max(d + 1, 0)), 0.0);
  for (const auto& a : atoms) {
    Complex pw = 1.0;
    for (auto& v : m) {
      v += a.weight * pw;
      pw *= a.z;
    }
  }
  return m;
}

double AtomicMeasure::moment_residual(std::span<const Complex> phi) const {
  const auto m = moments(static_cast<int>(phi.size()) - 1);
  double r = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) r = std::max(r, std::abs(m[j] - phi[j]));
  return r;
}

NormSandwich solve(const MomentProblem& prob) {
  prob.validate();
  const Domain dom(prob);
  const int d = prob.d;
  const std::span<const Complex> phi(prob.phi);
  const CVector target = Eigen::Map<const CVector>(prob.phi.data(), d + 1);

  NormSandwich out;
  out.upper = std::numeric_limits<double>::infinity();
  // Constant polynomial: |phi(0)| is always a lower bound.
  out.lower = std::abs(phi[0]);
  out.dual.value = out.lower;
  out.dual.a.assign(static_cast<std::size_t>(d + 1), 0.0);
  out.dual.a[0] = out.lower > 0.0 ? std::conj(phi[0]) / out.lower : Complex(1.0);

  // phi(j) = phi(0) r^j with r in the domain: the point mass phi(0) delta_r
  // meets the constant-polynomial bound, so it is optimal.
  {
    const Complex r = d == 0 || phi[0] == 0.0 ? Complex(0.0) : phi[1] / phi[0];
    const bool inside = prob.real_only ? std::abs(r.imag()) <= kBoundaryTolerance &&
                                             std::abs(r.real()) <= LensParams::make(prob.p, prob.q).real_half_width
                                       : is_admissible(prob.p, prob.q, r);
    AtomicMeasure point;
    point.atoms.push_back({r, phi[0]});
    if (phi[0] != 0.0 && inside && point.moment_residual(phi) <= prob.feasibility_tolerance) {
      out.upper = out.lower;
      out.measure = point;
      out.gap = 0.0;
      return out;
    }
  }

  std::vector<Complex> zs = dom.candidates(prob.boundary_points(), d);
  for (int round = 0; round < prob.max_exchange; ++round) {
    out.rounds = round + 1;
    Weights lp;
    try {
      lp = solve_polygonal(zs, phi, d);
    } catch (const FeasibilityError& e) {
      throw FeasibilityError(std::string(e.what()) + "; try a larger M");
    }
    const CMatrix V = vandermonde(zs, d);
    const Weights irls = solve_irls(V, target, lp.c);

    for (const Weights* w : std::array<const Weights*, 2>{&lp, &irls}) {
      const AtomicMeasure m = to_measure(zs, w->c);
      if (m.moment_residual(phi) <= prob.feasibility_tolerance && m.tv_norm() < out.upper) {
        out.upper = m.tv_norm();
        out.measure = m;
      }
      const DualBound db = evaluate_certificate(dom, phi, w->certificate);
      if (db.value > out.lower) {
        out.lower = db.value;
        out.dual = db;
      }
    }
    if (out.upper - out.lower <= prob.gap_tolerance) break;

    // Column generation: add the points where either certificate leaves the unit ball.
    const std::size_t before = zs.size();
    const auto& a_irls = irls.certificate;
    const auto& a_lp = lp.certificate;
    const auto peak_irls = dom.maximize([&](Complex z) { return std::abs(horner(a_irls, z)); });
    if (peak_irls.value > 1.0 + 1e-9) insert_candidate(zs, peak_irls.z);
    const auto peak_lp = dom.maximize([&](Complex z) {
      const Complex v = horner(a_lp, z);
      double g = -std::numeric_limits<double>::infinity();
      for (int m = 0; m < kPhases; ++m) g = std::max(g, (std::polar(1.0, 2.0 * kPi * m / kPhases) * v).real());
      return g;
    });
    if (peak_lp.value > 1.0 + 1e-9) insert_candidate(zs, peak_lp.z);
    if (zs.size() == before) break;
  }
  if (!std::isfinite(out.upper)) {
    throw FeasibilityError("no candidate measure met the moment tolerance; try a larger M");
  }
  out.gap = out.upper - out.lower;
  if (out.gap < -prob.gap_tolerance) {
    throw NumericError("sandwich inverted: lower " + std::to_string(out.lower) + " > upper " +
                       std::to_string(out.upper));
  }
  return out;
}

DualBound dual_lower_bound(const MomentProblem& prob) { return solve(prob).dual; }

AtomicMeasure primal_measure(const MomentProblem& prob) { return solve(prob).measure; }

CubeFunction apply_multiplier(const CubeFunction& f, std::span<const Complex> phi, int d) {
  if (d < 0 || phi.size() < static_cast<std::size_t>(d + 1)) throw InvalidInput("phi needs d + 1 entries");
  if (f.degree() > d) {
    throw InvalidInput("function has spectrum at level " + std::to_string(f.degree()) + " above d = " +
                       std::to_string(d));
  }
  return apply_level_multiplier(f, phi.first(static_cast<std::size_t>(d + 1)));
}

CubeCertificate certify_on_cube(const AtomicMeasure& measure, std::span<const Complex> phi, int d, double p,
                                double q, int trials, int n, std::uint64_t seed) {
  if (n < 1 || n > 8) throw InvalidInput("certify_on_cube needs 1 <= n <= 8");
  if (trials < 1) throw InvalidInput("certify_on_cube needs at least one trial");
  CubeCertificate out;
  out.tv_bound = measure.tv_norm();
  out.trials = trials;
  const std::size_t size = std::size_t{1} << n;
  const int top = std::min(d, n);
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(stream_seed(seed, static_cast<std::uint64_t>(trial)));
    std::vector<double> level_scale(static_cast<std::size_t>(top + 1));
    for (auto& s : level_scale) s = std::pow(10.0, rng.uniform(-1.5, 0.5));
    const bool real = rng.uniform() < 0.25;
    std::vector<Complex> coeffs(size, 0.0);
    for (std::size_t s = 0; s < size; ++s) {
      const int level = subset_size(static_cast<Subset>(s));
      if (level > top) continue;
      const double re = rng.normal();
      const double im = real ? 0.0 : rng.normal();
      coeffs[s] = level_scale[static_cast<std::size_t>(level)] * Complex(re, im);
    }
    const auto f = CubeFunction::from_coefficients(std::move(coeffs));
    const double den = lp_norm(f, p);
    if (!(den > 0.0)) continue;
    const double ratio = lp_norm(apply_multiplier(f, phi, d), q) / den;
    out.worst_ratio = std::max(out.worst_ratio, ratio);
  }
  return out;
}

}  // namespace cubehc
