// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "cubehc/inequalities.hpp"
#include "cubehc/lens_geometry.hpp"
#include "cubehc/multiplier.hpp"
#include "cubehc/oracle.hpp"
#include "cubehc/rng.hpp"
#include "cubehc/scan.hpp"
#include "cubehc/verify.hpp"

using namespace cubehc;

namespace {

constexpr double kPi = std::numbers::pi;

const int kThreads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

int failures = 0;

void run(int id, const std::string& title, double time_limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > time_limit) out.require(false, fmt("took %.2f s, limit %.0f s", secs, time_limit));
  if (!out.ok) ++failures;
  std::printf("%s %d %s (%.2f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

Complex boundary_point(double p, double t) { return std::polar(boundary_radius_closed(p, t), t); }

// Grid plus golden-section maximization of cos^{2l-1}(x) sin(x) on [0, pi/2].
double cap_sup_by_search(int l) {
  auto g = [l](double x) { return std::pow(std::cos(x), 2 * l - 1) * std::sin(x); };
  const int n = 4096;
  int best = 0;
  for (int i = 1; i <= n; ++i) {
    if (g(kPi / 2 * i / n) > g(kPi / 2 * best / n)) best = i;
  }
  double lo = kPi / 2 * std::max(0, best - 1) / n, hi = kPi / 2 * std::min(n, best + 1) / n;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    (g(x1) < g(x2) ? lo : hi) = g(x1) < g(x2) ? x1 : x2;
  }
  return g(0.5 * (lo + hi));
}

}  // namespace

int main() {
  std::printf("acceptance run, %d thread(s)\n", kThreads);

  run(1, "reduced two-point inequality on the lens boundary", 30.0, [] {
    Outcome o;
    for (double p : {2.1, 2.5, 2.9}) {
      auto pr = reduced_problem(p, 32);
      pr.grid.axes[0].count = 64;  // t sweep
      const auto r = scan(pr, kThreads);
      o.require(r.worst_margin >= -1e-10, fmt("p=%.1f worst %.3g", p, r.worst_margin));
      o.detail += (o.detail.empty() ? "" : ", ") + fmt("p=%.1f worst %.3g", p, r.worst_margin);
    }
    return o;
  });

  run(2, "violations just outside the lens", 5.0, [] {
    Outcome o;
    const double p = 2.5;
    double weakest = -1e300;
    for (int k = 0; k < 8; ++k) {
      auto pr = two_point_problem(p, p, 1.02 * boundary_point(p, 2.0 * kPi * k / 8), 100, 0.2);
      pr.grid.refine = false;
      const auto r = scan(pr, kThreads);
      weakest = std::max(weakest, r.worst_margin);
      o.require(r.worst_margin <= -1e-6, fmt("k=%.0f best margin %.3g", k, r.worst_margin));
    }
    if (o.ok) o.detail = fmt("largest of the 8 most negative margins %.3g", weakest);
    return o;
  });

  run(3, "mock log-Sobolev monotone iff p >= 3", 5.0, [] {
    Outcome o;
    for (double p : {3.0, 3.5, 5.0}) {
      const auto s = mock_logsob_scan(p);
      o.require(s.min_slope >= -1e-9, fmt("p=%.1f min slope %.3g", p, s.min_slope));
    }
    for (double p : {2.3, 2.5, 2.9}) {
      const auto c = mock_logsob_counterexample(p);
      o.require(c.slope <= -1e-6, fmt("p=%.1f slope %.3g", p, c.slope));
    }
    return o;
  });

  run(4, "cap integral bound", 5.0, [] {
    Outcome o;
    auto pr = cap_problem(12, 64);
    pr.grid.refine = false;
    const auto r = scan(pr, kThreads);
    o.require(r.worst_margin >= -1e-12, fmt("worst %.3g", r.worst_margin));
    for (int l = 2; l <= 12; ++l) {
      const double diff = std::abs(cap_sup(l) - cap_sup_by_search(l));
      o.require(diff <= 1e-10, fmt("l=%.0f sup differs by %.3g", l, diff));
    }
    o.require(std::abs(cap_sup(2) - 3.0 * std::sqrt(3.0) / 16.0) <= 1e-15, "l=2 sup");
    if (o.ok) o.detail = fmt("worst margin %.3g", r.worst_margin);
    return o;
  });

  run(5, "series coefficients and truncated series bound", 10.0, [] {
    Outcome o;
    for (double s : {1.01, 1.25, 1.49}) {
      for (int l = 2; l <= 64; ++l) {
        const double m = coefficient_ratio_check(l, s);
        o.require(m >= 0.0, fmt("ratio fails at l=%.0f, s=%.2f", l, s));
      }
    }
    o.require(half_binomial_weight(2) == 0.25, "a_2 != 1/4");
    double worst = 1e300;
    for (double s : {1.01, 1.25, 1.49}) {
      auto pr = series_problem(s, 24, 64);
      pr.tolerance = 0.0;
      const auto r = scan(pr, kThreads);
      worst = std::min(worst, r.worst_margin);
      o.require(r.worst_margin >= 0.0, fmt("s=%.2f margin less tail bound %.3g", s, r.worst_margin));
    }
    if (o.ok) o.detail = fmt("worst certified series margin %.3g", worst);
    return o;
  });

  run(6, "one-coordinate search and tensorization", 60.0, [] {
    Outcome o;
    SearchConfig cfg;
    cfg.restarts = 10000;
    cfg.threads = kThreads;
    double best = 0.0;
    for (int k = 0; k < 16; ++k) {
      const auto r = search_violation(2.5, 2.5, boundary_point(2.5, 2.0 * kPi * k / 16), cfg);
      best = std::max(best, r.best_ratio);
    }
    o.require(best <= 1.0 + 1e-8, fmt("best ratio %.17g", best));
    double worst_tensor = 0.0;
    for (int c = 0; c < 50; ++c) {
      Rng rng(stream_seed(2024, c));
      const int k = 2 + c % 2;
      const int n = k == 3 ? 1 + c % 2 : 1 + c % 3;
      std::vector<Complex> coeffs(std::size_t{1} << n);
      for (auto& a : coeffs) a = {rng.normal(), rng.normal()};
      const Complex z = std::polar(rng.uniform(0.0, 1.0), rng.uniform(0.0, 2.0 * kPi));
      worst_tensor = std::max(
          worst_tensor, tensorization_check(CubeFunction::from_coefficients(std::move(coeffs)), k, 2.5, 2.5, z));
    }
    o.require(worst_tensor <= 1e-10, fmt("tensorization defect %.3g", worst_tensor));
    if (o.ok) o.detail = fmt("best ratio - 1 = %.3g, tensorization defect %.3g", best - 1.0, worst_tensor);
    return o;
  });

  run(7, "endgame scalar via 3 <= 256/81", 1.0, [] {
    Outcome o;
    o.require(endgame_rational_certificate(), "rational comparison failed");
    return o;
  });

  run(8, "multiplier engine", 120.0, [] {
    Outcome o;
    MomentProblem prob;
    prob.p = prob.q = 2.5;
    prob.d = 6;
    for (int j = 0; j <= 6; ++j) prob.phi.emplace_back(std::pow(0.5, j));
    auto s = solve(prob);
    o.require(s.lower >= 1.0 - 1e-3 && s.upper <= 1.0 + 1e-2, fmt("(a) sandwich [%.9g, %.9g]", s.lower, s.upper));

    prob.phi.assign(7, 0.0);
    prob.phi[0] = 1.0;
    s = solve(prob);
    o.require(std::abs(s.lower - 1.0) <= 1e-6 && std::abs(s.upper - 1.0) <= 1e-6,
              fmt("(b) sandwich [%.9g, %.9g]", s.lower, s.upper));

    std::string uppers;
    for (int d : {2, 3, 4}) {
      prob.d = d;
      prob.phi.clear();
      for (int j = 0; j <= d; ++j) prob.phi.emplace_back(j);
      s = solve(prob);
      const double bound = 10.0 * std::pow(d, alpha(2.5));
      o.require(s.upper <= bound, fmt("(c) d=%.0f upper %.6g", d, s.upper));
      const auto cert = certify_on_cube(s.measure, prob.phi, d, 2.5, 2.5, 200, 5, 1);
      o.require(cert.holds(1e-6), fmt("(d) worst ratio %.9g > %.9g", cert.worst_ratio, cert.tv_bound));
      uppers += (uppers.empty() ? "" : ", ") + fmt("d=%.0f upper %.6g", d, s.upper) +
                fmt(" cube %.4g", cert.worst_ratio);
    }
    if (o.ok) o.detail = uppers;
    return o;
  });

  run(9, "lens geometry", 2.0, [] {
    Outcome o;
    double worst = 0.0;
    for (double p : {1.5, 2.5, 3.0, 6.0}) {
      for (int k = 0; k < 256; ++k) {
        const double t = 2.0 * kPi * k / 256;
        worst = std::max(worst, std::abs(boundary_radius_closed(p, t) - boundary_radius_inf(p, p, t)));
      }
    }
    o.require(worst <= 1e-9, fmt("closed vs inf %.3g", worst));
    double dual = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double p = 1.05 + 0.25 * k;
      dual = std::max(dual, std::abs(alpha(p) - alpha(dual_exponent(p))));
    }
    o.require(dual <= 1e-12, fmt("alpha duality %.3g", dual));
    if (o.ok) o.detail = fmt("closed vs inf %.3g, alpha duality %.3g", worst, dual);
    return o;
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
