#include "cubehc/verify.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <numbers>

#include "cubehc/errors.hpp"
#include "cubehc/inequalities.hpp"
#include "cubehc/lens_geometry.hpp"

namespace cubehc {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

Axis unit_axis(const char* name, int grid) { return {name, 0.0, 1.0, grid}; }

void require_grid(int grid) {
  if (grid < 1) throw InvalidInput("grid must have at least one point per axis");
}

// Reduced-domain point from unit fractions (t, a, y).
ReducedPoint reduced_from_fractions(double p, std::span<const double> x) {
  const double t = x[0] * kHalfPi;
  const double a = x[1] * (kHalfPi - t);
  const double c = boundary_scale(p, t);
  return {p / 2.0, c, a, t, x[2] / c};
}

NamedValues describe_reduced(const ReducedPoint& pt) {
  return {{"s", pt.s}, {"c", pt.c}, {"a", pt.a}, {"t", pt.t}, {"y", pt.y}};
}

}  // namespace

MarginProblem reduced_problem(double p, int grid) {
  require_grid(grid);
  if (!(p > 1.0)) throw InvalidInput("reduced inequality requires p > 1");
  MarginProblem pr;
  pr.id = "reduced";
  pr.grid.axes = {unit_axis("t_frac", grid), unit_axis("a_frac", grid), unit_axis("y_frac", grid)};
  pr.fixed = {{"p", p}};
  pr.margin = [p](std::span<const double> x) { return reduced_margin(reduced_from_fractions(p, x)); };
  pr.describe = [p](std::span<const double> x) { return describe_reduced(reduced_from_fractions(p, x)); };
  return pr;
}

MarginProblem series_problem(double s, int grid, int terms) {
  require_grid(grid);
  if (!(s > 1.0 && s <= 1.5)) throw InvalidInput("series bound requires s in (1, 3/2]");
  MarginProblem pr;
  pr.id = "series";
  pr.grid.axes = {unit_axis("t_frac", grid), unit_axis("a_frac", grid), unit_axis("y_frac", grid)};
  pr.fixed = {{"s", s}, {"terms", static_cast<double>(terms)}};
  const double p = 2.0 * s;
  // Certified margin: truncated margin minus the bound on the discarded tail.
  pr.margin = [p, s, terms](std::span<const double> x) {
    const auto pt = reduced_from_fractions(p, x);
    const auto sb = series_bound_margin(s, pt.a, pt.t, pt.y, terms);
    return sb.margin - sb.uncertainty;
  };
  pr.describe = [p, s, terms](std::span<const double> x) {
    const auto pt = reduced_from_fractions(p, x);
    const auto sb = series_bound_margin(s, pt.a, pt.t, pt.y, terms);
    return NamedValues{{"s", s}, {"a", pt.a}, {"t", pt.t}, {"y", pt.y},
                       {"truncated_margin", sb.margin}, {"tail_bound", sb.uncertainty}};
  };
  return pr;
}

MarginProblem final_chain_problem(double s, int grid) {
  require_grid(grid);
  if (!(s > 1.0 && s <= 1.5)) throw InvalidInput("final chain requires s in (1, 3/2]");
  MarginProblem pr;
  pr.id = "final-chain";
  pr.grid.axes = {unit_axis("C_frac", grid), unit_axis("a_frac", grid)};
  pr.fixed = {{"s", s}};
  auto point = [s](std::span<const double> x) {
    const double C = 1.0 + x[0] * (2.0 * s - 2.0);
    const double t = angle_for_scale(s, C);
    const double a = x[1] * (kHalfPi - t);
    return std::array<double, 3>{C, t, a};
  };
  pr.margin = [s, point](std::span<const double> x) {
    const auto [C, t, a] = point(x);
    return final_chain_margin(s, C, a, t);
  };
  pr.describe = [s, point](std::span<const double> x) {
    const auto [C, t, a] = point(x);
    return NamedValues{{"s", s}, {"C", C}, {"t", t}, {"a", a}};
  };
  return pr;
}

MarginProblem self_improvement_problem(double p, int grid) {
  require_grid(grid);
  if (!(p > 1.0)) throw InvalidInput("self-improvement requires p > 1");
  MarginProblem pr;
  pr.id = "self-improvement";
  pr.grid.axes = {unit_axis("t_frac", grid), Axis{"a", 0.0, kPi, grid}, Axis{"cy", 1.0 + 1e-6, 20.0, grid}};
  pr.fixed = {{"p", p}};
  pr.margin = [p](std::span<const double> x) {
    const double c = boundary_scale(p, x[0] * kHalfPi);
    return self_improvement_margin(p / 2.0, c, x[1], x[2] / c);
  };
  pr.describe = [p](std::span<const double> x) {
    const double t = x[0] * kHalfPi;
    const double c = boundary_scale(p, t);
    return NamedValues{{"s", p / 2.0}, {"c", c}, {"t", t}, {"a", x[1]}, {"y", x[2] / c}};
  };
  return pr;
}

MarginProblem two_point_problem(double p, double q, Complex z, int grid, double w_radius) {
  require_grid(grid);
  MarginProblem pr;
  pr.id = "two-point";
  pr.grid.axes = {Axis{"w_abs", 0.0, w_radius, grid}, Axis{"w_arg", 0.0, 2.0 * kPi * (grid - 1) / grid, grid}};
  pr.fixed = {{"p", p}, {"q", q}, {"z_re", z.real()}, {"z_im", z.imag()}};
  pr.expect_violation = !is_admissible(p, q, z);
  pr.margin = [p, q, z](std::span<const double> x) { return two_point_margin(p, q, z, std::polar(x[0], x[1])); };
  pr.describe = [](std::span<const double> x) {
    const Complex w = std::polar(x[0], x[1]);
    return NamedValues{{"w_re", w.real()}, {"w_im", w.imag()}};
  };
  return pr;
}

MarginProblem necessity_problem(double p, double q, Complex z) {
  MarginProblem pr;
  pr.id = "necessity";
  pr.grid.axes = {Axis{"beta", 0.0, 2.0 * kPi * 719.0 / 720.0, 720}};
  pr.grid.refine_width = 1e-9;
  pr.fixed = {{"p", p}, {"q", q}, {"z_re", z.real()}, {"z_im", z.imag()}};
  pr.tolerance = 1e-12;
  pr.expect_violation = !is_admissible(p, q, z);
  pr.margin = [p, q, z](std::span<const double> x) { return necessity_margin(p, q, z, std::polar(1.0, x[0])); };
  return pr;
}

MarginProblem cap_problem(int lmax, int grid) {
  require_grid(grid);
  if (lmax < 2) throw InvalidInput("cap scan requires lmax >= 2");
  MarginProblem pr;
  pr.id = "cap";
  pr.grid.axes = {Axis{"l", 2.0, static_cast<double>(lmax), lmax - 1, true}, Axis{"t", 0.0, kHalfPi, grid},
                  unit_axis("a_frac", grid)};
  pr.tolerance = 1e-12;
  auto a_of = [](std::span<const double> x) { return x[2] * (kHalfPi - x[1]); };
  pr.margin = [a_of](std::span<const double> x) {
    return cap_integral_margin(static_cast<int>(x[0]), a_of(x), x[1]);
  };
  pr.describe = [a_of](std::span<const double> x) {
    return NamedValues{{"l", x[0]}, {"a", a_of(x)}, {"t", x[1]}};
  };
  return pr;
}

MarginProblem coefficient_ratio_problem(int lmax, int s_count) {
  if (lmax < 2 || s_count < 1) throw InvalidInput("coefficient ratio scan needs lmax >= 2 and s values");
  MarginProblem pr;
  pr.id = "coeff-ratio";
  pr.grid.axes = {Axis{"l", 2.0, static_cast<double>(lmax), lmax - 1, true}, Axis{"s", 1.01, 1.49, s_count}};
  pr.tolerance = 0.0;
  pr.margin = [](std::span<const double> x) { return coefficient_ratio_check(static_cast<int>(x[0]), x[1]); };
  return pr;
}

MarginProblem mock_logsob_monotonicity_problem(double p) {
  if (!(p > 2.0)) throw InvalidInput("mock log-Sobolev map requires p > 2");
  constexpr int kIntervals = 512;
  const double h = kHalfPi / kIntervals;
  MarginProblem pr;
  pr.id = "mock-logsob";
  pr.grid.axes = {Axis{"x", 0.1, 5.0, 50}, Axis{"theta", 0.0, kHalfPi - h, kIntervals}};
  pr.grid.refine = false;
  pr.fixed = {{"p", p}, {"step", h}};
  pr.tolerance = 1e-9;
  pr.expect_violation = p < 3.0;
  pr.margin = [p, h](std::span<const double> x) { return mock_logsob_slope(p, x[0], x[1], h); };
  return pr;
}

std::vector<std::string> verification_ids() {
  return {"reduced", "two-point", "necessity", "mock-logsob", "series",
          "cap",     "coeff-ratio", "final-chain", "self-improvement", "endgame"};
}

VerificationReport verify(const std::string& id, const VerifyOptions& o, int threads) {
  auto run = [&](MarginProblem pr) {
    pr.grid.refine = pr.grid.refine && o.refine;
    if (o.tolerance) pr.tolerance = *o.tolerance;
    return scan(pr, threads);
  };
  if (id == "reduced") return run(reduced_problem(o.p, o.grid));
  if (id == "series") return run(series_problem(o.p / 2.0, o.grid, o.terms));
  if (id == "final-chain") return run(final_chain_problem(o.p / 2.0, o.grid));
  if (id == "self-improvement") return run(self_improvement_problem(o.p, o.grid));
  if (id == "two-point") return run(two_point_problem(o.p, o.q, o.z, o.grid, o.w_radius));
  if (id == "necessity") return run(necessity_problem(o.p, o.q, o.z));
  if (id == "cap") return run(cap_problem(o.lmax, o.grid));
  if (id == "coeff-ratio") return run(coefficient_ratio_problem(o.lmax, o.grid));
  if (id == "endgame") {
    MarginProblem pr;
    pr.id = "endgame";
    pr.grid.axes = {Axis{"s", 1.0, 1.5, std::max(o.grid, 2)}};
    pr.tolerance = o.tolerance.value_or(0.0);
    pr.margin = [](std::span<const double> x) { return endgame_scalar(x[0]); };
    auto report = scan(pr, threads);
    const bool certificate = endgame_rational_certificate();
    report.pass = report.pass && certificate;
    report.note = certificate ? "3 <= 256/81 holds exactly" : "rational certificate failed";
    return report;
  }
  if (id == "mock-logsob") {
    if (o.p >= 3.0) return run(mock_logsob_monotonicity_problem(o.p));
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.inequality = "mock-logsob";
    report.fixed = {{"p", o.p}};
    report.tolerance = o.tolerance.value_or(1e-6);
    report.expect_violation = true;
    try {
      const auto ce = mock_logsob_counterexample(o.p);
      report.worst_margin = ce.slope;
      report.witness = {{"x", ce.x}, {"theta", ce.theta}, {"slope", ce.slope}};
      report.pass = ce.slope >= -report.tolerance;
      report.note = "counterexample found";
    } catch (const SearchFailure& e) {
      report.pass = true;
      report.note = e.what();
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }
  throw InvalidInput("unknown verification id '" + id + "'");
}

}  // namespace cubehc
