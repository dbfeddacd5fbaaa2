#include "cubehc/scan.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "cubehc/errors.hpp"

namespace cubehc {
namespace {

struct Best {
  double margin = std::numeric_limits<double>::infinity();
  long long index = -1;
  std::vector<double> point;
};

// NaN margins rank below everything so a broken evaluation is never hidden.
double rank(double m) { return std::isnan(m) ? -std::numeric_limits<double>::infinity() : m; }

bool better(double m, long long idx, const Best& b) {
  const double r = rank(m);
  const double rb = rank(b.margin);
  if (b.index < 0) return true;
  if (r != rb) return r < rb;
  return idx < b.index;
}

void unflatten(const GridSpec& grid, long long flat, std::vector<double>& point) {
  for (std::size_t d = grid.axes.size(); d-- > 0;) {
    const auto& ax = grid.axes[d];
    point[d] = ax.at(static_cast<int>(flat % ax.count));
    flat /= ax.count;
  }
}

}  // namespace

double Axis::at(int i) const {
  const double v = count > 1 ? min + (max - min) * static_cast<double>(i) / (count - 1) : min;
  return integer ? std::round(v) : v;
}

long long GridSpec::size() const {
  if (axes.empty()) return 0;
  long long n = 1;
  for (const auto& ax : axes) n *= std::max(ax.count, 0);
  return n;
}

VerificationReport scan(const MarginProblem& problem, int threads) {
  const auto start = std::chrono::steady_clock::now();
  const GridSpec& grid = problem.grid;
  if (grid.size() <= 0) throw InvalidInput("scan grid for '" + problem.id + "' is empty");
  for (const auto& ax : grid.axes) {
    if (!(ax.max >= ax.min)) throw InvalidInput("axis '" + ax.name + "' has max < min");
  }
  if (!problem.margin) throw InvalidInput("scan problem '" + problem.id + "' has no margin function");

  const long long total = grid.size();
  const int workers = static_cast<int>(std::clamp<long long>(threads, 1, total));
  std::vector<Best> partial(static_cast<std::size_t>(workers));
  auto run = [&](int w) {
    const long long begin = total * w / workers;
    const long long end = total * (w + 1) / workers;
    std::vector<double> point(grid.axes.size());
    Best& best = partial[static_cast<std::size_t>(w)];
    for (long long i = begin; i < end; ++i) {
      unflatten(grid, i, point);
      const double m = problem.margin(point);
      if (better(m, i, best)) best = {m, i, point};
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  Best best;
  for (const auto& b : partial) {
    if (b.index >= 0 && better(b.margin, b.index, best)) best = b;
  }
  long long evaluated = total;

  if (grid.refine) {
    // Zoom on the worst cell: +/- one cell, five points per axis, halve, repeat.
    std::vector<double> half(grid.axes.size());
    bool any = false;
    for (std::size_t d = 0; d < grid.axes.size(); ++d) {
      const auto& ax = grid.axes[d];
      half[d] = (ax.integer || ax.count < 2) ? 0.0 : ax.spacing();
      any = any || half[d] > 0.0;
    }
    long long serial = total;
    while (any) {
      const std::vector<double> centre = best.point;
      const std::size_t dims = half.size();
      long long combos = 1;
      for (std::size_t d = 0; d < dims; ++d) combos *= half[d] > 0.0 ? 5 : 1;
      std::vector<double> point(dims);
      for (long long c = 0; c < combos; ++c) {
        long long rem = c;
        for (std::size_t d = 0; d < dims; ++d) {
          if (half[d] > 0.0) {
            const auto& ax = grid.axes[d];
            const int k = static_cast<int>(rem % 5) - 2;
            rem /= 5;
            point[d] = std::clamp(centre[d] + k * half[d] / 2.0, ax.min, ax.max);
          } else {
            point[d] = centre[d];
          }
        }
        const double m = problem.margin(point);
        ++evaluated;
        if (rank(m) < rank(best.margin)) best = {m, serial, point};
        ++serial;
      }
      any = false;
      for (auto& h : half) {
        if (h > 0.0) {
          h /= 2.0;
          any = any || h >= grid.refine_width;
        }
      }
    }
  }

  VerificationReport report;
  report.inequality = problem.id;
  report.grid = grid;
  report.fixed = problem.fixed;
  report.evaluated = evaluated;
  report.worst_margin = best.margin;
  if (problem.describe) {
    report.witness = problem.describe(best.point);
  } else {
    for (std::size_t d = 0; d < grid.axes.size(); ++d) report.witness.emplace_back(grid.axes[d].name, best.point[d]);
  }
  report.tolerance = problem.tolerance;
  report.pass = !std::isnan(best.margin) && best.margin >= -problem.tolerance;
  report.expect_violation = problem.expect_violation;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace cubehc
