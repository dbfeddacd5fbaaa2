#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cubehc {

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int count = 1;
  bool integer = false;  // values are rounded; the axis is never refined

  double at(int i) const;
  double spacing() const { return count > 1 ? (max - min) / (count - 1) : 0.0; }
};

struct GridSpec {
  std::vector<Axis> axes;
  bool refine = true;
  double refine_width = 1e-4;  // stop zooming once every refined cell is narrower

  long long size() const;
};

/// Named parameter values, in a fixed order, for reproducing a point.
using NamedValues = std::vector<std::pair<std::string, double>>;

struct MarginProblem {
  std::string id;
  GridSpec grid;
  NamedValues fixed;  // parameters held constant over the scan (p, q, ...)
  double tolerance = 1e-10;
  bool expect_violation = false;
  std::function<double(std::span<const double>)> margin;
  // Maps grid coordinates to the full parameter tuple; defaults to the axis values.
  std::function<NamedValues(std::span<const double>)> describe;
};

/// Outcome of a scan: worst margin with the point that produced it.
/// pass <=> worst_margin >= -tolerance.
struct VerificationReport {
  std::string inequality;
  GridSpec grid;
  NamedValues fixed;
  long long evaluated = 0;
  double worst_margin = 0.0;
  NamedValues witness;
  double tolerance = 0.0;
  bool pass = false;
  bool expect_violation = false;
  double seconds = 0.0;
  std::string note;

  bool as_expected() const { return pass != expect_violation; }
};

/// Evaluates the margin over the Cartesian grid, then (optionally) zooms in on
/// the worst cell. Grid cells are split across `threads` workers; the result
/// does not depend on the worker count.
VerificationReport scan(const MarginProblem& problem, int threads = 1);

}  // namespace cubehc
