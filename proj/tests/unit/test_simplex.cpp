#include <functional>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "cubehc/errors.hpp"
#include "cubehc/rng.hpp"
#include "cubehc/simplex.hpp"

using namespace cubehc;

namespace {

// Brute force over all bases of size m: the optimum of a feasible bounded LP
// sits at a basic feasible solution.
double brute_force(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const int m = static_cast<int>(A.rows()), n = static_cast<int>(A.cols());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> idx(m);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == m) {
      Eigen::MatrixXd B(m, m);
      for (int k = 0; k < m; ++k) B.col(k) = A.col(idx[k]);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
      if (lu.rank() < m) return;
      const Eigen::VectorXd x = lu.solve(b);
      if (x.minCoeff() < -1e-12) return;
      best = std::min(best, x.sum());
      return;
    }
    for (int j = start; j < n; ++j) {
      idx[depth] = j;
      rec(j + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST(Simplex, SmallExample) {
  Eigen::MatrixXd A(2, 3);
  A << 1, 0, 1,
       0, 1, 1;
  Eigen::VectorXd b(2);
  b << 1, 1;
  const auto r = solve_unit_cost_lp(A, b);
  EXPECT_NEAR(r.objective, 1.0, 1e-12);
  EXPECT_NEAR(r.x(2), 1.0, 1e-12);
  EXPECT_NEAR(b.dot(r.prices), 1.0, 1e-12);
}

TEST(Simplex, MatchesBruteForceAndDuality) {
  for (int c = 0; c < 40; ++c) {
    Rng rng(stream_seed(7, c));
    const int m = 2 + c % 3, n = 6 + c % 5;
    Eigen::MatrixXd A(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
    // b inside the cone of the columns
    Eigen::VectorXd w(n);
    for (int j = 0; j < n; ++j) w(j) = rng.uniform();
    const Eigen::VectorXd b = A * w;
    const auto r = solve_unit_cost_lp(A, b);
    SCOPED_TRACE(c);
    EXPECT_NEAR(r.objective, brute_force(A, b), 1e-9);
    EXPECT_GE(r.x.minCoeff(), -1e-12);
    EXPECT_LE((A * r.x - b).lpNorm<Eigen::Infinity>(), 1e-9);
    EXPECT_LE((A.transpose() * r.prices).maxCoeff(), 1.0 + 1e-9);
    EXPECT_NEAR(b.dot(r.prices), r.objective, 1e-9);
  }
}

TEST(Simplex, DegenerateAndNegativeRhs) {
  Eigen::MatrixXd A(2, 4);
  A << 1, -1, 0, 0,
       0, 0, 1, -1;
  Eigen::VectorXd b(2);
  b << -2, 0;
  const auto r = solve_unit_cost_lp(A, b);
  EXPECT_NEAR(r.objective, 2.0, 1e-12);
  EXPECT_NEAR(r.x(1), 2.0, 1e-12);
}

TEST(Simplex, Infeasible) {
  Eigen::MatrixXd A(2, 2);
  A << 1, 0,
       0, 1;
  Eigen::VectorXd b(2);
  b << 1, -1;
  EXPECT_THROW(solve_unit_cost_lp(A, b), FeasibilityError);
}
