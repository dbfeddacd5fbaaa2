#include "cubehc/simplex.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cubehc/errors.hpp"

namespace cubehc {
namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-11;
constexpr int kReinvertEvery = 40;
constexpr int kDegenerateRun = 50;

// Columns 0..n-1 are structural, n..n+m-1 artificial (unit vectors, row sign folded into b).
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) : A_(A), m_(A.rows()), n_(A.cols()) {
    sign_ = Eigen::VectorXd::Ones(m_);
    for (int i = 0; i < m_; ++i) {
      if (b(i) < 0.0) sign_(i) = -1.0;
    }
    rhs_ = sign_.cwiseProduct(b);
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
    binv_ = Eigen::MatrixXd::Identity(m_, m_);
    xb_ = rhs_;
  }

  Eigen::VectorXd column(int j) const {
    if (j < n_) return sign_.cwiseProduct(A_.col(j));
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m_);
    e(j - n_) = 1.0;
    return e;
  }

  // Minimizes cost over the current basis; `allowed` masks columns that may enter.
  int optimize(const std::vector<double>& cost, const std::vector<char>& allowed, int budget) {
    int iter = 0;
    int degenerate = 0;
    for (; iter < budget; ++iter) {
      Eigen::VectorXd cb(m_);
      for (int i = 0; i < m_; ++i) cb(i) = cost[basis_[i]];
      const Eigen::VectorXd y = binv_.transpose() * cb;
      const Eigen::VectorXd reduced_struct = Eigen::VectorXd::Map(cost.data(), n_) - A_.transpose() * sign_.cwiseProduct(y);

      int enter = -1;
      double best = -kCostTol;
      const bool bland = degenerate >= kDegenerateRun;
      for (int j = 0; j < n_ + m_; ++j) {
        if (!allowed[j] || in_basis(j)) continue;
        const double rc = j < n_ ? reduced_struct(j) : cost[j] - y(j - n_);
        if (rc < best) {
          best = rc;
          enter = j;
          if (bland) break;
        }
      }
      if (enter < 0) return iter;

      const Eigen::VectorXd d = binv_ * column(enter);
      int leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (d(i) > kPivotTol) {
          const double r = std::max(xb_(i), 0.0) / d(i);
          if (r < ratio - 1e-14 || (r <= ratio + 1e-14 && leave >= 0 && basis_[i] < basis_[leave])) {
            ratio = r;
            leave = i;
          }
        }
      }
      if (leave < 0) throw NumericError("simplex: unbounded direction in a bounded problem");
      degenerate = ratio <= 1e-14 ? degenerate + 1 : 0;
      pivot(leave, enter, d);
      if ((iter + 1) % kReinvertEvery == 0) reinvert();
    }
    return -1;
  }

  void pivot(int leave, int enter, const Eigen::VectorXd& d) {
    const double piv = d(leave);
    const Eigen::RowVectorXd row = binv_.row(leave) / piv;
    const double step = xb_(leave) / piv;
    for (int i = 0; i < m_; ++i) {
      if (i == leave) continue;
      binv_.row(i) -= d(i) * row;
      xb_(i) -= d(i) * step;
    }
    binv_.row(leave) = row;
    xb_(leave) = step;
    basis_[leave] = enter;
  }

  void reinvert() {
    Eigen::MatrixXd B(m_, m_);
    for (int i = 0; i < m_; ++i) B.col(i) = column(basis_[i]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    binv_ = lu.inverse();
    xb_ = binv_ * rhs_;
  }

  bool in_basis(int j) const {
    for (int b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  // Pivots zero-level artificials out of the basis where a structural column allows it.
  void expel_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      const Eigen::RowVectorXd row = binv_.row(i);
      for (int j = 0; j < n_; ++j) {
        if (in_basis(j)) continue;
        if (std::abs(row.dot(column(j))) > 1e-8) {
          pivot(i, j, binv_ * column(j));
          break;
        }
      }
    }
    reinvert();
  }

  int m_rows() const { return m_; }
  int n_cols() const { return n_; }
  const std::vector<int>& basis() const { return basis_; }
  const Eigen::VectorXd& xb() const { return xb_; }
  const Eigen::MatrixXd& binv() const { return binv_; }
  const Eigen::VectorXd& sign() const { return sign_; }

 private:
  const Eigen::MatrixXd& A_;
  int m_;
  int n_;
  Eigen::VectorXd sign_;
  Eigen::VectorXd rhs_;
  std::vector<int> basis_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
};

}  // namespace

SimplexResult solve_unit_cost_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iterations) {
  if (A.rows() != b.size()) throw InvalidInput("simplex: row count mismatch");
  if (A.cols() == 0) throw FeasibilityError("simplex: no columns");
  Tableau tab(A, b);
  const int n = tab.n_cols();
  const int m = tab.m_rows();

  std::vector<double> phase1(n + m, 0.0);
  for (int i = 0; i < m; ++i) phase1[n + i] = 1.0;
  std::vector<char> all(n + m, 1);
  const int it1 = tab.optimize(phase1, all, max_iterations);
  if (it1 < 0) throw NumericError("simplex: phase I iteration cap reached");
  double infeasibility = 0.0;
  for (int i = 0; i < m; ++i) {
    if (tab.basis()[i] >= n) infeasibility += std::abs(tab.xb()(i));
  }
  if (infeasibility > 1e-9 * (1.0 + b.lpNorm<Eigen::Infinity>())) {
    throw FeasibilityError("simplex: moments are not representable on the candidate set (phase I residual " +
                           std::to_string(infeasibility) + ")");
  }
  tab.expel_artificials();

  std::vector<double> phase2(n + m, 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = 1.0;
  std::vector<char> structural(n + m, 0);
  for (int j = 0; j < n; ++j) structural[j] = 1;
  const int it2 = tab.optimize(phase2, structural, max_iterations);
  if (it2 < 0) throw NumericError("simplex: phase II iteration cap reached");
  tab.reinvert();

  SimplexResult res;
  res.iterations = it1 + it2;
  res.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (tab.basis()[i] < n) res.x(tab.basis()[i]) = std::max(tab.xb()(i), 0.0);
  }
  Eigen::VectorXd cb(m);
  for (int i = 0; i < m; ++i) cb(i) = tab.basis()[i] < n ? 1.0 : 0.0;
  res.prices = tab.sign().cwiseProduct(tab.binv().transpose() * cb);
  res.objective = res.x.sum();
  return res;
}

}  // namespace cubehc
