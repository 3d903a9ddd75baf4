#pragma once

// Limited-memory BFGS with a backtracking Armijo line search.

#include <Eigen/Dense>
#include <functional>

namespace dickeent::opt {

/// Returns f(x) and writes the gradient into grad (already sized like x).
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

struct LbfgsOptions {
  int max_iterations = 3000;
  int history = 8;
  double f_tol = 1e-10;  // stop when |f_prev - f| <= f_tol * |f| + 1e-15
  double g_tol = 1e-10;  // or when max |grad| <= g_tol
};

struct LbfgsResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

LbfgsResult lbfgs_minimize(const Objective& f, Eigen::VectorXd x0, const LbfgsOptions& opts = {});

}  // namespace dickeent::opt
