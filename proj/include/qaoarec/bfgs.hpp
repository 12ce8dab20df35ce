#pragma once

#include <functional>
#include <limits>
#include <string>

#include <Eigen/Dense>

namespace qaoarec {

struct BfgsOptions {
  int max_iterations = 200;
  double gradient_tolerance = 1e-8;
  // Stop once an accepted step lowers f by less than this (relative to max(1, |f|)).
  double function_tolerance = 1e-12;
  double c1 = 1e-4;  // sufficient decrease
  double c2 = 0.9;   // curvature (strong Wolfe)
  int max_line_search_steps = 40;
  // Hard cap on objective evaluations (gradient evaluations are not counted).
  long max_objective_evals = std::numeric_limits<long>::max();
};

enum class BfgsStatus {
  GradientConverged,
  FunctionConverged,
  MaxIterations,
  LineSearchFailed,
  EvaluationBudget,
  NonFinite,
};

std::string to_string(BfgsStatus status);

struct BfgsResult {
  Eigen::VectorXd x;
  double f = std::numeric_limits<double>::infinity();
  double f_initial = std::numeric_limits<double>::infinity();
  int iterations = 0;
  long objective_evals = 0;
  long gradient_evals = 0;
  BfgsStatus status = BfgsStatus::MaxIterations;
};

using ScalarFunction = std::function<double(const Eigen::VectorXd&)>;
using GradientFunction = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Central-difference gradient: 2 * dim evaluations of f.
Eigen::VectorXd central_difference_gradient(const ScalarFunction& f, const Eigen::VectorXd& x, double step = 1e-6);

// Unconstrained quasi-Newton minimization: inverse-Hessian BFGS update with a
// strong-Wolfe line search. The returned point is the best one evaluated, so
// f <= f_initial always holds.
BfgsResult minimize_bfgs(const ScalarFunction& f, const GradientFunction& grad, const Eigen::VectorXd& x0,
                         const BfgsOptions& options = {});

}  // namespace qaoarec
