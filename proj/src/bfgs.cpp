#include "qaoarec/bfgs.hpp"

#include <algorithm>
#include <cmath>

namespace qaoarec {

std::string to_string(BfgsStatus status) {
  switch (status) {
    case BfgsStatus::GradientConverged: return "gradient_converged";
    case BfgsStatus::FunctionConverged: return "function_converged";
    case BfgsStatus::MaxIterations: return "max_iterations";
    case BfgsStatus::LineSearchFailed: return "line_search_failed";
    case BfgsStatus::EvaluationBudget: return "evaluation_budget";
    case BfgsStatus::NonFinite: return "non_finite";
  }
  return "unknown";
}

Eigen::VectorXd central_difference_gradient(const ScalarFunction& f, const Eigen::VectorXd& x, double step) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd xp = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    xp(k) = x(k) + step;
    const double fp = f(xp);
    xp(k) = x(k) - step;
    const double fm = f(xp);
    xp(k) = x(k);
    g(k) = (fp - fm) / (2.0 * step);
  }
  return g;
}

namespace {

struct BudgetExceeded {};
struct NonFiniteValue {};

// Wraps f and grad with evaluation counting and the objective budget.
class Counted {
 public:
  Counted(const ScalarFunction& f, const GradientFunction& g, long budget) : f_(f), g_(g), budget_(budget) {}

  double value(const Eigen::VectorXd& x) {
    if (objective_evals >= budget_) throw BudgetExceeded{};
    ++objective_evals;
    const double v = f_(x);
    if (!std::isfinite(v)) throw NonFiniteValue{};
    if (v < best_f) {
      best_f = v;
      best_x = x;
    }
    return v;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) {
    ++gradient_evals;
    Eigen::VectorXd g = g_(x);
    if (!g.allFinite()) throw NonFiniteValue{};
    return g;
  }

  long objective_evals = 0;
  long gradient_evals = 0;
  double best_f = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x;

 private:
  const ScalarFunction& f_;
  const GradientFunction& g_;
  long budget_;
};

struct LinePoint {
  double alpha = 0.0;
  double phi = 0.0;
  double dphi = 0.0;
};

struct LineSearchResult {
  bool ok = false;
  LinePoint point;
  Eigen::VectorXd x;
  Eigen::VectorXd g;
};

// Minimizer of the quadratic through (lo.phi, lo.dphi) and hi.phi, safeguarded
// to the interior of the bracket.
double interpolate(const LinePoint& lo, const LinePoint& hi) {
  const double d = hi.alpha - lo.alpha;
  const double denom = 2.0 * (hi.phi - lo.phi - lo.dphi * d);
  double a = lo.alpha + 0.5 * d;
  if (denom != 0.0) a = lo.alpha - lo.dphi * d * d / denom;
  const double left = std::min(lo.alpha, hi.alpha), right = std::max(lo.alpha, hi.alpha);
  const double margin = 0.1 * (right - left);
  if (!(a > left + margin && a < right - margin)) a = lo.alpha + 0.5 * d;
  return a;
}

LineSearchResult strong_wolfe(Counted& fn, const Eigen::VectorXd& x, const Eigen::VectorXd& p, double phi0,
                              double dphi0, double alpha_init, const BfgsOptions& opt) {
  LineSearchResult res;
  auto probe = [&](double alpha, bool need_grad) {
    LinePoint lp;
    lp.alpha = alpha;
    res.x = x + alpha * p;
    lp.phi = fn.value(res.x);
    if (need_grad) {
      res.g = fn.gradient(res.x);
      lp.dphi = res.g.dot(p);
    }
    return lp;
  };

  auto zoom = [&](LinePoint lo, LinePoint hi, int steps_left) {
    for (; steps_left > 0; --steps_left) {
      const double a = interpolate(lo, hi);
      LinePoint trial = probe(a, false);
      if (trial.phi > phi0 + opt.c1 * a * dphi0 || trial.phi >= lo.phi) {
        hi = trial;
        continue;
      }
      res.g = fn.gradient(res.x);
      trial.dphi = res.g.dot(p);
      if (std::abs(trial.dphi) <= -opt.c2 * dphi0) {
        res.ok = true;
        res.point = trial;
        return;
      }
      if (trial.dphi * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
      lo = trial;
      if (std::abs(hi.alpha - lo.alpha) < 1e-16) break;
    }
    // Accept the best sufficient-decrease point found even if curvature failed.
    if (lo.alpha > 0.0) {
      res.x = x + lo.alpha * p;
      res.g = fn.gradient(res.x);
      res.point = lo;
      res.point.dphi = res.g.dot(p);
      res.ok = true;
    }
  };

  LinePoint prev{0.0, phi0, dphi0};
  double alpha = alpha_init;
  for (int i = 0; i < opt.max_line_search_steps; ++i) {
    LinePoint cur = probe(alpha, false);
    if (cur.phi > phi0 + opt.c1 * alpha * dphi0 || (i > 0 && cur.phi >= prev.phi)) {
      zoom(prev, cur, opt.max_line_search_steps - i);
      return res;
    }
    res.g = fn.gradient(res.x);
    cur.dphi = res.g.dot(p);
    if (std::abs(cur.dphi) <= -opt.c2 * dphi0) {
      res.ok = true;
      res.point = cur;
      return res;
    }
    if (cur.dphi >= 0.0) {
      zoom(cur, prev, opt.max_line_search_steps - i);
      return res;
    }
    prev = cur;
    alpha *= 2.0;
  }
  return res;
}

}  // namespace

BfgsResult minimize_bfgs(const ScalarFunction& f, const GradientFunction& grad, const Eigen::VectorXd& x0,
                         const BfgsOptions& opt) {
  Counted fn(f, grad, opt.max_objective_evals);
  BfgsResult out;
  const Eigen::Index dim = x0.size();
  out.x = x0;

  auto finish = [&](BfgsStatus status) {
    out.status = status;
    if (fn.best_x.size() == dim) {
      out.x = fn.best_x;
      out.f = fn.best_f;
    }
    out.objective_evals = fn.objective_evals;
    out.gradient_evals = fn.gradient_evals;
    return out;
  };

  try {
    Eigen::VectorXd x = x0;
    double fx = fn.value(x);
    out.f_initial = fx;
    Eigen::VectorXd g = fn.gradient(x);
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(dim, dim);
    bool scaled = false;

    for (int it = 0; it < opt.max_iterations; ++it) {
      out.iterations = it;
      if (g.norm() <= opt.gradient_tolerance) return finish(BfgsStatus::GradientConverged);

      Eigen::VectorXd p = -H * g;
      double dphi0 = g.dot(p);
      if (!(dphi0 < 0.0)) {
        H.setIdentity();
        p = -g;
        dphi0 = g.dot(p);
      }
      const double alpha0 = scaled ? 1.0 : std::min(1.0, 1.0 / g.lpNorm<Eigen::Infinity>());
      LineSearchResult ls = strong_wolfe(fn, x, p, fx, dphi0, alpha0, opt);
      if (!ls.ok) return finish(BfgsStatus::LineSearchFailed);

      const Eigen::VectorXd s = ls.x - x;
      const Eigen::VectorXd y = ls.g - g;
      const double decrease = fx - ls.point.phi;
      x = ls.x;
      g = ls.g;
      fx = ls.point.phi;

      const double sy = s.dot(y);
      if (sy > 1e-12 * s.norm() * y.norm()) {
        if (!scaled) {
          H *= sy / y.squaredNorm();
          scaled = true;
        }
        const double rho = 1.0 / sy;
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(dim, dim);
        H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) + rho * s * s.transpose();
      }
      if (decrease <= opt.function_tolerance * std::max(1.0, std::abs(fx))) {
        out.iterations = it + 1;
        return finish(g.norm() <= opt.gradient_tolerance ? BfgsStatus::GradientConverged
                                                         : BfgsStatus::FunctionConverged);
      }
    }
    out.iterations = opt.max_iterations;
    return finish(BfgsStatus::MaxIterations);
  } catch (const BudgetExceeded&) {
    return finish(BfgsStatus::EvaluationBudget);
  } catch (const NonFiniteValue&) {
    return finish(BfgsStatus::NonFinite);
  }
}

}  // namespace qaoarec
