#include "qcorr/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace qcorr {

namespace {

double inner(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace().real(); }

class Evaluator {
 public:
  Evaluator(const StiefelProblem& p, int limit) : problem_(p), limit_(limit) {}

  bool exhausted() const { return used_ >= limit_; }
  int used() const { return used_; }

  double value(const Matrix& v) {
    ++used_;
    return problem_.value(v);
  }

  double value_and_gradient(const Matrix& v, Matrix& grad) {
    if (problem_.value_and_gradient) {
      ++used_;
      return problem_.value_and_gradient(v, grad);
    }
    const double f = value(v);
    grad = numerical_gradient(problem_.value, v);
    used_ += static_cast<int>(4 * v.size());
    return f;
  }

 private:
  const StiefelProblem& problem_;
  int limit_;
  int used_ = 0;
};

}  // namespace

Matrix project_tangent(const Matrix& v, const Matrix& g) {
  const Matrix vg = v.adjoint() * g;
  return g - v * (0.5 * (vg + vg.adjoint()));
}

Matrix numerical_gradient(const std::function<double(const Matrix&)>& f, const Matrix& v, double step) {
  Matrix grad(v.rows(), v.cols());
  Matrix probe = v;
  for (Eigen::Index j = 0; j < v.cols(); ++j)
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const Complex orig = v(i, j);
      probe(i, j) = orig + Complex(step, 0);
      const double fxp = f(probe);
      probe(i, j) = orig - Complex(step, 0);
      const double fxm = f(probe);
      probe(i, j) = orig + Complex(0, step);
      const double fyp = f(probe);
      probe(i, j) = orig - Complex(0, step);
      const double fym = f(probe);
      probe(i, j) = orig;
      grad(i, j) = Complex((fxp - fxm) / (2 * step), (fyp - fym) / (2 * step));
    }
  return grad;
}

StiefelRun minimize_on_stiefel(const StiefelProblem& problem, Matrix start, int max_evaluations,
                               double tolerance, int window) {
  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-14;
  constexpr double kGradFloor = 1e-12;

  Evaluator eval(problem, std::max(max_evaluations, 1));
  StiefelRun run;
  Matrix v = polar_isometry(start);
  Matrix egrad;
  double f = eval.value_and_gradient(v, egrad);
  Matrix g = project_tangent(v, egrad);
  Matrix d = -g;
  double t = 0.0;
  std::vector<double> history{f};

  while (!eval.exhausted()) {
    const double gnorm2 = inner(g, g);
    if (std::sqrt(gnorm2) < kGradFloor) {
      run.converged = true;
      break;
    }
    double slope = inner(g, d);
    if (slope >= 0) {
      d = -g;
      slope = -gnorm2;
    }
    const double dnorm = std::sqrt(inner(d, d));
    if (t <= 0) t = 0.2 / dnorm;
    t = std::min(t, 1.0 / dnorm);

    bool accepted = false;
    Matrix v_new;
    double f_new = f;
    Matrix egrad_new;
    while (!eval.exhausted() && t * dnorm > kMinStep) {
      v_new = polar_isometry(v + t * d);
      f_new = eval.value_and_gradient(v_new, egrad_new);
      if (f_new <= f + kArmijo * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (d.isApprox(-g)) {
        // no descent along the gradient at machine resolution
        run.converged = true;
        break;
      }
      d = -g;
      t = 0.0;
      continue;
    }

    const Matrix g_new = project_tangent(v_new, egrad_new);
    const Matrix g_old_t = project_tangent(v_new, g);
    const Matrix d_old_t = project_tangent(v_new, d);
    const double beta = std::max(0.0, inner(g_new, g_new - g_old_t) / gnorm2);
    d = -g_new + beta * d_old_t;
    v = std::move(v_new);
    g = g_new;
    f = f_new;
    t *= 2.0;
    ++run.iterations;
    history.push_back(f);
    if (static_cast<int>(history.size()) > window &&
        history[history.size() - 1 - static_cast<std::size_t>(window)] - f < tolerance) {
      run.converged = true;
      break;
    }
  }
  run.argmin = std::move(v);
  run.value = f;
  run.evaluations = eval.used();
  return run;
}

unsigned worker_count() {
  if (const char* env = std::getenv("MONOGAMY_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

MultiStart multistart_stiefel(const StiefelProblem& problem, const std::vector<Matrix>& starts,
                              const Budget& budget) {
  const int restarts = std::max<int>(std::max(budget.restarts, 1), static_cast<int>(starts.size()));
  const int per_run = std::max(budget.evaluations / restarts, 1);
  const auto runs = parallel_map<StiefelRun>(restarts, [&](int i) {
    Matrix start;
    if (i < static_cast<int>(starts.size())) {
      start = starts[static_cast<std::size_t>(i)];
    } else {
      Rng rng(mix_seed(budget.seed, static_cast<std::uint64_t>(i)));
      start = haar_isometry(problem.rows, problem.cols, rng);
    }
    return minimize_on_stiefel(problem, std::move(start), per_run, budget.tolerance, budget.window);
  });

  MultiStart out;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    out.restart_values.push_back(runs[i].value);
    out.evaluations += runs[i].evaluations;
    if (runs[i].value < best) {
      best = runs[i].value;
      best_index = i;
    }
    out.best_so_far.push_back(best);
  }
  out.best = runs[best_index];
  out.converged = runs[best_index].converged;
  double runner_up = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (i != best_index) runner_up = std::min(runner_up, runs[i].value);
  out.gap_estimate = std::isfinite(runner_up) ? runner_up - best : 0.0;
  return out;
}

}  // namespace qcorr
