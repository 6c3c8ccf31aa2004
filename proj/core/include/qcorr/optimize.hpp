#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

/// Optimizer knobs shared by every search in the library. `evaluations` is the total budget of
/// objective evaluations (a value-plus-gradient call counts as one) split evenly over restarts.
struct Budget {
  int evaluations = 20000;
  int restarts = 32;
  std::uint64_t seed = 1;
  /// A run stops once its best value improved by less than `tolerance` over `window` iterations.
  double tolerance = 1e-7;
  int window = 50;
};

template <class Argument>
struct OptimizationResult {
  double value = 0.0;
  Argument argument{};
  int restarts_used = 0;
  int evaluations = 0;
  bool converged = false;
  /// Spread between the best and the runner-up restart; zero with a single restart.
  double gap_estimate = 0.0;
  /// Best value after each restart, in restart order (monotone by construction).
  std::vector<double> best_so_far;
};

/// Minimization over the Stiefel manifold {V : V^dagger V = I} of complex rows x cols matrices.
struct StiefelProblem {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::function<double(const Matrix&)> value;
  /// Optional analytic Euclidean gradient G = 2 dF/d conj(V), so dF = Re tr(G^dagger dV).
  /// When empty the gradient comes from central differences with step kFiniteDifferenceStep.
  std::function<double(const Matrix&, Matrix&)> value_and_gradient;
};

inline constexpr double kFiniteDifferenceStep = 1e-5;

struct StiefelRun {
  Matrix argmin;
  double value = 0.0;
  int evaluations = 0;
  int iterations = 0;
  bool converged = false;
};

/// Riemannian conjugate gradient (Polak-Ribiere+, projection transport, polar retraction,
/// Armijo backtracking) started from `start`.
StiefelRun minimize_on_stiefel(const StiefelProblem& problem, Matrix start, int max_evaluations,
                               double tolerance, int window);

/// Central-difference Euclidean gradient in the convention of StiefelProblem.
Matrix numerical_gradient(const std::function<double(const Matrix&)>& f, const Matrix& v,
                          double step = kFiniteDifferenceStep);

/// Tangent projection G - V herm(V^dagger G).
Matrix project_tangent(const Matrix& v, const Matrix& g);

/// Worker count: MONOGAMY_THREADS if set and positive, otherwise hardware concurrency.
unsigned worker_count();

/// Runs fn(0..n-1) on up to worker_count() threads; results are returned in index order.
template <class T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn);

/// Multi-start driver: restart i begins from starts[i] when i < starts.size(), otherwise from a
/// Haar-random isometry seeded by mix_seed(budget.seed, i). Restarts run concurrently and are
/// merged in index order, so the result is deterministic.
struct MultiStart {
  StiefelRun best;
  std::vector<double> restart_values;
  std::vector<double> best_so_far;
  int evaluations = 0;
  bool converged = false;
  double gap_estimate = 0.0;
};

MultiStart multistart_stiefel(const StiefelProblem& problem, const std::vector<Matrix>& starts,
                              const Budget& budget);

}  // namespace qcorr

#include "qcorr/detail/parallel_impl.hpp"
