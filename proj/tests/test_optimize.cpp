#include <gtest/gtest.h>

#include <cstdlib>

#include "qcorr/linalg.hpp"
#include "qcorr/optimize.hpp"

using namespace qcorr;

namespace {

// f(V) = -Re tr(A^dagger V); its minimum over isometries is minus the nuclear norm of A.
StiefelProblem trace_problem(const Matrix& a, bool analytic) {
  StiefelProblem p;
  p.rows = a.rows();
  p.cols = a.cols();
  p.value = [a](const Matrix& v) { return -(a.adjoint() * v).trace().real(); };
  if (analytic)
    p.value_and_gradient = [a](const Matrix& v, Matrix& g) {
      g = -a;
      return -(a.adjoint() * v).trace().real();
    };
  return p;
}

double nuclear_norm(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

}  // namespace

TEST(Linalg, HaarIsometryIsOrthonormal) {
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    const Matrix v = haar_isometry(6, 3, rng);
    EXPECT_LE(isometry_defect(v), 1e-13);
  }
}

TEST(Linalg, PolarIsometryOfIsometryIsItself) {
  Rng rng(2);
  const Matrix v = haar_isometry(5, 2, rng);
  EXPECT_LE(max_abs(polar_isometry(v) - v), 1e-12);
  const Matrix m = ginibre_matrix(5, 2, rng);
  EXPECT_LE(isometry_defect(polar_isometry(m)), 1e-12);
}

TEST(Linalg, EighIsDescendingAndReconstructs) {
  Rng rng(3);
  const Matrix g = ginibre_matrix(4, 4, rng);
  const Matrix h = g + g.adjoint();
  const HermitianEig e = eigh(h);
  for (Eigen::Index i = 1; i < 4; ++i) EXPECT_GE(e.values(i - 1), e.values(i));
  EXPECT_LE(max_abs(e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint() - h), 1e-12);
  const Matrix r = sqrtm_psd(g * g.adjoint());
  EXPECT_LE(max_abs(r * r - g * g.adjoint()), 1e-10);
}

TEST(Linalg, KronAndSeeds) {
  Matrix a(1, 2), b(2, 1);
  a << 1.0, 2.0;
  b << 3.0, 4.0;
  const Matrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 2);
  ASSERT_EQ(k.cols(), 2);
  EXPECT_EQ(k(1, 1), Complex(8.0));
  EXPECT_EQ(mix_seed(1, 2), mix_seed(1, 2));
  EXPECT_NE(mix_seed(1, 2), mix_seed(2, 1));
}

TEST(NumericalGradient, MatchesDirectionalDerivative) {
  Rng rng(4);
  const Matrix a = ginibre_matrix(4, 2, rng);
  const auto f = [&](const Matrix& v) { return (v.adjoint() * a * a.adjoint() * v).trace().real(); };
  const Matrix v = haar_isometry(4, 2, rng);
  const Matrix g = numerical_gradient(f, v);
  const Matrix d = ginibre_matrix(4, 2, rng);
  const double t = 1e-6;
  const double fd = (f(v + t * d) - f(v - t * d)) / (2 * t);
  EXPECT_NEAR((g.adjoint() * d).trace().real(), fd, 1e-6);
  // closed form: G = 2 A A^dagger V
  EXPECT_LE(max_abs(g - 2.0 * a * a.adjoint() * v), 1e-6);
}

TEST(Stiefel, TangentProjectionIsTangent) {
  Rng rng(5);
  const Matrix v = haar_isometry(5, 2, rng);
  const Matrix t = project_tangent(v, ginibre_matrix(5, 2, rng));
  const Matrix s = v.adjoint() * t;
  EXPECT_LE(max_abs(s + s.adjoint()), 1e-12);
}

TEST(Stiefel, ReachesNuclearNormAnalytic) {
  Rng rng(6);
  const Matrix a = ginibre_matrix(6, 3, rng);
  const StiefelRun r = minimize_on_stiefel(trace_problem(a, true), haar_isometry(6, 3, rng), 4000, 1e-12, 50);
  EXPECT_NEAR(r.value, -nuclear_norm(a), 1e-6);
  EXPECT_LE(isometry_defect(r.argmin), 1e-10);
  EXPECT_LE(r.evaluations, 4000);
}

TEST(Stiefel, ReachesNuclearNormWithFiniteDifferences) {
  Rng rng(7);
  const Matrix a = ginibre_matrix(4, 2, rng);
  const StiefelRun r = minimize_on_stiefel(trace_problem(a, false), haar_isometry(4, 2, rng), 20000, 1e-12, 50);
  EXPECT_NEAR(r.value, -nuclear_norm(a), 1e-6);
}

TEST(MultiStart, DeterministicAndMonotone) {
  Rng rng(8);
  const Matrix a = ginibre_matrix(4, 2, rng);
  Budget b;
  b.evaluations = 2000;
  b.restarts = 6;
  b.seed = 99;
  const MultiStart m1 = multistart_stiefel(trace_problem(a, true), {}, b);
  const MultiStart m2 = multistart_stiefel(trace_problem(a, true), {}, b);
  EXPECT_EQ(m1.restart_values, m2.restart_values);
  EXPECT_EQ(m1.best.argmin, m2.best.argmin);
  ASSERT_EQ(m1.best_so_far.size(), 6u);
  for (std::size_t i = 1; i < m1.best_so_far.size(); ++i) EXPECT_LE(m1.best_so_far[i], m1.best_so_far[i - 1]);
  EXPECT_LE(m1.evaluations, b.evaluations);
  EXPECT_GE(m1.gap_estimate, 0.0);
}

TEST(MultiStart, ExplicitStartsComeFirst) {
  Rng rng(9);
  const Matrix a = ginibre_matrix(3, 1, rng);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Matrix optimum = svd.matrixU() * svd.matrixV().adjoint();
  Budget b;
  b.evaluations = 30;
  b.restarts = 3;
  const MultiStart m = multistart_stiefel(trace_problem(a, true), {optimum}, b);
  EXPECT_NEAR(m.restart_values.front(), -nuclear_norm(a), 1e-12);
}

TEST(Parallel, ResultsInIndexOrder) {
  const auto out = parallel_map<int>(100, [](int i) { return i * i; });
  ASSERT_EQ(out.size(), 100u);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(out[static_cast<std::size_t>(i)], i * i);
}

TEST(Parallel, WorkerCountHonoursEnvironment) {
  setenv("MONOGAMY_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  setenv("MONOGAMY_THREADS", "0", 1);
  EXPECT_GE(worker_count(), 1u);
  unsetenv("MONOGAMY_THREADS");
  EXPECT_GE(worker_count(), 1u);
}

TEST(Parallel, ExceptionsPropagate) {
  EXPECT_THROW(parallel_map<int>(8,
                                 [](int i) -> int {
                                   if (i == 5) throw InvalidInput("boom");
                                   return i;
                                 }),
               InvalidInput);
}
