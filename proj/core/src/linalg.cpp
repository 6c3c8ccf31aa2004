#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

HermitianEig eigh(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("eigh: matrix is not square");
  HermitianEig out;
  if (m.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  const auto n = m.rows();
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  // Fix the free phase of each eigenvector: largest-magnitude entry real and positive.
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index arg = 0;
    out.vectors.col(c).cwiseAbs().maxCoeff(&arg);
    const Complex pivot = out.vectors(arg, c);
    if (std::abs(pivot) > 0) out.vectors.col(c) *= std::conj(pivot) / std::abs(pivot);
  }
  return out;
}

RealVector eigvalsh(const Matrix& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

Matrix sqrtm_psd(const Matrix& m) {
  return spectral_map(eigh(m), [](double x) { return x > 0 ? std::sqrt(x) : 0.0; });
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix ginibre_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

Matrix haar_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  if (rows < cols) throw DimensionMismatch("haar_isometry: rows < cols");
  const Matrix g = ginibre_matrix(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < cols; ++c) {
    const Complex d = r(c, c);
    if (std::abs(d) > 0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

Matrix polar_isometry(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double isometry_defect(const Matrix& v) {
  return max_abs(v.adjoint() * v - Matrix::Identity(v.cols(), v.cols()));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over the combined words
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace qcorr
