#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qcorr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Subsystem labels that are unknown, duplicated or colliding.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// Matrix or vector sizes that disagree with the declared subsystem dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Names (measures, suites, catalog entries) that are not registered.
class UnknownName : public Error {
 public:
  using Error::Error;
};

/// Inputs that violate a physical invariant (not a density operator, incomplete POVM, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Eigenvalues below this are treated as exact zeros in entropies, ranks and purifications.
inline constexpr double kEigenCutoff = 1e-12;

struct HermitianEig {
  RealVector values;  // descending
  Matrix vectors;     // columns match `values`
};

/// Eigendecomposition of the Hermitian part of `m`, eigenvalues sorted descending.
HermitianEig eigh(const Matrix& m);

/// Eigenvalues only, descending.
RealVector eigvalsh(const Matrix& m);

Matrix hermitian_part(const Matrix& m);

double max_abs(const Matrix& m);

/// f(m) for Hermitian m applied through the spectrum.
template <class F>
Matrix spectral_map(const HermitianEig& eig, F&& f) {
  RealVector mapped(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) mapped(i) = f(eig.values(i));
  return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

/// Principal square root of a positive semidefinite matrix (negative eigenvalues clipped).
Matrix sqrtm_psd(const Matrix& m);

/// Kronecker product with `a` most significant.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

/// Standard complex Gaussian matrix (real and imaginary parts N(0, 1/2)).
Matrix ginibre_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed isometry (rows >= cols, orthonormal columns) via QR with phase fix.
Matrix haar_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Closest isometry in Frobenius norm (polar factor), used as the Stiefel retraction.
Matrix polar_isometry(const Matrix& m);

/// Deviation of `v` from having orthonormal columns, max-abs of V^dagger V - I.
double isometry_defect(const Matrix& v);

/// Deterministic 64-bit mixer used to derive child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace qcorr
