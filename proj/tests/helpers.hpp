#pragma once

#include <string>
#include <vector>

#include "qcorr/qstate.hpp"

namespace testing_helpers {

using qcorr::Dims;
using qcorr::Labels;
using qcorr::Matrix;
using qcorr::QState;
using qcorr::Vector;

// |index><index| on the given layout.
inline QState basis_state(const Dims& dims, const Labels& labels, int index) {
  int n = 1;
  for (int d : dims) n *= d;
  Matrix m = Matrix::Zero(n, n);
  m(index, index) = 1.0;
  return QState(dims, labels, m);
}

inline QState mixed(const Dims& dims, const Labels& labels) {
  int n = 1;
  for (int d : dims) n *= d;
  return QState(dims, labels, Matrix::Identity(n, n) / static_cast<double>(n));
}

// Diagonal state from a probability list.
inline QState diagonal(const Dims& dims, const Labels& labels, const std::vector<double>& p) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
  return QState(dims, labels, m);
}

inline std::vector<int> positions(const QState& s, const Labels& keep) {
  std::vector<int> out;
  for (const auto& l : keep) out.push_back(s.layout().position(l));
  return out;
}

}  // namespace testing_helpers
