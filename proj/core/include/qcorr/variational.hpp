#pragma once

#include <vector>

#include "qcorr/optimize.hpp"
#include "qcorr/povm.hpp"
#include "qcorr/qstate.hpp"

namespace qcorr {

/// Average entropy left on Q after a rank-1 measurement of M, as a function of the isometry
/// whose rows define the measurement (M_x = v_x^dagger v_x):
///   F(V) = sum_x p_x S(sigma_x / p_x),  sigma_x = (I_Q (x) <m_x|) rho_QM (I_Q (x) |m_x>).
/// Minimizing F over rank-1 POVMs on the purifying system of rho_AB is the entanglement of
/// formation; minimizing it on B' of rho_AB' gives S(rho_A) - I<-(rho_AB').
class MeasuredEntropy {
 public:
  /// `rho` ordered (Q, M), with dim(Q) = dq and dim(M) = dm.
  MeasuredEntropy(Matrix rho, int dq, int dm);

  double value(const Matrix& v) const;
  /// Analytic Euclidean gradient in the StiefelProblem convention.
  double value_and_gradient(const Matrix& v, Matrix& grad) const;

  StiefelProblem problem(int outcomes) const;

  int dq() const { return dq_; }
  int dm() const { return dm_; }

 private:
  Matrix rho_;
  int dq_;
  int dm_;
};

/// Average marginal entropy of an ensemble of pure states; the entropy is taken on `a`
/// (default: the first label). Throws InvalidInput if a member has purity below 1 - 1e-8.
double ensemble_cost(const LabeledEnsemble& ensemble);
double ensemble_cost(const LabeledEnsemble& ensemble, const Selector& a);

/// Upper bound on E_f(rho_AB) from the best ensemble found. The search runs over rank-1
/// POVMs with up to r^2 outcomes on the rank-r purifying system. Warm-start ensembles are
/// mapped to measurements first. Rank-1 inputs short-circuit to S(rho_A).
OptimizationResult<LabeledEnsemble> optimize_eof(const QState& state, const Budget& budget = {},
                                                 const std::vector<LabeledEnsemble>& warm = {});

/// Two-qubit concurrence (Wootters).
double concurrence(const QState& state);
/// Closed-form two-qubit entanglement of formation h((1 + sqrt(1 - C^2)) / 2).
double wootters_eof(const QState& state);
double binary_entropy(double p);

/// Lower bound on I<-(rho) for a measurement on `measured`: the Holevo quantity of the best
/// rank-1 POVM found with up to d^2 outcomes.
OptimizationResult<Povm> optimize_holevo(const QState& state, const std::string& measured,
                                         const Budget& budget = {},
                                         const std::vector<Povm>& warm = {});

/// POVM on the purifying system B' that steers `purification` (over rho_AB's labels plus B')
/// into `ensemble`. Throws InvalidInput if the ensemble does not average to rho_AB.
Povm ensemble_to_measurement(const QState& state, const PureState& purification,
                             const LabeledEnsemble& ensemble);

/// Ensemble of pure states obtained by steering `purification` with a rank-1 POVM on B'.
LabeledEnsemble measurement_to_ensemble(const PureState& purification, const Povm& povm);

struct DualityReport {
  double f_best = 0.0;    // upper bound on E_f(rho_AB)
  double g_best = 0.0;    // lower bound on I<-(rho_AB')
  double entropy_a = 0.0;
  double duality_gap = 0.0;  // S(rho_A) - f_best - g_best
  bool converged = false;
  int rounds = 0;
  int evaluations = 0;
  LabeledEnsemble ensemble;
  Povm povm;
  QState complement;
  PureState purification;
};

/// Alternates optimize_eof on rho_AB and optimize_holevo on its complement rho_AB', each
/// warm-started with the other's cross-mapped witness, until the duality gap is <= gap_tol or
/// a round brings no improvement.
DualityReport duality_drive(const QState& state, const Budget& budget = {}, double gap_tol = 1e-3,
                            int max_rounds = 4);

}  // namespace qcorr
