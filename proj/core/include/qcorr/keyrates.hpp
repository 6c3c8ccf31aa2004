#pragma once

#include <string>
#include <vector>

#include "qcorr/optimize.hpp"
#include "qcorr/povm.hpp"
#include "qcorr/qstate.hpp"

// Single-letter one-way rate functionals. Classical outcomes are embedded as diagonal register
// subsystems so every I(X;.) is an ordinary mutual information of a larger state.

namespace qcorr {

/// Replaces the POVM's target subsystem by a classical register `outcome_label` of dimension
/// |povm|: sum_x |x><x| (x) Tr_L[(I (x) M_x) rho], register placed where the target was.
QState measure_to_register(const QState& state, const Povm& povm, const std::string& outcome_label);

struct MeasurementRecord {
  Povm povm;
  std::string outcome_label;
};

struct CqRecord {
  QState source;
  std::vector<MeasurementRecord> measurements;
  QState joint;  // classical registers plus the unmeasured subsystems
};

/// Applies the measurements in order.
CqRecord measure_all(const QState& source, std::vector<MeasurementRecord> measurements);

/// Holevo information I(X;Q) between a classical register and a quantum group.
double classical_quantum_mi(const CqRecord& record, const std::string& outcome, const Selector& quantum);

/// I(X;A) - I(X;E) for X the outcome of `povm` on its target; `e` may be empty.
double csecret1_value(const QState& state, const Povm& povm, const Selector& a = "A",
                      const Selector& e = "E");

/// Lower bound on the single-letter one-way secret key of rho_ABE: the best rank-1 POVM on
/// `b` (up to d^2 outcomes) for I(X;A) - I(X;E).
OptimizationResult<Povm> optimize_csecret1(const QState& state, const Budget& budget = {},
                                           const std::string& b = "B", const Selector& a = "A",
                                           const Selector& e = "E");

struct Prop1Trial {
  Povm povm;
  double info_a = 0.0;   // I(X;A)
  double info_e = 0.0;   // I(X;E)
  double secret = 0.0;   // I(X;A) - I(X;E)
  double slack = 0.0;    // I(X;A) - secret = I(X;E)
};

struct Prop1Report {
  std::vector<Prop1Trial> trials;
  double min_slack = 0.0;
  bool pass = false;
};

/// Classical correlation vs. secret key for a purification |psi>_ABE of rho_AB: for every POVM
/// on `b`, I(X;A) >= I(X;A) - I(X;E).
Prop1Report proposition1_check(const QState& state, const std::vector<Povm>& povms,
                               const std::string& b = "B");
/// Same with `trials` random POVMs (2 .. d^2 outcomes) drawn from `seed`.
Prop1Report proposition1_check(const QState& state, int trials, std::uint64_t seed,
                               const std::string& b = "B");

/// Local instrument on one subsystem: map i has Kraus operators kraus[i][k] (d_out x d_in).
struct Instrument {
  std::string target;
  std::vector<std::vector<Matrix>> kraus;
};

Instrument identity_instrument(int dim, const std::string& target);
/// One single-Kraus map per block of `isometry` ((n * d_out) x d_in, blocks of d_out rows).
Instrument instrument_from_isometry(const Matrix& isometry, int d_out, const std::string& target);
/// Max-abs deviation of sum_i sum_k K^dagger K from the identity.
double trace_preservation_defect(const Instrument& instrument);

/// sum_i p_i [S(rho_A^(i)) - S(rho_AB^(i))] for the given instrument on `target`; A is every
/// other subsystem. Throws InvalidInput if the instrument is not trace preserving within 1e-9.
double ed1_value(const QState& state, const Instrument& instrument);

/// Lower bound on the single-letter one-way distillable entanglement: searches instruments
/// with `outcomes` single-Kraus maps d -> d (including the identity instrument) with
/// finite-difference gradients.
OptimizationResult<Instrument> ed1_lower_bound(const QState& state, const Budget& budget = {},
                                               const std::string& b = "B", int outcomes = 2);

struct ChainReport {
  double info_xa = 0.0, info_xe = 0.0;    // I(X;A), I(X;E)
  double info_ya = 0.0, info_ybe = 0.0;   // I(Y;A), I(Y;BE)
  double info_xya = 0.0, info_xye = 0.0;  // I(XY;A), I(XY;E)
  double info_ya_given_x = 0.0;           // I(Y;A|X)
  double info_ye_given_x = 0.0;           // I(Y;E|X)
  double left = 0.0;                      // [I(X;A)-I(X;E)] + [I(Y;A)-I(Y;BE)]
  double right = 0.0;                     // I(XY;A) - I(XY;E)
  double slack = 0.0;                     // right - left
  double chain_identity_residual = 0.0;   // I(X;A) + I(Y;A|X) - I(XY;A)
  double marginal_defect = 0.0;           // XY distribution vs. separate X and Y distributions
  bool pass = false;
};

/// Secret-key chain inequality for rho_ABCE with X measured on B and Y on C. A missing `e`
/// label means a trivial eavesdropper.
ChainReport chain_inequality_check(const QState& state, const Povm& on_b, const Povm& on_c,
                                   const std::string& a = "A", const std::string& e = "E");

struct SecretCrReport {
  double info_xa = 0.0;   // I(X;A), X from B
  double info_xc = 0.0;   // I(X;C)
  double info_ya = 0.0;   // I(Y;A), Y from C
  double info_xya = 0.0;  // I(XY;A)
  double left = 0.0;      // [I(X;A) - I(X;C)] + I(Y;A)
  double right = 0.0;     // I(XY;A)
  double slack = 0.0;
  bool pass = false;
};

/// Single-letter secret key (eavesdropper C) plus common randomness with C, against the common
/// randomness of A with BC.
SecretCrReport secret_cr_monogamy_check(const QState& state, const Povm& on_b, const Povm& on_c,
                                        const std::string& a = "A");

}  // namespace qcorr
