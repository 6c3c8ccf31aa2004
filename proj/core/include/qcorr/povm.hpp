#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcorr/qstate.hpp"

namespace qcorr {

inline constexpr double kPovmCompleteness = 1e-9;
/// Outcomes whose probability falls below this are dropped from ensembles.
inline constexpr double kOutcomeCutoff = 1e-12;

/// Positive operators on a single labelled subsystem summing to the identity.
class Povm {
 public:
  Povm() = default;
  Povm(std::string target, std::vector<Matrix> elements);

  const std::string& target() const { return target_; }
  const std::vector<Matrix>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  int dim() const { return elements_.empty() ? 0 : static_cast<int>(elements_.front().rows()); }

 private:
  std::string target_;
  std::vector<Matrix> elements_;
};

/// Empty iff every element is PSD within 1e-10 and the elements sum to the identity within 1e-9.
std::vector<Violation> validate_povm(const Povm& povm, int dim);

Povm trivial_povm(int dim, const std::string& target);
Povm basis_povm(int dim, const std::string& target);
/// Projectors onto the columns of a unitary.
Povm projective_povm(const Matrix& unitary, const std::string& target);

/// Rank-1 POVM M_x = v_x^dagger v_x read off the rows v_x of an isometry V (k x d, V^dagger V = I).
Povm povm_from_isometry(const Matrix& isometry, const std::string& target);
/// Inverse of povm_from_isometry for rank-1 POVMs: row x is the conjugated unit-weighted vector.
Matrix isometry_from_povm(const Povm& rank1);

/// Random POVM with exactly n_outcomes elements, deterministic per seed. For n_outcomes >= dim
/// the elements are the rank-1 rows of a Haar isometry dim -> n_outcomes. Fewer outcomes than
/// dim cannot be rank-1; then a Haar isometry dim -> dim*n_outcomes is cut into n_outcomes
/// blocks B_x and M_x = B_x^dagger B_x.
Povm random_povm(int dim, int n_outcomes, std::uint64_t seed, const std::string& target);

struct RefinedPovm {
  Povm povm;
  std::vector<int> parent;  // index of the source element of each rank-1 piece
};

/// Splits every element into rank-1 pieces via its eigendecomposition (eigenvalues > 1e-12).
RefinedPovm rank1_refine(const Povm& povm);

bool is_rank1(const Povm& povm, double tol = 1e-10);

struct EnsembleItem {
  double probability = 0.0;
  QState state;                    // post-measurement state on the remaining labels
  std::optional<PureState> pure;   // set when the post-state is pure (rank-1 steering)
  int outcome = 0;
};

struct LabeledEnsemble {
  std::vector<EnsembleItem> items;

  QState average() const;
  double total_probability() const;
};

/// Measurement of `povm` on `pure`; outcome x has probability Tr[(I(x)M_x) psi psi^dagger], its
/// post-state is the normalized remainder. Rank-1 elements yield pure post-states.
LabeledEnsemble steer(const PureState& pure, const Povm& povm);

/// Same construction for a mixed source state (post-states are generally mixed).
LabeledEnsemble measure(const QState& state, const Povm& povm);

/// Unnormalized Tr_L[(I (x) M) rho] on the labels other than `target`, in layout order.
QState reduce_with_element(const QState& state, const Matrix& element, const std::string& target);

/// Holevo quantity S(rho_rest) - sum_x p_x S(rho_x) for `povm` applied to its target inside
/// `state`; `rest` is every other label.
double holevo_quantity(const QState& state, const Povm& povm);

struct RefineReport {
  double before = 0.0;
  double after = 0.0;
  double slack = 0.0;  // after - before
  bool pass = false;
};

/// Holevo quantity before and after rank1_refine; pass iff after >= before - 1e-9.
RefineReport refine_monotonicity_check(const QState& state, const Povm& povm);

}  // namespace qcorr
