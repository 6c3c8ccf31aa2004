#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcorr/optimize.hpp"
#include "qcorr/qstate.hpp"

namespace qcorr {

/// Deviation allowed between Tr_E of an extension and the state it extends.
inline constexpr double kExtensionTolerance = 1e-9;

/// rho_ABE together with the state rho_AB it extends. The first label of `marginal` plays A,
/// the remaining labels form B; `e` is the extending subsystem.
struct Extension {
  QState marginal;
  QState state;
  std::string e;

  int e_dim() const { return state.layout().dim_of(e); }
};

/// Max-abs deviation of Tr_E(state) from the marginal.
double marginal_deviation(const Extension& ext);

/// Checked constructor; throws InvalidInput when the marginal contract fails.
Extension make_extension(const QState& marginal, const QState& state, const std::string& e);

/// rho_AB (x) |0><0|_E.
Extension trivial_extension(const QState& marginal, const std::string& e = "E");

/// (1/2) I(A;B|E); every value is an upper bound on the squashed entanglement of the marginal.
double squashed_objective(const Extension& ext);

struct ProductTerm {
  double probability = 0.0;
  QState state;  // must equal the product of its own marginals
};

/// sum_i p_i rho_A^i (x) rho_B^i (x) |i><i|_E for a separable decomposition. Throws InvalidInput
/// on a non-product term or probabilities not summing to one.
Extension flag_extension(const std::vector<ProductTerm>& terms, const std::string& e = "E");

/// Parameterized extension: |psi>_ABR purifies rho_AB (rank r), W : R -> E (x) E' is an
/// isometry with dim E = e_dim and dim E' = r, and rho_ABE = Tr_E' (I (x) W) psi psi^dagger (I (x) W)^dagger.
struct SquashedWitness {
  Extension extension;
  Matrix isometry;  // (e_dim * r) x r, row index e * r + e'
};

/// Extension produced by an isometry in the convention above; `state` may have any number of
/// subsystems.
Extension extension_from_isometry(const QState& state, const Matrix& isometry, int e_dim,
                                  const std::string& e = "E");

/// Extension from a Haar-random isometry, deterministic per seed.
Extension random_extension(const QState& state, int e_dim, std::uint64_t seed, const std::string& e = "E");

/// The search behind optimize_squashed_ub: squashed_objective as a function of W ((e_dim * r) x r)
/// with its analytic gradient.
StiefelProblem squashed_search_problem(const QState& state, int e_dim);

/// Upper bound on the squashed entanglement of a bipartite state: minimizes squashed_objective over
/// the isometry family with dim E <= cap (cap 0 means rank^2). The trivial extension is a start,
/// so the value never exceeds (1/2) I(A;B). Warm isometries from a smaller cap are zero padded.
OptimizationResult<SquashedWitness> optimize_squashed_ub(const QState& state, int cap = 0,
                                                         const Budget& budget = {},
                                                         const std::vector<Matrix>& warm = {});

struct SquashedAudit {
  double whole = 0.0;   // (1/2) I(A;BC|E)
  double first = 0.0;   // (1/2) I(A;B|E)
  double second = 0.0;  // (1/2) I(A;C|BE)
  double residual = 0.0;
  double u_ab = 0.0;    // squashed_objective of rho_ABE extending rho_AB
  double u_ac = 0.0;    // squashed_objective of rho_AC(BE) extending rho_AC
  double contract_deviation = 0.0;
  bool pass = false;
};

/// Chain-rule split of an extension of rho_A(BC) (labels A, B, C of `state` in order) into
/// certified extensions of rho_AB and rho_AC.
SquashedAudit squashed_monogamy_audit(const QState& state, const Extension& ext);

}  // namespace qcorr
