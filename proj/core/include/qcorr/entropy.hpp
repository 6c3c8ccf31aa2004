#pragma once

#include <span>

#include "qcorr/qstate.hpp"

// Entropic functionals, all in bits.

namespace qcorr {

/// Slack tolerance for entropy inequalities (strong subadditivity and friends).
inline constexpr double kEntropyTolerance = 1e-9;

/// -sum l log2 l over entries l > 1e-12.
double entropy_of_spectrum(const RealVector& eigenvalues);
double shannon(std::span<const double> probabilities);

/// Entropy of a Hermitian PSD matrix without validation; used on hot optimizer paths.
double matrix_entropy(const Matrix& rho);

/// Validates the state first (InvalidInput on failure).
double von_neumann(const QState& state);

/// Entropy of the marginal on `part` (no validation).
double marginal_entropy(const QState& state, const Selector& part);

/// I(A;B) = S(A) + S(B) - S(AB) on the marginal over A and B.
double mutual_information(const QState& state, const Selector& a, const Selector& b);

/// I(A;B|E) = S(AE) + S(BE) - S(ABE) - S(E); an empty E gives I(A;B).
double conditional_mutual_information(const QState& state, const Selector& a, const Selector& b,
                                      const Selector& e);

/// S(A) - S(AB); may be negative.
double coherent_information(const QState& state, const Selector& a, const Selector& b);

/// Single-letter strong-subadditivity monogamy:
/// [S(A)-S(AB)] + [S(A)-S(AC)] <= S(A) - S(ABC).
struct SsaReport {
  double left = 0.0;
  double right = 0.0;
  double slack = 0.0;
  bool pass = false;
};

SsaReport ssa_monogamy_check(const QState& state, const Selector& a = "A",
                             const Selector& b = "B", const Selector& c = "C");

/// I(A;BC|E) - I(A;B|E) - I(A;C|BE); zero up to rounding on every state.
struct ChainRuleTerms {
  double whole = 0.0;   // I(A;BC|E)
  double first = 0.0;   // I(A;B|E)
  double second = 0.0;  // I(A;C|BE)
  double residual = 0.0;
};

ChainRuleTerms chain_rule_residual(const QState& state, const Selector& a, const Selector& b,
                                   const Selector& c, const Selector& e);

}  // namespace qcorr
