#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcorr/optimize.hpp"
#include "qcorr/qstate.hpp"

// Verification harness: each suite turns computed values into trials with an explicit predicate
// and records every bound it produced together with its direction.

namespace qcorr {

enum class BoundDirection { upper, lower, exact };

const char* to_string(BoundDirection d);

/// A certified statement "quantity(subject) <= value" (upper), ">= value" (lower) or "= value".
struct BoundRecord {
  std::string quantity;  // e.g. "E_f"
  std::string subject;   // identifies the state and the marginal, e.g. "ginibre[2,2;r2]#7:AB"
  BoundDirection direction = BoundDirection::upper;
  double value = 0.0;
};

inline constexpr double kSoundnessTolerance = 1e-8;

/// Lower (or exact) bounds exceeding upper (or exact) bounds of the same quantity and subject by
/// more than kSoundnessTolerance, one message per offending pair.
std::vector<std::string> find_soundness_breaches(const std::vector<BoundRecord>& bounds);

struct Trial {
  std::string input;  // catalog name or random-state description
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> values;
  /// Distance to the predicate boundary; a passing trial has slack >= 0.
  double slack = 0.0;
  bool pass = true;
  /// False when values are only recorded because no certified predicate applies.
  bool asserted = true;
  std::string note;
  std::vector<BoundRecord> bounds;
  nlohmann::json witness;  // POVMs / ensembles / instruments in the file formats

  double value(const std::string& key) const;  // throws LabelError when absent
  void set(const std::string& key, double v);
};

struct VerificationReport {
  std::string suite;
  std::vector<Trial> trials;
  std::vector<std::pair<std::string, double>> tolerances;
  std::vector<std::uint64_t> seeds;
  bool pass = true;
  double wall_ms = 0.0;
  std::vector<std::string> soundness_breaches;
  std::vector<VerificationReport> children;
};

/// Every bound in the report and its children.
std::vector<BoundRecord> collect_bounds(const VerificationReport& report);

/// Recomputes pass from the trials, children and a soundness audit over collect_bounds.
void finalize(VerificationReport& report);

/// Duality check E_f(AB) + I<-(AB') = S(A) through duality_drive. Passes iff the gap lies in
/// [-1e-8, gap_tol] and, for two-qubit inputs, F_best is within gap_tol of the Wootters value.
VerificationReport verify_thm1(const QState& state, const Budget& budget = {}, double gap_tol = 1e-3,
                               const std::string& input = "state", std::uint64_t seed = 0);

/// E_f(AB) + I<-(AC) <= S(A) with certified directions; equality within gap_tol when the input is
/// pure and A, B are qubits (recorded only for larger dimensions).
VerificationReport verify_cor1(const QState& state, const Budget& budget = {}, double gap_tol = 1e-3,
                               const std::string& input = "state", std::uint64_t seed = 0);

/// S(B) - I->(AB) = E_f(BB') = S(B') - I->(AB') from three independent searches.
VerificationReport verify_cor2_single_letter(const QState& state, const Budget& budget = {},
                                             double gap_tol = 1e-3, const std::string& input = "state",
                                             std::uint64_t seed = 0);

/// E_f(AB) lower evidence + max(0, S(A) - S(AC)) <= S(A) + 1e-8.
VerificationReport verify_main5_single_letter(const QState& state, const std::string& input = "state",
                                              std::uint64_t seed = 0);

/// Antisymmetric two-qutrit example: S(A) = log2 3, E_f(AB) = E_f(AC) = 1, margin >= 0.41.
VerificationReport antisym_counterexample(const Budget& budget = {});

/// Randomized suites over seeds.
VerificationReport ssa_suite(const std::vector<std::uint64_t>& seeds);
VerificationReport chain_suite(const std::vector<std::uint64_t>& seeds);
VerificationReport squashed_chain_suite(const std::vector<std::uint64_t>& seeds);
VerificationReport prop1_suite(const std::vector<std::uint64_t>& seeds);

const std::vector<std::string>& suite_names();

/// Runs the named suites; unknown names throw UnknownName, an empty list yields a passing
/// report. Randomized suites use `seeds` (default 1..10 when empty).
VerificationReport run_suite(const std::vector<std::string>& names, const std::vector<std::uint64_t>& seeds,
                             const Budget& budget = {}, double gap_tol = 1e-3);

}  // namespace qcorr
