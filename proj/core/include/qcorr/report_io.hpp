#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qcorr/monogamy.hpp"

namespace qcorr::io {

/// {suite, trials, tolerances, pass, seeds, wall_ms, soundness_breaches, children}. Timing is
/// the only non-deterministic field; `with_timing = false` drops it.
nlohmann::json to_json(const VerificationReport& report, bool with_timing = true);

/// Fixed-width table, one row per trial plus a verdict line per suite.
std::string summary_table(const VerificationReport& report);

}  // namespace qcorr::io
