#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "qcorr/catalog.hpp"
#include "qcorr/povm.hpp"
#include "qcorr/qstate.hpp"

namespace qcorr::io {

/// Malformed or unreadable state/POVM documents.
class FormatError : public Error {
 public:
  using Error::Error;
};

// State documents: {"dims":[...], "labels":[...], "matrix":[[[re,im],...],...]} for mixed
// states, or "vector":[[re,im],...] instead of "matrix" for pure states. Row-major over the
// lexicographic product basis.

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

nlohmann::json to_json(const QState& state);
nlohmann::json to_json(const PureState& state);
nlohmann::json to_json(const catalog::Entry& entry);
/// Parses either form; structural problems raise FormatError, size mismatches DimensionMismatch.
catalog::Entry state_from_json(const nlohmann::json& j);

/// POVM documents: {"target_label": "...", "elements": [matrix, ...]}.
nlohmann::json to_json(const Povm& povm);
Povm povm_from_json(const nlohmann::json& j);

/// Extension documents are state documents with an extra "marginal_of" field naming the
/// base labels and "extension_label" naming the ancilla.
nlohmann::json extension_to_json(const QState& extended, const Labels& marginal_of,
                                 const std::string& extension_label);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

catalog::Entry read_state(const std::filesystem::path& path);
Povm read_povm(const std::filesystem::path& path);

}  // namespace qcorr::io
