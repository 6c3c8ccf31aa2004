#include "qcorr/io.hpp"

#include <fstream>
#include <sstream>

namespace qcorr::io {

using nlohmann::json;

namespace {
Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError("expected [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Layout layout_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("state document must be a JSON object");
  if (!j.contains("dims") || !j["dims"].is_array()) throw FormatError("missing \"dims\" array");
  if (!j.contains("labels") || !j["labels"].is_array()) throw FormatError("missing \"labels\" array");
  Dims dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer()) throw FormatError("dims must be integers");
    dims.push_back(d.get<int>());
  }
  Labels labels;
  for (const auto& l : j["labels"]) {
    if (!l.is_string()) throw FormatError("labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  return Layout(std::move(dims), std::move(labels));
}
}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) throw FormatError("matrix has no rows");
  const auto cols = static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols)
      throw FormatError("matrix rows have unequal length");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("vector must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

json to_json(const QState& state) {
  return json{{"dims", state.dims()}, {"labels", state.labels()}, {"matrix", matrix_to_json(state.matrix())}};
}

json to_json(const PureState& state) {
  return json{{"dims", state.dims()}, {"labels", state.labels()}, {"vector", vector_to_json(state.vector())}};
}

json to_json(const catalog::Entry& entry) {
  return std::visit([](const auto& s) { return to_json(s); }, entry);
}

catalog::Entry state_from_json(const json& j) {
  Layout layout = layout_from_json(j);
  const bool has_matrix = j.contains("matrix");
  const bool has_vector = j.contains("vector");
  if (has_matrix == has_vector) throw FormatError("state needs exactly one of \"matrix\" or \"vector\"");
  if (has_matrix) return QState(std::move(layout), matrix_from_json(j["matrix"]));
  return PureState(std::move(layout), vector_from_json(j["vector"]));
}

json to_json(const Povm& povm) {
  json elements = json::array();
  for (const auto& e : povm.elements()) elements.push_back(matrix_to_json(e));
  return json{{"target_label", povm.target()}, {"elements", std::move(elements)}};
}

Povm povm_from_json(const json& j) {
  if (!j.is_object() || !j.contains("target_label") || !j["target_label"].is_string())
    throw FormatError("POVM document needs a \"target_label\" string");
  if (!j.contains("elements") || !j["elements"].is_array() || j["elements"].empty())
    throw FormatError("POVM document needs a non-empty \"elements\" array");
  std::vector<Matrix> elements;
  for (const auto& e : j["elements"]) elements.push_back(matrix_from_json(e));
  return Povm(j["target_label"].get<std::string>(), std::move(elements));
}

json extension_to_json(const QState& extended, const Labels& marginal_of,
                       const std::string& extension_label) {
  json j = to_json(extended);
  j["marginal_of"] = marginal_of;
  j["extension_label"] = extension_label;
  return j;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

catalog::Entry read_state(const std::filesystem::path& path) {
  try {
    return state_from_json(read_json(path));
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Povm read_povm(const std::filesystem::path& path) {
  try {
    return povm_from_json(read_json(path));
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace qcorr::io
