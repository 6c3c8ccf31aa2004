#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

using Dims = std::vector<int>;
using Labels = std::vector<std::string>;

/// Tolerance shared by the Hermiticity, trace and positivity checks on density operators.
inline constexpr double kStateTolerance = 1e-10;

/// An ordered group of subsystem labels treated as one party, e.g. {"B", "C"}.
class Selector {
 public:
  Selector() = default;
  Selector(std::initializer_list<std::string> labels) : labels_(labels) {}
  explicit Selector(Labels labels) : labels_(std::move(labels)) {}
  Selector(const char* label) : labels_{label} {}
  Selector(std::string label) : labels_{std::move(label)} {}

  const Labels& labels() const { return labels_; }
  bool empty() const { return labels_.empty(); }
  std::size_t size() const { return labels_.size(); }
  bool contains(const std::string& label) const;
  std::string str() const;

  friend Selector operator+(const Selector& a, const Selector& b);

 private:
  Labels labels_;
};

/// Dimensions plus labels; the lexicographic product basis with the leftmost label most
/// significant is the only basis order used anywhere in the library.
class Layout {
 public:
  Layout() = default;
  Layout(Dims dims, Labels labels);

  const Dims& dims() const { return dims_; }
  const Labels& labels() const { return labels_; }
  int total_dim() const { return total_; }
  int size() const { return static_cast<int>(dims_.size()); }

  bool has(const std::string& label) const;
  int position(const std::string& label) const;  // throws LabelError
  int dim_of(const std::string& label) const;
  int dim_of(const Selector& sel) const;
  int dim_of(const char* label) const { return dim_of(std::string(label)); }

  /// Positions of the selected labels, in selector order; checks presence and distinctness.
  std::vector<int> positions(const Selector& sel) const;
  /// Labels not in `sel`, in layout order.
  Selector complement(const Selector& sel) const;
  Layout sub(const Selector& sel) const;

  bool operator==(const Layout&) const = default;

 private:
  Dims dims_;
  Labels labels_;
  int total_ = 1;
};

/// Density operator over labelled subsystems. Construction checks only structure (shape and
/// labels); the physical invariants are reported by validate().
class QState {
 public:
  QState() = default;
  QState(Dims dims, Labels labels, Matrix matrix);
  QState(Layout layout, Matrix matrix);

  const Layout& layout() const { return layout_; }
  const Dims& dims() const { return layout_.dims(); }
  const Labels& labels() const { return layout_.labels(); }
  const Matrix& matrix() const { return matrix_; }
  int dim() const { return layout_.total_dim(); }

 private:
  Layout layout_;
  Matrix matrix_;
};

/// Unit vector over labelled subsystems.
class PureState {
 public:
  PureState() = default;
  PureState(Dims dims, Labels labels, Vector vector);
  PureState(Layout layout, Vector vector);

  const Layout& layout() const { return layout_; }
  const Dims& dims() const { return layout_.dims(); }
  const Labels& labels() const { return layout_.labels(); }
  const Vector& vector() const { return vector_; }
  int dim() const { return layout_.total_dim(); }

  QState density() const;

 private:
  Layout layout_;
  Vector vector_;
};

struct Violation {
  std::string invariant;  // "hermiticity", "trace", "positivity", "dimension", "norm"
  double deviation;
};

std::vector<Violation> validate(const QState& state);
std::vector<Violation> validate(const PureState& state);
bool is_valid(const QState& state);
/// Throws InvalidInput naming the first violation.
void require_valid(const QState& state);

/// Hermitize, clip negative eigenvalues and renormalize; for ingesting files with rounding noise.
QState repair(const QState& state);

QState tensor(const QState& a, const QState& b);
PureState tensor(const PureState& a, const PureState& b);

/// Reduced state on `keep`; the kept labels appear in their original order.
QState partial_trace(const QState& state, const Selector& keep);
QState partial_trace(const PureState& state, const Selector& keep);
QState trace_out(const QState& state, const Selector& drop);

/// Reorder subsystems to `order` (must name every label exactly once).
QState permute(const QState& state, const Selector& order);
PureState permute(const PureState& state, const Selector& order);

/// Merge the labels of `group` into one subsystem `merged`, placed where the first label of
/// `group` sat; the remaining labels keep their relative order.
QState fuse(const QState& state, const Selector& group, const std::string& merged);
PureState fuse(const PureState& state, const Selector& group, const std::string& merged);

QState relabel(const QState& state, const std::string& from, const std::string& to);
PureState relabel(const PureState& state, const std::string& from, const std::string& to);

/// Operator `op` acting on the subsystems `on` (in selector order), identity elsewhere,
/// expressed in the full layout.
Matrix embed(const Matrix& op, const Layout& layout, const Selector& on);

/// Numerical rank (eigenvalues above kEigenCutoff).
int rank(const QState& state);

/// Eigenvalues, descending.
RealVector spectrum(const QState& state);

/// Purification with the ancilla appended last. The ancilla dimension is the rank of the input:
/// |psi> = sum_k sqrt(l_k) |e_k> (x) |k>, eigenvalues descending, those below 1e-12 dropped.
PureState purify(const QState& state, const std::string& ancilla_label);

/// Reduced state on everything except `traced`, after purifying `state` with an ancilla named
/// `new_label`; e.g. rho_AB -> rho_AB'.
QState complement_state(const QState& state, const std::string& traced,
                        const std::string& new_label);

double max_abs_deviation(const QState& a, const QState& b);

/// Fidelity |<a|b>|^2 of two pure states with equal layouts.
double overlap_fidelity(const PureState& a, const PureState& b);

}  // namespace qcorr
