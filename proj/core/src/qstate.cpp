#include "qcorr/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace qcorr {

namespace {

// Index of the product-basis element whose digits (over `dims`) are `digits`.
int compose(const Dims& dims, const std::vector<int>& digits) {
  int idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
  return idx;
}

void decompose(const Dims& dims, int idx, std::vector<int>& digits) {
  digits.resize(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    digits[k] = idx % dims[k];
    idx /= dims[k];
  }
}

// For every full index: (index within the subsystems `sel`, index within the rest).
struct Split {
  std::vector<int> inner;
  std::vector<int> outer;
  int inner_dim = 1;
  int outer_dim = 1;
};

Split split(const Layout& layout, const std::vector<int>& sel_positions) {
  Split s;
  std::vector<bool> chosen(layout.size(), false);
  for (int p : sel_positions) chosen[p] = true;
  std::vector<int> rest;
  for (int p = 0; p < layout.size(); ++p)
    if (!chosen[p]) rest.push_back(p);
  const Dims& dims = layout.dims();
  for (int p : sel_positions) s.inner_dim *= dims[p];
  for (int p : rest) s.outer_dim *= dims[p];

  const int total = layout.total_dim();
  s.inner.resize(total);
  s.outer.resize(total);
  std::vector<int> digits;
  for (int i = 0; i < total; ++i) {
    decompose(dims, i, digits);
    int a = 0;
    for (int p : sel_positions) a = a * dims[p] + digits[p];
    int b = 0;
    for (int p : rest) b = b * dims[p] + digits[p];
    s.inner[i] = a;
    s.outer[i] = b;
  }
  return s;
}

// old index -> new index under the reordering of subsystems given by `order`
// (order[k] = old position of the new k-th subsystem).
std::vector<int> permutation_map(const Dims& dims, const std::vector<int>& order) {
  Dims new_dims(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) new_dims[k] = dims[order[k]];
  const int total = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
  std::vector<int> map(total);
  std::vector<int> digits;
  std::vector<int> new_digits(order.size());
  for (int i = 0; i < total; ++i) {
    decompose(dims, i, digits);
    for (std::size_t k = 0; k < order.size(); ++k) new_digits[k] = digits[order[k]];
    map[i] = compose(new_dims, new_digits);
  }
  return map;
}

std::vector<int> full_order(const Layout& layout, const Selector& order) {
  if (static_cast<int>(order.size()) != layout.size())
    throw LabelError("permute: order must name every label exactly once (" + order.str() + ")");
  return layout.positions(order);
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// Selector / Layout

bool Selector::contains(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::string Selector::str() const {
  std::string s;
  for (const auto& l : labels_) s += l;
  return s;
}

Selector operator+(const Selector& a, const Selector& b) {
  Labels all = a.labels_;
  all.insert(all.end(), b.labels_.begin(), b.labels_.end());
  return Selector(std::move(all));
}

Layout::Layout(Dims dims, Labels labels) : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.size() != labels_.size())
    throw LabelError("layout: " + std::to_string(dims_.size()) + " dims but " +
                     std::to_string(labels_.size()) + " labels");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw LabelError("layout: empty label");
    if (!seen.insert(l).second) throw LabelError("layout: duplicate label '" + l + "'");
  }
  total_ = 1;
  for (int d : dims_) {
    if (d < 1) throw DimensionMismatch("layout: subsystem dimension must be positive");
    total_ *= d;
  }
}

bool Layout::has(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

int Layout::position(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw LabelError("unknown label '" + label + "'");
  return static_cast<int>(it - labels_.begin());
}

int Layout::dim_of(const std::string& label) const { return dims_[position(label)]; }

int Layout::dim_of(const Selector& sel) const {
  int d = 1;
  for (int p : positions(sel)) d *= dims_[p];
  return d;
}

std::vector<int> Layout::positions(const Selector& sel) const {
  std::vector<int> pos;
  pos.reserve(sel.size());
  for (const auto& l : sel.labels()) {
    const int p = position(l);
    if (std::find(pos.begin(), pos.end(), p) != pos.end())
      throw LabelError("selector repeats label '" + l + "'");
    pos.push_back(p);
  }
  return pos;
}

Selector Layout::complement(const Selector& sel) const {
  positions(sel);  // validates
  Labels rest;
  for (const auto& l : labels_)
    if (!sel.contains(l)) rest.push_back(l);
  return Selector(std::move(rest));
}

Layout Layout::sub(const Selector& sel) const {
  Dims d;
  for (int p : positions(sel)) d.push_back(dims_[p]);
  return Layout(std::move(d), sel.labels());
}

// ---------------------------------------------------------------------------------------------
// QState / PureState

QState::QState(Dims dims, Labels labels, Matrix matrix)
    : QState(Layout(std::move(dims), std::move(labels)), std::move(matrix)) {}

QState::QState(Layout layout, Matrix matrix) : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != layout_.total_dim() || matrix_.cols() != layout_.total_dim())
    throw DimensionMismatch("state: matrix is " + std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()) + " but dims multiply to " +
                            std::to_string(layout_.total_dim()));
}

PureState::PureState(Dims dims, Labels labels, Vector vector)
    : PureState(Layout(std::move(dims), std::move(labels)), std::move(vector)) {}

PureState::PureState(Layout layout, Vector vector) : layout_(std::move(layout)), vector_(std::move(vector)) {
  if (vector_.size() != layout_.total_dim())
    throw DimensionMismatch("pure state: vector length " + std::to_string(vector_.size()) +
                            " but dims multiply to " + std::to_string(layout_.total_dim()));
}

QState PureState::density() const { return QState(layout_, vector_ * vector_.adjoint()); }

// ---------------------------------------------------------------------------------------------
// validation

std::vector<Violation> validate(const QState& state) {
  std::vector<Violation> out;
  const Matrix& m = state.matrix();
  const double herm = max_abs(m - m.adjoint());
  if (herm > kStateTolerance) out.push_back({"hermiticity", herm});
  const double trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_dev > kStateTolerance) out.push_back({"trace", trace_dev});
  const RealVector ev = eigvalsh(m);
  if (ev.size() > 0 && ev(ev.size() - 1) < -kStateTolerance)
    out.push_back({"positivity", -ev(ev.size() - 1)});
  return out;
}

std::vector<Violation> validate(const PureState& state) {
  std::vector<Violation> out;
  const double dev = std::abs(state.vector().norm() - 1.0);
  if (dev > kStateTolerance) out.push_back({"norm", dev});
  return out;
}

bool is_valid(const QState& state) { return validate(state).empty(); }

void require_valid(const QState& state) {
  const auto v = validate(state);
  if (!v.empty())
    throw InvalidInput("invalid density operator: " + v.front().invariant + " violated by " +
                       std::to_string(v.front().deviation));
}

QState repair(const QState& state) {
  const HermitianEig eig = eigh(state.matrix());
  Matrix fixed = spectral_map(eig, [](double x) { return std::max(x, 0.0); });
  const double tr = fixed.trace().real();
  if (!(tr > 0)) throw InvalidInput("repair: no positive spectrum left");
  fixed /= tr;
  return QState(state.layout(), hermitian_part(fixed));
}

// ---------------------------------------------------------------------------------------------
// structural operations

namespace {
Layout concat(const Layout& a, const Layout& b) {
  Dims d = a.dims();
  d.insert(d.end(), b.dims().begin(), b.dims().end());
  Labels l = a.labels();
  for (const auto& x : b.labels()) {
    if (a.has(x)) throw LabelError("tensor: label '" + x + "' used on both sides");
    l.push_back(x);
  }
  return Layout(std::move(d), std::move(l));
}
}  // namespace

QState tensor(const QState& a, const QState& b) {
  Layout layout = concat(a.layout(), b.layout());
  return QState(std::move(layout), kron(a.matrix(), b.matrix()));
}

PureState tensor(const PureState& a, const PureState& b) {
  Layout layout = concat(a.layout(), b.layout());
  return PureState(std::move(layout), kron(a.vector(), b.vector()));
}

QState partial_trace(const QState& state, const Selector& keep) {
  const Layout& layout = state.layout();
  std::vector<int> pos = layout.positions(keep);
  if (pos.empty()) throw LabelError("partial_trace: nothing to keep");
  std::sort(pos.begin(), pos.end());
  Labels kept_labels;
  Dims kept_dims;
  for (int p : pos) {
    kept_labels.push_back(layout.labels()[p]);
    kept_dims.push_back(layout.dims()[p]);
  }
  const Split s = split(layout, pos);
  // rows[t][k]: full index with traced part t and kept part k
  std::vector<std::vector<int>> rows(s.outer_dim, std::vector<int>(s.inner_dim));
  for (int i = 0; i < layout.total_dim(); ++i) rows[s.outer[i]][s.inner[i]] = i;
  const Matrix& m = state.matrix();
  Matrix out = Matrix::Zero(s.inner_dim, s.inner_dim);
  for (int t = 0; t < s.outer_dim; ++t) {
    const auto& r = rows[t];
    for (int k2 = 0; k2 < s.inner_dim; ++k2)
      for (int k1 = 0; k1 < s.inner_dim; ++k1) out(k1, k2) += m(r[k1], r[k2]);
  }
  return QState(std::move(kept_dims), std::move(kept_labels), std::move(out));
}

QState partial_trace(const PureState& state, const Selector& keep) {
  const Layout& layout = state.layout();
  std::vector<int> pos = layout.positions(keep);
  if (pos.empty()) throw LabelError("partial_trace: nothing to keep");
  std::sort(pos.begin(), pos.end());
  Labels kept_labels;
  Dims kept_dims;
  for (int p : pos) {
    kept_labels.push_back(layout.labels()[p]);
    kept_dims.push_back(layout.dims()[p]);
  }
  const Split s = split(layout, pos);
  // reshape into (kept x traced) and form X X^dagger
  Matrix x = Matrix::Zero(s.inner_dim, s.outer_dim);
  for (int i = 0; i < layout.total_dim(); ++i) x(s.inner[i], s.outer[i]) = state.vector()(i);
  return QState(std::move(kept_dims), std::move(kept_labels), x * x.adjoint());
}

QState trace_out(const QState& state, const Selector& drop) {
  return partial_trace(state, state.layout().complement(drop));
}

QState permute(const QState& state, const Selector& order) {
  const std::vector<int> ord = full_order(state.layout(), order);
  const std::vector<int> map = permutation_map(state.dims(), ord);
  const Matrix& m = state.matrix();
  Matrix out(m.rows(), m.cols());
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) out(map[i], map[j]) = m(i, j);
  return QState(state.layout().sub(order), std::move(out));
}

PureState permute(const PureState& state, const Selector& order) {
  const std::vector<int> ord = full_order(state.layout(), order);
  const std::vector<int> map = permutation_map(state.dims(), ord);
  Vector out(state.vector().size());
  for (int i = 0; i < out.size(); ++i) out(map[i]) = state.vector()(i);
  return PureState(state.layout().sub(order), std::move(out));
}

namespace {
// Target order placing `group` contiguously at the slot of its first member.
Selector fused_order(const Layout& layout, const Selector& group) {
  const std::vector<int> pos = layout.positions(group);
  if (pos.empty()) throw LabelError("fuse: empty group");
  const int anchor = *std::min_element(pos.begin(), pos.end());
  Labels order;
  for (int p = 0; p < layout.size(); ++p) {
    const std::string& l = layout.labels()[p];
    if (p == anchor) order.insert(order.end(), group.labels().begin(), group.labels().end());
    if (!group.contains(l)) order.push_back(l);
  }
  return Selector(std::move(order));
}

Layout fused_layout(const Layout& ordered, const Selector& group, const std::string& merged) {
  Dims d;
  Labels l;
  bool placed = false;
  for (int p = 0; p < ordered.size(); ++p) {
    const std::string& label = ordered.labels()[p];
    if (group.contains(label)) {
      if (!placed) {
        d.push_back(ordered.dim_of(group));
        l.push_back(merged);
        placed = true;
      }
    } else {
      d.push_back(ordered.dims()[p]);
      l.push_back(label);
    }
  }
  return Layout(std::move(d), std::move(l));
}
}  // namespace

QState fuse(const QState& state, const Selector& group, const std::string& merged) {
  QState ordered = permute(state, fused_order(state.layout(), group));
  Layout layout = fused_layout(ordered.layout(), group, merged);
  return QState(std::move(layout), ordered.matrix());
}

PureState fuse(const PureState& state, const Selector& group, const std::string& merged) {
  PureState ordered = permute(state, fused_order(state.layout(), group));
  Layout layout = fused_layout(ordered.layout(), group, merged);
  return PureState(std::move(layout), ordered.vector());
}

namespace {
Layout renamed(const Layout& layout, const std::string& from, const std::string& to) {
  Labels l = layout.labels();
  l[layout.position(from)] = to;
  return Layout(layout.dims(), std::move(l));
}
}  // namespace

QState relabel(const QState& state, const std::string& from, const std::string& to) {
  return QState(renamed(state.layout(), from, to), state.matrix());
}

PureState relabel(const PureState& state, const std::string& from, const std::string& to) {
  return PureState(renamed(state.layout(), from, to), state.vector());
}

Matrix embed(const Matrix& op, const Layout& layout, const Selector& on) {
  const std::vector<int> pos = layout.positions(on);
  const Split s = split(layout, pos);
  if (op.rows() != s.inner_dim || op.cols() != s.inner_dim)
    throw DimensionMismatch("embed: operator is " + std::to_string(op.rows()) + "x" +
                            std::to_string(op.cols()) + ", subsystem " + on.str() + " has dim " +
                            std::to_string(s.inner_dim));
  const int n = layout.total_dim();
  Matrix out = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (s.outer[i] == s.outer[j]) out(i, j) = op(s.inner[i], s.inner[j]);
  return out;
}

int rank(const QState& state) {
  const RealVector ev = eigvalsh(state.matrix());
  return static_cast<int>((ev.array() > kEigenCutoff).count());
}

RealVector spectrum(const QState& state) { return eigvalsh(state.matrix()); }

PureState purify(const QState& state, const std::string& ancilla_label) {
  if (state.layout().has(ancilla_label))
    throw LabelError("purify: ancilla label '" + ancilla_label + "' already in use");
  const HermitianEig eig = eigh(state.matrix());
  int r = 0;
  while (r < eig.values.size() && eig.values(r) > kEigenCutoff) ++r;
  if (r == 0) throw InvalidInput("purify: state has no spectrum above cutoff");
  const int n = state.dim();
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(n) * r);
  for (int k = 0; k < r; ++k) {
    const double amp = std::sqrt(eig.values(k));
    for (int i = 0; i < n; ++i) psi(static_cast<Eigen::Index>(i) * r + k) = amp * eig.vectors(i, k);
  }
  psi.normalize();
  Dims dims = state.dims();
  dims.push_back(r);
  Labels labels = state.labels();
  labels.push_back(ancilla_label);
  return PureState(std::move(dims), std::move(labels), std::move(psi));
}

QState complement_state(const QState& state, const std::string& traced, const std::string& new_label) {
  state.layout().position(traced);
  const PureState pure = purify(state, new_label);
  return trace_out(pure.density(), Selector(traced));
}

double max_abs_deviation(const QState& a, const QState& b) {
  if (a.dims() != b.dims()) throw DimensionMismatch("max_abs_deviation: layouts differ");
  return max_abs(a.matrix() - b.matrix());
}

double overlap_fidelity(const PureState& a, const PureState& b) {
  if (a.dims() != b.dims()) throw DimensionMismatch("overlap_fidelity: layouts differ");
  return std::norm(a.vector().dot(b.vector()));
}

}  // namespace qcorr
