#include "qcorr/povm.hpp"

#include <cmath>

#include "qcorr/entropy.hpp"

namespace qcorr {

Povm::Povm(std::string target, std::vector<Matrix> elements)
    : target_(std::move(target)), elements_(std::move(elements)) {
  if (elements_.empty()) throw InvalidInput("POVM needs at least one element");
  const auto d = elements_.front().rows();
  for (const auto& e : elements_)
    if (e.rows() != d || e.cols() != d) throw DimensionMismatch("POVM elements differ in shape");
}

std::vector<Violation> validate_povm(const Povm& povm, int dim) {
  std::vector<Violation> out;
  if (povm.dim() != dim) {
    out.push_back({"dimension", static_cast<double>(std::abs(povm.dim() - dim))});
    return out;
  }
  Matrix sum = Matrix::Zero(dim, dim);
  double worst_herm = 0.0;
  double worst_neg = 0.0;
  for (const auto& e : povm.elements()) {
    worst_herm = std::max(worst_herm, max_abs(e - e.adjoint()));
    const RealVector ev = eigvalsh(e);
    worst_neg = std::max(worst_neg, -ev(ev.size() - 1));
    sum += e;
  }
  if (worst_herm > kStateTolerance) out.push_back({"hermiticity", worst_herm});
  if (worst_neg > kStateTolerance) out.push_back({"positivity", worst_neg});
  const double completeness = max_abs(sum - Matrix::Identity(dim, dim));
  if (completeness > kPovmCompleteness) out.push_back({"completeness", completeness});
  return out;
}

namespace {
void require_valid_povm(const Povm& povm, int dim) {
  const auto v = validate_povm(povm, dim);
  if (!v.empty())
    throw InvalidInput("invalid POVM on '" + povm.target() + "': " + v.front().invariant +
                       " violated by " + std::to_string(v.front().deviation));
}

// Unnormalized Tr_L[(I (x) M) rho] for rho ordered (rest, L), L of dimension dl.
Matrix reduce_with(const Matrix& rho, int d_rest, int dl, const Matrix& m) {
  Matrix out = Matrix::Zero(d_rest, d_rest);
  for (int l = 0; l < dl; ++l)
    for (int l2 = 0; l2 < dl; ++l2) {
      const Complex w = m(l, l2);
      if (w == Complex(0.0, 0.0)) continue;
      for (int r2 = 0; r2 < d_rest; ++r2)
        for (int r = 0; r < d_rest; ++r) out(r, r2) += w * rho(r * dl + l2, r2 * dl + l);
    }
  return out;
}
}  // namespace

Povm trivial_povm(int dim, const std::string& target) {
  return Povm(target, {Matrix::Identity(dim, dim)});
}

Povm basis_povm(int dim, const std::string& target) {
  return projective_povm(Matrix::Identity(dim, dim), target);
}

Povm projective_povm(const Matrix& unitary, const std::string& target) {
  std::vector<Matrix> el;
  for (Eigen::Index c = 0; c < unitary.cols(); ++c) el.push_back(unitary.col(c) * unitary.col(c).adjoint());
  return Povm(target, std::move(el));
}

Povm povm_from_isometry(const Matrix& isometry, const std::string& target) {
  std::vector<Matrix> el;
  el.reserve(isometry.rows());
  for (Eigen::Index x = 0; x < isometry.rows(); ++x) el.push_back(isometry.row(x).adjoint() * isometry.row(x));
  return Povm(target, std::move(el));
}

Matrix isometry_from_povm(const Povm& rank1) {
  Matrix v(static_cast<Eigen::Index>(rank1.size()), rank1.dim());
  for (std::size_t x = 0; x < rank1.size(); ++x) {
    const HermitianEig eig = eigh(rank1.elements()[x]);
    const double top = std::max(eig.values(0), 0.0);
    v.row(static_cast<Eigen::Index>(x)) = std::sqrt(top) * eig.vectors.col(0).adjoint();
  }
  return v;
}

Povm random_povm(int dim, int n_outcomes, std::uint64_t seed, const std::string& target) {
  if (n_outcomes < 1) throw InvalidInput("random_povm: need at least one outcome");
  Rng rng(seed);
  if (n_outcomes >= dim) return povm_from_isometry(haar_isometry(n_outcomes, dim, rng), target);
  const Matrix v = haar_isometry(static_cast<Eigen::Index>(dim) * n_outcomes, dim, rng);
  std::vector<Matrix> el;
  for (int x = 0; x < n_outcomes; ++x) {
    const Matrix block = v.middleRows(static_cast<Eigen::Index>(x) * dim, dim);
    el.push_back(hermitian_part(block.adjoint() * block));
  }
  return Povm(target, std::move(el));
}

RefinedPovm rank1_refine(const Povm& povm) {
  require_valid_povm(povm, povm.dim());
  RefinedPovm out;
  std::vector<Matrix> pieces;
  for (std::size_t i = 0; i < povm.size(); ++i) {
    const HermitianEig eig = eigh(povm.elements()[i]);
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
      if (eig.values(k) <= kEigenCutoff) break;
      pieces.push_back(eig.values(k) * eig.vectors.col(k) * eig.vectors.col(k).adjoint());
      out.parent.push_back(static_cast<int>(i));
    }
  }
  out.povm = Povm(povm.target(), std::move(pieces));
  return out;
}

bool is_rank1(const Povm& povm, double tol) {
  for (const auto& e : povm.elements()) {
    const RealVector ev = eigvalsh(e);
    if (ev.size() > 1 && ev(1) > tol) return false;
  }
  return true;
}

QState LabeledEnsemble::average() const {
  if (items.empty()) throw InvalidInput("empty ensemble");
  Matrix sum = Matrix::Zero(items.front().state.dim(), items.front().state.dim());
  for (const auto& it : items) sum += it.probability * it.state.matrix();
  return QState(items.front().state.layout(), sum);
}

double LabeledEnsemble::total_probability() const {
  double p = 0.0;
  for (const auto& it : items) p += it.probability;
  return p;
}

LabeledEnsemble steer(const PureState& pure, const Povm& povm) {
  const Layout& layout = pure.layout();
  const int dl = layout.dim_of(povm.target());
  require_valid_povm(povm, dl);
  const Selector rest = layout.complement(Selector(povm.target()));
  if (rest.empty()) throw LabelError("steer: measured subsystem is the whole state");
  const PureState ordered = permute(pure, rest + Selector(povm.target()));
  const Layout rest_layout = layout.sub(rest);
  const int d_rest = rest_layout.total_dim();
  // X[r, l] = psi[(r, l)]
  Matrix x(d_rest, dl);
  for (int r = 0; r < d_rest; ++r)
    for (int l = 0; l < dl; ++l) x(r, l) = ordered.vector()(r * dl + l);

  LabeledEnsemble ens;
  std::vector<double> probs;
  for (std::size_t k = 0; k < povm.size(); ++k) {
    const Matrix& m = povm.elements()[k];
    Matrix sigma = x * m.transpose() * x.adjoint();
    const double p = sigma.trace().real();
    if (p < kOutcomeCutoff) continue;
    EnsembleItem item;
    item.probability = p;
    item.outcome = static_cast<int>(k);
    if (!is_rank1(Povm(povm.target(), {m}))) {
      item.state = QState(rest_layout, hermitian_part(sigma / p));
    } else {
      const HermitianEig eig = eigh(m);
      Vector phi = x * (std::sqrt(std::max(eig.values(0), 0.0)) * eig.vectors.col(0)).conjugate();
      phi /= phi.norm();
      item.pure = PureState(rest_layout, phi);
      item.state = item.pure->density();
    }
    ens.items.push_back(std::move(item));
  }
  // renormalize after dropping negligible outcomes
  const double total = ens.total_probability();
  for (auto& it : ens.items) it.probability /= total;
  return ens;
}

LabeledEnsemble measure(const QState& state, const Povm& povm) {
  const Layout& layout = state.layout();
  const int dl = layout.dim_of(povm.target());
  require_valid_povm(povm, dl);
  const Selector rest = layout.complement(Selector(povm.target()));
  if (rest.empty()) throw LabelError("measure: measured subsystem is the whole state");
  const QState ordered = permute(state, rest + Selector(povm.target()));
  const Layout rest_layout = layout.sub(rest);
  const int d_rest = rest_layout.total_dim();

  LabeledEnsemble ens;
  for (std::size_t k = 0; k < povm.size(); ++k) {
    Matrix sigma = reduce_with(ordered.matrix(), d_rest, dl, povm.elements()[k]);
    const double p = sigma.trace().real();
    if (p < kOutcomeCutoff) continue;
    EnsembleItem item;
    item.probability = p;
    item.outcome = static_cast<int>(k);
    item.state = QState(rest_layout, hermitian_part(sigma / p));
    ens.items.push_back(std::move(item));
  }
  const double total = ens.total_probability();
  for (auto& it : ens.items) it.probability /= total;
  return ens;
}

QState reduce_with_element(const QState& state, const Matrix& element, const std::string& target) {
  const Layout& layout = state.layout();
  const int dl = layout.dim_of(target);
  if (element.rows() != dl || element.cols() != dl)
    throw DimensionMismatch("reduce_with_element: element does not act on '" + target + "'");
  const Selector rest = layout.complement(Selector(target));
  if (rest.empty()) throw LabelError("reduce_with_element: measured subsystem is the whole state");
  const QState ordered = permute(state, rest + Selector(target));
  const Layout rest_layout = layout.sub(rest);
  return QState(rest_layout, reduce_with(ordered.matrix(), rest_layout.total_dim(), dl, element));
}

double holevo_quantity(const QState& state, const Povm& povm) {
  const LabeledEnsemble ens = measure(state, povm);
  double avg = 0.0;
  for (const auto& it : ens.items) avg += it.probability * matrix_entropy(it.state.matrix());
  const Selector rest = state.layout().complement(Selector(povm.target()));
  return marginal_entropy(state, rest) - avg;
}

RefineReport refine_monotonicity_check(const QState& state, const Povm& povm) {
  RefineReport r;
  r.before = holevo_quantity(state, povm);
  r.after = holevo_quantity(state, rank1_refine(povm).povm);
  r.slack = r.after - r.before;
  r.pass = r.slack >= -kEntropyTolerance;
  return r;
}

}  // namespace qcorr
