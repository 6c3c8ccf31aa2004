#include "qcorr/squashed.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "qcorr/entropy.hpp"

namespace qcorr {

namespace {

constexpr double kLogFloor = 1e-15;
const std::string kPurifier = "#R";

Matrix pad_rows(const Matrix& v, Eigen::Index rows) {
  Matrix out = Matrix::Zero(rows, v.cols());
  out.topRows(std::min(rows, v.rows())) = v.topRows(std::min(rows, v.rows()));
  return out;
}

void require_bipartite(const QState& s, const char* what) {
  if (s.labels().size() != 2)
    throw LabelError(std::string(what) + ": expected a bipartite state, got " +
                     std::to_string(s.labels().size()) + " subsystems");
}

// Psi[ab, k] of the purification of rho_AB with the purifier appended last.
Matrix purification_matrix(const QState& state, int& r) {
  const PureState psi = purify(state, kPurifier);
  r = psi.layout().dim_of(kPurifier);
  const int dab = state.dim();
  Matrix m(dab, r);
  for (int ab = 0; ab < dab; ++ab)
    for (int k = 0; k < r; ++k) m(ab, k) = psi.vector()(static_cast<Eigen::Index>(ab) * r + k);
  return m;
}

// rho_ABE as a matrix over (ab, e) from Omega = Psi W^T reshaped to (ab, e) x e'.
Matrix extension_factor(const Matrix& psi, const Matrix& w, int e_dim, int r) {
  const Matrix omega = psi * w.transpose();  // dab x (e_dim * r)
  Matrix z(psi.rows() * e_dim, r);
  for (Eigen::Index ab = 0; ab < psi.rows(); ++ab)
    for (int e = 0; e < e_dim; ++e) z.row(ab * e_dim + e) = omega.row(ab).segment(static_cast<Eigen::Index>(e) * r, r);
  return z;
}

// (1/2) I(A;B|E) of rho_ABE on an internal (a, b, e) layout and its analytic gradient in W.
class SquashedObjective {
 public:
  SquashedObjective(const QState& state, int e_dim)
      : da_(state.dims()[0]), db_(state.dims()[1]), e_dim_(e_dim) {
    psi_ = purification_matrix(state, r_);
    layout_ = Layout(Dims{da_, db_, e_dim_}, Labels{"a", "b", "e"});
  }

  int rank() const { return r_; }

  double value(const Matrix& w) const {
    const Matrix z = extension_factor(psi_, w, e_dim_, r_);
    const QState rho(layout_, z * z.adjoint());
    return 0.5 * conditional_mutual_information(rho, "a", "b", "e");
  }

  double value_and_gradient(const Matrix& w, Matrix& grad) const {
    const Matrix z = extension_factor(psi_, w, e_dim_, r_);
    const QState rho(layout_, z * z.adjoint());
    Matrix m = Matrix::Zero(rho.dim(), rho.dim());
    double f = 0.0;
    // dS_X = tr(L_X drho_X) with L_X = -log2 rho_X (trace terms cancel between the four entropies)
    const auto add = [&](const Selector& x, double c) {
      const HermitianEig eig = eigh(hermitian_part(partial_trace(rho, x).matrix()));
      double s = 0.0;
      for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (eig.values(i) > kEigenCutoff) s -= eig.values(i) * std::log2(eig.values(i));
      f += c * s;
      const Matrix l = spectral_map(eig, [](double v) { return -std::log2(std::max(v, kLogFloor)); });
      m += c * embed(l, layout_, x);
    };
    add({"a", "e"}, 0.5);
    add({"b", "e"}, 0.5);
    add({"a", "b", "e"}, -0.5);
    add({"e"}, -0.5);
    const Matrix gz = 2.0 * m * z;
    Matrix g_omega(psi_.rows(), static_cast<Eigen::Index>(e_dim_) * r_);
    for (Eigen::Index ab = 0; ab < psi_.rows(); ++ab)
      for (int e = 0; e < e_dim_; ++e) g_omega.row(ab).segment(static_cast<Eigen::Index>(e) * r_, r_) = gz.row(ab * e_dim_ + e);
    grad = g_omega.transpose() * psi_.conjugate();
    return f;
  }

  Eigen::Index rows() const { return static_cast<Eigen::Index>(e_dim_) * r_; }

 private:
  int da_, db_, e_dim_;
  int r_ = 0;
  Matrix psi_;
  Layout layout_;
};

}  // namespace

StiefelProblem squashed_search_problem(const QState& state, int e_dim) {
  require_bipartite(state, "squashed_search_problem");
  if (e_dim < 1) throw InvalidInput("squashed_search_problem: e_dim must be positive");
  const auto objective = std::make_shared<const SquashedObjective>(state, e_dim);
  StiefelProblem p;
  p.rows = objective->rows();
  p.cols = objective->rank();
  p.value = [objective](const Matrix& w) { return objective->value(w); };
  p.value_and_gradient = [objective](const Matrix& w, Matrix& g) { return objective->value_and_gradient(w, g); };
  return p;
}

double marginal_deviation(const Extension& ext) {
  const Labels& base = ext.marginal.labels();
  if (ext.state.labels().size() != base.size() + 1)
    throw LabelError("extension must add exactly one subsystem '" + ext.e + "'");
  const QState reduced = permute(trace_out(ext.state, Selector(ext.e)), Selector(base));
  return max_abs(reduced.matrix() - ext.marginal.matrix());
}

Extension make_extension(const QState& marginal, const QState& state, const std::string& e) {
  Extension ext{marginal, state, e};
  const double dev = marginal_deviation(ext);
  if (dev > kExtensionTolerance)
    throw InvalidInput("extension violates its marginal contract by " + std::to_string(dev));
  return ext;
}

Extension trivial_extension(const QState& marginal, const std::string& e) {
  return make_extension(marginal, tensor(marginal, QState(Dims{1}, Labels{e}, Matrix::Ones(1, 1))), e);
}

double squashed_objective(const Extension& ext) {
  const double dev = marginal_deviation(ext);
  if (dev > kExtensionTolerance)
    throw InvalidInput("extension violates its marginal contract by " + std::to_string(dev));
  const Labels& base = ext.marginal.labels();
  if (base.size() < 2) throw LabelError("squashed_objective: the extended state needs two parties");
  const Selector b(Labels(base.begin() + 1, base.end()));
  return 0.5 * conditional_mutual_information(ext.state, base.front(), b, ext.e);
}

Extension flag_extension(const std::vector<ProductTerm>& terms, const std::string& e) {
  if (terms.empty()) throw InvalidInput("flag_extension: empty decomposition");
  const Layout& layout = terms.front().state.layout();
  if (layout.size() != 2) throw LabelError("flag_extension: terms must be bipartite");
  const int n = static_cast<int>(terms.size());
  const int d = layout.total_dim();
  Matrix marginal = Matrix::Zero(d, d);
  Matrix flagged = Matrix::Zero(static_cast<Eigen::Index>(d) * n, static_cast<Eigen::Index>(d) * n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const ProductTerm& t = terms[static_cast<std::size_t>(i)];
    if (!(t.state.layout() == layout)) throw LabelError("flag_extension: terms differ in layout");
    if (t.probability < 0.0) throw InvalidInput("flag_extension: negative probability");
    require_valid(t.state);
    const QState pa = partial_trace(t.state, layout.labels()[0]);
    const QState pb = partial_trace(t.state, layout.labels()[1]);
    const double dev = max_abs(t.state.matrix() - kron(pa.matrix(), pb.matrix()));
    if (dev > kExtensionTolerance)
      throw InvalidInput("flag_extension: term " + std::to_string(i) + " is not a product state");
    marginal += t.probability * t.state.matrix();
    // index (ab, e): entry (ab, i; ab', i)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        flagged(static_cast<Eigen::Index>(r) * n + i, static_cast<Eigen::Index>(c) * n + i) = t.probability * t.state.matrix()(r, c);
    total += t.probability;
  }
  if (std::abs(total - 1.0) > kExtensionTolerance)
    throw InvalidInput("flag_extension: probabilities sum to " + std::to_string(total));
  Dims dims = layout.dims();
  Labels labels = layout.labels();
  dims.push_back(n);
  labels.push_back(e);
  return make_extension(QState(layout, marginal), QState(dims, labels, flagged), e);
}

Extension extension_from_isometry(const QState& state, const Matrix& isometry, int e_dim, const std::string& e) {
  int r = 0;
  const Matrix psi = purification_matrix(state, r);
  if (isometry.rows() != static_cast<Eigen::Index>(e_dim) * r || isometry.cols() != r)
    throw DimensionMismatch("extension_from_isometry: isometry must be (e_dim * rank) x rank");
  const Matrix z = extension_factor(psi, isometry, e_dim, r);
  Dims dims = state.dims();
  Labels labels = state.labels();
  dims.push_back(e_dim);
  labels.push_back(e);
  return Extension{state, QState(dims, labels, hermitian_part(z * z.adjoint())), e};
}

Extension random_extension(const QState& state, int e_dim, std::uint64_t seed, const std::string& e) {
  if (e_dim < 1) throw InvalidInput("random_extension: extension dimension must be positive");
  const int r = rank(state);
  Rng rng(seed);
  return extension_from_isometry(state, haar_isometry(static_cast<Eigen::Index>(e_dim) * r, r, rng), e_dim, e);
}

OptimizationResult<SquashedWitness> optimize_squashed_ub(const QState& state, int cap, const Budget& budget,
                                                         const std::vector<Matrix>& warm) {
  require_bipartite(state, "optimize_squashed_ub");
  require_valid(state);
  if (cap < 0) throw InvalidInput("optimize_squashed_ub: cap must be positive");
  OptimizationResult<SquashedWitness> result;
  const int r = rank(state);
  if (cap == 0) cap = r * r;

  if (r == 1) {
    // every extension of a pure state is a product; the objective is constant
    const Matrix w = pad_rows(Matrix::Identity(1, 1), cap);
    result.argument = {extension_from_isometry(state, w, cap), w};
    result.value = squashed_objective(result.argument.extension);
    result.converged = true;
    result.best_so_far = {result.value};
    return result;
  }

  const StiefelProblem problem = squashed_search_problem(state, cap);
  const Eigen::Index rows = problem.rows;
  std::vector<Matrix> starts{pad_rows(Matrix::Identity(r, r), rows)};  // trivial extension
  if (cap >= r) {
    Matrix copy = Matrix::Zero(rows, r);  // |k> -> |k>_E |0>_E'
    for (int k = 0; k < r; ++k) copy(static_cast<Eigen::Index>(k) * r, k) = 1.0;
    starts.push_back(copy);
  }
  for (const auto& w : warm) {
    if (w.cols() != r || w.rows() > rows || w.rows() % r != 0)
      throw DimensionMismatch("optimize_squashed_ub: warm isometry has the wrong shape");
    starts.push_back(pad_rows(w, rows));
  }

  const MultiStart ms = multistart_stiefel(problem, starts, budget);
  result.argument = {extension_from_isometry(state, ms.best.argmin, cap), ms.best.argmin};
  result.value = squashed_objective(result.argument.extension);
  result.restarts_used = static_cast<int>(ms.restart_values.size());
  result.evaluations = ms.evaluations;
  result.converged = ms.converged;
  result.gap_estimate = std::max(ms.gap_estimate, 0.0);
  result.best_so_far = ms.best_so_far;
  return result;
}

SquashedAudit squashed_monogamy_audit(const QState& state, const Extension& ext) {
  if (state.labels().size() != 3) throw LabelError("squashed_monogamy_audit: expected a tripartite state");
  const std::string& a = state.labels()[0];
  const std::string& b = state.labels()[1];
  const std::string& c = state.labels()[2];
  const Extension whole{state, ext.state, ext.e};
  SquashedAudit rep;
  rep.contract_deviation = marginal_deviation(whole);
  if (rep.contract_deviation > kExtensionTolerance)
    throw InvalidInput("squashed_monogamy_audit: extension does not extend the state");

  rep.whole = 0.5 * conditional_mutual_information(ext.state, a, {b, c}, ext.e);
  rep.first = 0.5 * conditional_mutual_information(ext.state, a, b, ext.e);
  rep.second = 0.5 * conditional_mutual_information(ext.state, a, c, {b, ext.e});
  rep.residual = rep.whole - rep.first - rep.second;

  const Extension ab{partial_trace(state, {a, b}), trace_out(ext.state, c), ext.e};
  const std::string be = "#" + b + ext.e;
  const Extension ac{partial_trace(state, {a, c}), fuse(ext.state, {b, ext.e}, be), be};
  rep.contract_deviation = std::max({rep.contract_deviation, marginal_deviation(ab), marginal_deviation(ac)});
  rep.u_ab = squashed_objective(ab);
  rep.u_ac = squashed_objective(ac);

  rep.pass = std::abs(rep.residual) <= kEntropyTolerance && std::abs(rep.u_ab - rep.first) <= kEntropyTolerance &&
             std::abs(rep.u_ac - rep.second) <= kEntropyTolerance &&
             std::abs(rep.u_ab + rep.u_ac - rep.whole) <= kEntropyTolerance &&
             rep.contract_deviation <= kExtensionTolerance;
  return rep;
}

}  // namespace qcorr
