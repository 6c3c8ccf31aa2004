#include "qcorr/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcorr/entropy.hpp"

namespace qcorr {

namespace {

constexpr double kLogFloor = 1e-300;
constexpr double kPurityTolerance = 1e-8;
constexpr double kReconstructionTolerance = 1e-9;

// T[q, (q', l)] = sum_j v_j rho[(q, j), (q', l)]
Matrix contract_row(const Matrix& rho, int dq, int dm, const Eigen::RowVectorXcd& v) {
  Matrix t = Matrix::Zero(dq, static_cast<Eigen::Index>(dq) * dm);
  for (int j = 0; j < dm; ++j) {
    const Complex w = v(j);
    if (w == Complex(0.0, 0.0)) continue;
    for (int q = 0; q < dq; ++q) t.row(q) += w * rho.row(static_cast<Eigen::Index>(q) * dm + j);
  }
  return t;
}

// sigma[q, q'] = sum_l T[q, (q', l)] conj(v_l)
Matrix close_row(const Matrix& t, int dq, int dm, const Eigen::RowVectorXcd& v) {
  Matrix sigma(dq, dq);
  for (int q = 0; q < dq; ++q)
    for (int q2 = 0; q2 < dq; ++q2)
      sigma(q, q2) = (t.row(q).segment(static_cast<Eigen::Index>(q2) * dm, dm) * v.adjoint())(0, 0);
  return sigma;
}

// p S(sigma / p) = -tr sigma log sigma + p log p, computed from the spectrum of sigma.
double weighted_entropy(const RealVector& mu) {
  double p = 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    const double m = mu(i);
    if (m > kLogFloor) {
      p += m;
      s -= m * std::log2(m);
    }
  }
  if (p > kLogFloor) s += p * std::log2(p);
  return s;
}

Matrix padded_isometry(const Matrix& v, Eigen::Index rows) {
  Matrix out = Matrix::Zero(rows, v.cols());
  out.topRows(std::min(rows, v.rows())) = v.topRows(std::min(rows, v.rows()));
  return out;
}

int numerical_rank(const RealVector& ev) {
  int r = 0;
  while (r < ev.size() && ev(r) > kEigenCutoff) ++r;
  return r;
}

Selector first_label(const QState& s) { return Selector(s.labels().front()); }

void require_bipartite(const QState& s, const char* what) {
  if (s.labels().size() != 2)
    throw LabelError(std::string(what) + ": expected a bipartite state, got " +
                     std::to_string(s.labels().size()) + " subsystems");
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// MeasuredEntropy

MeasuredEntropy::MeasuredEntropy(Matrix rho, int dq, int dm) : rho_(std::move(rho)), dq_(dq), dm_(dm) {
  if (rho_.rows() != static_cast<Eigen::Index>(dq) * dm)
    throw DimensionMismatch("MeasuredEntropy: matrix size does not match dq * dm");
}

double MeasuredEntropy::value(const Matrix& v) const {
  double f = 0.0;
  for (Eigen::Index x = 0; x < v.rows(); ++x) {
    const Eigen::RowVectorXcd row = v.row(x);
    const Matrix sigma = close_row(contract_row(rho_, dq_, dm_, row), dq_, dm_, row);
    f += weighted_entropy(eigvalsh(sigma));
  }
  return f;
}

double MeasuredEntropy::value_and_gradient(const Matrix& v, Matrix& grad) const {
  grad = Matrix::Zero(v.rows(), v.cols());
  double f = 0.0;
  for (Eigen::Index x = 0; x < v.rows(); ++x) {
    const Eigen::RowVectorXcd row = v.row(x);
    const Matrix t = contract_row(rho_, dq_, dm_, row);
    const Matrix sigma = close_row(t, dq_, dm_, row);
    const HermitianEig eig = eigh(sigma);
    f += weighted_entropy(eig.values);
    double p = 0.0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) p += std::max(eig.values(i), 0.0);
    if (p <= kLogFloor) continue;
    // dF = tr[H dsigma] with H = -log2(sigma / p)
    const Matrix h = spectral_map(eig, [p](double m) { return -std::log2(std::max(m, kLogFloor) / p); });
    // dF/d conj(v_l) = sum_{q,q'} H[q', q] T[q, (q', l)]
    for (int l = 0; l < dm_; ++l) {
      Complex acc(0.0, 0.0);
      for (int q = 0; q < dq_; ++q)
        for (int q2 = 0; q2 < dq_; ++q2) acc += h(q2, q) * t(q, static_cast<Eigen::Index>(q2) * dm_ + l);
      grad(x, l) = 2.0 * acc;
    }
  }
  return f;
}

StiefelProblem MeasuredEntropy::problem(int outcomes) const {
  StiefelProblem p;
  p.rows = outcomes;
  p.cols = dm_;
  p.value = [this](const Matrix& v) { return value(v); };
  p.value_and_gradient = [this](const Matrix& v, Matrix& g) { return value_and_gradient(v, g); };
  return p;
}

// ---------------------------------------------------------------------------------------------
// ensembles and the two optimizers

double ensemble_cost(const LabeledEnsemble& ensemble) {
  if (ensemble.items.empty()) throw InvalidInput("ensemble_cost: empty ensemble");
  return ensemble_cost(ensemble, first_label(ensemble.items.front().state));
}

double ensemble_cost(const LabeledEnsemble& ensemble, const Selector& a) {
  double cost = 0.0;
  for (const auto& item : ensemble.items) {
    QState pure = item.pure ? item.pure->density() : item.state;
    const double purity = (pure.matrix() * pure.matrix()).trace().real();
    if (purity < 1.0 - kPurityTolerance)
      throw InvalidInput("ensemble_cost: member with purity " + std::to_string(purity));
    const QState marginal = item.pure ? partial_trace(*item.pure, a) : partial_trace(pure, a);
    cost += item.probability * matrix_entropy(marginal.matrix());
  }
  return cost;
}

OptimizationResult<LabeledEnsemble> optimize_eof(const QState& state, const Budget& budget,
                                                 const std::vector<LabeledEnsemble>& warm) {
  require_bipartite(state, "optimize_eof");
  require_valid(state);
  OptimizationResult<LabeledEnsemble> result;
  const HermitianEig eig = eigh(state.matrix());
  const int r = numerical_rank(eig.values);

  if (r == 1) {
    Vector psi = eig.vectors.col(0);
    EnsembleItem item;
    item.probability = 1.0;
    item.pure = PureState(state.layout(), psi);
    item.state = item.pure->density();
    result.argument.items.push_back(std::move(item));
    result.value = ensemble_cost(result.argument);
    result.converged = true;
    result.restarts_used = 0;
    result.best_so_far = {result.value};
    return result;
  }

  const PureState purification = purify(state, "#R");
  const QState rho_ar = trace_out(purification.density(), Selector(state.labels()[1]));
  const int da = state.dims()[0];
  const MeasuredEntropy objective(rho_ar.matrix(), da, r);

  std::vector<Matrix> starts;
  int outcomes = r * r;
  std::vector<Matrix> warm_isometries;
  for (const auto& ens : warm) {
    const Povm m = ensemble_to_measurement(state, purification, ens);
    warm_isometries.push_back(isometry_from_povm(rank1_refine(m).povm));
    outcomes = std::max<int>(outcomes, static_cast<int>(warm_isometries.back().rows()));
  }
  // eigen-ensemble first, then warm starts
  starts.push_back(padded_isometry(Matrix::Identity(r, r), outcomes));
  for (const auto& v : warm_isometries) starts.push_back(padded_isometry(v, outcomes));

  const MultiStart ms = multistart_stiefel(objective.problem(outcomes), starts, budget);
  const Povm povm = povm_from_isometry(ms.best.argmin, "#R");
  result.argument = steer(purification, povm);
  result.value = ensemble_cost(result.argument);
  result.restarts_used = static_cast<int>(ms.restart_values.size());
  result.evaluations = ms.evaluations;
  result.converged = ms.converged;
  result.gap_estimate = std::max(ms.gap_estimate, 0.0);
  result.best_so_far = ms.best_so_far;
  return result;
}

double binary_entropy(double p) {
  double h = 0.0;
  if (p > kEigenCutoff) h -= p * std::log2(p);
  if (1.0 - p > kEigenCutoff) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double concurrence(const QState& state) {
  if (state.dims() != Dims{2, 2}) throw DimensionMismatch("concurrence: needs a two-qubit state");
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix& rho = state.matrix();
  const Matrix tilde = yy * rho.conjugate() * yy;
  const Matrix sq = sqrtm_psd(rho);
  const RealVector ev = eigvalsh(hermitian_part(sq * tilde * sq));
  double l[4];
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(ev(i), 0.0));
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double wootters_eof(const QState& state) {
  const double c = concurrence(state);
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

OptimizationResult<Povm> optimize_holevo(const QState& state, const std::string& measured,
                                         const Budget& budget, const std::vector<Povm>& warm) {
  require_valid(state);
  OptimizationResult<Povm> result;
  const Layout& layout = state.layout();
  const int dm = layout.dim_of(measured);
  const Selector other = layout.complement(Selector(measured));
  if (other.empty()) throw LabelError("optimize_holevo: nothing left to hold information");

  if (dm == 1) {
    result.argument = trivial_povm(1, measured);
    result.value = 0.0;
    result.converged = true;
    result.best_so_far = {0.0};
    return result;
  }

  const QState ordered = permute(state, other + Selector(measured));
  const int dq = layout.dim_of(other);
  const MeasuredEntropy objective(ordered.matrix(), dq, dm);

  int outcomes = dm * dm;
  std::vector<Matrix> warm_isometries;
  for (const auto& p : warm) {
    if (p.target() != measured) throw LabelError("optimize_holevo: warm POVM targets '" + p.target() + "'");
    warm_isometries.push_back(isometry_from_povm(rank1_refine(p).povm));
    outcomes = std::max<int>(outcomes, static_cast<int>(warm_isometries.back().rows()));
  }
  std::vector<Matrix> starts;
  starts.push_back(padded_isometry(Matrix::Identity(dm, dm), outcomes));
  const HermitianEig marginal = eigh(partial_trace(state, Selector(measured)).matrix());
  starts.push_back(padded_isometry(marginal.vectors.adjoint(), outcomes));
  for (const auto& v : warm_isometries) starts.push_back(padded_isometry(v, outcomes));

  const MultiStart ms = multistart_stiefel(objective.problem(outcomes), starts, budget);
  // keep only outcomes that carry weight; the discarded remainder is below 1e-14 per element
  std::vector<Matrix> elements;
  Matrix sum = Matrix::Zero(dm, dm);
  const Povm raw = povm_from_isometry(ms.best.argmin, measured);
  for (const auto& e : raw.elements())
    if (e.trace().real() > 1e-14) {
      elements.push_back(e);
      sum += e;
    }
  elements.back() += Matrix::Identity(dm, dm) - sum;  // absorb rounding in completeness
  result.argument = rank1_refine(Povm(measured, std::move(elements))).povm;
  result.value = holevo_quantity(state, result.argument);
  result.restarts_used = static_cast<int>(ms.restart_values.size());
  result.evaluations = ms.evaluations;
  result.converged = ms.converged;
  result.gap_estimate = std::max(ms.gap_estimate, 0.0);
  result.best_so_far = ms.best_so_far;
  const double s_other = marginal_entropy(state, other);
  for (double& b : result.best_so_far) b = s_other - b;
  return result;
}

// ---------------------------------------------------------------------------------------------
// cross maps

Povm ensemble_to_measurement(const QState& state, const PureState& purification,
                             const LabeledEnsemble& ensemble) {
  const Layout& layout = purification.layout();
  const Selector base(state.labels());
  const Selector extra = layout.complement(base);
  if (extra.size() != 1)
    throw LabelError("ensemble_to_measurement: purification must add exactly one subsystem");
  const std::string bprime = extra.labels().front();

  const QState avg = ensemble.average();
  if (max_abs(permute(avg, base).matrix() - state.matrix()) > kReconstructionTolerance)
    throw InvalidInput("ensemble_to_measurement: ensemble does not average to the state");
  if (max_abs(partial_trace(purification, base).matrix() - state.matrix()) > kReconstructionTolerance)
    throw InvalidInput("ensemble_to_measurement: purification does not reduce to the state");

  const PureState ordered = permute(purification, base + extra);
  const int n = state.dim();
  const int db = layout.dim_of(bprime);
  Matrix x(n, db);
  for (int s = 0; s < n; ++s)
    for (int b = 0; b < db; ++b) x(s, b) = ordered.vector()(static_cast<Eigen::Index>(s) * db + b);

  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  RealVector inv = RealVector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10) inv(i) = 1.0 / sv(i);
  const Matrix pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();

  std::vector<Matrix> elements;
  Matrix sum = Matrix::Zero(db, db);
  for (const auto& item : ensemble.items) {
    const PureState member = item.pure ? permute(*item.pure, base) : [&] {
      const HermitianEig e = eigh(permute(item.state, base).matrix());
      return PureState(state.layout(), Vector(e.vectors.col(0)));
    }();
    const Vector target = std::sqrt(item.probability) * member.vector();
    const Vector coeff = pinv * target;  // conj(m)
    if ((x * coeff - target).norm() > 1e-7)
      throw InvalidInput("ensemble_to_measurement: member outside the support of the state");
    const Vector m = coeff.conjugate();
    elements.push_back(m * m.adjoint());
    sum += elements.back();
  }
  // complete on the part of B' the purification does not use
  const Matrix rest = hermitian_part(Matrix::Identity(db, db) - sum);
  const HermitianEig re = eigh(rest);
  for (Eigen::Index k = 0; k < re.values.size(); ++k)
    if (re.values(k) > 1e-10) elements.push_back(re.values(k) * re.vectors.col(k) * re.vectors.col(k).adjoint());
  return Povm(bprime, std::move(elements));
}

LabeledEnsemble measurement_to_ensemble(const PureState& purification, const Povm& povm) {
  if (!is_rank1(povm)) throw InvalidInput("measurement_to_ensemble: POVM is not rank-1 (refine first)");
  return steer(purification, povm);
}

// ---------------------------------------------------------------------------------------------
// duality driver

DualityReport duality_drive(const QState& state, const Budget& budget, double gap_tol, int max_rounds) {
  require_bipartite(state, "duality_drive");
  require_valid(state);
  DualityReport rep;
  const std::string a = state.labels()[0];
  const std::string b = state.labels()[1];
  const std::string bprime = b + "'";
  rep.entropy_a = marginal_entropy(state, Selector(a));
  rep.purification = purify(state, bprime);
  rep.complement = trace_out(rep.purification.density(), Selector(b));

  if (rank(state) == 1) {
    const auto eof = optimize_eof(state, budget);
    rep.f_best = eof.value;
    rep.ensemble = eof.argument;
    rep.povm = trivial_povm(rep.complement.layout().dim_of(bprime), bprime);
    rep.g_best = holevo_quantity(rep.complement, rep.povm);
    rep.duality_gap = rep.entropy_a - rep.f_best - rep.g_best;
    rep.converged = rep.duality_gap <= gap_tol;
    rep.rounds = 0;
    return rep;
  }

  rep.f_best = std::numeric_limits<double>::infinity();
  rep.g_best = -std::numeric_limits<double>::infinity();
  std::vector<LabeledEnsemble> warm_ensembles;
  std::vector<Povm> warm_povms;
  for (int round = 0; round < max_rounds; ++round) {
    Budget b_round = budget;
    b_round.seed = mix_seed(budget.seed, static_cast<std::uint64_t>(round));
    const double before = rep.f_best + (-rep.g_best);

    const auto eof = optimize_eof(state, b_round, warm_ensembles);
    rep.evaluations += eof.evaluations;
    if (eof.value < rep.f_best) {
      rep.f_best = eof.value;
      rep.ensemble = eof.argument;
    }
    const Povm mapped = ensemble_to_measurement(state, rep.purification, eof.argument);
    const double g_mapped = holevo_quantity(rep.complement, mapped);
    if (g_mapped > rep.g_best) {
      rep.g_best = g_mapped;
      rep.povm = mapped;
    }

    warm_povms = {mapped};
    const auto hol = optimize_holevo(rep.complement, bprime, b_round, warm_povms);
    rep.evaluations += hol.evaluations;
    if (hol.value > rep.g_best) {
      rep.g_best = hol.value;
      rep.povm = hol.argument;
    }
    LabeledEnsemble back = measurement_to_ensemble(rep.purification, hol.argument);
    const double f_back = ensemble_cost(back, Selector(a));
    if (f_back < rep.f_best) {
      rep.f_best = f_back;
      rep.ensemble = std::move(back);
    }
    warm_ensembles = {rep.ensemble};
    rep.rounds = round + 1;
    rep.duality_gap = rep.entropy_a - rep.f_best - rep.g_best;
    if (rep.duality_gap <= gap_tol) {
      rep.converged = true;
      break;
    }
    const double after = rep.f_best - rep.g_best;
    if (before - after < budget.tolerance) break;
  }
  return rep;
}

}  // namespace qcorr
