#include "qcorr/keyrates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include "qcorr/entropy.hpp"
#include "qcorr/variational.hpp"

namespace qcorr {

namespace {

constexpr double kMarginalTolerance = 1e-10;
constexpr double kTraceTolerance = 1e-9;
const std::string kX = "#X";
const std::string kY = "#Y";
const std::string kPurifier = "#E";

double mi_or_zero(const QState& s, const Selector& x, const Selector& q) {
  return q.empty() ? 0.0 : mutual_information(s, x, q);
}

Selector optional_label(const std::string& label) {
  return label.empty() ? Selector() : Selector(label);
}

// probability distribution of the outcome registers `regs` (diagonal of the marginal)
std::vector<double> register_distribution(const QState& joint, const Selector& regs) {
  const QState m = partial_trace(joint, regs);
  std::vector<double> p(static_cast<std::size_t>(m.dim()));
  for (int i = 0; i < m.dim(); ++i) p[static_cast<std::size_t>(i)] = m.matrix()(i, i).real();
  return p;
}

std::vector<double> outcome_probabilities(const QState& state, const Povm& povm) {
  const QState local = partial_trace(state, Selector(povm.target()));
  std::vector<double> p;
  for (const auto& m : povm.elements()) p.push_back((m * local.matrix()).trace().real());
  return p;
}

Matrix pad_rows(const Matrix& v, Eigen::Index rows) {
  Matrix out = Matrix::Zero(rows, v.cols());
  out.topRows(std::min(rows, v.rows())) = v.topRows(std::min(rows, v.rows()));
  return out;
}

// rank-1 POVM from an optimizer isometry with empty outcomes dropped
Povm clean_povm(const Matrix& v, const std::string& target) {
  const Povm raw = povm_from_isometry(v, target);
  const int d = raw.dim();
  std::vector<Matrix> el;
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : raw.elements())
    if (e.trace().real() > 1e-14) {
      el.push_back(e);
      sum += e;
    }
  el.back() += Matrix::Identity(d, d) - sum;
  return rank1_refine(Povm(target, std::move(el))).povm;
}

}  // namespace

QState measure_to_register(const QState& state, const Povm& povm, const std::string& outcome_label) {
  const Layout& layout = state.layout();
  const int dl = layout.dim_of(povm.target());
  if (layout.has(outcome_label)) throw LabelError("register label '" + outcome_label + "' already in use");
  const auto bad = validate_povm(povm, dl);
  if (!bad.empty())
    throw InvalidInput("invalid POVM on '" + povm.target() + "': " + bad.front().invariant);
  const int n = static_cast<int>(povm.size());

  const Selector rest = layout.complement(Selector(povm.target()));
  if (rest.empty()) {
    Matrix diag = Matrix::Zero(n, n);
    for (int x = 0; x < n; ++x) diag(x, x) = (povm.elements()[x] * state.matrix()).trace().real();
    return QState(Dims{n}, Labels{outcome_label}, diag);
  }
  const Layout rest_layout = layout.sub(rest);
  const int dr = rest_layout.total_dim();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n) * dr, static_cast<Eigen::Index>(n) * dr);
  for (int x = 0; x < n; ++x)
    out.block(static_cast<Eigen::Index>(x) * dr, static_cast<Eigen::Index>(x) * dr, dr, dr) =
        reduce_with_element(state, povm.elements()[x], povm.target()).matrix();

  Dims dims{n};
  Labels labels{outcome_label};
  for (const auto& l : rest.labels()) {
    dims.push_back(layout.dim_of(l));
    labels.push_back(l);
  }
  // register goes where the measured subsystem was
  Labels order = layout.labels();
  order[static_cast<std::size_t>(layout.position(povm.target()))] = outcome_label;
  return permute(QState(dims, labels, hermitian_part(out)), Selector(order));
}

CqRecord measure_all(const QState& source, std::vector<MeasurementRecord> measurements) {
  CqRecord rec{source, std::move(measurements), source};
  for (const auto& m : rec.measurements) rec.joint = measure_to_register(rec.joint, m.povm, m.outcome_label);
  return rec;
}

double classical_quantum_mi(const CqRecord& record, const std::string& outcome, const Selector& quantum) {
  const bool known = std::any_of(record.measurements.begin(), record.measurements.end(),
                                 [&](const MeasurementRecord& m) { return m.outcome_label == outcome; });
  if (!known) throw LabelError("unknown outcome '" + outcome + "'");
  return mutual_information(record.joint, Selector(outcome), quantum);
}

double csecret1_value(const QState& state, const Povm& povm, const Selector& a, const Selector& e) {
  const QState cq = measure_to_register(state, povm, kX);
  return mutual_information(cq, kX, a) - mi_or_zero(cq, kX, e);
}

OptimizationResult<Povm> optimize_csecret1(const QState& state, const Budget& budget,
                                           const std::string& b, const Selector& a, const Selector& e) {
  require_valid(state);
  const Layout& layout = state.layout();
  const int db = layout.dim_of(b);
  const int da = layout.dim_of(a);
  const QState rho_ab = permute(partial_trace(state, a + Selector(b)), a + Selector(b));
  const MeasuredEntropy fa(rho_ab.matrix(), da, db);
  std::optional<MeasuredEntropy> fe;
  double constant = marginal_entropy(state, a);
  if (!e.empty()) {
    const QState rho_eb = permute(partial_trace(state, e + Selector(b)), e + Selector(b));
    fe.emplace(rho_eb.matrix(), layout.dim_of(e), db);
    constant -= marginal_entropy(state, e);
  }

  // maximize S(A) - S(E) - F_A(V) + F_E(V)
  const int outcomes = db * db;
  StiefelProblem problem;
  problem.rows = outcomes;
  problem.cols = db;
  problem.value = [&](const Matrix& v) { return fa.value(v) - (fe ? fe->value(v) : 0.0); };
  problem.value_and_gradient = [&](const Matrix& v, Matrix& g) {
    double f = fa.value_and_gradient(v, g);
    if (fe) {
      Matrix ge;
      f -= fe->value_and_gradient(v, ge);
      g -= ge;
    }
    return f;
  };
  std::vector<Matrix> starts{pad_rows(Matrix::Identity(db, db), outcomes)};
  starts.push_back(pad_rows(eigh(partial_trace(state, Selector(b)).matrix()).vectors.adjoint(), outcomes));

  const MultiStart ms = multistart_stiefel(problem, starts, budget);
  OptimizationResult<Povm> result;
  result.argument = clean_povm(ms.best.argmin, b);
  result.value = csecret1_value(state, result.argument, a, e);
  result.restarts_used = static_cast<int>(ms.restart_values.size());
  result.evaluations = ms.evaluations;
  result.converged = ms.converged;
  result.gap_estimate = std::max(ms.gap_estimate, 0.0);
  for (double f : ms.best_so_far) result.best_so_far.push_back(constant - f);
  return result;
}

Prop1Report proposition1_check(const QState& state, const std::vector<Povm>& povms, const std::string& b) {
  require_valid(state);
  const Selector a = state.layout().complement(Selector(b));
  if (a.empty()) throw LabelError("proposition1_check: no subsystem besides '" + b + "'");
  const QState abe = purify(state, kPurifier).density();
  Prop1Report rep;
  rep.min_slack = std::numeric_limits<double>::infinity();
  for (const auto& p : povms) {
    const QState cq = measure_to_register(abe, p, kX);
    Prop1Trial t;
    t.povm = p;
    t.info_a = mutual_information(cq, kX, a);
    t.info_e = mutual_information(cq, kX, kPurifier);
    t.secret = t.info_a - t.info_e;
    t.slack = t.info_a - t.secret;
    rep.min_slack = std::min(rep.min_slack, t.slack);
    rep.trials.push_back(std::move(t));
  }
  if (rep.trials.empty()) rep.min_slack = 0.0;
  rep.pass = rep.min_slack >= -kEntropyTolerance;
  return rep;
}

Prop1Report proposition1_check(const QState& state, int trials, std::uint64_t seed, const std::string& b) {
  const int d = state.layout().dim_of(b);
  std::vector<Povm> povms;
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t s = mix_seed(seed, static_cast<std::uint64_t>(i));
    std::mt19937_64 rng(s);
    const int n = std::uniform_int_distribution<int>(2, std::max(2, d * d))(rng);
    povms.push_back(random_povm(d, n, mix_seed(s, 1), b));
  }
  return proposition1_check(state, povms, b);
}

// ---------------------------------------------------------------------------------------------
// instruments

Instrument identity_instrument(int dim, const std::string& target) {
  return Instrument{target, {{Matrix::Identity(dim, dim)}}};
}

Instrument instrument_from_isometry(const Matrix& isometry, int d_out, const std::string& target) {
  if (d_out <= 0 || isometry.rows() % d_out != 0)
    throw DimensionMismatch("instrument_from_isometry: rows not a multiple of the output dimension");
  Instrument ins{target, {}};
  for (Eigen::Index i = 0; i < isometry.rows() / d_out; ++i)
    ins.kraus.push_back({isometry.middleRows(i * d_out, d_out)});
  return ins;
}

double trace_preservation_defect(const Instrument& instrument) {
  if (instrument.kraus.empty() || instrument.kraus.front().empty()) return 1.0;
  const auto d = instrument.kraus.front().front().cols();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& map : instrument.kraus)
    for (const auto& k : map) {
      if (k.cols() != d) throw DimensionMismatch("instrument: Kraus operators differ in input dimension");
      sum += k.adjoint() * k;
    }
  return max_abs(sum - Matrix::Identity(d, d));
}

namespace {

// sum_i p_i [S(A^(i)) - S(AB^(i))] without the trace-preservation check; finite-difference
// probes leave the isometry manifold by O(step).
double ed1_functional(const QState& state, const Instrument& instrument) {
  const Layout& layout = state.layout();
  const Selector rest = layout.complement(Selector(instrument.target));
  if (rest.empty()) throw LabelError("ed1_value: no subsystem besides '" + instrument.target + "'");
  const Matrix rho = permute(state, rest + Selector(instrument.target)).matrix();
  const int dr = layout.dim_of(rest);
  const Matrix id = Matrix::Identity(dr, dr);

  double total = 0.0;
  for (const auto& map : instrument.kraus) {
    const int dout = static_cast<int>(map.front().rows());
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dr) * dout, static_cast<Eigen::Index>(dr) * dout);
    for (const auto& k : map) {
      const Matrix big = kron(id, k);
      out += big * rho * big.adjoint();
    }
    const double p = out.trace().real();
    if (p < kOutcomeCutoff) continue;
    const QState post(Dims{dr, dout}, Labels{"#A", "#B"}, hermitian_part(out / p));
    total += p * coherent_information(post, "#A", "#B");
  }
  return total;
}

}  // namespace

double ed1_value(const QState& state, const Instrument& instrument) {
  const int din = state.layout().dim_of(instrument.target);
  const double defect = trace_preservation_defect(instrument);
  if (defect > kTraceTolerance)
    throw InvalidInput("ed1_value: instrument not trace preserving (defect " + std::to_string(defect) + ")");
  if (instrument.kraus.front().front().cols() != din)
    throw DimensionMismatch("ed1_value: instrument input dimension differs from '" + instrument.target + "'");
  return ed1_functional(state, instrument);
}

OptimizationResult<Instrument> ed1_lower_bound(const QState& state, const Budget& budget,
                                               const std::string& b, int outcomes) {
  require_valid(state);
  if (outcomes < 1) throw InvalidInput("ed1_lower_bound: need at least one outcome");
  const int d = state.layout().dim_of(b);
  StiefelProblem problem;
  problem.rows = static_cast<Eigen::Index>(outcomes) * d;
  problem.cols = d;
  problem.value = [&](const Matrix& w) { return -ed1_functional(state, instrument_from_isometry(w, d, b)); };
  const std::vector<Matrix> starts{pad_rows(Matrix::Identity(d, d), problem.rows)};

  const MultiStart ms = multistart_stiefel(problem, starts, budget);
  OptimizationResult<Instrument> result;
  result.argument = instrument_from_isometry(ms.best.argmin, d, b);
  result.value = ed1_value(state, result.argument);
  result.restarts_used = static_cast<int>(ms.restart_values.size());
  result.evaluations = ms.evaluations;
  result.converged = ms.converged;
  result.gap_estimate = std::max(ms.gap_estimate, 0.0);
  for (double f : ms.best_so_far) result.best_so_far.push_back(-f);
  return result;
}

// ---------------------------------------------------------------------------------------------
// chain inequalities

ChainReport chain_inequality_check(const QState& state, const Povm& on_b, const Povm& on_c,
                                   const std::string& a, const std::string& e) {
  require_valid(state);
  const Selector sa(a);
  const Selector se = optional_label(e);
  const Selector sb(on_b.target());
  if (!e.empty()) state.layout().position(e);
  const QState y_only = measure_to_register(state, on_c, kY);
  const QState both = measure_to_register(y_only, on_b, kX);

  ChainReport r;
  r.info_xa = mutual_information(both, kX, sa);
  r.info_xe = mi_or_zero(both, kX, se);
  r.info_ya = mutual_information(y_only, kY, sa);
  r.info_ybe = mutual_information(y_only, kY, sb + se);
  r.info_xya = mutual_information(both, {kX, kY}, sa);
  r.info_xye = mi_or_zero(both, {kX, kY}, se);
  r.info_ya_given_x = conditional_mutual_information(both, kY, sa, kX);
  r.info_ye_given_x = se.empty() ? 0.0 : conditional_mutual_information(both, kY, se, kX);
  r.left = (r.info_xa - r.info_xe) + (r.info_ya - r.info_ybe);
  r.right = r.info_xya - r.info_xye;
  r.slack = r.right - r.left;
  r.chain_identity_residual = r.info_xa + r.info_ya_given_x - r.info_xya;

  const int nx = static_cast<int>(on_b.size());
  const int ny = static_cast<int>(on_c.size());
  // partial_trace keeps layout order, so the register order decides the index layout
  const auto pxy = register_distribution(both, {kX, kY});
  const bool x_first = both.layout().position(kX) < both.layout().position(kY);
  const auto px = outcome_probabilities(state, on_b);
  const auto py = outcome_probabilities(state, on_c);
  std::vector<double> mx(static_cast<std::size_t>(nx), 0.0), my(static_cast<std::size_t>(ny), 0.0);
  double total = 0.0;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      const double p = pxy[static_cast<std::size_t>(x_first ? x * ny + y : y * nx + x)];
      mx[static_cast<std::size_t>(x)] += p;
      my[static_cast<std::size_t>(y)] += p;
      total += p;
    }
  double dev = std::abs(total - 1.0);
  for (int x = 0; x < nx; ++x) dev = std::max(dev, std::abs(mx[static_cast<std::size_t>(x)] - px[static_cast<std::size_t>(x)]));
  for (int y = 0; y < ny; ++y) dev = std::max(dev, std::abs(my[static_cast<std::size_t>(y)] - py[static_cast<std::size_t>(y)]));
  r.marginal_defect = dev;

  r.pass = r.slack >= -kEntropyTolerance && std::abs(r.chain_identity_residual) <= kEntropyTolerance &&
           r.marginal_defect <= kMarginalTolerance;
  return r;
}

SecretCrReport secret_cr_monogamy_check(const QState& state, const Povm& on_b, const Povm& on_c,
                                        const std::string& a) {
  require_valid(state);
  const QState x_only = measure_to_register(state, on_b, kX);
  const QState y_only = measure_to_register(state, on_c, kY);
  const QState both = measure_to_register(x_only, on_c, kY);
  SecretCrReport r;
  r.info_xa = mutual_information(x_only, kX, a);
  r.info_xc = mutual_information(x_only, kX, on_c.target());
  r.info_ya = mutual_information(y_only, kY, a);
  r.info_xya = mutual_information(both, {kX, kY}, a);
  r.left = (r.info_xa - r.info_xc) + r.info_ya;
  r.right = r.info_xya;
  r.slack = r.right - r.left;
  r.pass = r.slack >= -kEntropyTolerance;
  return r;
}

}  // namespace qcorr
