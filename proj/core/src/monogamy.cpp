#include "qcorr/monogamy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "qcorr/catalog.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/io.hpp"
#include "qcorr/keyrates.hpp"
#include "qcorr/squashed.hpp"
#include "qcorr/variational.hpp"

namespace qcorr {

namespace {

constexpr double kGapFloor = -1e-8;
constexpr double kSpectrumTolerance = 1e-10;
constexpr double kFloorTolerance = 1e-6;
constexpr double kAntisymEntropyTolerance = 1e-9;
constexpr double kAntisymEofTolerance = 1e-3;
constexpr double kAntisymMargin = 0.41;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string subject(const std::string& input, std::uint64_t seed, const std::string& part) {
  return input + "#" + std::to_string(seed) + ":" + part;
}

nlohmann::json ensemble_json(const LabeledEnsemble& ens) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& it : ens.items) {
    nlohmann::json m;
    m["probability"] = it.probability;
    m["outcome"] = it.outcome;
    m["state"] = it.pure ? io::to_json(*it.pure) : io::to_json(it.state);
    out.push_back(std::move(m));
  }
  return out;
}

bool is_two_qubit(const QState& s) { return s.dims() == Dims{2, 2}; }

std::string dims_tag(const Dims& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s;
}

std::string ginibre_tag(const Dims& dims, int rank = 0) {
  return "ginibre[" + dims_tag(dims) + (rank > 0 ? ";r" + std::to_string(rank) : "") + "]";
}

// Trials computed concurrently and collected in index order.
std::vector<Trial> run_trials(int n, const std::function<Trial(int)>& fn) {
  return parallel_map<Trial>(n, fn);
}

void absorb(VerificationReport& into, VerificationReport&& part) {
  for (auto& t : part.trials) into.trials.push_back(std::move(t));
  for (const auto& tol : part.tolerances)
    if (std::none_of(into.tolerances.begin(), into.tolerances.end(),
                     [&](const auto& x) { return x.first == tol.first; }))
      into.tolerances.push_back(tol);
}

void require_parties(const QState& s, std::size_t n, const char* what) {
  if (s.labels().size() != n)
    throw LabelError(std::string(what) + ": expected " + std::to_string(n) + " subsystems, got " +
                     std::to_string(s.labels().size()));
}

}  // namespace

const char* to_string(BoundDirection d) {
  switch (d) {
    case BoundDirection::upper: return "upper";
    case BoundDirection::lower: return "lower";
    case BoundDirection::exact: return "exact";
  }
  return "?";
}

double Trial::value(const std::string& key) const {
  for (const auto& [k, v] : values)
    if (k == key) return v;
  throw LabelError("trial has no value '" + key + "'");
}

void Trial::set(const std::string& key, double v) {
  for (auto& [k, old] : values)
    if (k == key) {
      old = v;
      return;
    }
  values.emplace_back(key, v);
}

std::vector<std::string> find_soundness_breaches(const std::vector<BoundRecord>& bounds) {
  struct Extremes {
    const BoundRecord* lower = nullptr;
    const BoundRecord* upper = nullptr;
  };
  std::map<std::pair<std::string, std::string>, Extremes> groups;
  for (const auto& b : bounds) {
    auto& g = groups[{b.quantity, b.subject}];
    if (b.direction != BoundDirection::upper && (!g.lower || b.value > g.lower->value)) g.lower = &b;
    if (b.direction != BoundDirection::lower && (!g.upper || b.value < g.upper->value)) g.upper = &b;
  }
  std::vector<std::string> out;
  for (const auto& [key, g] : groups)
    if (g.lower && g.upper && g.lower->value > g.upper->value + kSoundnessTolerance)
      out.push_back(key.first + "(" + key.second + "): " + to_string(g.lower->direction) + " bound " +
                    std::to_string(g.lower->value) + " exceeds " + to_string(g.upper->direction) + " bound " +
                    std::to_string(g.upper->value));
  return out;
}

std::vector<BoundRecord> collect_bounds(const VerificationReport& report) {
  std::vector<BoundRecord> all;
  for (const auto& t : report.trials) all.insert(all.end(), t.bounds.begin(), t.bounds.end());
  for (const auto& c : report.children) {
    const auto sub = collect_bounds(c);
    all.insert(all.end(), sub.begin(), sub.end());
  }
  return all;
}

void finalize(VerificationReport& report) {
  bool pass = true;
  for (auto& c : report.children) {
    finalize(c);
    pass = pass && c.pass;
  }
  for (const auto& t : report.trials) pass = pass && (!t.asserted || t.pass);
  report.soundness_breaches = find_soundness_breaches(collect_bounds(report));
  report.pass = pass && report.soundness_breaches.empty();
}

// ---------------------------------------------------------------------------------------------
// single-state checks

VerificationReport verify_thm1(const QState& state, const Budget& budget, double gap_tol,
                               const std::string& input, std::uint64_t seed) {
  const auto t0 = Clock::now();
  require_parties(state, 2, "verify_thm1");
  VerificationReport rep;
  rep.suite = "thm1";
  rep.tolerances = {{"gap_floor", kGapFloor}, {"gap_tol", gap_tol}};
  rep.seeds = {seed};
  const std::string ab = state.labels()[0] + state.labels()[1];
  const std::string abp = state.labels()[0] + state.labels()[1] + "'";

  const DualityReport d = duality_drive(state, budget, gap_tol);
  Trial t;
  t.input = input;
  t.seed = seed;
  t.set("S_A", d.entropy_a);
  t.set("F_best", d.f_best);
  t.set("G_best", d.g_best);
  t.set("gap", d.duality_gap);
  t.set("rounds", d.rounds);
  t.set("evaluations", d.evaluations);
  t.set("converged", d.converged ? 1.0 : 0.0);
  t.slack = std::min(d.duality_gap - kGapFloor, gap_tol - d.duality_gap);
  t.bounds.push_back({"E_f", subject(input, seed, ab), BoundDirection::upper, d.f_best});
  t.bounds.push_back({"E_f", subject(input, seed, ab), BoundDirection::upper, d.entropy_a - d.g_best});
  t.bounds.push_back({"I<-", subject(input, seed, abp), BoundDirection::lower, d.g_best});
  t.bounds.push_back({"I<-", subject(input, seed, abp), BoundDirection::lower, d.entropy_a - d.f_best});
  if (is_two_qubit(state)) {
    const double w = wootters_eof(state);
    t.set("wootters", w);
    t.slack = std::min(t.slack, gap_tol - std::abs(d.f_best - w));
    t.bounds.push_back({"E_f", subject(input, seed, ab), BoundDirection::exact, w});
    t.bounds.push_back({"I<-", subject(input, seed, abp), BoundDirection::exact, d.entropy_a - w});
  }
  t.pass = t.slack >= 0.0;
  if (!d.converged) t.note = "duality gap not closed within the budget";
  t.witness["ensemble"] = ensemble_json(d.ensemble);
  t.witness["povm"] = io::to_json(d.povm);
  rep.trials.push_back(std::move(t));
  rep.wall_ms = elapsed_ms(t0);
  finalize(rep);
  return rep;
}

VerificationReport verify_cor1(const QState& state, const Budget& budget, double gap_tol,
                               const std::string& input, std::uint64_t seed) {
  const auto t0 = Clock::now();
  require_parties(state, 3, "verify_cor1");
  require_valid(state);
  const std::string& a = state.labels()[0];
  const std::string& b = state.labels()[1];
  const std::string& c = state.labels()[2];
  VerificationReport rep;
  rep.suite = "cor1";
  rep.tolerances = {{"inequality", kSoundnessTolerance}, {"equality_gap", gap_tol}};
  rep.seeds = {seed};

  const QState rho_ab = partial_trace(state, {a, b});
  const QState rho_ac = partial_trace(state, {a, c});
  const double s_a = marginal_entropy(state, a);
  const auto eof = optimize_eof(rho_ab, budget);
  const auto hol = optimize_holevo(rho_ac, c, budget);
  const bool qubits = is_two_qubit(rho_ab);
  const double ef_lb = qubits ? wootters_eof(rho_ab) : 0.0;
  const bool pure = rank(state) == 1;

  Trial t;
  t.input = input;
  t.seed = seed;
  t.set("S_A", s_a);
  t.set("F_ub", eof.value);
  t.set("G_lb", hol.value);
  t.set("E_f_lb", ef_lb);
  t.slack = s_a + kSoundnessTolerance - hol.value - ef_lb;
  t.bounds.push_back({"E_f", subject(input, seed, a + b), BoundDirection::upper, eof.value});
  t.bounds.push_back({"I<-", subject(input, seed, a + c), BoundDirection::lower, hol.value});
  if (qubits) t.bounds.push_back({"E_f", subject(input, seed, a + b), BoundDirection::exact, ef_lb});
  else t.bounds.push_back({"E_f", subject(input, seed, a + b), BoundDirection::lower, 0.0});
  if (pure) {
    const double eq_gap = s_a - eof.value - hol.value;
    t.set("equality_gap", eq_gap);
    if (qubits) {
      t.slack = std::min(t.slack, gap_tol - std::abs(eq_gap));
      // for pure inputs C purifies AB, so I<-(AC) = S(A) - E_f(AB)
      t.bounds.push_back({"I<-", subject(input, seed, a + c), BoundDirection::exact, s_a - ef_lb});
    } else {
      t.note = "equality gap recorded, not asserted, beyond qubit A and B";
    }
  }
  t.pass = t.slack >= 0.0;
  t.witness["ensemble"] = ensemble_json(eof.argument);
  t.witness["povm"] = io::to_json(hol.argument);
  rep.trials.push_back(std::move(t));
  rep.wall_ms = elapsed_ms(t0);
  finalize(rep);
  return rep;
}

VerificationReport verify_cor2_single_letter(const QState& state, const Budget& budget, double gap_tol,
                                             const std::string& input, std::uint64_t seed) {
  const auto t0 = Clock::now();
  require_parties(state, 2, "verify_cor2_single_letter");
  require_valid(state);
  const std::string& a = state.labels()[0];
  const std::string& b = state.labels()[1];
  const std::string bp = b + "'";
  VerificationReport rep;
  rep.suite = "cor2";
  rep.tolerances = {{"triangle", gap_tol}};
  rep.seeds = {seed};

  const QState abbp = purify(state, bp).density();
  const QState rho_bbp = partial_trace(abbp, {b, bp});
  const QState rho_abp = partial_trace(abbp, {a, bp});
  const double s_b = marginal_entropy(state, b);
  const double s_bp = marginal_entropy(abbp, bp);
  const auto g1 = optimize_holevo(state, a, budget);
  const auto f = optimize_eof(rho_bbp, budget);
  const auto g2 = optimize_holevo(rho_abp, a, budget);
  const double t1 = s_b - g1.value;
  const double t3 = s_bp - g2.value;
  const double hi = std::max({t1, f.value, t3});
  const double lo = std::min({t1, f.value, t3});

  Trial t;
  t.input = input;
  t.seed = seed;
  t.set("S_B", s_b);
  t.set("S_B'", s_bp);
  t.set("I->_AB_lb", g1.value);
  t.set("I->_AB'_lb", g2.value);
  t.set("S_B-I->_AB", t1);
  t.set("E_f_BB'_ub", f.value);
  t.set("S_B'-I->_AB'", t3);
  t.set("triangle_residual", hi - lo);
  t.slack = gap_tol - (hi - lo);
  const std::string sub = subject(input, seed, b + bp);
  t.bounds.push_back({"E_f", sub, BoundDirection::upper, t1});
  t.bounds.push_back({"E_f", sub, BoundDirection::upper, f.value});
  t.bounds.push_back({"E_f", sub, BoundDirection::upper, t3});
  t.bounds.push_back({"E_f", sub, BoundDirection::lower, 0.0});
  if (is_two_qubit(rho_bbp)) {
    const double w = wootters_eof(rho_bbp);
    t.set("wootters", w);
    t.slack = std::min(t.slack, gap_tol - (hi - w));
    t.bounds.push_back({"E_f", sub, BoundDirection::exact, w});
  }
  t.pass = t.slack >= 0.0;
  t.witness["povm_A"] = io::to_json(g1.argument);
  t.witness["povm_A_complement"] = io::to_json(g2.argument);
  t.witness["ensemble_BB'"] = ensemble_json(f.argument);
  rep.trials.push_back(std::move(t));
  rep.wall_ms = elapsed_ms(t0);
  finalize(rep);
  return rep;
}

VerificationReport verify_main5_single_letter(const QState& state, const std::string& input, std::uint64_t seed) {
  const auto t0 = Clock::now();
  require_parties(state, 3, "verify_main5_single_letter");
  require_valid(state);
  const std::string& a = state.labels()[0];
  const std::string& b = state.labels()[1];
  const std::string& c = state.labels()[2];
  VerificationReport rep;
  rep.suite = "main5";
  rep.tolerances = {{"inequality", kSoundnessTolerance}};
  rep.seeds = {seed};

  const QState rho_ab = partial_trace(state, {a, b});
  const double s_a = marginal_entropy(state, a);
  const bool qubits = is_two_qubit(rho_ab);
  const double ef_lb = qubits ? wootters_eof(rho_ab) : 0.0;
  const double ed = std::max(0.0, coherent_information(state, a, c));

  Trial t;
  t.input = input;
  t.seed = seed;
  t.set("S_A", s_a);
  t.set("E_f_lb", ef_lb);
  t.set("E_D1_lb", ed);
  t.set("margin", s_a - ef_lb - ed);
  t.slack = s_a + kSoundnessTolerance - ef_lb - ed;
  t.pass = t.slack >= 0.0;
  t.bounds.push_back({"E_D1", subject(input, seed, a + c), BoundDirection::lower, ed});
  t.bounds.push_back({"E_f", subject(input, seed, a + b),
                      qubits ? BoundDirection::exact : BoundDirection::lower, ef_lb});
  rep.trials.push_back(std::move(t));
  rep.wall_ms = elapsed_ms(t0);
  finalize(rep);
  return rep;
}

VerificationReport antisym_counterexample(const Budget& budget) {
  const auto t0 = Clock::now();
  VerificationReport rep;
  rep.suite = "antisym";
  rep.tolerances = {{"entropy", kAntisymEntropyTolerance},
                    {"eof", kAntisymEofTolerance},
                    {"margin_min", kAntisymMargin},
                    {"spectrum", kSpectrumTolerance}};
  rep.seeds = {budget.seed};

  const QState abc = catalog::antisym_qutrit().density();
  const QState rho_ab = partial_trace(abc, {"A", "B"});
  const QState rho_ac = partial_trace(abc, {"A", "C"});
  const double s_a = marginal_entropy(abc, "A");
  const auto f_ab = optimize_eof(rho_ab, budget);
  const auto f_ac = optimize_eof(rho_ac, budget);
  const double margin = f_ab.value + f_ac.value - s_a;
  const double spectrum_dev = (spectrum(rho_ab) - spectrum(rho_ac)).cwiseAbs().maxCoeff();

  Trial t;
  t.input = "antisym_qutrit";
  t.seed = budget.seed;
  t.set("S_A", s_a);
  t.set("log2_3", std::log2(3.0));
  t.set("E_f_AB_ub", f_ab.value);
  t.set("E_f_AC_ub", f_ac.value);
  t.set("margin", margin);
  t.set("spectrum_deviation", spectrum_dev);
  t.set("evaluations", f_ab.evaluations + f_ac.evaluations);
  t.slack = std::min({kAntisymEntropyTolerance - std::abs(s_a - std::log2(3.0)),
                      kAntisymEofTolerance - std::abs(f_ab.value - 1.0),
                      kAntisymEofTolerance - std::abs(f_ac.value - 1.0), margin - kAntisymMargin,
                      kSpectrumTolerance - spectrum_dev});
  t.pass = t.slack >= 0.0;
  t.bounds.push_back({"E_f", subject(t.input, 0, "AB"), BoundDirection::upper, f_ab.value});
  t.bounds.push_back({"E_f", subject(t.input, 0, "AC"), BoundDirection::upper, f_ac.value});
  // every pure state supported on the antisymmetric subspace of two qutrits carries one ebit
  t.bounds.push_back({"E_f", subject(t.input, 0, "AB"), BoundDirection::exact, 1.0});
  t.bounds.push_back({"E_f", subject(t.input, 0, "AC"), BoundDirection::exact, 1.0});
  t.note = "margin is computed from upper bounds on both entanglements of formation";
  t.witness["ensemble_AB"] = ensemble_json(f_ab.argument);
  t.witness["ensemble_AC"] = ensemble_json(f_ac.argument);
  rep.trials.push_back(std::move(t));
  rep.wall_ms = elapsed_ms(t0);
  finalize(rep);
  return rep;
}

// ---------------------------------------------------------------------------------------------
// randomized suites

VerificationReport ssa_suite(const std::vector<std::uint64_t>& seeds) {
  const auto t0 = Clock::now();
  static const std::vector<Dims> profiles{{2, 2, 2}, {2, 2, 3}, {3, 3, 3}};
  VerificationReport rep;
  rep.suite = "ssa";
  rep.tolerances = {{"slack", kEntropyTolerance}};
  rep.seeds = seeds;
  const int np = static_cast<int>(profiles.size());
  rep.trials = run_trials(static_cast<int>(seeds.size()) * np, [&](int i) {
    const std::uint64_t seed = seeds[static_cast<std::size_t>(i / np)];
    const Dims& dims = profiles[static_cast<std::size_t>(i % np)];
    const QState s = catalog::ginibre(dims, mix_seed(seed, static_cast<std::uint64_t>(i % np)));
    const SsaReport r = ssa_monogamy_check(s);
    Trial t;
    t.input = ginibre_tag(dims);
    t.seed = seed;
    t.set("left", r.left);
    t.set("right", r.right);
    t.set("slack", r.slack);
    t.slack = r.slack + kEntropyTolerance;
    t.pass = r.pass;
    return t;
  });
  rep.wall_ms = elapsed_ms(t0);
  finalize(rep);
  return rep;
}

VerificationReport chain_suite(const std::vector<std::uint64_t>& seeds) {
  const auto t0 = Clock::now();
  VerificationReport rep;
  rep.suite = "chain";
  rep.tolerances = {{"slack", kEntropyTolerance}, {"chain_identity", kEntropyTolerance}, {"marginals", 1e-10}};
  rep.seeds = seeds;
  rep.trials = run_trials(static_cast<int>(seeds.size()), [&](int i) {
    const std::uint64_t seed = seeds[static_cast<std::size_t>(i)];
    const QState s = catalog::ginibre({2, 2, 2, 2}, seed, 0, {"A", "B", "C", "E"});
    std::mt19937_64 rng(mix_seed(seed, 1));
    std::uniform_int_distribution<int> outcomes(2, 4);
    const Povm pb = random_povm(2, outcomes(rng), mix_seed(seed, 2), "B");
    const Povm pc = random_povm(2, outcomes(rng), mix_seed(seed, 3), "C");
    const ChainReport r = chain_inequality_check(s, pb, pc, "A", "E");
    Trial t;
    t.input = ginibre_tag({2, 2, 2, 2});
    t.seed = seed;
    t.set("left", r.left);
    t.set("right", r.right);
    t.set("slack", r.slack);
    t.set("chain_identity_residual", r.chain_identity_residual);
    t.set("marginal_defect", r.marginal_defect);
    t.slack = std::min({r.slack + kEntropyTolerance, kEntropyTolerance - std::abs(r.chain_identity_residual),
                        1e-10 - r.marginal_defect});
    t.pass = r.pass;
    t.witness["povm_B"] = io::to_json(pb);
    t.witness["povm_C"] = io::to_json(pc);
    return t;
  });
  rep.wall_ms = elapsed_ms(t0);
  finalize(rep);
  return rep;
}

VerificationReport squashed_chain_suite(const std::vector<std::uint64_t>& seeds) {
  const auto t0 = Clock::now();
  VerificationReport rep;
  rep.suite = "squashed_chain";
  rep.tolerances = {{"chain_residual", kEntropyTolerance}, {"flag_objective", kEntropyTolerance},
                    {"pure_floor", kFloorTolerance}};
  rep.seeds = seeds;
  rep.trials = run_trials(static_cast<int>(seeds.size()) * 3, [&](int i) {
    const std::uint64_t seed = seeds[static_cast<std::size_t>(i / 3)];
    Trial t;
    t.seed = seed;
    switch (i % 3) {
      case 0: {
        const QState s = catalog::ginibre({2, 2, 2}, mix_seed(seed, 10));
        const Extension ext = random_extension(s, 2, mix_seed(seed, 11));
        const SquashedAudit r = squashed_monogamy_audit(s, ext);
        t.input = "chain:" + ginibre_tag({2, 2, 2}) + "+E2";
        t.set("whole", r.whole);
        t.set("first", r.first);
        t.set("second", r.second);
        t.set("residual", r.residual);
        t.set("contract_deviation", r.contract_deviation);
        t.slack = kEntropyTolerance - std::abs(r.residual);
        t.pass = r.pass;
        t.bounds.push_back({"E_sq", subject(t.input, seed, "AB"), BoundDirection::upper, r.u_ab});
        t.bounds.push_back({"E_sq", subject(t.input, seed, "AB"), BoundDirection::lower, 0.0});
        t.bounds.push_back({"E_sq", subject(t.input, seed, "AC"), BoundDirection::upper, r.u_ac});
        t.bounds.push_back({"E_sq", subject(t.input, seed, "AC"), BoundDirection::lower, 0.0});
        break;
      }
      case 1: {
        std::vector<ProductTerm> terms;
        std::mt19937_64 rng(mix_seed(seed, 20));
        std::uniform_real_distribution<double> u(0.05, 1.0);
        double total = 0.0;
        for (std::uint64_t k = 0; k < 4; ++k) {
          const QState pa = catalog::ginibre({2}, mix_seed(seed, 30 + k), 0, {"A"});
          const QState pb = catalog::ginibre({2}, mix_seed(seed, 40 + k), 0, {"B"});
          terms.push_back({u(rng), tensor(pa, pb)});
          total += terms.back().probability;
        }
        for (auto& term : terms) term.probability /= total;
        const Extension ext = flag_extension(terms);
        const double obj = squashed_objective(ext);
        t.input = "flag:4 product terms";
        t.set("objective", obj);
        t.set("half_I_AB", 0.5 * mutual_information(ext.marginal, "A", "B"));
        t.slack = kEntropyTolerance - obj;
        t.pass = t.slack >= 0.0;
        t.bounds.push_back({"E_sq", subject(t.input, seed, "AB"), BoundDirection::upper, obj});
        t.bounds.push_back({"E_sq", subject(t.input, seed, "AB"), BoundDirection::lower, 0.0});
        break;
      }
      default: {
        const PureState psi = catalog::haar_pure({2, 2}, mix_seed(seed, 50));
        const QState rho = psi.density();
        const double s_a = marginal_entropy(rho, "A");
        const auto ub = optimize_squashed_ub(rho, 2);
        const double random_ext = squashed_objective(random_extension(rho, 3, mix_seed(seed, 51)));
        t.input = "pure:haar[2,2]";
        t.set("S_A", s_a);
        t.set("optimized", ub.value);
        t.set("random_extension", random_ext);
        t.slack = kFloorTolerance - std::max(std::abs(ub.value - s_a), std::abs(random_ext - s_a));
        t.pass = t.slack >= 0.0;
        t.bounds.push_back({"E_sq", subject(t.input, seed, "AB"), BoundDirection::upper, ub.value});
        t.bounds.push_back({"E_sq", subject(t.input, seed, "AB"), BoundDirection::exact, s_a});
        break;
      }
    }
    return t;
  });
  rep.wall_ms = elapsed_ms(t0);
  finalize(rep);
  return rep;
}

VerificationReport prop1_suite(const std::vector<std::uint64_t>& seeds) {
  const auto t0 = Clock::now();
  static const std::vector<Dims> profiles{{2, 2}, {2, 3}, {3, 2}};
  VerificationReport rep;
  rep.suite = "prop1";
  rep.tolerances = {{"slack", kEntropyTolerance}};
  rep.seeds = seeds;
  rep.trials = run_trials(static_cast<int>(seeds.size()), [&](int i) {
    const std::uint64_t seed = seeds[static_cast<std::size_t>(i)];
    std::mt19937_64 rng(mix_seed(seed, 60));
    const Dims& dims = profiles[std::uniform_int_distribution<std::size_t>(0, profiles.size() - 1)(rng)];
    const int r = std::uniform_int_distribution<int>(1, dims[0] * dims[1])(rng);
    const QState s = catalog::ginibre(dims, mix_seed(seed, 61), r);
    const Prop1Report p = proposition1_check(s, 1, mix_seed(seed, 62));
    const Prop1Trial& pt = p.trials.front();
    Trial t;
    t.input = ginibre_tag(dims, r);
    t.seed = seed;
    t.set("I_XA", pt.info_a);
    t.set("I_XE", pt.info_e);
    t.set("secret", pt.secret);
    t.set("slack", pt.slack);
    t.slack = pt.slack + kEntropyTolerance;
    t.pass = p.pass;
    t.witness["povm"] = io::to_json(pt.povm);
    return t;
  });
  rep.wall_ms = elapsed_ms(t0);
  finalize(rep);
  return rep;
}

// ---------------------------------------------------------------------------------------------
// dispatcher

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"thm1", "cor1", "cor2", "main5", "ssa",
                                              "chain", "squashed_chain", "prop1", "antisym"};
  return names;
}

namespace {

using SingleCheck = std::function<VerificationReport(std::uint64_t)>;

VerificationReport collect(const std::string& suite, const std::vector<std::uint64_t>& seeds,
                           std::vector<std::pair<std::string, std::function<VerificationReport()>>> fixed,
                           const SingleCheck& per_seed) {
  const auto t0 = Clock::now();
  VerificationReport rep;
  rep.suite = suite;
  rep.seeds = seeds;
  for (auto& [name, fn] : fixed) absorb(rep, fn());
  auto parts = parallel_map<VerificationReport>(static_cast<int>(seeds.size()), [&](int i) {
    return per_seed(seeds[static_cast<std::size_t>(i)]);
  });
  for (auto& p : parts) absorb(rep, std::move(p));
  rep.wall_ms = elapsed_ms(t0);
  finalize(rep);
  return rep;
}

VerificationReport dispatch(const std::string& name, const std::vector<std::uint64_t>& seeds, const Budget& budget,
                            double gap_tol) {
  const auto seeded = [&](std::uint64_t seed) {
    Budget b = budget;
    b.seed = mix_seed(budget.seed, seed);
    return b;
  };
  if (name == "thm1")
    return collect(
        "thm1", seeds,
        {{"singlet", [&] { return verify_thm1(catalog::singlet().density(), budget, gap_tol, "singlet"); }},
         {"max_classical_corr",
          [&] { return verify_thm1(catalog::max_classical_corr(), budget, gap_tol, "max_classical_corr"); }}},
        [&](std::uint64_t seed) {
          return verify_thm1(catalog::ginibre({2, 2}, seed, 2), seeded(seed), gap_tol, ginibre_tag({2, 2}, 2), seed);
        });
  if (name == "cor1")
    return collect(
        "cor1", seeds,
        {{"ghz", [&] { return verify_cor1(catalog::ghz().density(), budget, gap_tol, "ghz"); }},
         {"w", [&] { return verify_cor1(catalog::w().density(), budget, gap_tol, "w"); }}},
        [&](std::uint64_t seed) {
          const QState pure = catalog::haar_pure({2, 2, 2}, seed).density();
          VerificationReport r = verify_cor1(pure, seeded(seed), gap_tol, "haar[2,2,2]", seed);
          const QState prod = tensor(catalog::ginibre({2, 2}, mix_seed(seed, 1)),
                                     catalog::ginibre({2}, mix_seed(seed, 2), 0, {"C"}));
          absorb(r, verify_cor1(prod, seeded(seed), gap_tol, "ginibre[2,2]xginibre[2]", seed));
          return r;
        });
  if (name == "cor2")
    return collect(
        "cor2", seeds,
        {{"max_classical_corr",
          [&] { return verify_cor2_single_letter(catalog::max_classical_corr(), budget, gap_tol, "max_classical_corr"); }},
         {"singlet",
          [&] { return verify_cor2_single_letter(catalog::singlet().density(), budget, gap_tol, "singlet"); }}},
        [&](std::uint64_t seed) {
          return verify_cor2_single_letter(catalog::ginibre({2, 2}, seed, 2), seeded(seed), gap_tol,
                                           ginibre_tag({2, 2}, 2), seed);
        });
  if (name == "main5")
    return collect(
        "main5", seeds,
        {{"bell_x_pure",
          [&] {
            Matrix zero = Matrix::Zero(2, 2);
            zero(0, 0) = 1.0;
            const QState c(Dims{2}, Labels{"C"}, zero);
            return verify_main5_single_letter(tensor(catalog::bell_phi().density(), c), "bell_phi x |0>");
          }},
         {"ghz", [&] { return verify_main5_single_letter(catalog::ghz().density(), "ghz"); }}},
        [&](std::uint64_t seed) {
          return verify_main5_single_letter(catalog::ginibre({2, 2, 2}, seed), ginibre_tag({2, 2, 2}), seed);
        });
  if (name == "ssa") return ssa_suite(seeds);
  if (name == "chain") return chain_suite(seeds);
  if (name == "squashed_chain") return squashed_chain_suite(seeds);
  if (name == "prop1") return prop1_suite(seeds);
  if (name == "antisym") return antisym_counterexample(budget);
  throw UnknownName("unknown suite '" + name + "'");
}

}  // namespace

VerificationReport run_suite(const std::vector<std::string>& names, const std::vector<std::uint64_t>& seeds,
                             const Budget& budget, double gap_tol) {
  for (const auto& n : names)
    if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
      throw UnknownName("unknown suite '" + n + "'");
  const auto t0 = Clock::now();
  std::vector<std::uint64_t> used = seeds;
  if (used.empty())
    for (std::uint64_t s = 1; s <= 10; ++s) used.push_back(s);
  VerificationReport rep;
  rep.suite = "run";
  rep.seeds = used;
  for (const auto& n : names) rep.children.push_back(dispatch(n, used, budget, gap_tol));
  rep.wall_ms = elapsed_ms(t0);
  finalize(rep);
  return rep;
}

}  // namespace qcorr
