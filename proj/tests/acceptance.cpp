// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcorr/catalog.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/io.hpp"
#include "qcorr/monogamy.hpp"
#include "qcorr/report_io.hpp"
#include "qcorr/variational.hpp"

using namespace qcorr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  double seconds = 0.0;
};

struct Check {
  bool ok = true;
  std::string first_failure;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
};

std::vector<BoundRecord> all_bounds;

void keep_bounds(const VerificationReport& r) {
  const auto b = collect_bounds(r);
  all_bounds.insert(all_bounds.end(), b.begin(), b.end());
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::vector<std::uint64_t> seed_range(std::uint64_t n) {
  std::vector<std::uint64_t> s(n);
  for (std::uint64_t i = 0; i < n; ++i) s[i] = i + 1;
  return s;
}

Outcome timed(const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = fn();
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return o;
}

Outcome finish(const Check& c, std::string detail) {
  if (!c.ok) detail += "; first failure: " + c.first_failure;
  return {c.ok, detail};
}

// 1. antisymmetric two-qutrit state
Outcome antisym() {
  const VerificationReport r = antisym_counterexample();
  keep_bounds(r);
  const Trial& t = r.trials.front();
  const double s_a = t.value("S_A"), f_ab = t.value("E_f_AB_ub"), f_ac = t.value("E_f_AC_ub");
  const double margin = f_ab + f_ac - s_a;
  Check c;
  c.require(std::abs(s_a - std::log2(3.0)) <= 1e-9, fmt("S_A = %.12f", s_a));
  c.require(std::abs(f_ab - 1.0) <= 1e-3, fmt("E_f(AB) = %.6f", f_ab));
  c.require(std::abs(f_ac - 1.0) <= 1e-3, fmt("E_f(AC) = %.6f", f_ac));
  c.require(std::abs(margin - (2.0 - std::log2(3.0))) <= 2e-3, fmt("margin = %.6f", margin));
  c.require(r.pass, "report failed");
  return finish(c, fmt("S_A=%.9f margin=%.6f", s_a, margin) + fmt(" E_f(AB)=%.6f E_f(AC)=%.6f", f_ab, f_ac));
}

// 2. duality on 20 random rank <= 2 two-qubit states
Outcome duality() {
  Check c;
  double worst_gap = -1.0, worst_oracle = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const QState s = catalog::ginibre({2, 2}, seed, 2);
    Budget b;
    b.seed = seed;
    const VerificationReport r = verify_thm1(s, b, 1e-3, "ginibre[2,2;r2]", seed);
    keep_bounds(r);
    const Trial& t = r.trials.front();
    const double gap = t.value("gap");
    const double oracle_ef = oracle::eof_two_qubit(s.matrix());
    const double dev = std::abs(t.value("F_best") - oracle_ef);
    worst_gap = std::max(worst_gap, gap);
    worst_oracle = std::max(worst_oracle, dev);
    c.require(gap >= -1e-8 && gap <= 1e-3, fmt("seed %.0f gap %.3e", static_cast<double>(seed), gap));
    c.require(dev <= 1e-3, fmt("seed %.0f concurrence-oracle deviation %.3e", static_cast<double>(seed), dev));
    c.require(std::abs(t.value("wootters") - oracle_ef) <= 1e-7, "library Wootters disagrees with oracle");
  }
  return finish(c, fmt("max gap=%.3e max |F-oracle|=%.3e", worst_gap, worst_oracle));
}

// 4. pure-state equality for GHZ and W
Outcome cor1_equality() {
  Check c;
  const VerificationReport ghz = verify_cor1(catalog::ghz().density(), {}, 1e-3, "ghz");
  const VerificationReport w = verify_cor1(catalog::w().density(), {}, 1e-3, "w");
  keep_bounds(ghz);
  keep_bounds(w);
  const Trial& tg = ghz.trials.front();
  const Trial& tw = w.trials.front();
  c.require(std::abs(tg.value("equality_gap")) <= 1e-3, fmt("GHZ gap %.3e", tg.value("equality_gap")));
  c.require(std::abs(tw.value("equality_gap")) <= 1e-3, fmt("W gap %.3e", tw.value("equality_gap")));
  const QState w_ab = partial_trace(catalog::w().density(), {"A", "B"});
  const double oracle_f = oracle::eof_two_qubit(w_ab.matrix());
  const double f = tw.value("F_ub"), g = tw.value("G_lb");
  c.require(std::abs(f - 0.5500) <= 1e-3, fmt("W F = %.6f", f));
  c.require(std::abs(f - oracle_f) <= 1e-3, fmt("W F - oracle = %.3e", f - oracle_f));
  c.require(std::abs(f + g - oracle::h2(1.0 / 3.0)) <= 1e-3, fmt("W F+G = %.6f", f + g));
  return finish(c, fmt("GHZ gap=%.3e", tg.value("equality_gap")) +
                       fmt(" W F=%.6f F+G-h(1/3)=%.3e", f, f + g - oracle::h2(1.0 / 3.0)));
}

// 5. strong subadditivity over three profiles
Outcome ssa() {
  const VerificationReport r = ssa_suite(seed_range(1000));
  keep_bounds(r);
  Check c;
  double worst = 1e300;
  c.require(r.trials.size() == 3000, "expected 1000 trials per profile");
  for (const auto& t : r.trials) {
    worst = std::min(worst, t.value("slack"));
    c.require(t.value("slack") >= -1e-9, t.input + fmt(" seed %.0f", static_cast<double>(t.seed)));
  }
  return finish(c, fmt("%.0f trials, min slack=%.3e", static_cast<double>(r.trials.size()), worst));
}

// 6. secret-key chain inequality
Outcome chain() {
  const VerificationReport r = chain_suite(seed_range(300));
  keep_bounds(r);
  Check c;
  double worst = 1e300, residual = 0.0;
  c.require(r.trials.size() == 300, "expected 300 trials");
  for (const auto& t : r.trials) {
    worst = std::min(worst, t.value("slack"));
    residual = std::max(residual, std::abs(t.value("chain_identity_residual")));
    c.require(t.value("slack") >= -1e-9, fmt("seed %.0f slack", static_cast<double>(t.seed)));
    c.require(std::abs(t.value("chain_identity_residual")) <= 1e-9,
              fmt("seed %.0f chain identity", static_cast<double>(t.seed)));
  }
  return finish(c, fmt("min R-L=%.3e max chain residual=%.3e", worst, residual));
}

// 7. squashed chain rule, flag extensions and the pure-state floor
Outcome squashed_chain() {
  const VerificationReport r = squashed_chain_suite(seed_range(300));
  keep_bounds(r);
  Check c;
  int chains = 0, flags = 0, floors = 0;
  double residual = 0.0, flag_max = -1e300, floor_dev = 0.0;
  for (const auto& t : r.trials) {
    if (t.input.rfind("chain:", 0) == 0) {
      ++chains;
      residual = std::max(residual, std::abs(t.value("residual")));
      c.require(std::abs(t.value("residual")) <= 1e-9, fmt("chain seed %.0f", static_cast<double>(t.seed)));
    } else if (t.input.rfind("flag:", 0) == 0) {
      ++flags;
      flag_max = std::max(flag_max, t.value("objective"));
      c.require(t.value("objective") <= 1e-9, fmt("flag seed %.0f", static_cast<double>(t.seed)));
    } else {
      ++floors;
      const double dev = std::max(std::abs(t.value("optimized") - t.value("S_A")),
                                  std::abs(t.value("random_extension") - t.value("S_A")));
      floor_dev = std::max(floor_dev, dev);
      c.require(dev <= 1e-6, fmt("pure floor seed %.0f", static_cast<double>(t.seed)));
    }
  }
  c.require(chains == 300, "expected 300 chain trials");
  c.require(flags >= 100, "expected at least 100 flag extensions");
  c.require(floors > 0, "no pure-state floor trials");
  return finish(c, fmt("max chain residual=%.3e max flag objective=%.3e", residual, flag_max) +
                       fmt(" max floor deviation=%.3e", floor_dev));
}

// 8. measurement on B: I(X;E) >= 0
Outcome prop1() {
  const VerificationReport r = prop1_suite(seed_range(500));
  keep_bounds(r);
  Check c;
  double worst = 1e300;
  c.require(r.trials.size() == 500, "expected 500 trials");
  for (const auto& t : r.trials) {
    worst = std::min(worst, t.value("I_XE"));
    c.require(t.value("I_XE") >= -1e-9, fmt("seed %.0f", static_cast<double>(t.seed)));
  }
  return finish(c, fmt("min I(X;E)=%.3e", worst));
}

// 9. purification, complements, determinism
Outcome infrastructure() {
  Check c;
  static const std::vector<Dims> profiles{{2}, {3}, {2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 2, 2}, {2, 3, 2}, {2, 2, 3}};
  std::mt19937_64 rng(2024);
  double purify_dev = 0.0, spectrum_dev = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Dims& dims = profiles[i % profiles.size()];
    const int d = oracle::product(dims);
    const int r = std::uniform_int_distribution<int>(1, d)(rng);
    const QState s = catalog::ginibre(dims, 10000 + i, r);
    const PureState psi = purify(s, "R");
    const Matrix full = psi.vector() * psi.vector().adjoint();
    Dims fd = psi.dims();
    std::vector<int> keep(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) keep[k] = static_cast<int>(k);
    const double dev = max_abs(oracle::ptrace(full, fd, keep) - s.matrix());
    purify_dev = std::max(purify_dev, dev);
    c.require(dev <= 1e-12, fmt("purification round trip %.3e", dev));
    if (dims.size() >= 2) {
      const std::string traced = s.labels()[1];
      const QState once = complement_state(s, traced, traced + "'");
      const QState twice = complement_state(once, traced + "'", traced + "''");
      const double sd =
          oracle::spectrum_distance(oracle::sorted_spectrum(s.matrix()), oracle::sorted_spectrum(twice.matrix()));
      spectrum_dev = std::max(spectrum_dev, sd);
      c.require(sd <= 1e-10, fmt("complement spectra %.3e", sd));
    }
  }

  for (const char* name : {"singlet", "bell_phi", "ghz", "w", "antisym_qutrit", "max_classical_corr"})
    c.require(io::to_json(catalog::make(name)).dump() == io::to_json(catalog::make(name)).dump(),
              std::string("catalog ") + name);
  catalog::Params p;
  p.dims = {2, 3};
  p.seed = 77;
  p.rank = 2;
  c.require(io::to_json(catalog::make("ginibre", p)).dump() == io::to_json(catalog::make("ginibre", p)).dump(),
            "catalog ginibre");
  p.p = 0.3;
  c.require(io::to_json(catalog::make("werner", p)).dump() == io::to_json(catalog::make("werner", p)).dump(),
            "catalog werner");

  const std::vector<std::string> names{"thm1", "cor1", "cor2", "main5", "ssa", "chain", "squashed_chain", "prop1"};
  const VerificationReport a = run_suite(names, {1, 2, 3});
  const VerificationReport b = run_suite(names, {1, 2, 3});
  keep_bounds(a);
  c.require(io::to_json(a, false).dump() == io::to_json(b, false).dump(), "run_suite reports differ");
  c.require(a.pass, "run_suite failed");
  return finish(c, fmt("max purification deviation=%.3e max complement spectrum deviation=%.3e", purify_dev,
                       spectrum_dev));
}

// 3. soundness over everything collected above
Outcome soundness() {
  const auto breaches = find_soundness_breaches(all_bounds);
  Check c;
  for (const auto& b : breaches) c.require(false, b);
  return finish(c, fmt("%.0f bounds, ", static_cast<double>(all_bounds.size())) +
                       std::to_string(breaches.size()) + " breaches");
}

}  // namespace

int main() {
  std::vector<std::pair<int, std::function<Outcome()>>> order{{1, antisym}, {2, duality},       {4, cor1_equality},
                                                              {5, ssa},     {6, chain},         {7, squashed_chain},
                                                              {8, prop1},   {9, infrastructure}, {3, soundness}};
  std::vector<Outcome> results(10);
  for (auto& [id, fn] : order) {
    std::fprintf(stderr, "running criterion %d\n", id);
    try {
      results[static_cast<std::size_t>(id)] = timed(fn);
    } catch (const std::exception& e) {
      results[static_cast<std::size_t>(id)] = {false, std::string("exception: ") + e.what(), 0.0};
    }
  }
  bool all = true;
  for (int id = 1; id <= 9; ++id) {
    const Outcome& o = results[static_cast<std::size_t>(id)];
    std::printf("criterion %d: %s (%.1f s) %s\n", id, o.pass ? "PASS" : "FAIL", o.seconds, o.detail.c_str());
    all = all && o.pass;
  }
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
