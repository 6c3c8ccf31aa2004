#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "qcorr/catalog.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/keyrates.hpp"
#include "qcorr/povm.hpp"

using namespace qcorr;
using namespace testing_helpers;

namespace {

// sum_x p_x |x..x><x..x| over `n` copies of a `d`-level register.
QState classical_copies(int n, const std::vector<double>& p, const Labels& labels) {
  const int d = static_cast<int>(p.size());
  Dims dims(static_cast<std::size_t>(n), d);
  int total = 1;
  for (int i = 0; i < n; ++i) total *= d;
  Matrix m = Matrix::Zero(total, total);
  for (int x = 0; x < d; ++x) {
    int idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * d + x;
    m(idx, idx) = p[static_cast<std::size_t>(x)];
  }
  return QState(dims, labels, m);
}

// Adds a one-dimensional subsystem so E can be named but carries nothing.
QState with_trivial(const QState& s, const std::string& label) {
  return tensor(s, QState({1}, {label}, Matrix::Identity(1, 1)));
}

double oracle_holevo_on(const QState& s, const std::string& quantum, const Povm& p) {
  const QState qb = permute(partial_trace(s, {quantum, p.target()}), {quantum, p.target()});
  return oracle::holevo(qb.matrix(), qb.dims()[0], qb.dims()[1], p.elements());
}

Budget small_budget(std::uint64_t seed = 1) {
  Budget b;
  b.evaluations = 4000;
  b.restarts = 6;
  b.seed = seed;
  return b;
}

}  // namespace

TEST(MeasureToRegister, ReplacesTargetInPlace) {
  const QState s = catalog::ginibre({2, 3, 2}, 5);
  const Povm p = random_povm(3, 4, 6, "B");
  const QState cq = measure_to_register(s, p, "#X");
  EXPECT_EQ(cq.labels(), (Labels{"A", "#X", "C"}));
  EXPECT_EQ(cq.dims(), (Dims{2, 4, 2}));
  EXPECT_TRUE(is_valid(cq));
  // register marginal is the outcome distribution
  const QState x = partial_trace(cq, {"#X"});
  for (int k = 0; k < 4; ++k) {
    const double expected =
        (partial_trace(s, {"B"}).matrix() * p.elements()[static_cast<std::size_t>(k)]).trace().real();
    EXPECT_NEAR(x.matrix()(k, k).real(), expected, 1e-12);
  }
  EXPECT_LE(max_abs(x.matrix() - Matrix(x.matrix().diagonal().asDiagonal())), 1e-15);
}

TEST(MeasureToRegister, WholeStateMeasured) {
  const QState s = catalog::ginibre({2}, 3, 0, {"B"});
  const QState x = measure_to_register(s, basis_povm(2, "B"), "#X");
  EXPECT_EQ(x.labels(), (Labels{"#X"}));
  EXPECT_NEAR(x.matrix()(0, 0).real(), s.matrix()(0, 0).real(), 1e-15);
}

TEST(ClassicalQuantumMi, Examples) {
  const CqRecord r = measure_all(catalog::max_classical_corr(), {{basis_povm(2, "B"), "X"}});
  EXPECT_NEAR(classical_quantum_mi(r, "X", "A"), 1.0, 1e-12);

  const QState prod = tensor(catalog::ginibre({2}, 1, 0, {"A"}), catalog::ginibre({2}, 2, 0, {"B"}));
  const CqRecord r2 = measure_all(prod, {{random_povm(2, 3, 4, "B"), "X"}});
  EXPECT_NEAR(classical_quantum_mi(r2, "X", "A"), 0.0, 1e-12);

  const QState abe = purify(catalog::singlet().density(), "E").density();
  const CqRecord r3 = measure_all(abe, {{basis_povm(2, "B"), "X"}});
  EXPECT_NEAR(classical_quantum_mi(r3, "X", "E"), 0.0, 1e-12);
  EXPECT_THROW(classical_quantum_mi(r3, "Y", "A"), LabelError);
}

TEST(ClassicalQuantumMi, AgreesWithHolevoOracle) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const QState s = catalog::ginibre({3, 2}, seed);
    const Povm p = random_povm(2, 2 + static_cast<int>(seed % 3), seed + 3, "B");
    const CqRecord r = measure_all(s, {{p, "X"}});
    const double mi = classical_quantum_mi(r, "X", "A");
    EXPECT_NEAR(mi, oracle_holevo_on(s, "A", p), 1e-10);
    EXPECT_GE(mi, -1e-9);
  }
}

TEST(Csecret1, TrivialEavesdropperEqualsClassicalCorrelation) {
  const QState s = catalog::ginibre({2, 2}, 9);
  const Povm p = random_povm(2, 3, 10, "B");
  const CqRecord r = measure_all(s, {{p, "X"}});
  EXPECT_NEAR(csecret1_value(s, p, "A", Selector{}), classical_quantum_mi(r, "X", "A"), 1e-12);
  EXPECT_NEAR(csecret1_value(with_trivial(s, "E"), p), classical_quantum_mi(r, "X", "A"), 1e-12);
}

TEST(Csecret1, SingletWithTrivialPurifier) {
  const QState abe = purify(catalog::singlet().density(), "E").density();
  EXPECT_NEAR(csecret1_value(abe, basis_povm(2, "B")), 1.0, 1e-12);
}

TEST(Csecret1, EavesdropperHoldsCopy) {
  const QState abe = classical_copies(3, {0.5, 0.5}, {"A", "B", "E"});
  EXPECT_NEAR(csecret1_value(abe, basis_povm(2, "B")), 0.0, 1e-12);
}

TEST(Csecret1, AgreesWithHolevoDifferenceOracle) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const QState s = catalog::ginibre({2, 2, 2}, seed, 0, {"A", "B", "E"});
    const Povm p = random_povm(2, 4, seed, "B");
    EXPECT_NEAR(csecret1_value(s, p), oracle_holevo_on(s, "A", p) - oracle_holevo_on(s, "E", p), 1e-10);
  }
}

TEST(Csecret1, OptimizerIsAtLeastBasisMeasurement) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const QState s = catalog::ginibre({2, 2, 2}, seed + 20, 2, {"A", "B", "E"});
    const auto r = optimize_csecret1(s, small_budget(seed));
    EXPECT_TRUE(validate_povm(r.argument, 2).empty());
    EXPECT_NEAR(csecret1_value(s, r.argument), r.value, 1e-12);
    EXPECT_GE(r.value, csecret1_value(s, basis_povm(2, "B")) - 1e-9);
    for (std::size_t i = 1; i < r.best_so_far.size(); ++i) EXPECT_GE(r.best_so_far[i], r.best_so_far[i - 1]);
  }
}

TEST(Csecret1, OptimizerOnPurifiedClassicalState) {
  // purification of the classical state gives E a copy of the outcome basis; one-way key is zero
  const QState abe = purify(catalog::max_classical_corr(), "E").density();
  const auto r = optimize_csecret1(abe, small_budget());
  EXPECT_LE(r.value, 1e-9);
  EXPECT_GE(r.value, -1e-9);
}

TEST(Prop1Check, PureStateHasZeroSlack) {
  const Prop1Report r = proposition1_check(catalog::haar_pure({2, 3}, 4).density(), 20, 5);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.min_slack, 0.0, 1e-10);
  for (const auto& t : r.trials) EXPECT_NEAR(t.slack, 0.0, 1e-10);
}

TEST(Prop1Check, ClassicalStateBasisMeasurement) {
  const Prop1Report r = proposition1_check(catalog::max_classical_corr(), {basis_povm(2, "B")});
  ASSERT_EQ(r.trials.size(), 1u);
  EXPECT_NEAR(r.trials[0].info_e, 1.0, 1e-12);
  EXPECT_NEAR(r.trials[0].slack, 1.0, 1e-12);
  EXPECT_NEAR(r.trials[0].secret, 0.0, 1e-12);
}

TEST(Prop1Check, RandomStates) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const QState s = catalog::ginibre(seed % 2 ? Dims{2, 2} : Dims{3, 2}, seed, 1 + static_cast<int>(seed % 4));
    const Prop1Report r = proposition1_check(s, 5, seed);
    ASSERT_TRUE(r.pass) << seed;
    ASSERT_GE(r.min_slack, -1e-9);
    for (const auto& t : r.trials) EXPECT_LE(t.secret, t.info_a + 1e-9);
  }
}

TEST(Ed1, IdentityInstrumentExamples) {
  EXPECT_NEAR(ed1_value(catalog::bell_phi().density(), identity_instrument(2, "B")), 1.0, 1e-12);
  EXPECT_NEAR(ed1_value(catalog::max_classical_corr(), identity_instrument(2, "B")), 0.0, 1e-12);
  const QState w = catalog::werner(0.8);
  const double hashing = oracle::entropy_of(w.matrix(), {2, 2}, {0}) - oracle::entropy(w.matrix());
  EXPECT_NEAR(ed1_value(w, identity_instrument(2, "B")), hashing, 1e-12);
}

TEST(Ed1, IdentityInstrumentIsCoherentInformation) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const QState s = catalog::ginibre({2, 3}, seed);
    // same functional through a different code path (Kraus conjugation first), equal to rounding
    EXPECT_NEAR(ed1_value(s, identity_instrument(3, "B")), coherent_information(s, "A", "B"), 1e-13);
  }
}

TEST(Ed1, RejectsNonTracePreservingInstrument) {
  Instrument half{"B", {{Matrix::Identity(2, 2) * 0.5}}};
  EXPECT_GT(trace_preservation_defect(half), 0.5);
  EXPECT_THROW(ed1_value(catalog::werner(0.5), half), InvalidInput);
  EXPECT_THROW(ed1_value(catalog::werner(0.5), identity_instrument(3, "B")), DimensionMismatch);
}

TEST(Ed1, InstrumentFromIsometryIsTracePreserving) {
  Rng rng(4);
  const Instrument ins = instrument_from_isometry(haar_isometry(6, 2, rng), 2, "B");
  EXPECT_EQ(ins.kraus.size(), 3u);
  EXPECT_LE(trace_preservation_defect(ins), 1e-12);
  // average of the branch coherent informations never exceeds S(A) for one-way maps on B
  const QState s = catalog::ginibre({2, 2}, 6);
  EXPECT_LE(ed1_value(s, ins), marginal_entropy(s, "A") + 1e-9);
}

TEST(Ed1, LowerBoundBeatsIdentity) {
  const QState s = catalog::werner(0.85);
  Budget b = small_budget();
  b.evaluations = 3000;
  b.restarts = 2;
  const auto r = ed1_lower_bound(s, b);
  EXPECT_GE(r.value, coherent_information(s, "A", "B") - 1e-9);
  EXPECT_NEAR(ed1_value(s, r.argument), r.value, 1e-12);
}

TEST(ChainInequality, TrivialCAndE) {
  const QState ab = catalog::ginibre({2, 2}, 12);
  const QState s = with_trivial(with_trivial(ab, "C"), "E");
  const Povm pb = random_povm(2, 3, 13, "B");
  const ChainReport r = chain_inequality_check(s, pb, trivial_povm(1, "C"));
  const double ixa = classical_quantum_mi(measure_all(ab, {{pb, "X"}}), "X", "A");
  EXPECT_NEAR(r.left, ixa, 1e-12);
  EXPECT_NEAR(r.right, ixa, 1e-12);
  EXPECT_NEAR(r.slack, 0.0, 1e-12);
  EXPECT_TRUE(r.pass);
}

TEST(ChainInequality, GhzDirectEvaluation) {
  // outcomes of both basis measurements equal A's bit: I(X;A) = I(Y;A) = I(Y;BE) = I(XY;A) = 1
  const QState s = with_trivial(catalog::ghz().density(), "E");
  const ChainReport r = chain_inequality_check(s, basis_povm(2, "B"), basis_povm(2, "C"));
  EXPECT_NEAR(r.info_xa, 1.0, 1e-12);
  EXPECT_NEAR(r.info_xe, 0.0, 1e-12);
  EXPECT_NEAR(r.info_ya, 1.0, 1e-12);
  EXPECT_NEAR(r.info_ybe, 1.0, 1e-12);
  EXPECT_NEAR(r.info_xya, 1.0, 1e-12);
  EXPECT_NEAR(r.info_ya_given_x, 0.0, 1e-12);
  EXPECT_NEAR(r.left, 1.0, 1e-12);
  EXPECT_NEAR(r.right, 1.0, 1e-12);
  EXPECT_GE(r.slack, -1e-12);
  // the eavesdropper label may also be absent altogether
  const ChainReport no_e = chain_inequality_check(catalog::ghz().density(), basis_povm(2, "B"), basis_povm(2, "C"),
                                                  "A", "");
  EXPECT_NEAR(no_e.slack, r.slack, 1e-12);
}

TEST(ChainInequality, RandomFourPartyStates) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const QState s = catalog::ginibre({2, 2, 2, 2}, seed, 0, {"A", "B", "C", "E"});
    const ChainReport r = chain_inequality_check(s, random_povm(2, 2 + static_cast<int>(seed % 3), seed, "B"),
                                                 random_povm(2, 2 + static_cast<int>((seed + 1) % 3), seed + 99, "C"));
    ASSERT_TRUE(r.pass) << seed;
    EXPECT_GE(r.slack, -1e-9);
    EXPECT_LE(std::abs(r.chain_identity_residual), 1e-9);
    EXPECT_LE(r.marginal_defect, 1e-10);
  }
}

TEST(SecretCr, ProductState) {
  const QState s = tensor(catalog::ginibre({2}, 1, 0, {"A"}), catalog::ginibre({2, 2}, 2, 0, {"B", "C"}));
  const SecretCrReport r = secret_cr_monogamy_check(s, random_povm(2, 3, 1, "B"), random_povm(2, 2, 2, "C"));
  EXPECT_NEAR(r.info_xa, 0.0, 1e-12);
  EXPECT_NEAR(r.info_ya, 0.0, 1e-12);
  EXPECT_NEAR(r.info_xya, 0.0, 1e-12);
  EXPECT_TRUE(r.pass);
}

TEST(SecretCr, ClassicalPerfectCorrelationIsEquality) {
  const QState s = classical_copies(3, {0.5, 0.5}, {"A", "B", "C"});
  const SecretCrReport r = secret_cr_monogamy_check(s, basis_povm(2, "B"), basis_povm(2, "C"));
  EXPECT_NEAR(r.left, 1.0, 1e-12);
  EXPECT_NEAR(r.right, 1.0, 1e-12);
  EXPECT_NEAR(r.slack, 0.0, 1e-12);
}

TEST(SecretCr, RandomStates) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const QState s = catalog::ginibre({2, 2, 2}, seed);
    const SecretCrReport r =
        secret_cr_monogamy_check(s, random_povm(2, 3, seed, "B"), random_povm(2, 2, seed + 1, "C"));
    EXPECT_TRUE(r.pass) << seed;
    EXPECT_GE(r.slack, -1e-9);
  }
}
