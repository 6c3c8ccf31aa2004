#include <gtest/gtest.h>

#include <cmath>
#include <variant>

#include "helpers.hpp"
#include "oracles.hpp"
#include "qcorr/catalog.hpp"
#include "qcorr/io.hpp"
#include "qcorr/qstate.hpp"

using namespace qcorr;
using namespace testing_helpers;

namespace {

bool has_violation(const std::vector<Violation>& v, const std::string& name, double expected, double tol) {
  for (const auto& x : v)
    if (x.invariant == name && std::abs(x.deviation - expected) <= tol) return true;
  return false;
}

}  // namespace

TEST(Validate, MaximallyMixedQubitIsValid) {
  EXPECT_TRUE(validate(mixed({2}, {"A"})).empty());
}

TEST(Validate, TraceDeficitIsReported) {
  const QState s({2}, {"A"}, Matrix::Identity(2, 2) * 0.45);
  EXPECT_TRUE(has_violation(validate(s), "trace", 0.1, 1e-12));
}

TEST(Validate, NonHermitianPerturbation) {
  Matrix m = Matrix::Identity(2, 2) / 2.0;
  m(0, 1) = 1e-6;
  const auto v = validate(QState({2}, {"A"}, m));
  EXPECT_TRUE(has_violation(v, "hermiticity", 1e-6, 1e-9));
  EXPECT_THROW(require_valid(QState({2}, {"A"}, m)), InvalidInput);
}

TEST(Validate, NegativeEigenvalue) {
  const QState s = diagonal({2}, {"A"}, {1.2, -0.2});
  EXPECT_TRUE(has_violation(validate(s), "positivity", 0.2, 1e-12));
}

TEST(Layout, StructuralErrors) {
  EXPECT_THROW(Layout({2, 2}, {"A", "A"}), LabelError);
  EXPECT_THROW(Layout({2}, {"A", "B"}), LabelError);
  EXPECT_THROW(QState({2, 2}, {"A", "B"}, Matrix::Identity(3, 3)), DimensionMismatch);
  const Layout l({2, 3, 2}, {"A", "B", "C"});
  EXPECT_EQ(l.total_dim(), 12);
  EXPECT_EQ(l.dim_of(Selector{"C", "A"}), 4);
  EXPECT_THROW(l.position("Z"), LabelError);
  EXPECT_EQ(l.complement({"B"}).labels(), (Labels{"A", "C"}));
}

TEST(Tensor, MaximallyMixedProduct) {
  const QState ab = tensor(mixed({2}, {"A"}), mixed({2}, {"B"}));
  EXPECT_LE(max_abs(ab.matrix() - Matrix::Identity(4, 4) / 4.0), 1e-15);
  EXPECT_EQ(ab.labels(), (Labels{"A", "B"}));
}

TEST(Tensor, BasisProductOrdering) {
  const QState ab = tensor(basis_state({2}, {"A"}, 0), basis_state({2}, {"B"}, 1));
  EXPECT_EQ(ab.matrix()(1, 1), Complex(1.0));
  EXPECT_NEAR(ab.matrix().cwiseAbs().sum(), 1.0, 1e-15);
  EXPECT_THROW(tensor(mixed({2}, {"A"}), mixed({2}, {"A"})), LabelError);
}

TEST(Tensor, PartialTraceRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const QState a = catalog::ginibre({2, 3}, seed, 0, {"A", "B"});
    const QState b = catalog::ginibre({2}, seed + 1000, 0, {"C"});
    EXPECT_LE(max_abs_deviation(partial_trace(tensor(a, b), {"A", "B"}), a), 1e-12);
    EXPECT_LE(max_abs_deviation(partial_trace(tensor(a, b), {"C"}), b), 1e-12);
  }
}

TEST(PartialTrace, SingletMarginalIsMaximallyMixed) {
  const QState a = partial_trace(catalog::singlet(), {"A"});
  EXPECT_LE(max_abs(a.matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(PartialTrace, ProductMarginal) {
  const QState ra = catalog::ginibre({3}, 4, 0, {"A"});
  const QState rb = catalog::ginibre({2}, 5, 0, {"B"});
  EXPECT_LE(max_abs_deviation(partial_trace(tensor(ra, rb), {"A"}), ra), 1e-14);
}

TEST(PartialTrace, AntisymmetricMarginalIsNormalizedProjector) {
  // P_antisym = (I - SWAP) / 2 on two qutrits, rank 3
  Matrix swap = Matrix::Zero(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) swap(i * 3 + j, j * 3 + i) = 1.0;
  const Matrix expected = (Matrix::Identity(9, 9) - swap) / 6.0;
  const QState ab = partial_trace(catalog::antisym_qutrit(), {"A", "B"});
  EXPECT_LE(max_abs(ab.matrix() - expected), 1e-14);
}

TEST(PartialTrace, AgreesWithIndexLoopOracle) {
  const Dims dims{2, 3, 2};
  const QState s = catalog::ginibre(dims, 17);
  const std::vector<Labels> keeps{{"A"}, {"B"}, {"C"}, {"A", "B"}, {"A", "C"}, {"B", "C"}};
  for (const auto& keep : keeps) {
    const Matrix expected = oracle::ptrace(s.matrix(), dims, positions(s, keep));
    EXPECT_LE(max_abs(partial_trace(s, Selector(keep)).matrix() - expected), 1e-14) << Selector(keep).str();
  }
}

TEST(PartialTrace, KeepsLayoutOrder) {
  const QState s = catalog::ginibre({2, 3, 2}, 3);
  const QState r = partial_trace(s, {"C", "A"});
  EXPECT_EQ(r.labels(), (Labels{"A", "C"}));
}

TEST(Permute, MatchesOracleReordering) {
  const Dims dims{2, 3, 2};
  const QState s = catalog::ginibre(dims, 9);
  const QState p = permute(s, {"C", "A", "B"});
  EXPECT_EQ(p.dims(), (Dims{2, 2, 3}));
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      const auto di = oracle::digits(i, dims);
      const auto dj = oracle::digits(j, dims);
      const int pi = oracle::flat({di[2], di[0], di[1]}, {2, 2, 3});
      const int pj = oracle::flat({dj[2], dj[0], dj[1]}, {2, 2, 3});
      ASSERT_EQ(p.matrix()(pi, pj), s.matrix()(i, j));
    }
}

TEST(Fuse, MergesIntoSingleSubsystem) {
  const QState s = catalog::ginibre({2, 3, 2}, 11);
  const QState f = fuse(s, {"A", "C"}, "AC");
  EXPECT_EQ(f.labels(), (Labels{"AC", "B"}));
  EXPECT_EQ(f.dims(), (Dims{4, 3}));
  EXPECT_LE(max_abs(f.matrix() - permute(s, {"A", "C", "B"}).matrix()), 0.0);
}

TEST(Relabel, RenamesAndRejectsCollisions) {
  const QState s = catalog::ginibre({2, 2}, 2);
  EXPECT_EQ(relabel(s, "B", "Q").labels(), (Labels{"A", "Q"}));
  EXPECT_THROW(relabel(s, "B", "A"), LabelError);
}

TEST(Embed, ActsOnSelectedSubsystem) {
  const Layout layout({2, 3}, {"A", "B"});
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  Matrix expected = Matrix::Zero(6, 6);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b) expected((1 - a) * 3 + b, a * 3 + b) = 1.0;
  EXPECT_LE(max_abs(embed(x, layout, {"A"}) - expected), 0.0);
  EXPECT_THROW(embed(x, layout, {"B"}), DimensionMismatch);
}

TEST(Purify, PureInputNeedsTrivialAncilla) {
  const PureState p = purify(catalog::singlet().density(), "R");
  EXPECT_EQ(p.layout().dim_of("R"), 1);
  EXPECT_NEAR(overlap_fidelity(relabel(p, "R", "R"), p), 1.0, 1e-14);
  EXPECT_LE(max_abs_deviation(partial_trace(p, {"A", "B"}), catalog::singlet().density()), 1e-14);
}

TEST(Purify, MaximallyMixedQubitGivesMaximallyEntangledPair) {
  const PureState p = purify(mixed({2}, {"A"}), "R");
  EXPECT_EQ(p.dims(), (Dims{2, 2}));
  const QState r = partial_trace(p, {"R"});
  EXPECT_LE(max_abs(r.matrix() - Matrix::Identity(2, 2) / 2.0), 1e-14);
  EXPECT_THROW(purify(mixed({2}, {"A"}), "A"), LabelError);
}

TEST(Purify, GinibreRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Dims dims = seed % 3 == 0 ? Dims{3, 3} : seed % 3 == 1 ? Dims{2, 3, 2} : Dims{2, 2};
    const QState s = catalog::ginibre(dims, seed, static_cast<int>(seed % 4));
    const PureState p = purify(s, "R");
    EXPECT_LE(max_abs_deviation(partial_trace(p, Selector(s.labels())), s), 1e-12) << seed;
    EXPECT_NEAR(p.vector().norm(), 1.0, 1e-13);
    EXPECT_EQ(p.layout().dim_of("R"), rank(s));
  }
}

TEST(Complement, PureInputHasTrivialComplement) {
  const QState c = complement_state(catalog::singlet().density(), "B", "B'");
  EXPECT_EQ(c.dims(), (Dims{2, 1}));
  EXPECT_LE(max_abs(c.matrix() - Matrix::Identity(2, 2) / 2.0), 1e-14);
}

TEST(Complement, ClassicalStateComplementIsClassicallyCorrelated) {
  const QState c = complement_state(catalog::max_classical_corr(), "B", "B'");
  EXPECT_EQ(c.labels(), (Labels{"A", "B'"}));
  EXPECT_EQ(rank(c), 2);
  const auto ev = oracle::sorted_spectrum(c.matrix());
  EXPECT_NEAR(ev[0], 0.5, 1e-12);
  EXPECT_NEAR(ev[1], 0.5, 1e-12);
  // perfectly correlated in the eigenbasis: I(A;B') = S(A) + S(B') - S(AB') = 1 + 1 - 1
  const double s_a = oracle::entropy(oracle::ptrace(c.matrix(), c.dims(), {0}));
  const double s_b = oracle::entropy(oracle::ptrace(c.matrix(), c.dims(), {1}));
  EXPECT_NEAR(s_a + s_b - oracle::entropy(c.matrix()), 1.0, 1e-12);
}

TEST(Complement, ComplementOfComplementMatchesSpectra) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Dims dims = seed % 2 ? Dims{2, 2} : Dims{2, 3};
    const QState s = catalog::ginibre(dims, seed, 1 + static_cast<int>(seed % 4));
    const QState c = complement_state(s, "B", "B'");
    const QState cc = complement_state(c, "B'", "B''");
    EXPECT_LE(max_abs(partial_trace(cc, {"A"}).matrix() - partial_trace(s, {"A"}).matrix()), 1e-10);
    EXPECT_LE(oracle::spectrum_distance(oracle::sorted_spectrum(cc.matrix()), oracle::sorted_spectrum(s.matrix())),
              1e-10);
    // two complements built with different labels have the same spectrum
    const QState c2 = complement_state(s, "B", "X");
    EXPECT_LE(oracle::spectrum_distance(oracle::sorted_spectrum(c.matrix()), oracle::sorted_spectrum(c2.matrix())),
              1e-10);
  }
}

TEST(Repair, ClipsAndRenormalizes) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0 + 1e-7;
  m(1, 1) = -1e-7;
  m(0, 1) = 1e-9;
  const QState r = repair(QState({2}, {"A"}, m));
  EXPECT_TRUE(is_valid(r));
  EXPECT_NEAR(r.matrix().trace().real(), 1.0, 1e-14);
}

TEST(Catalog, AntisymmetricVector) {
  const PureState p = catalog::antisym_qutrit();
  ASSERT_EQ(p.dim(), 27);
  int nonzero = 0;
  for (int i = 0; i < 27; ++i) {
    const double v = std::abs(p.vector()(i));
    if (v > 1e-14) {
      ++nonzero;
      EXPECT_NEAR(v, 1.0 / std::sqrt(6.0), 1e-15);
    }
  }
  EXPECT_EQ(nonzero, 6);
  // |123> -> digits (0,1,2) -> index 5 with + sign; |132> -> index 7 with - sign
  EXPECT_GT(p.vector()(5).real(), 0.0);
  EXPECT_LT(p.vector()(7).real(), 0.0);
}

TEST(Catalog, GhzAndWerner) {
  const PureState g = catalog::ghz();
  EXPECT_EQ(g.dim(), 8);
  EXPECT_NEAR(g.vector()(0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(g.vector()(7).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_LE(max_abs_deviation(catalog::werner(1.0), catalog::singlet().density()), 1e-15);
  EXPECT_TRUE(is_valid(catalog::werner(0.5)));
  EXPECT_THROW(catalog::werner(1.5), InvalidInput);
  EXPECT_THROW(catalog::werner(-0.1), InvalidInput);
}

TEST(Catalog, DeterministicAndNamed) {
  EXPECT_EQ(catalog::ginibre({2, 3}, 42, 2).matrix(), catalog::ginibre({2, 3}, 42, 2).matrix());
  EXPECT_NE(catalog::ginibre({2, 3}, 42).matrix(), catalog::ginibre({2, 3}, 43).matrix());
  EXPECT_EQ(catalog::haar_pure({2, 2}, 7).vector(), catalog::haar_pure({2, 2}, 7).vector());
  EXPECT_EQ(rank(catalog::ginibre({3, 3}, 1, 2)), 2);
  EXPECT_TRUE(catalog::known("antisym_qutrit"));
  EXPECT_FALSE(catalog::known("nope"));
  EXPECT_THROW(catalog::make("nope"), UnknownName);
  catalog::Params p;
  p.p = 0.3;
  EXPECT_LE(max_abs_deviation(catalog::as_density(catalog::make("werner", p)), catalog::werner(0.3)), 0.0);
}

TEST(Io, StateRoundTripIsExact) {
  const QState s = catalog::ginibre({2, 3}, 5);
  const auto back = io::state_from_json(nlohmann::json::parse(io::to_json(s).dump()));
  ASSERT_TRUE(std::holds_alternative<QState>(back));
  EXPECT_EQ(std::get<QState>(back).matrix(), s.matrix());
  EXPECT_EQ(std::get<QState>(back).labels(), s.labels());

  const PureState p = catalog::w();
  const auto pb = io::state_from_json(nlohmann::json::parse(io::to_json(p).dump()));
  ASSERT_TRUE(std::holds_alternative<PureState>(pb));
  EXPECT_EQ(std::get<PureState>(pb).vector(), p.vector());
}

TEST(Io, MalformedDocuments) {
  using nlohmann::json;
  EXPECT_THROW(io::state_from_json(json::array()), io::FormatError);
  EXPECT_THROW(io::state_from_json(json{{"dims", {2}}, {"labels", {"A"}}}), io::FormatError);
  json bad = io::to_json(catalog::werner(0.5));
  bad["dims"] = {2, 3};
  EXPECT_THROW(io::state_from_json(bad), DimensionMismatch);
  EXPECT_THROW(io::read_state("/nonexistent/state.json"), io::FormatError);
}

TEST(Io, PovmRoundTrip) {
  std::vector<Matrix> el{Matrix::Identity(2, 2) * 0.5, Matrix::Identity(2, 2) * 0.5};
  const Povm p("B", el);
  const Povm back = io::povm_from_json(nlohmann::json::parse(io::to_json(p).dump()));
  EXPECT_EQ(back.target(), "B");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.elements()[1], el[1]);
  EXPECT_THROW(io::povm_from_json(nlohmann::json{{"elements", nlohmann::json::array()}}), io::FormatError);
}
