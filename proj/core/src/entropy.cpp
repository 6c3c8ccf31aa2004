#include "qcorr/entropy.hpp"

#include <cmath>

namespace qcorr {

namespace {
void require_disjoint(const Selector& x, const Selector& y, const char* what) {
  for (const auto& l : x.labels())
    if (y.contains(l)) throw LabelError(std::string(what) + ": selectors overlap on '" + l + "'");
}
}  // namespace

double entropy_of_spectrum(const RealVector& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double l = eigenvalues(i);
    if (l > kEigenCutoff) s -= l * std::log2(l);
  }
  return s;
}

double shannon(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities)
    if (p > kEigenCutoff) s -= p * std::log2(p);
  return s;
}

double matrix_entropy(const Matrix& rho) {
  if (rho.rows() == 1) return 0.0;
  return entropy_of_spectrum(eigvalsh(rho));
}

double von_neumann(const QState& state) {
  require_valid(state);
  return matrix_entropy(state.matrix());
}

double marginal_entropy(const QState& state, const Selector& part) {
  if (part.empty()) return 0.0;
  if (part.size() == state.labels().size()) {
    state.layout().positions(part);
    return matrix_entropy(state.matrix());
  }
  return matrix_entropy(partial_trace(state, part).matrix());
}

double mutual_information(const QState& state, const Selector& a, const Selector& b) {
  require_disjoint(a, b, "mutual_information");
  return marginal_entropy(state, a) + marginal_entropy(state, b) - marginal_entropy(state, a + b);
}

double conditional_mutual_information(const QState& state, const Selector& a, const Selector& b,
                                      const Selector& e) {
  require_disjoint(a, b, "conditional_mutual_information");
  require_disjoint(a, e, "conditional_mutual_information");
  require_disjoint(b, e, "conditional_mutual_information");
  return marginal_entropy(state, a + e) + marginal_entropy(state, b + e) -
         marginal_entropy(state, a + b + e) - marginal_entropy(state, e);
}

double coherent_information(const QState& state, const Selector& a, const Selector& b) {
  require_disjoint(a, b, "coherent_information");
  return marginal_entropy(state, a) - marginal_entropy(state, a + b);
}

SsaReport ssa_monogamy_check(const QState& state, const Selector& a, const Selector& b,
                             const Selector& c) {
  require_disjoint(a, b, "ssa_monogamy_check");
  require_disjoint(a, c, "ssa_monogamy_check");
  require_disjoint(b, c, "ssa_monogamy_check");
  const double s_a = marginal_entropy(state, a);
  SsaReport r;
  r.left = (s_a - marginal_entropy(state, a + b)) + (s_a - marginal_entropy(state, a + c));
  r.right = s_a - marginal_entropy(state, a + b + c);
  r.slack = r.right - r.left;
  r.pass = r.slack >= -kEntropyTolerance;
  return r;
}

ChainRuleTerms chain_rule_residual(const QState& state, const Selector& a, const Selector& b,
                                   const Selector& c, const Selector& e) {
  ChainRuleTerms t;
  t.whole = conditional_mutual_information(state, a, b + c, e);
  t.first = conditional_mutual_information(state, a, b, e);
  t.second = conditional_mutual_information(state, a, c, b + e);
  t.residual = t.whole - t.first - t.second;
  return t;
}

}  // namespace qcorr
