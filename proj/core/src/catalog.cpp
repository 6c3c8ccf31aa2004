#include "qcorr/catalog.hpp"

#include <array>
#include <cmath>
#include <numeric>

namespace qcorr::catalog {

namespace {
PureState from_terms(const Dims& dims, const Labels& labels,
                     std::initializer_list<std::pair<int, double>> terms) {
  const int n = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
  Vector v = Vector::Zero(n);
  for (const auto& [idx, amp] : terms) v(idx) = amp;
  return PureState(dims, labels, v);
}
}  // namespace

Labels default_labels(std::size_t n) {
  Labels l;
  for (std::size_t i = 0; i < n; ++i) l.push_back(std::string(1, static_cast<char>('A' + i)));
  return l;
}

PureState singlet() {
  const double a = 1.0 / std::sqrt(2.0);
  return from_terms({2, 2}, {"A", "B"}, {{0b01, a}, {0b10, -a}});
}

PureState bell_phi() {
  const double a = 1.0 / std::sqrt(2.0);
  return from_terms({2, 2}, {"A", "B"}, {{0b00, a}, {0b11, a}});
}

PureState ghz() {
  const double a = 1.0 / std::sqrt(2.0);
  return from_terms({2, 2, 2}, {"A", "B", "C"}, {{0b000, a}, {0b111, a}});
}

PureState w() {
  const double a = 1.0 / std::sqrt(3.0);
  return from_terms({2, 2, 2}, {"A", "B", "C"}, {{0b001, a}, {0b010, a}, {0b100, a}});
}

PureState antisym_qutrit() {
  const double a = 1.0 / std::sqrt(6.0);
  // digits (i,j,k) in 1..3 map to index 9(i-1) + 3(j-1) + (k-1)
  auto idx = [](int i, int j, int k) { return 9 * (i - 1) + 3 * (j - 1) + (k - 1); };
  return from_terms({3, 3, 3}, {"A", "B", "C"},
                    {{idx(1, 2, 3), a},
                     {idx(1, 3, 2), -a},
                     {idx(2, 3, 1), a},
                     {idx(2, 1, 3), -a},
                     {idx(3, 1, 2), a},
                     {idx(3, 2, 1), -a}});
}

QState max_classical_corr() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  return QState({2, 2}, {"A", "B"}, m);
}

QState maximally_mixed(int dim, const std::string& label) {
  return QState({dim}, {label}, Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

QState werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("werner: p must lie in [0, 1]");
  const Matrix s = singlet().density().matrix();
  return QState({2, 2}, {"A", "B"}, p * s + (1.0 - p) * Matrix::Identity(4, 4) / 4.0);
}

QState product(const QState& a, const QState& b) { return tensor(a, b); }

QState ginibre(const Dims& dims, std::uint64_t seed, int rank, Labels labels) {
  if (labels.empty()) labels = default_labels(dims.size());
  Layout layout(dims, std::move(labels));
  const int n = layout.total_dim();
  const int cols = rank > 0 ? rank : n;
  Rng rng(seed);
  const Matrix g = ginibre_matrix(n, cols, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return QState(std::move(layout), hermitian_part(rho));
}

PureState haar_pure(const Dims& dims, std::uint64_t seed, Labels labels) {
  if (labels.empty()) labels = default_labels(dims.size());
  Layout layout(dims, std::move(labels));
  Rng rng(seed);
  Vector v = ginibre_matrix(layout.total_dim(), 1, rng).col(0);
  v.normalize();
  return PureState(std::move(layout), std::move(v));
}

namespace {
constexpr std::array<const char*, 10> kNames = {"singlet", "bell_phi",   "ghz",     "w",
                                                "antisym_qutrit", "max_classical_corr",
                                                "werner",  "ginibre",    "haar_pure", "product"};
}

bool known(const std::string& name) {
  for (const char* n : kNames)
    if (name == n) return true;
  return false;
}

Entry make(const std::string& name, const Params& params) {
  if (name == "singlet") return singlet();
  if (name == "bell_phi") return bell_phi();
  if (name == "ghz") return ghz();
  if (name == "w") return w();
  if (name == "antisym_qutrit") return antisym_qutrit();
  if (name == "max_classical_corr") return max_classical_corr();
  if (name == "werner") {
    if (!params.p) throw InvalidInput("werner: parameter p required");
    return werner(*params.p);
  }
  if (name == "ginibre") {
    if (params.dims.empty()) throw InvalidInput("ginibre: dims required");
    return ginibre(params.dims, params.seed, params.rank);
  }
  if (name == "haar_pure") {
    if (params.dims.empty()) throw InvalidInput("haar_pure: dims required");
    return haar_pure(params.dims, params.seed);
  }
  if (name == "product") {
    // product of maximally mixed qubits on A and B; other products go through product()
    return product(maximally_mixed(2, "A"), maximally_mixed(2, "B"));
  }
  throw UnknownName("unknown catalog state '" + name + "'");
}

QState as_density(const Entry& entry) {
  if (const auto* q = std::get_if<QState>(&entry)) return *q;
  return std::get<PureState>(entry).density();
}

}  // namespace qcorr::catalog
