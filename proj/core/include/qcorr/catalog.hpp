#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "qcorr/qstate.hpp"

namespace qcorr::catalog {

/// (|01> - |10>)/sqrt2 on A,B.
PureState singlet();
/// (|00> + |11>)/sqrt2 on A,B.
PureState bell_phi();
/// (|000> + |111>)/sqrt2 on A,B,C.
PureState ghz();
/// (|001> + |010> + |100>)/sqrt3 on A,B,C.
PureState w();
/// Three-qutrit purification of the normalized antisymmetric projector on two qutrits:
/// (|123> - |132> + |231> - |213> + |312> - |321>)/sqrt6 with basis digits 1..3 stored as 0..2.
PureState antisym_qutrit();
/// (|00><00| + |11><11|)/2 on A,B.
QState max_classical_corr();
/// I/d on a single labelled subsystem.
QState maximally_mixed(int dim, const std::string& label);
/// p |singlet><singlet| + (1-p) I/4; throws InvalidInput unless 0 <= p <= 1.
QState werner(double p);
QState product(const QState& a, const QState& b);
/// Normalized G G^dagger for a complex Gaussian G of shape (prod dims) x rank; rank 0 means full.
/// Labels default to A, B, C, ...
QState ginibre(const Dims& dims, std::uint64_t seed, int rank = 0, Labels labels = {});
/// Haar-random pure state.
PureState haar_pure(const Dims& dims, std::uint64_t seed, Labels labels = {});

/// Default labels A, B, C, ... for `n` subsystems.
Labels default_labels(std::size_t n);

struct Params {
  std::optional<double> p;
  Dims dims;
  std::uint64_t seed = 0;
  int rank = 0;
};

using Entry = std::variant<QState, PureState>;

/// Name-based lookup: singlet, bell_phi, ghz, w, antisym_qutrit, max_classical_corr, werner,
/// ginibre, haar_pure. Throws UnknownName on an unknown name.
Entry make(const std::string& name, const Params& params = {});

bool known(const std::string& name);

QState as_density(const Entry& entry);

}  // namespace qcorr::catalog
