#include "multiphase/fock.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace multiphase {

int ModeOccupation::total() const {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

std::string ModeOccupation::to_string() const {
  std::ostringstream os;
  os << '|';
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) os << ',';
    os << counts[i];
  }
  os << '>';
  return os.str();
}

namespace {

void enumerate(std::vector<int>& counts, std::size_t pos, int remaining, BasisKind kind,
               std::vector<ModeOccupation>& out) {
  if (pos + 1 == counts.size()) {
    if (kind == BasisKind::FixedTotal) {
      counts[pos] = remaining;
      out.push_back({counts});
    } else {
      for (int n = 0; n <= remaining; ++n) {
        counts[pos] = n;
        out.push_back({counts});
      }
    }
    return;
  }
  for (int n = 0; n <= remaining; ++n) {
    counts[pos] = n;
    enumerate(counts, pos + 1, remaining - n, kind, out);
  }
}

}  // namespace

FockBasis::FockBasis(int modes, int n_max, BasisKind kind)
    : modes_(modes), n_max_(n_max), kind_(kind) {
  if (modes < 1) throw std::invalid_argument("FockBasis: modes must be >= 1");
  if (n_max < 0) throw std::invalid_argument("FockBasis: n_max must be >= 0");
  std::vector<int> counts(static_cast<std::size_t>(modes), 0);
  enumerate(counts, 0, n_max, kind, states_);
  for (std::size_t k = 0; k < states_.size(); ++k) index_.emplace(states_[k], k);
}

std::optional<std::size_t> FockBasis::index_of(const ModeOccupation& occ) const {
  auto it = index_.find(occ);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Eigen::VectorXd FockBasis::number_diagonal(int mode) const {
  if (mode < 0 || mode >= modes_) throw std::out_of_range("number_diagonal: mode out of range");
  Eigen::VectorXd diag(static_cast<Eigen::Index>(size()));
  for (std::size_t k = 0; k < size(); ++k)
    diag[static_cast<Eigen::Index>(k)] = states_[k].counts[static_cast<std::size_t>(mode)];
  return diag;
}

BasisPtr build_basis(int modes, int n_max, BasisKind kind) {
  return std::make_shared<const FockBasis>(modes, n_max, kind);
}

PureState::PureState(BasisPtr basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (!basis_) throw std::invalid_argument("PureState: null basis");
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_->size())
    throw std::invalid_argument("PureState: amplitude count does not match basis size");
  const double norm = amplitudes_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw std::invalid_argument("PureState: amplitude vector must be non-zero and finite");
  amplitudes_ /= norm;
  for (const auto& a : amplitudes_) {
    if (a.imag() != 0.0) {
      real_ = false;
      break;
    }
  }
}

DensityOperator::DensityOperator(BasisPtr basis, Eigen::MatrixXcd matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
  if (!basis_) throw std::invalid_argument("DensityOperator: null basis");
  const auto n = static_cast<Eigen::Index>(basis_->size());
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw std::invalid_argument("DensityOperator: matrix does not match basis size");
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  return {psi.basis_ptr(), psi.amplitudes() * psi.amplitudes().adjoint()};
}

void DensityOperator::validate() const {
  const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12) throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
  const cplx tr = matrix_.trace();
  if (std::abs(tr - cplx(1.0, 0.0)) > 1e-12)
    throw std::invalid_argument("DensityOperator: trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("DensityOperator: matrix is not positive semidefinite");
}

StateVector annihilate(const StateVector& state, int mode, int l) {
  const FockBasis& src = *state.basis;
  if (mode < 0 || mode >= src.modes()) throw std::out_of_range("annihilate: mode out of range");
  if (l < 0) throw std::invalid_argument("annihilate: power must be non-negative");

  BasisPtr dst = src.kind() == BasisKind::AtMostTotal
                     ? state.basis
                     : build_basis(src.modes(), src.n_max(), BasisKind::AtMostTotal);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dst->size()));
  const auto m = static_cast<std::size_t>(mode);
  for (std::size_t k = 0; k < src.size(); ++k) {
    const cplx amp = state.amplitudes[static_cast<Eigen::Index>(k)];
    if (amp == cplx(0.0, 0.0)) continue;
    ModeOccupation occ = src.state(k);
    const int n = occ.counts[m];
    if (n < l) continue;
    double weight = 1.0;
    for (int f = n - l + 1; f <= n; ++f) weight *= f;
    occ.counts[m] = n - l;
    out[static_cast<Eigen::Index>(*dst->index_of(occ))] += std::sqrt(weight) * amp;
  }
  return {dst, std::move(out)};
}

StateVector annihilate(const PureState& state, int mode, int l) {
  return annihilate(state.vector(), mode, l);
}

Moments moments(const PureState& state, int i, int j) {
  const int d = state.phases();
  if (i < 1 || i > d || j < 1 || j > d) throw std::out_of_range("moments: phase-mode index out of range");
  const FockBasis& basis = state.basis();
  Moments m;
  double mean_j = 0.0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double p = std::norm(state.amplitudes()[static_cast<Eigen::Index>(k)]);
    const auto& c = basis.state(k).counts;
    const double ni = c[static_cast<std::size_t>(i)];
    const double nj = c[static_cast<std::size_t>(j)];
    m.mean_i += p * ni;
    mean_j += p * nj;
    m.second_ij += p * ni * nj;
  }
  m.cov_ij = m.second_ij - m.mean_i * mean_j;
  return m;
}

PhaseMoments phase_moments(const PureState& state) {
  const int d = state.phases();
  PhaseMoments pm;
  pm.mean = Eigen::VectorXd::Zero(d);
  pm.covariance = Eigen::MatrixXd::Zero(d, d);
  pm.total_photons = state.basis().n_max();
  const FockBasis& basis = state.basis();
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double p = std::norm(state.amplitudes()[static_cast<Eigen::Index>(k)]);
    if (p == 0.0) continue;
    const auto& c = basis.state(k).counts;
    for (int a = 0; a < d; ++a) {
      pm.mean[a] += p * c[static_cast<std::size_t>(a + 1)];
      for (int b = 0; b < d; ++b)
        second(a, b) += p * c[static_cast<std::size_t>(a + 1)] * c[static_cast<std::size_t>(b + 1)];
    }
  }
  pm.covariance = second - pm.mean * pm.mean.transpose();
  return pm;
}

}  // namespace multiphase
