#include "multiphase/loss_channel.hpp"

#include <cmath>
#include <stdexcept>

namespace multiphase {

namespace {

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("loss channel: eta must lie in [0, 1]");
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Amplitude of the branch that removes l of n photons: sqrt(C(n,l) (1-eta)^l eta^(n-l)).
double branch_weight(double eta, int n, int l) {
  return std::sqrt(binomial(n, l) * std::pow(1.0 - eta, l) * std::pow(eta, n - l));
}

struct Transition {
  std::size_t src;
  std::size_t dst;
  double weight;
};

// For every loss pattern, the nonzero (source, destination, amplitude) triples
// of the corresponding product Kraus operator.
std::vector<std::vector<Transition>> pattern_transitions(const FockBasis& src, const FockBasis& dst,
                                                         const LossChannel& channel) {
  const auto patterns = build_basis(src.modes(), src.n_max(), BasisKind::AtMostTotal);
  std::vector<std::vector<Transition>> out;
  out.reserve(patterns->size());
  for (const auto& pattern : patterns->states()) {
    std::vector<Transition> ts;
    for (std::size_t k = 0; k < src.size(); ++k) {
      ModeOccupation occ = src.state(k);
      double w = 1.0;
      for (std::size_t m = 0; m < occ.counts.size() && w != 0.0; ++m) {
        const int n = occ.counts[m];
        const int l = pattern.counts[m];
        if (l > n) {
          w = 0.0;
          break;
        }
        w *= branch_weight(channel.eta(static_cast<int>(m)), n, l);
        occ.counts[m] = n - l;
      }
      if (w != 0.0) ts.push_back({k, *dst.index_of(occ), w});
    }
    if (!ts.empty()) out.push_back(std::move(ts));
  }
  return out;
}

}  // namespace

LossChannel::LossChannel(std::vector<double> eta) : eta_(std::move(eta)) {
  if (eta_.empty()) throw std::invalid_argument("LossChannel: at least one mode required");
  for (double e : eta_) check_eta(e);
}

LossChannel LossChannel::uniform(int modes, double eta) {
  if (modes < 1) throw std::invalid_argument("LossChannel: at least one mode required");
  return LossChannel(std::vector<double>(static_cast<std::size_t>(modes), eta));
}

Eigen::MatrixXd kraus_operator(double eta, int l, const FockBasis& single_mode_basis) {
  check_eta(eta);
  if (single_mode_basis.modes() != 1) throw std::invalid_argument("kraus_operator: single-mode basis required");
  const int n_max = single_mode_basis.n_max();
  if (l < 0 || l > n_max) throw std::invalid_argument("kraus_operator: l must lie in [0, n_max]");
  const auto dim = static_cast<Eigen::Index>(single_mode_basis.size());
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t col = 0; col < single_mode_basis.size(); ++col) {
    const int n = single_mode_basis.state(col).counts[0];
    if (n < l) continue;
    auto row = single_mode_basis.index_of(ModeOccupation{{n - l}});
    if (!row) continue;
    k(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col)) = branch_weight(eta, n, l);
  }
  return k;
}

Eigen::MatrixXcd kraus_operator(double eta, int l, double theta, const FockBasis& single_mode_basis) {
  Eigen::MatrixXcd k = kraus_operator(eta, l, single_mode_basis).cast<cplx>();
  for (std::size_t row = 0; row < single_mode_basis.size(); ++row) {
    const int n = single_mode_basis.state(row).counts[0];
    k.row(static_cast<Eigen::Index>(row)) *= std::polar(1.0, theta * n);
  }
  return k;
}

DensityOperator apply_loss(const PureState& probe, const LossChannel& channel) {
  const FockBasis& src = probe.basis();
  if (src.modes() != channel.modes()) throw std::invalid_argument("apply_loss: basis/channel mode-count mismatch");
  auto dst = build_basis(src.modes(), src.n_max(), BasisKind::AtMostTotal);
  const auto dim = static_cast<Eigen::Index>(dst->size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  const auto& psi = probe.amplitudes();
  Eigen::VectorXcd branch(dim);
  for (const auto& ts : pattern_transitions(src, *dst, channel)) {
    branch.setZero();
    for (const auto& t : ts) branch[static_cast<Eigen::Index>(t.dst)] += t.weight * psi[static_cast<Eigen::Index>(t.src)];
    rho.noalias() += branch * branch.adjoint();
  }
  return {std::move(dst), std::move(rho)};
}

DensityOperator apply_loss(const DensityOperator& rho, const LossChannel& channel) {
  const FockBasis& src = rho.basis();
  if (src.modes() != channel.modes()) throw std::invalid_argument("apply_loss: basis/channel mode-count mismatch");
  BasisPtr dst = src.kind() == BasisKind::AtMostTotal ? rho.basis_ptr()
                                                      : build_basis(src.modes(), src.n_max(), BasisKind::AtMostTotal);
  const auto dim = static_cast<Eigen::Index>(dst->size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  const auto& in = rho.matrix();
  for (const auto& ts : pattern_transitions(src, *dst, channel)) {
    for (const auto& a : ts) {
      for (const auto& b : ts) {
        out(static_cast<Eigen::Index>(a.dst), static_cast<Eigen::Index>(b.dst)) +=
            a.weight * b.weight * in(static_cast<Eigen::Index>(a.src), static_cast<Eigen::Index>(b.src));
      }
    }
  }
  return {std::move(dst), std::move(out)};
}

DensityOperator apply_phases(const DensityOperator& rho, std::span<const double> theta) {
  const FockBasis& basis = rho.basis();
  if (static_cast<int>(theta.size()) != basis.modes() - 1)
    throw std::invalid_argument("apply_phases: expected one angle per phase mode");
  Eigen::VectorXd phase = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < theta.size(); ++j) phase += theta[j] * basis.number_diagonal(static_cast<int>(j + 1));
  Eigen::VectorXcd u(phase.size());
  for (Eigen::Index k = 0; k < phase.size(); ++k) u[k] = std::polar(1.0, phase[k]);
  Eigen::MatrixXcd out = u.asDiagonal() * rho.matrix() * u.conjugate().asDiagonal();
  return {rho.basis_ptr(), std::move(out)};
}

}  // namespace multiphase
