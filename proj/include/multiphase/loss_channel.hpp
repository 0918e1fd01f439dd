#pragma once

#include <span>
#include <vector>

#include "multiphase/fock.hpp"

namespace multiphase {

/// Beam-splitter photon loss acting independently on every mode, reference
/// mode included. eta[i] is the photon survival probability of mode i.
class LossChannel {
 public:
  explicit LossChannel(std::vector<double> eta);
  static LossChannel uniform(int modes, double eta);

  int modes() const { return static_cast<int>(eta_.size()); }
  double eta(int mode) const { return eta_.at(static_cast<std::size_t>(mode)); }
  const std::vector<double>& etas() const { return eta_; }

 private:
  std::vector<double> eta_;
};

/// sqrt((1-eta)^l / l!) eta^{n/2} a^l on a single-mode number basis (at-most-total).
Eigen::MatrixXd kraus_operator(double eta, int l, const FockBasis& single_mode_basis);

/// Same branch with the phase factor exp(i theta n) applied on the left.
Eigen::MatrixXcd kraus_operator(double eta, int l, double theta, const FockBasis& single_mode_basis);

/// rho_loss = sum over loss patterns l of K_l |psi><psi| K_l^dagger, with K_l the
/// product of per-mode branches. The output basis is at-most-total with the
/// probe's cutoff. Phases are not applied: rho(theta) = U(theta) rho_loss U(theta)^dagger.
DensityOperator apply_loss(const PureState& probe, const LossChannel& channel);

/// The channel acting on an already mixed state.
DensityOperator apply_loss(const DensityOperator& rho, const LossChannel& channel);

/// U(theta) rho U(theta)^dagger with U = exp(i sum_j theta_j n_j), j = 1..d.
DensityOperator apply_phases(const DensityOperator& rho, std::span<const double> theta);

}  // namespace multiphase
