#include "multiphase/probes.hpp"

#include <cmath>
#include <stdexcept>

namespace multiphase {

NoonWeights generalized_noon_weights(int d) {
  if (d < 1) throw std::invalid_argument("generalized_noon: d must be >= 1");
  const double alpha_sq = 1.0 / (d + std::sqrt(static_cast<double>(d)));
  return {alpha_sq, 1.0 - d * alpha_sq};
}

PureState generalized_noon(int d, int n) {
  if (n < 1) throw std::invalid_argument("generalized_noon: N must be >= 1");
  const auto w = generalized_noon_weights(d);
  auto basis = build_basis(d + 1, n, BasisKind::FixedTotal);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
  const double alpha = std::sqrt(w.alpha_sq);
  const double beta = std::sqrt(std::max(0.0, w.beta_sq));
  for (int mode = 0; mode <= d; ++mode) {
    ModeOccupation occ{std::vector<int>(static_cast<std::size_t>(d + 1), 0)};
    occ.counts[static_cast<std::size_t>(mode)] = n;
    amps[static_cast<Eigen::Index>(*basis->index_of(occ))] = mode == 0 ? beta : alpha;
  }
  return {std::move(basis), std::move(amps)};
}

PhaseMoments generalized_noon_moments(int d, int n) {
  if (n < 1) throw std::invalid_argument("generalized_noon: N must be >= 1");
  const auto w = generalized_noon_weights(d);
  const double nn = n;
  PhaseMoments pm;
  pm.total_photons = n;
  pm.mean = Eigen::VectorXd::Constant(d, w.alpha_sq * nn);
  pm.covariance = Eigen::MatrixXd::Constant(d, d, -w.alpha_sq * w.alpha_sq * nn * nn);
  pm.covariance.diagonal().setConstant(w.alpha_sq * (1.0 - w.alpha_sq) * nn * nn);
  return pm;
}

PureState custom_probe(const BasisPtr& basis,
                       const std::vector<std::pair<ModeOccupation, double>>& terms) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
  for (const auto& [occ, amp] : terms) {
    auto idx = basis->index_of(occ);
    if (!idx) throw std::invalid_argument("custom_probe: occupation " + occ.to_string() + " not in basis");
    amps[static_cast<Eigen::Index>(*idx)] += amp;
  }
  if (amps.norm() == 0.0) throw std::invalid_argument("custom_probe: amplitude vector is zero");
  return {basis, std::move(amps)};
}

PureState ie_two_mode(int m, const std::vector<double>& coefficients) {
  if (m < 1) throw std::invalid_argument("ie_two_mode: m must be >= 1");
  if (coefficients.size() != static_cast<std::size_t>(m + 1))
    throw std::invalid_argument("ie_two_mode: expected m+1 coefficients");
  auto basis = build_basis(2, m, BasisKind::FixedTotal);
  std::vector<std::pair<ModeOccupation, double>> terms;
  for (int k = 0; k <= m; ++k) {
    if (coefficients[static_cast<std::size_t>(k)] != 0.0)
      terms.push_back({ModeOccupation{{k, m - k}}, coefficients[static_cast<std::size_t>(k)]});
  }
  if (terms.empty()) throw std::invalid_argument("ie_two_mode: all coefficients are zero");
  return custom_probe(basis, terms);
}

PureState make_probe(const ProbeSpec& spec) {
  switch (spec.family) {
    case ProbeFamily::GeneralizedNoon:
      return generalized_noon(spec.d, spec.n);
    case ProbeFamily::Custom:
      return custom_probe(build_basis(spec.d + 1, spec.n, BasisKind::FixedTotal), spec.terms);
    case ProbeFamily::IeTwoMode:
      return ie_two_mode(spec.n, spec.coefficients);
  }
  throw std::invalid_argument("make_probe: unknown family");
}

}  // namespace multiphase
