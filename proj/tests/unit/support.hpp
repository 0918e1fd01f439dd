#pragma once

#include <complex>
#include <random>

#include "multiphase/fock.hpp"

namespace multiphase::testing {

/// Random real superposition over the fixed-N basis of d+1 modes.
inline PureState random_real_probe(int d, int n, std::mt19937& rng) {
  auto basis = build_basis(d + 1, n, BasisKind::FixedTotal);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(basis->size()));
  for (auto& a : amps) a = u(rng);
  return {basis, amps};
}

inline PureState random_complex_probe(int d, int n, std::mt19937& rng) {
  auto basis = build_basis(d + 1, n, BasisKind::FixedTotal);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(basis->size()));
  for (auto& a : amps) a = {u(rng), u(rng)};
  return {basis, amps};
}

inline double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// <psi| diag(values) |psi> evaluated directly over the amplitude vector.
inline double diagonal_expectation(const PureState& psi, const Eigen::VectorXd& values) {
  return (psi.amplitudes().adjoint() * values.cast<std::complex<double>>().asDiagonal() * psi.amplitudes())(0, 0)
      .real();
}

}  // namespace multiphase::testing
