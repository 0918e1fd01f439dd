#pragma once

#include <vector>

#include "multiphase/fock.hpp"

namespace multiphase {

/// Exact quantum Fisher information for the phase generators n_1..n_d.
struct QfiResult {
  Eigen::MatrixXd matrix;
  double trace_inverse = 0.0;        ///< +inf when the matrix is singular
  double saturation_residual = 0.0;  ///< max_{i<j} |Im Tr(rho L_i L_j)|
};

/// 4 Cov(n_i, n_j) of a pure probe. Pure states satisfy the weak commutation
/// condition with number generators, so the residual is computed exactly as 0.
QfiResult qfi_pure(const PureState& probe);

/// Spectral formula for a mixed state with rho = sum_k lambda_k |k><k|:
/// I_ij = sum_{lambda_k + lambda_l > eps} 2 (lambda_k - lambda_l)^2 / (lambda_k + lambda_l)
///        Re(<k|n_i|l><l|n_j|k>),  eps = 1e-12 lambda_max.
/// The derivative d_i rho = i[n_i, rho] is exact for any rho = U(theta) rho_loss U(theta)^dagger.
QfiResult qfi_mixed(const DensityOperator& rho, int d);

struct SldResult {
  std::vector<Eigen::MatrixXcd> sld;  ///< L_1..L_d in the state's basis
  double residual = 0.0;              ///< max_{i<j} |Im Tr(rho L_i L_j)|
};

/// Symmetric logarithmic derivatives solving d_i rho = (rho L_i + L_i rho)/2 on
/// the support of rho, and the weak-commutation residual that vanishes when
/// the multiparameter Cramer-Rao bound is attainable.
SldResult sld_and_residual(const DensityOperator& rho, int d);

}  // namespace multiphase
