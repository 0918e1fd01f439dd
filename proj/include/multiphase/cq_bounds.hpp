#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "multiphase/fock.hpp"

namespace multiphase {

/// Raised when a bound matrix is singular or has condition number above 1e12:
/// some phase carries no information in the probe.
class SingularBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficients of the loss-dressed generators: A_i = a n_i, B_ii = a^2 n_i^2 + b n_i.
struct LossCoefficients {
  double a;
  double b;
};

/// a = 1 - (1+delta)(1-eta), b = (1+delta)^2 eta (1-eta).
LossCoefficients ab_coefficients(double eta, double delta);

/// delta = eta/(1-eta), the gauge that zeroes a and makes the bound matrix
/// diagonal. Returns 0 at eta = 1 where every gauge gives the same matrix.
double diagonalizing_delta(double eta);

/// One gauge value per phase mode.
struct DeltaGauge {
  std::vector<double> delta;

  static DeltaGauge uniform(int d, double value) { return {std::vector<double>(static_cast<std::size_t>(d), value)}; }
};

/// Variational upper bound on the QFI matrix for one gauge choice.
struct CqBound {
  Eigen::MatrixXd matrix;
  DeltaGauge delta;
  std::optional<double> trace_inverse;  ///< empty when the matrix is singular
};

/// Tr[M^{-1}] of a symmetric matrix via its eigendecomposition. Throws
/// SingularBoundError when M is not positive definite or is ill-conditioned.
double symmetric_trace_inverse(const Eigen::MatrixXd& m);

/// C_ii = 4 (a_i^2 Var(n_i) + b_i <n_i>), C_ij = 4 a_i a_j Cov(n_i, n_j).
/// `eta` holds one transmissivity per phase mode.
CqBound cq_matrix(const PhaseMoments& moments, std::span<const double> eta, const DeltaGauge& delta);
CqBound cq_matrix(const PureState& probe, std::span<const double> eta, const DeltaGauge& delta);

/// Tr[C_Q^{-1}], a lower bound on the total variance sum_i Var(theta_i).
double bound_total_variance(const CqBound& bound);

struct DeltaOptimum {
  double delta_star;  ///< the uniform gauge; mean of bound.delta when optimized per mode
  CqBound bound;
};

/// Gauge maximizing Tr[C_Q^{-1}] (the tightest variance bound in the family).
/// The uniform search scans [-1, max(2N, 10/(1-eta))] and refines by golden
/// section; the per-mode variant then improves each delta_i in turn. The result
/// is never worse than delta = 0 or delta = eta/(1-eta).
DeltaOptimum optimize_delta(const PhaseMoments& moments, std::span<const double> eta, bool uniform = true);
DeltaOptimum optimize_delta(const PhaseMoments& moments, double eta, bool uniform = true);
DeltaOptimum optimize_delta(const PureState& probe, double eta, bool uniform = true);

}  // namespace multiphase
