#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "multiphase/fock.hpp"

namespace multiphase {

/// Loss-limited information of a single phase carried by a probe with phase-mode
/// photon mean and variance, minimized analytically over the gauge delta:
///   C = 4 eta V M / ((1-eta) V + eta M),  1 + delta* = V / ((1-eta) V + eta M).
struct SinglePhaseBound {
  double information;
  double one_plus_delta;

  double variance_bound() const;  ///< 1 / information (+inf when it vanishes)
};

SinglePhaseBound single_phase_bound(double mean, double variance, double eta);

/// Best individual-estimation result for one or all phases.
struct IeResult {
  double per_phase_bound;
  double total;
  PureState probe;  ///< two-mode (reference, phase) probe achieving the bound
  int m;            ///< photons per phase
};

/// Maximizes single_phase_bound over two-mode probes sum_n alpha_n |n, m-n>.
/// The objective depends on the probe only through the phase-mode photon-number
/// distribution, so the search runs over that distribution: golden-section
/// searches over two-point distributions on {0, k}, k = 1..m, followed by a
/// mass-transfer hill climb over the full simplex.
IeResult ie_optimal(int m, double eta);

/// d phases, N photons split evenly (N/d each). Requires d | N.
IeResult ie_total_variance(int d, int n, double eta);

/// (1-eta)/(4 eta) d^2 / N, the asymptotic floor for simultaneous estimation.
double se_asymptotic(int d, int n, double eta);

struct PsiSAsymptotic {
  double value;
  double delta;
};

/// Closed-form large-N value of Tr[C_Q^{-1}] for the generalized N00N state,
/// with kappa = (1-eta)/eta:
///   value = 1/4 / [ (N/d)^2/(kappa N+1)^2 + kappa N^2/(kappa N+1)^2 (N/d)(1/d) ]
///   delta = (N/eta)/(kappa N + 1) - 1
PsiSAsymptotic psi_s_asymptotic(int d, int n, double eta);

enum class Regime { Heisenberg, Sql, Crossover };

std::string_view to_string(Regime r);

/// heisenberg when kappa N <= 0.1, sql when kappa N >= 10, crossover otherwise.
Regime regime_classify(int n, double eta);

struct AsymptoticReport {
  double se_floor;
  double psi_s_value;
  Regime regime;
  double kappa;
};

AsymptoticReport asymptotic_report(int d, int n, double eta);

/// sum_i 1 / n_i^t
double allocation_cost(std::span<const int> allocation, int t);

/// Exhaustive search over all splits of N photons into d positive parts.
std::vector<int> exhaustive_best_allocation(int n, int d, int t);

}  // namespace multiphase
