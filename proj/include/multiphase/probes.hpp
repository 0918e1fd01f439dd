#pragma once

#include <string>
#include <utility>
#include <vector>

#include "multiphase/fock.hpp"

namespace multiphase {

enum class ProbeFamily { GeneralizedNoon, Custom, IeTwoMode };

/// Declarative probe description, as accepted by the CLI.
struct ProbeSpec {
  ProbeFamily family = ProbeFamily::GeneralizedNoon;
  int d = 1;
  int n = 1;
  std::vector<std::pair<ModeOccupation, double>> terms;  ///< Custom only
  std::vector<double> coefficients;                       ///< IeTwoMode only, alpha_0..alpha_n
};

/// alpha^2 = 1/(d + sqrt d) and beta^2 = 1 - d alpha^2 of the generalized N00N state.
struct NoonWeights {
  double alpha_sq;
  double beta_sq;
};
NoonWeights generalized_noon_weights(int d);

/// alpha (|0,N,0..0> + ... + |0,..,0,N>) + beta |N,0,..,0> over d+1 modes.
PureState generalized_noon(int d, int n);

/// Closed-form phase-mode moments of generalized_noon(d, n): <n_i> = alpha^2 n,
/// <n_i^2> = alpha^2 n^2, <n_i n_j> = 0 for i != j. Never builds the Fock space.
PhaseMoments generalized_noon_moments(int d, int n);

/// Normalized real superposition of the given occupations. Repeated
/// occupations accumulate.
PureState custom_probe(const BasisPtr& basis,
                       const std::vector<std::pair<ModeOccupation, double>>& terms);

/// sum_n alpha_n |n, m-n> over (reference, phase) with fixed total m.
PureState ie_two_mode(int m, const std::vector<double>& coefficients);

PureState make_probe(const ProbeSpec& spec);

}  // namespace multiphase
