#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace multiphase {

using cplx = std::complex<double>;

/// Photon counts per mode. Mode 0 is the reference mode, modes 1..d carry phases.
struct ModeOccupation {
  std::vector<int> counts;

  int total() const;
  std::size_t modes() const { return counts.size(); }
  std::string to_string() const;

  auto operator<=>(const ModeOccupation&) const = default;
  bool operator==(const ModeOccupation&) const = default;
};

enum class BasisKind { FixedTotal, AtMostTotal };

/// Ordered enumeration of admissible occupations over a fixed number of modes.
///
/// FixedTotal holds every occupation with exactly n_max photons; AtMostTotal
/// holds every occupation with at most n_max photons. States are listed in
/// lexicographic order of their count vectors, and index_of() inverts the list.
class FockBasis {
 public:
  FockBasis(int modes, int n_max, BasisKind kind);

  int modes() const { return modes_; }
  int n_max() const { return n_max_; }
  BasisKind kind() const { return kind_; }
  std::size_t size() const { return states_.size(); }

  const ModeOccupation& state(std::size_t k) const { return states_.at(k); }
  const std::vector<ModeOccupation>& states() const { return states_; }

  std::optional<std::size_t> index_of(const ModeOccupation& occ) const;
  bool contains(const ModeOccupation& occ) const { return index_of(occ).has_value(); }

  /// Diagonal of the number operator of `mode` in this basis.
  Eigen::VectorXd number_diagonal(int mode) const;

 private:
  int modes_;
  int n_max_;
  BasisKind kind_;
  std::vector<ModeOccupation> states_;
  std::map<ModeOccupation, std::size_t> index_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

BasisPtr build_basis(int modes, int n_max, BasisKind kind);

/// Amplitude vector over a basis, not necessarily normalized.
struct StateVector {
  BasisPtr basis;
  Eigen::VectorXcd amplitudes;
};

/// Normalized pure state. Construction normalizes the supplied amplitudes and
/// rejects the zero vector.
class PureState {
 public:
  PureState(BasisPtr basis, Eigen::VectorXcd amplitudes);

  const FockBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  /// Number of phase modes (modes minus the reference mode).
  int phases() const { return basis_->modes() - 1; }
  /// True when every amplitude has zero imaginary part.
  bool is_real() const { return real_; }

  StateVector vector() const { return {basis_, amplitudes_}; }

 private:
  BasisPtr basis_;
  Eigen::VectorXcd amplitudes_;
  bool real_ = true;
};

/// Hermitian unit-trace operator over a basis.
class DensityOperator {
 public:
  DensityOperator(BasisPtr basis, Eigen::MatrixXcd matrix);

  static DensityOperator from_pure(const PureState& psi);

  const FockBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  /// Throws std::invalid_argument unless the matrix is Hermitian, has unit
  /// trace and no eigenvalue below -1e-10.
  void validate() const;

 private:
  BasisPtr basis_;
  Eigen::MatrixXcd matrix_;
};

/// Applies a_mode^l. Occupations with fewer than l photons in `mode` vanish;
/// the rest map to n-l photons with weight sqrt(n!/(n-l)!). The result lives on
/// the at-most-total basis with the same mode count and cutoff as the input.
StateVector annihilate(const StateVector& state, int mode, int l);
StateVector annihilate(const PureState& state, int mode, int l);

struct Moments {
  double mean_i = 0.0;     ///< <n_i>
  double second_ij = 0.0;  ///< <n_i n_j>
  double cov_ij = 0.0;     ///< <n_i n_j> - <n_i><n_j>
};

/// Number-operator moments of a pure state. i and j are phase-mode indices in 1..d.
Moments moments(const PureState& state, int i, int j);

/// First and second moments of the phase-mode number operators, the only
/// probe data the variational bound needs.
struct PhaseMoments {
  Eigen::VectorXd mean;        ///< <n_i>, i = 1..d stored at 0..d-1
  Eigen::MatrixXd covariance;  ///< Cov(n_i, n_j)
  int total_photons = 0;

  int phases() const { return static_cast<int>(mean.size()); }
};

PhaseMoments phase_moments(const PureState& state);

}  // namespace multiphase
