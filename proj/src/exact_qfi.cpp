#include "multiphase/exact_qfi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "multiphase/cq_bounds.hpp"

namespace multiphase {

namespace {

double trace_inverse_or_inf(const Eigen::MatrixXd& m) {
  try {
    return symmetric_trace_inverse(m);
  } catch (const SingularBoundError&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Eigendecomposition of rho together with the generators in its eigenbasis.
struct Spectral {
  Eigen::VectorXd lambda;
  Eigen::MatrixXcd vectors;
  std::vector<Eigen::MatrixXcd> generators;
  double eps;
};

Spectral decompose(const DensityOperator& rho, int d) {
  const FockBasis& basis = rho.basis();
  if (d < 1 || d > basis.modes() - 1) throw std::invalid_argument("exact QFI: d must lie in [1, modes-1]");
  rho.validate();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix());
  Spectral s;
  s.lambda = es.eigenvalues();
  s.vectors = es.eigenvectors();
  s.eps = 1e-12 * s.lambda.maxCoeff();
  for (int i = 1; i <= d; ++i) {
    const Eigen::VectorXd n = basis.number_diagonal(i);
    s.generators.push_back(s.vectors.adjoint() * n.asDiagonal() * s.vectors);
  }
  return s;
}

// SLD in the eigenbasis: L_kl = 2 i (lambda_l - lambda_k) G_kl / (lambda_k + lambda_l).
Eigen::MatrixXcd sld_eigenbasis(const Spectral& s, const Eigen::MatrixXcd& g) {
  const Eigen::Index dim = s.lambda.size();
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index m = 0; m < dim; ++m) {
      const double sum = s.lambda[k] + s.lambda[m];
      if (sum > s.eps) l(k, m) = cplx(0.0, 2.0 * (s.lambda[m] - s.lambda[k]) / sum) * g(k, m);
    }
  }
  return l;
}

double weak_commutation_residual(const Spectral& s, const std::vector<Eigen::MatrixXcd>& slds) {
  double residual = 0.0;
  const auto d = slds.size();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const cplx t = (s.lambda.cast<cplx>().asDiagonal() * slds[i] * slds[j]).trace();
      residual = std::max(residual, std::abs(t.imag()));
    }
  }
  return residual;
}

}  // namespace

QfiResult qfi_pure(const PureState& probe) {
  QfiResult r;
  r.matrix = 4.0 * phase_moments(probe).covariance;
  r.trace_inverse = trace_inverse_or_inf(r.matrix);
  return r;
}

QfiResult qfi_mixed(const DensityOperator& rho, int d) {
  const Spectral s = decompose(rho, d);
  const Eigen::Index dim = s.lambda.size();
  QfiResult r;
  r.matrix = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index l = 0; l < dim; ++l) {
      const double sum = s.lambda[k] + s.lambda[l];
      if (sum <= s.eps) continue;
      const double diff = s.lambda[k] - s.lambda[l];
      const double w = 2.0 * diff * diff / sum;
      if (w == 0.0) continue;
      for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
          r.matrix(i, j) += w * (s.generators[static_cast<std::size_t>(i)](k, l) *
                                 s.generators[static_cast<std::size_t>(j)](l, k)).real();
        }
      }
    }
  }
  r.matrix.triangularView<Eigen::StrictlyLower>() = r.matrix.transpose().triangularView<Eigen::StrictlyLower>();
  r.trace_inverse = trace_inverse_or_inf(r.matrix);

  std::vector<Eigen::MatrixXcd> slds;
  for (const auto& g : s.generators) slds.push_back(sld_eigenbasis(s, g));
  r.saturation_residual = weak_commutation_residual(s, slds);
  return r;
}

SldResult sld_and_residual(const DensityOperator& rho, int d) {
  const Spectral s = decompose(rho, d);
  SldResult out;
  std::vector<Eigen::MatrixXcd> eig_slds;
  for (const auto& g : s.generators) {
    eig_slds.push_back(sld_eigenbasis(s, g));
    out.sld.push_back(s.vectors * eig_slds.back() * s.vectors.adjoint());
  }
  out.residual = weak_commutation_residual(s, eig_slds);
  return out;
}

}  // namespace multiphase
