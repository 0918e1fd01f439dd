#include <doctest.h>

#include <cmath>
#include <random>

#include "multiphase/exact_qfi.hpp"
#include "multiphase/loss_channel.hpp"
#include "multiphase/probes.hpp"
#include "unit/support.hpp"

using namespace multiphase;

namespace {

PureState single_photon_noon() {
  auto basis = build_basis(2, 1, BasisKind::FixedTotal);
  return custom_probe(basis, {{ModeOccupation{{1, 0}}, 1.0}, {ModeOccupation{{0, 1}}, 1.0}});
}

// Three-level oracle for (|1,0> + |0,1>)/sqrt 2 with loss eta on the phase
// mode only. rho_loss = |v><v| + (1-eta)/2 |00><00| with
//   |k>    = (|10> + sqrt(eta)|01>)/sqrt(1+eta),   lambda = (1+eta)/2
//   |00>,                                          lambda = (1-eta)/2
//   |perp> = (sqrt(eta)|10> - |01>)/sqrt(1+eta),   lambda = 0
// The number operator only couples |k> and |perp>: |<k|n|perp>|^2 = eta/(1+eta)^2.
double single_photon_qfi_oracle(double eta) {
  const double lambda_k = (1.0 + eta) / 2.0;
  const double coupling = eta / ((1.0 + eta) * (1.0 + eta));
  // Both orderings (k, perp) and (perp, k) contribute 2 lambda_k^2 / lambda_k.
  return 2.0 * (2.0 * lambda_k * lambda_k / lambda_k) * coupling;
}

}  // namespace

TEST_CASE("pure-state QFI") {
  const double closed = 2.0 * std::pow(1.0 + std::sqrt(2.0), 2) / (4.0 * 16.0);
  const QfiResult r = qfi_pure(generalized_noon(2, 4));
  CHECK(r.trace_inverse == doctest::Approx(closed).epsilon(1e-12));
  CHECK(r.trace_inverse == doctest::Approx(0.18214).epsilon(1e-4));
  CHECK(r.saturation_residual == 0.0);

  auto basis = build_basis(3, 3, BasisKind::FixedTotal);
  const QfiResult zero = qfi_pure(custom_probe(basis, {{ModeOccupation{{0, 3, 0}}, 1.0}}));
  CHECK(zero.matrix.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::isinf(zero.trace_inverse));

  for (int n = 1; n <= 6; ++n) {
    std::vector<double> c(static_cast<std::size_t>(n + 1), 0.0);
    c.front() = c.back() = 1.0;
    CHECK(qfi_pure(ie_two_mode(n, c)).matrix(0, 0) == doctest::Approx(double(n * n)));
  }
}

TEST_CASE("single-photon N00N with phase-mode loss") {
  for (double eta = 0.1; eta < 0.95; eta += 0.1) {
    CAPTURE(eta);
    const double closed = 2.0 * eta / (1.0 + eta);
    CHECK(single_photon_qfi_oracle(eta) == doctest::Approx(closed).epsilon(1e-12));
    const auto rho = apply_loss(single_photon_noon(), LossChannel({1.0, eta}));
    const QfiResult r = qfi_mixed(rho, 1);
    CHECK(std::abs(r.matrix(0, 0) - closed) < 1e-10);
  }
  const auto rho = apply_loss(single_photon_noon(), LossChannel({1.0, 0.9}));
  CHECK(qfi_mixed(rho, 1).matrix(0, 0) == doctest::Approx(0.947368).epsilon(1e-6));
}

TEST_CASE("lossless and complete-loss limits") {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const PureState psi = testing::random_complex_probe(2, 1 + trial % 3, rng);
    const QfiResult mixed = qfi_mixed(apply_loss(psi, LossChannel::uniform(3, 1.0)), 2);
    CHECK((mixed.matrix - qfi_pure(psi).matrix).cwiseAbs().maxCoeff() < 1e-10);

    const QfiResult lost = qfi_mixed(apply_loss(psi, LossChannel({0.8, 0.0, 0.0})), 2);
    CHECK(lost.matrix.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("SLDs solve the defining equation and reproduce the QFI") {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 6; ++trial) {
    const PureState psi = trial % 2 ? testing::random_complex_probe(2, 3, rng) : generalized_noon(2, 1 + trial);
    const auto rho = apply_loss(psi, LossChannel::uniform(3, trial < 3 ? 0.5 : 0.9));
    const SldResult sld = sld_and_residual(rho, 2);
    const QfiResult qfi = qfi_mixed(rho, 2);
    REQUIRE(sld.sld.size() == 2);
    const auto& r = rho.matrix();
    for (int i = 0; i < 2; ++i) {
      const Eigen::VectorXd n = rho.basis().number_diagonal(i + 1);
      const Eigen::MatrixXcd gen = n.cast<cplx>().asDiagonal();
      const Eigen::MatrixXcd derivative = cplx(0.0, 1.0) * (gen * r - r * gen);
      const Eigen::MatrixXcd& l = sld.sld[static_cast<std::size_t>(i)];
      CHECK((l - l.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((derivative - 0.5 * (r * l + l * r)).cwiseAbs().maxCoeff() < 1e-9);
      for (int j = 0; j < 2; ++j) {
        const double via_sld = (r * l * sld.sld[static_cast<std::size_t>(j)]).trace().real();
        CHECK(std::abs(via_sld - qfi.matrix(i, j)) < 1e-8);
      }
    }
    CHECK(std::abs(sld.residual - qfi.saturation_residual) < 1e-12);
  }
}

TEST_CASE("weak-commutation residual") {
  // d = 1 has no pair.
  const auto one = apply_loss(single_photon_noon(), LossChannel({0.7, 0.7}));
  CHECK(sld_and_residual(one, 1).residual == 0.0);

  for (int n = 1; n <= 4; ++n) {
    for (double eta : {0.5, 0.9}) {
      const auto rho = apply_loss(generalized_noon(2, n), LossChannel::uniform(3, eta));
      CHECK(sld_and_residual(rho, 2).residual < 1e-9);
    }
  }

  auto basis = build_basis(3, 2, BasisKind::FixedTotal);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(basis->size()));
  amps[1] = cplx(0.0, 1.0);
  const auto rho = apply_loss(PureState(basis, amps), LossChannel::uniform(3, 0.7));
  const double residual = sld_and_residual(rho, 2).residual;
  CHECK(std::isfinite(residual));
  CHECK(residual >= 0.0);
}

TEST_CASE("QFI is independent of the phase point") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> angle(-3.14, 3.14);
  for (int trial = 0; trial < 5; ++trial) {
    const PureState psi = testing::random_complex_probe(2, 3, rng);
    const auto rho = apply_loss(psi, LossChannel::uniform(3, 0.75));
    const std::vector<double> theta{angle(rng), angle(rng)};
    const QfiResult at_zero = qfi_mixed(rho, 2);
    const QfiResult at_theta = qfi_mixed(apply_phases(rho, theta), 2);
    CHECK((at_zero.matrix - at_theta.matrix).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("QFI trace grows with transmissivity") {
  double previous = -1.0;
  for (int k = 1; k <= 10; ++k) {
    const double eta = 0.1 * k;
    const double trace = qfi_mixed(apply_loss(generalized_noon(2, 4), LossChannel::uniform(3, eta)), 2).matrix.trace();
    CHECK(trace >= previous - 1e-12);
    previous = trace;
  }
}

TEST_CASE("invalid density inputs") {
  auto basis = build_basis(2, 1, BasisKind::AtMostTotal);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(3, 3);
  CHECK_THROWS_AS(qfi_mixed(DensityOperator(basis, m), 1), std::invalid_argument);
  m /= 3.0;
  CHECK_NOTHROW(qfi_mixed(DensityOperator(basis, m), 1));
  CHECK_THROWS_AS(qfi_mixed(DensityOperator(basis, m), 2), std::invalid_argument);
  m.setZero();
  m.diagonal() << -0.2, 0.6, 0.6;
  CHECK_THROWS_AS(qfi_mixed(DensityOperator(basis, m), 1), std::invalid_argument);
}
