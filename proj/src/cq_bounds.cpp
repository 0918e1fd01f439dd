#include "multiphase/cq_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "multiphase/optimize.hpp"

namespace multiphase {

namespace {

constexpr double kMaxCondition = 1e12;

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
}

// Tr[C^{-1}] or +inf when the gauge makes C singular. Used inside the search,
// where an unbounded objective is a legitimate value.
double objective(const PhaseMoments& moments, std::span<const double> eta, const DeltaGauge& gauge) {
  const CqBound b = cq_matrix(moments, eta, gauge);
  return b.trace_inverse.value_or(std::numeric_limits<double>::infinity());
}

}  // namespace

LossCoefficients ab_coefficients(double eta, double delta) {
  check_eta(eta);
  const double x = 1.0 + delta;
  return {1.0 - x * (1.0 - eta), x * x * eta * (1.0 - eta)};
}

double diagonalizing_delta(double eta) {
  check_eta(eta);
  if (eta == 1.0) return 0.0;
  return eta / (1.0 - eta);
}

double symmetric_trace_inverse(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxCondition)
    throw SingularBoundError("bound matrix is singular: some phase carries no information");
  return ev.cwiseInverse().sum();
}

CqBound cq_matrix(const PhaseMoments& moments, std::span<const double> eta, const DeltaGauge& delta) {
  const int d = moments.phases();
  if (static_cast<int>(eta.size()) != d || static_cast<int>(delta.delta.size()) != d)
    throw std::invalid_argument("cq_matrix: eta and delta must have one entry per phase mode");
  Eigen::VectorXd a(d), b(d);
  for (int i = 0; i < d; ++i) {
    const auto c = ab_coefficients(eta[static_cast<std::size_t>(i)], delta.delta[static_cast<std::size_t>(i)]);
    a[i] = c.a;
    b[i] = c.b;
  }
  CqBound out;
  out.matrix = 4.0 * (a.asDiagonal() * moments.covariance * a.asDiagonal());
  out.matrix.diagonal() += 4.0 * b.cwiseProduct(moments.mean);
  out.delta = delta;
  try {
    out.trace_inverse = symmetric_trace_inverse(out.matrix);
  } catch (const SingularBoundError&) {
    out.trace_inverse.reset();
  }
  return out;
}

CqBound cq_matrix(const PureState& probe, std::span<const double> eta, const DeltaGauge& delta) {
  return cq_matrix(phase_moments(probe), eta, delta);
}

double bound_total_variance(const CqBound& bound) { return symmetric_trace_inverse(bound.matrix); }

DeltaOptimum optimize_delta(const PhaseMoments& moments, std::span<const double> eta, bool uniform) {
  const int d = moments.phases();
  if (static_cast<int>(eta.size()) != d) throw std::invalid_argument("optimize_delta: one eta per phase mode");
  for (double e : eta) {
    check_eta(e);
    if (e == 0.0) throw std::invalid_argument("optimize_delta: eta = 0 admits no finite bound");
  }
  for (int i = 0; i < d; ++i) {
    if (!(moments.mean[i] > 0.0))
      throw SingularBoundError("phase " + std::to_string(i + 1) + " carries no photons: no finite bound");
  }
  const double eta_min = *std::min_element(eta.begin(), eta.end());
  const double eta_max = *std::max_element(eta.begin(), eta.end());

  auto finish = [&](DeltaGauge gauge) {
    DeltaOptimum opt;
    opt.delta_star = std::accumulate(gauge.delta.begin(), gauge.delta.end(), 0.0) / d;
    opt.bound = cq_matrix(moments, eta, gauge);
    if (!opt.bound.trace_inverse) throw SingularBoundError("bound matrix is singular at the optimal gauge");
    return opt;
  };

  // Every gauge yields the same matrix when no mode loses photons.
  if (eta_min == 1.0) return finish(DeltaGauge::uniform(d, 0.0));

  const double n = std::max(1, moments.total_photons);
  const double hi = std::max(2.0 * n, 10.0 / (1.0 - eta_min));
  auto uniform_value = [&](double x) { return objective(moments, eta, DeltaGauge::uniform(d, x)); };

  ScalarOptimum best = scan_then_maximize(uniform_value, -1.0, hi);
  // Analytic candidates: the diagonalizing gauge and delta = 0.
  for (double candidate : {0.0, eta_max < 1.0 ? diagonalizing_delta(eta_max) : 0.0,
                           eta_min < 1.0 ? diagonalizing_delta(eta_min) : 0.0}) {
    if (candidate < -1.0 || candidate > hi) continue;
    const double v = uniform_value(candidate);
    if (v > best.value) best = {candidate, v};
  }
  DeltaGauge gauge = DeltaGauge::uniform(d, best.x);
  if (uniform) return finish(gauge);

  double current = best.value;
  for (int sweep = 0; sweep < 50; ++sweep) {
    const double before = current;
    for (int i = 0; i < d; ++i) {
      auto coordinate_value = [&](double x) {
        DeltaGauge g = gauge;
        g.delta[static_cast<std::size_t>(i)] = x;
        return objective(moments, eta, g);
      };
      const ScalarOptimum c = scan_then_maximize(coordinate_value, -1.0, hi, 32);
      if (c.value > current) {
        gauge.delta[static_cast<std::size_t>(i)] = c.x;
        current = c.value;
      }
    }
    if (current - before <= 1e-12 * std::abs(current)) break;
  }
  return finish(gauge);
}

DeltaOptimum optimize_delta(const PhaseMoments& moments, double eta, bool uniform) {
  const std::vector<double> etas(static_cast<std::size_t>(moments.phases()), eta);
  return optimize_delta(moments, etas, uniform);
}

DeltaOptimum optimize_delta(const PureState& probe, double eta, bool uniform) {
  return optimize_delta(phase_moments(probe), eta, uniform);
}

}  // namespace multiphase
