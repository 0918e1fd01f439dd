#include "multiphase/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "multiphase/optimize.hpp"
#include "multiphase/probes.hpp"

namespace multiphase {

namespace {

double kappa_of(double eta) { return (1.0 - eta) / eta; }

// Information of a phase-mode photon distribution p over {0..m}; 0 when no
// photon passes the phase.
double distribution_information(const std::vector<double>& p, double eta) {
  double mean = 0.0, second = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    mean += p[n] * static_cast<double>(n);
    second += p[n] * static_cast<double>(n * n);
  }
  if (mean <= 0.0) return 0.0;
  const double variance = std::max(0.0, second - mean * mean);
  return single_phase_bound(mean, variance, eta).information;
}

std::vector<double> two_point(int m, int k, double q) {
  std::vector<double> p(static_cast<std::size_t>(m + 1), 0.0);
  p[0] = 1.0 - q;
  p[static_cast<std::size_t>(k)] = q;
  return p;
}

void hill_climb(std::vector<double>& p, double& value, double eta) {
  for (double step = 0.1; step > 1e-12; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
          if (i == j || p[i] <= 0.0) continue;
          const double moved = std::min(step, p[i]);
          std::vector<double> trial = p;
          trial[i] -= moved;
          trial[j] += moved;
          const double v = distribution_information(trial, eta);
          if (v > value * (1.0 + 1e-15)) {
            p = std::move(trial);
            value = v;
            improved = true;
          }
        }
      }
    }
  }
}

void enumerate_allocations(int remaining, int parts, int t, std::vector<int>& current, std::vector<int>& best,
                           double& best_cost) {
  if (parts == 1) {
    current.push_back(remaining);
    const double cost = allocation_cost(current, t);
    if (cost < best_cost) {
      best_cost = cost;
      best = current;
    }
    current.pop_back();
    return;
  }
  for (int n = 1; n <= remaining - (parts - 1); ++n) {
    current.push_back(n);
    enumerate_allocations(remaining - n, parts - 1, t, current, best, best_cost);
    current.pop_back();
  }
}

}  // namespace

double SinglePhaseBound::variance_bound() const {
  return information > 0.0 ? 1.0 / information : std::numeric_limits<double>::infinity();
}

SinglePhaseBound single_phase_bound(double mean, double variance, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("single_phase_bound: eta must lie in (0, 1]");
  if (!(mean > 0.0)) throw std::invalid_argument("single_phase_bound: no photons pass through the phase");
  if (variance < 0.0) throw std::invalid_argument("single_phase_bound: negative variance");
  if (eta == 1.0) return {4.0 * variance, 1.0};
  const double denom = (1.0 - eta) * variance + eta * mean;
  return {4.0 * eta * variance * mean / denom, variance / denom};
}

IeResult ie_optimal(int m, double eta) {
  if (m < 1) throw std::invalid_argument("ie_optimal: m must be >= 1");
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("ie_optimal: eta must lie in [0, 1]");

  std::vector<double> best_p = two_point(m, m, 0.5);
  double best_value = eta > 0.0 ? distribution_information(best_p, eta) : 0.0;
  if (eta > 0.0) {
    for (int k = 1; k <= m; ++k) {
      auto f = [&](double q) { return distribution_information(two_point(m, k, q), eta); };
      const ScalarOptimum opt = golden_section_maximize(f, 0.0, 1.0, 1e-12);
      if (opt.value > best_value) {
        best_value = opt.value;
        best_p = two_point(m, k, opt.x);
      }
    }
    hill_climb(best_p, best_value, eta);
  }

  // Coefficient alpha_n multiplies |n, m-n>: n reference photons, m-n phase photons.
  std::vector<double> coefficients(static_cast<std::size_t>(m + 1), 0.0);
  for (int phase_n = 0; phase_n <= m; ++phase_n)
    coefficients[static_cast<std::size_t>(m - phase_n)] = std::sqrt(best_p[static_cast<std::size_t>(phase_n)]);

  const double bound = best_value > 0.0 ? 1.0 / best_value : std::numeric_limits<double>::infinity();
  return IeResult{bound, bound, ie_two_mode(m, coefficients), m};
}

IeResult ie_total_variance(int d, int n, double eta) {
  if (d < 1 || n < 1) throw std::invalid_argument("ie_total_variance: d and N must be positive");
  if (n % d != 0) throw std::invalid_argument("ie_total_variance: d must divide N");
  IeResult r = ie_optimal(n / d, eta);
  r.total = d * r.per_phase_bound;
  return r;
}

double se_asymptotic(int d, int n, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("se_asymptotic: eta must lie in (0, 1)");
  if (d < 1 || n < 1) throw std::invalid_argument("se_asymptotic: d and N must be positive");
  const double dd = d;
  return (1.0 - eta) / (4.0 * eta) * dd * dd / n;
}

PsiSAsymptotic psi_s_asymptotic(int d, int n, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("psi_s_asymptotic: eta must lie in (0, 1]");
  if (d < 1 || n < 1) throw std::invalid_argument("psi_s_asymptotic: d and N must be positive");
  const double kappa = kappa_of(eta);
  const double nn = n;
  const double dd = d;
  const double s = kappa * nn + 1.0;
  const double per_mode = nn / dd;
  const double denom = per_mode * per_mode / (s * s) + kappa * nn * nn / (s * s) * per_mode / dd;
  return {0.25 / denom, (nn / eta) / s - 1.0};
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Heisenberg:
      return "heisenberg";
    case Regime::Sql:
      return "sql";
    case Regime::Crossover:
      return "crossover";
  }
  return "unknown";
}

Regime regime_classify(int n, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("regime_classify: eta must lie in (0, 1]");
  if (n < 1) throw std::invalid_argument("regime_classify: N must be positive");
  const double kn = kappa_of(eta) * n;
  if (kn <= 0.1) return Regime::Heisenberg;
  if (kn >= 10.0) return Regime::Sql;
  return Regime::Crossover;
}

AsymptoticReport asymptotic_report(int d, int n, double eta) {
  return {se_asymptotic(d, n, eta), psi_s_asymptotic(d, n, eta).value, regime_classify(n, eta), kappa_of(eta)};
}

double allocation_cost(std::span<const int> allocation, int t) {
  double cost = 0.0;
  for (int n : allocation) {
    if (n < 1) throw std::invalid_argument("allocation_cost: every phase needs at least one photon");
    cost += 1.0 / std::pow(static_cast<double>(n), t);
  }
  return cost;
}

std::vector<int> exhaustive_best_allocation(int n, int d, int t) {
  if (d < 1 || n < d) throw std::invalid_argument("exhaustive_best_allocation: need N >= d >= 1");
  std::vector<int> current, best;
  double best_cost = std::numeric_limits<double>::infinity();
  enumerate_allocations(n, d, t, current, best, best_cost);
  return best;
}

}  // namespace multiphase
