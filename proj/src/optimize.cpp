#include "multiphase/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace multiphase {

ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double rel_tol, int max_iter) {
  if (!(hi > lo)) throw std::invalid_argument("golden_section_maximize: empty bracket");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (a + b);
    if (b - a <= rel_tol * std::max(1.0, std::abs(mid))) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? ScalarOptimum{c, fc} : ScalarOptimum{d, fd};
}

ScalarOptimum scan_then_maximize(const std::function<double(double)>& f, double lo, double hi, int samples,
                                 double rel_tol) {
  if (samples < 3) samples = 3;
  const double step = (hi - lo) / (samples - 1);
  int best = 0;
  double best_value = -INFINITY;
  for (int k = 0; k < samples; ++k) {
    const double v = f(lo + k * step);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  const double a = lo + std::max(0, best - 1) * step;
  const double b = lo + std::min(samples - 1, best + 1) * step;
  ScalarOptimum refined = golden_section_maximize(f, a, b, rel_tol);
  if (refined.value >= best_value) return refined;
  return {lo + best * step, best_value};
}

}  // namespace multiphase
