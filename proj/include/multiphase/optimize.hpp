#pragma once

#include <functional>

namespace multiphase {

struct ScalarOptimum {
  double x;
  double value;
};

/// Golden-section search for a maximum of f on [lo, hi]. Stops when the bracket
/// width falls below rel_tol * max(1, |x|).
ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double rel_tol = 1e-8, int max_iter = 500);

/// Evaluates f on `samples` evenly spaced points of [lo, hi], then refines the
/// best one by golden section inside its neighbouring cell. Guards against
/// landing on a secondary local maximum of a non-unimodal objective.
ScalarOptimum scan_then_maximize(const std::function<double(double)>& f, double lo, double hi,
                                 int samples = 64, double rel_tol = 1e-8);

}  // namespace multiphase
