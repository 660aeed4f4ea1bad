#pragma once

// Parameter selection for the lower-bound family: the best order at a point,
// the largest admissible weight for a fixed order, and the best single order
// over an interval.

#include <functional>
#include <optional>
#include <string>

#include "qbound/bounds.hpp"

namespace qbound {

struct OptimizationResult {
  double argument = 0.0;   ///< optimal kappa, or optimal x for max_weight
  double objective = 0.0;
  std::optional<double> gap;  ///< relative gap in [0, 1] where meaningful
  int iterations = 0;
  bool converged = false;
  std::string diagnostic;
};

/// Search ceiling for kappa.
inline constexpr double kKappaMax = 1e6;

/// Golden-section minimisation of f on [lo, hi] until the bracket is narrower
/// than tol. objective holds f at the returned argument.
OptimizationResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                           double hi, double tol, int max_iterations = 500);

/// argmax over kappa in [1, kKappaMax] of g(x, kappa), for x > 0.
/// objective is g at the optimum and gap is (Q - g) / Q.
OptimizationResult kappa_star(double x);

/// inf over x of Q(x) e^{k x^2 / 2}, the largest weight w for which
/// w e^{-k x^2 / 2} <= Q(x) everywhere. argument is the minimising x and gap
/// is 1 - alpha(k) / weight. Throws std::logic_error if the result falls below
/// alpha(k), which would contradict the lower bound.
OptimizationResult max_weight(const KappaParam& k);

/// The kappa minimising the worst relative gap over [x_lo, x_hi], with the
/// inner supremum taken over 512 log-spaced points.
OptimizationResult interval_kappa(double x_lo, double x_hi);

/// Worst relative gap of g(., kappa) over the points used by interval_kappa.
double interval_max_gap(double x_lo, double x_hi, const KappaParam& k);

/// (Q(x) - g(x, k)) / Q(x), evaluated in log space.
double relative_gap(double x, const KappaParam& k);

}  // namespace qbound
