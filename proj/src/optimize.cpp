#include "qbound/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbound/special_functions.hpp"

namespace qbound {

namespace {

constexpr double kInvPhi = 0.618033988749894848204586834365638118;
constexpr double kKappaTol = 1e-8;
constexpr int kScanPoints = 481;
constexpr double kScanMinOffset = 1e-12;  // smallest kappa - 1 in the coarse scan
constexpr int kIntervalPoints = 512;

std::vector<double> kappa_scan_points() {
  std::vector<double> kappas(kScanPoints);
  const double u_lo = std::log(kScanMinOffset);
  const double u_hi = std::log(kKappaMax - 1.0);
  for (int i = 0; i < kScanPoints; ++i) {
    const double t = static_cast<double>(i) / (kScanPoints - 1);
    kappas[i] = 1.0 + std::exp(u_lo + t * (u_hi - u_lo));
  }
  kappas.back() = kKappaMax;
  return kappas;
}

// Coarse log scan over kappa followed by golden-section refinement of every
// discrete local minimum; the best refined candidate wins.
OptimizationResult minimize_over_kappa(const std::function<double(double)>& objective) {
  const std::vector<double> kappas = kappa_scan_points();
  std::vector<double> values(kappas.size());
  for (std::size_t i = 0; i < kappas.size(); ++i) values[i] = objective(kappas[i]);

  const std::size_t last = kappas.size() - 1;
  OptimizationResult best;
  best.objective = std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;
  int total_iterations = static_cast<int>(kappas.size());

  for (std::size_t i = 0; i <= last; ++i) {
    const bool left_ok = i == 0 || values[i] < values[i - 1];
    const bool right_ok = i == last || values[i] <= values[i + 1];
    if (!left_ok || !right_ok) continue;
    const double lo = kappas[i == 0 ? 0 : i - 1];
    const double hi = kappas[i == last ? last : i + 1];
    OptimizationResult refined =
        golden_section_minimize(objective, lo, hi, kKappaTol * std::max(1.0, kappas[i]));
    total_iterations += refined.iterations;
    if (refined.objective < best.objective) {
      best = refined;
      best_index = i;
    }
  }
  best.iterations = total_iterations;
  if (best_index == 0 || best_index == last) {
    best.converged = false;
    best.diagnostic = "optimum lies on the boundary of the kappa search range";
  }
  return best;
}

std::vector<double> interval_points(double x_lo, double x_hi) {
  std::vector<double> xs(kIntervalPoints);
  const double ratio = std::log(x_hi / x_lo);
  for (int i = 0; i < kIntervalPoints; ++i)
    xs[i] = x_lo * std::exp(ratio * i / (kIntervalPoints - 1));
  xs.back() = x_hi;
  return xs;
}

void require_positive_x(const char* what, double x) {
  if (!std::isfinite(x) || x < 0.0)
    throw std::domain_error(std::string(what) + ": x must be finite and > 0");
  if (x == 0.0)
    throw std::domain_error(std::string(what) +
                            ": at x = 0 the supremum 1/2 is only approached as kappa -> inf");
}

}  // namespace

OptimizationResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                           double hi, double tol, int max_iterations) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int iter = 0;
  while (b - a > tol && iter < max_iterations) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++iter;
  }
  OptimizationResult result;
  result.argument = 0.5 * (a + b);
  result.objective = f(result.argument);
  result.iterations = iter;
  result.converged = b - a <= tol;
  if (!result.converged) result.diagnostic = "iteration limit reached";
  return result;
}

double relative_gap(double x, const KappaParam& k) {
  return -std::expm1(log_g_lower(x, k) - log_q(x));
}

OptimizationResult kappa_star(double x) {
  require_positive_x("kappa_star", x);
  const double half_x2 = 0.5 * x * x;
  OptimizationResult result = minimize_over_kappa([half_x2](double kappa) {
    return -(log_alpha_coeff(KappaParam(kappa)) - kappa * half_x2);
  });
  const KappaParam k(result.argument);
  result.objective = g_lower(x, k);
  result.gap = relative_gap(x, k);
  return result;
}

OptimizationResult max_weight(const KappaParam& k) {
  k.require_strict("max_weight");
  const double kappa = k.kappa();
  const double x1 = x1_point(k);
  // d/dx [ln Q + k x^2 / 2] = k x - 1/R(x) changes sign once, on (0, x1].
  OptimizationResult result = golden_section_minimize(
      [kappa](double x) { return log_q(x) + 0.5 * kappa * x * x; }, 0.0, x1, 1e-10 * x1);
  result.objective = std::exp(result.objective);
  const double alpha = alpha_coeff(k);
  if (result.objective < alpha * (1.0 - 1e-12)) {
    throw std::logic_error("max_weight: admissible weight " + std::to_string(result.objective) +
                           " is below alpha(kappa) = " + std::to_string(alpha) +
                           "; the lower bound would be violated");
  }
  result.gap = 1.0 - alpha / result.objective;
  return result;
}

double interval_max_gap(double x_lo, double x_hi, const KappaParam& k) {
  double worst = -std::numeric_limits<double>::infinity();
  for (double x : interval_points(x_lo, x_hi)) worst = std::max(worst, relative_gap(x, k));
  return worst;
}

OptimizationResult interval_kappa(double x_lo, double x_hi) {
  require_positive_x("interval_kappa", x_lo);
  if (!std::isfinite(x_hi) || x_hi < x_lo)
    throw std::domain_error("interval_kappa: need 0 < x_lo <= x_hi");
  if (x_lo == x_hi) return kappa_star(x_lo);

  const std::vector<double> xs = interval_points(x_lo, x_hi);
  std::vector<double> log_qs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) log_qs[i] = log_q(xs[i]);
  auto worst_gap = [&xs, &log_qs](double kappa) {
    const KappaParam k(kappa);
    const double log_alpha = log_alpha_coeff(k);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double log_g = log_alpha - 0.5 * kappa * xs[i] * xs[i];
      worst = std::max(worst, -std::expm1(log_g - log_qs[i]));
    }
    return worst;
  };
  OptimizationResult result = minimize_over_kappa(worst_gap);
  result.gap = result.objective;
  return result;
}

}  // namespace qbound
