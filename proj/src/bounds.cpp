#include "qbound/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qbound/special_functions.hpp"

namespace qbound {

namespace {

[[noreturn]] void domain_failure(const char* what, const std::string& detail) {
  throw std::domain_error(std::string(what) + ": " + detail);
}

void require_nonnegative(const char* what, double x) {
  if (!std::isfinite(x) || x < 0.0)
    domain_failure(what, "x = " + std::to_string(x) + " must be finite and >= 0");
}

}  // namespace

KappaParam::KappaParam(double kappa)
    : kappa_(kappa), kappa_minus_1_(kappa - 1.0), c_(kPi * (kappa - 1.0) + 2.0) {
  if (!std::isfinite(kappa) || kappa < 1.0)
    domain_failure("KappaParam", "kappa = " + std::to_string(kappa) + " must be finite and >= 1");
}

double KappaParam::pivot() const noexcept {
  return kappa_minus_1_ == 0.0 ? std::numeric_limits<double>::infinity()
                               : 1.0 / std::sqrt(kappa_minus_1_);
}

void KappaParam::require_strict(const char* operation) const {
  if (kappa_minus_1_ <= 0.0) domain_failure(operation, "requires kappa > 1");
}

double GaussianBoundSpec::operator()(double x) const {
  if (weight == 0.0) return 0.0;
  return weight * std::exp(-order * x * x);
}

GaussianBoundSpec lower_bound_spec(const KappaParam& k) {
  return {alpha_coeff(k), 0.5 * k.kappa(), BoundSide::lower};
}

GaussianBoundSpec chernoff_spec() { return {0.5, 0.5, BoundSide::upper}; }

double alpha_coeff(const KappaParam& k) {
  const double c = k.c();
  return std::exp(1.0 / c) / (2.0 * k.kappa()) * std::sqrt(k.kappa_minus_1() * c / kPi);
}

double log_alpha_coeff(const KappaParam& k) {
  if (k.kappa_minus_1() == 0.0) return -std::numeric_limits<double>::infinity();
  const double c = k.c();
  return 1.0 / c - std::log(2.0 * k.kappa()) +
         0.5 * (std::log(k.kappa_minus_1()) + std::log(c) - std::log(kPi));
}

double g_lower(double x, const KappaParam& k) {
  if (!std::isfinite(x)) domain_failure("g_lower", "x must be finite");
  if (k.kappa_minus_1() == 0.0) return 0.0;
  return alpha_coeff(k) * std::exp(-0.5 * k.kappa() * x * x);
}

double log_g_lower(double x, const KappaParam& k) {
  if (!std::isfinite(x)) domain_failure("log_g_lower", "x must be finite");
  return log_alpha_coeff(k) - 0.5 * k.kappa() * x * x;
}

double r_scaled(double x, const KappaParam& k) {
  require_nonnegative("r_scaled", x);
  k.require_strict("r_scaled");
  return kSqrtTwoPi * alpha_coeff(k) * std::exp(-0.5 * k.kappa_minus_1() * x * x);
}

double f_diff(double x, const KappaParam& k) { return r_scaled(x, k) - mills_ratio(x); }

double x1_point(const KappaParam& k) {
  k.require_strict("x1_point");
  return std::sqrt(2.0) / std::sqrt(k.kappa_minus_1() * k.c());
}

double crossing_level(const KappaParam& k) {
  k.require_strict("crossing_level");
  const double w1 = -2.0 / k.c();
  return w1 * std::exp(w1);
}

double crossing_condition(double x, const KappaParam& k) {
  require_nonnegative("crossing_condition", x);
  const double z = crossing_level(k);
  const double u = -x * x * k.kappa_minus_1();
  return u * std::exp(u) - z;
}

double x2_point(const KappaParam& k) {
  k.require_strict("x2_point");
  // With a = 2/c the two preimages satisfy w1 = -a and ln(w2/w1) = w2 - w1,
  // so s = w2/w1 - 1 > 0 solves log1p(s)/s = a. Writing a = 1 - delta with
  // delta = pi (k - 1) / c keeps this well conditioned as k -> 1, where the
  // Lambert argument itself sits within rounding of -1/e.
  const double delta = kPi * k.kappa_minus_1() / k.c();
  double s;
  if (delta < 0.05) {
    s = 2.0 * delta + (8.0 / 3.0) * delta * delta;
  } else {
    const double w1 = -2.0 / k.c();
    s = lambert_w(crossing_level(k), LambertBranch::negative) / w1 - 1.0;
  }
  for (int iter = 0; iter < 60; ++iter) {
    double g;
    double dg;
    if (s < 1e-3) {
      g = s * (-0.5 + s * (1.0 / 3.0 + s * (-0.25 + s * (0.2 - s / 6.0)))) + delta;
      dg = -0.5 + s * (2.0 / 3.0 + s * (-0.75 + s * (0.8 - s * 5.0 / 6.0)));
    } else {
      const double l = std::log1p(s);
      g = (l / s - 1.0) + delta;
      dg = (s / (1.0 + s) - l) / (s * s);
    }
    const double ds = g / dg;
    s -= ds;
    if (std::abs(ds) <= 2.0 * std::numeric_limits<double>::epsilon() * s) break;
  }
  return x1_point(k) * std::sqrt(1.0 + s);
}

CriticalPoints critical_points(const KappaParam& k) {
  const double x1 = x1_point(k);
  const double x2 = x2_point(k);
  return {x1, x2, -2.0 / k.c(), -x2 * x2 * k.kappa_minus_1(), k.pivot()};
}

double lemma1_relation(double x, const KappaParam& k) {
  return k.kappa() * x * r_scaled(x, k) - 1.0;
}

double df_dx_identity(double x, const KappaParam& k) {
  const double r = r_scaled(x, k);
  const double f = r - mills_ratio(x);
  return x * f + 1.0 - k.kappa() * x * r;
}

double boyd_lower(double x) {
  require_nonnegative("boyd_lower", x);
  return kPi / ((kPi - 1.0) * x + std::sqrt(x * x + 2.0 * kPi));
}

double boyd_condition(double x, const KappaParam& k) {
  require_nonnegative("boyd_condition", x);
  return kPi * k.kappa() * x / ((kPi - 1.0) * x + std::sqrt(x * x + 2.0 * kPi));
}

double boyd_threshold(const KappaParam& k) {
  k.require_strict("boyd_threshold");
  // pi k x = (pi - 1) x + sqrt(x^2 + 2 pi)  <=>  x^2 (a^2 - 1) = 2 pi.
  const double a_minus_1 = kPi * k.kappa_minus_1();
  return std::sqrt(2.0 * kPi / (a_minus_1 * (a_minus_1 + 2.0)));
}

double chernoff_upper(double x) {
  require_nonnegative("chernoff_upper", x);
  return 0.5 * detail::exp_neg_half_square(x);
}

}  // namespace qbound
