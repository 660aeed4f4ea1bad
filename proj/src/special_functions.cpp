#include "qbound/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qbound {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kE = 2.718281828459045235360287471352662498;

// 1/e = kInvEHi + kInvELo to ~32 digits; kInvEHi is the double nearest 1/e,
// which is slightly larger than 1/e.
constexpr double kInvEHi = 0.36787944117144233;
constexpr double kInvELo = -1.2428753672788363168e-17;

// Below this distance from the branch point the square-root expansion is
// returned as is (its first omitted term is below 1e-21).
constexpr double kBranchSeriesCutoff = 1e-3;

// Mills ratio switches from the rational erfcx form to the continued fraction.
constexpr double kContinuedFractionThreshold = 4.0;

constexpr double kSqrt2 = 1.414213562373095048801688724209698079;

[[noreturn]] void domain_failure(const char* what, double arg) {
  throw std::domain_error(std::string(what) + ": argument " + std::to_string(arg) +
                          " is outside the domain");
}

// W(z) = -1 + p - p^2/3 + 11/72 p^3 - ... with p = +-sqrt(2 (e z + 1)).
double branch_point_series(double p) {
  static constexpr std::array<double, 7> kCoeff = {
      -1.0,
      1.0,
      -1.0 / 3.0,
      11.0 / 72.0,
      -43.0 / 540.0,
      769.0 / 17280.0,
      -221.0 / 8505.0,
  };
  double acc = kCoeff.back();
  for (auto it = kCoeff.rbegin() + 1; it != kCoeff.rend(); ++it) acc = acc * p + *it;
  return acc;
}

// Halley's method on w e^w - z. Used where |w| is moderate so e^w is safe.
double halley_direct(double z, double w) {
  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    if (f == 0.0 || wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double dw = f / denom;
    w -= dw;
    if (std::abs(dw) <= 4.0 * kEps * std::abs(w)) break;
  }
  return w;
}

// Halley's method on F(w) = w + ln|w| - ln|z|, which has the same root as
// w e^w = z but never overflows. Only used when |w| > 1 away from the branch
// point, where F' = 1 + 1/w stays bounded away from zero.
double halley_log(double log_abs_z, double w) {
  for (int iter = 0; iter < 64; ++iter) {
    const double f = w + std::log(std::abs(w)) - log_abs_z;
    const double fp = 1.0 + 1.0 / w;
    const double fpp = -1.0 / (w * w);
    const double newton = f / fp;
    const double dw = newton / (1.0 - 0.5 * newton * fpp / fp);
    w -= dw;
    if (std::abs(dw) <= 2.0 * kEps * std::abs(w)) break;
  }
  return w;
}

// Asymptotic start L1 - L2 + L2/L1 shared by both branches far from zero.
double asymptotic_guess(double l1, double l2) { return l1 - l2 + l2 / l1; }

}  // namespace

namespace detail {

double exp_neg_half_square(double x) {
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  return std::exp(-0.5 * hi) * std::exp(-0.5 * lo);
}

double mills_continued_fraction(double x) {
  // Depth chosen so the tail is below 1e-18 relative for x >= 4.
  const int depth = static_cast<int>(std::ceil(160.0 / x)) + 8;
  double t = x;
  for (int n = depth; n >= 1; --n) t = x + n / t;
  return 1.0 / t;
}

double erfcx_small(double y) {
  // W. J. Cody, Rational Chebyshev approximations for the error function,
  // Math. Comp. 23 (1969); coefficient sets for |y| <= 0.46875 and
  // 0.46875 < y <= 4.
  static constexpr std::array<double, 5> a = {3.1611237438705656, 113.864154151050156,
                                              377.485237685302021, 3209.37758913846947,
                                              0.185777706184603153};
  static constexpr std::array<double, 4> b = {23.6012909523441209, 244.024637934444173,
                                              1282.61652607737228, 2844.23683343917062};
  static constexpr std::array<double, 9> c = {
      0.564188496988670089, 8.88314979438837594, 66.1191906371416295,
      298.635138197400131,  881.95222124176909,  1712.04761263407058,
      2051.07837782607147,  1230.33935479799725, 2.15311535474403846e-8};
  static constexpr std::array<double, 8> d = {
      15.7449261107098347, 117.693950891312499, 537.181101862009858, 1621.38957456669019,
      3290.79923573345963, 4362.61909014324716, 3439.36767414372164, 1230.33935480374942};

  if (y <= 0.46875) {
    const double ysq = y * y;
    double num = a[4] * ysq;
    double den = ysq;
    for (int i = 0; i < 3; ++i) {
      num = (num + a[i]) * ysq;
      den = (den + b[i]) * ysq;
    }
    const double erf = y * (num + a[3]) / (den + b[3]);
    return std::exp(ysq) * (1.0 - erf);
  }
  double num = c[8] * y;
  double den = y;
  for (int i = 0; i < 7; ++i) {
    num = (num + c[i]) * y;
    den = (den + d[i]) * y;
  }
  return (num + c[7]) / (den + d[7]);
}

}  // namespace detail

double mills_ratio(double x) {
  if (!std::isfinite(x) || x < 0.0) domain_failure("mills_ratio", x);
  if (x >= kContinuedFractionThreshold) return detail::mills_continued_fraction(x);
  return kSqrtHalfPi * detail::erfcx_small(x / kSqrt2);
}

QValue q_ref(double x) {
  if (!std::isfinite(x)) domain_failure("q_ref", x);
  if (x == 0.0) return {0.5, 0.0};
  if (x < 0.0) {
    const double upper = q_ref(-x).value;
    return {1.0 - upper, 1e-14};
  }
  const double value = mills_ratio(x) * detail::exp_neg_half_square(x) * kInvSqrtTwoPi;
  double accuracy = 1e-14;
  if (value == 0.0) {
    accuracy = std::numeric_limits<double>::infinity();
  } else if (value < std::numeric_limits<double>::min()) {
    accuracy += std::numeric_limits<double>::denorm_min() / value;
  }
  return {value, accuracy};
}

double q_function(double x) { return q_ref(x).value; }

double log_q(double x) {
  if (!std::isfinite(x)) domain_failure("log_q", x);
  if (x < 0.0) return std::log1p(-q_function(-x));
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  return std::log(mills_ratio(x)) - std::log(kSqrtTwoPi) - 0.5 * hi - 0.5 * lo;
}

double h(double w) {
  if (!(w <= 0.0)) domain_failure("h", w);
  if (w == -std::numeric_limits<double>::infinity()) return -0.0;
  return w * std::exp(w);
}

double lambert_w(double z, LambertBranch branch) {
  if (!std::isfinite(z) || z < -kInvEHi) domain_failure("lambert_w", z);
  if (branch == LambertBranch::negative && z >= 0.0) domain_failure("lambert_w", z);

  // Distance to the branch point, z + 1/e, with 1/e carried in two parts.
  const double dist = (z + kInvEHi) + kInvELo;
  if (dist <= 0.0) return -1.0;

  const double sign = branch == LambertBranch::principal ? 1.0 : -1.0;
  const double p = sign * std::sqrt(2.0 * kE * dist);
  if (std::abs(p) < kBranchSeriesCutoff) return branch_point_series(p);

  if (branch == LambertBranch::principal) {
    if (z == 0.0) return z;
    if (z > kE) {
      const double l1 = std::log(z);
      return halley_log(l1, asymptotic_guess(l1, std::log(l1)));
    }
    double guess;
    if (dist < 0.25) {
      guess = branch_point_series(p);
    } else if (std::abs(z) <= 0.1) {
      guess = z * (1.0 - z * (1.0 - 1.5 * z));
    } else {
      const double l = std::log1p(z);
      guess = l * (1.0 - std::log1p(l) / (2.0 + l));
    }
    return halley_direct(z, guess);
  }

  if (z > -0.1) {
    const double l1 = std::log(-z);
    return halley_log(l1, asymptotic_guess(l1, std::log(-l1)));
  }
  return halley_direct(z, branch_point_series(p));
}

}  // namespace qbound
