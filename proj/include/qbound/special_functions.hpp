#pragma once

// Gaussian tail function, its scaled Mills-type ratio and both real branches
// of the Lambert W function. Every routine is a pure function of its
// arguments and throws std::domain_error outside its domain.

#include <cstdint>

namespace qbound {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrtTwoPi = 2.506628274631000502415765284811045253;
inline constexpr double kInvSqrtTwoPi = 0.398942280401432677939946059934381868;
inline constexpr double kSqrtHalfPi = 1.253314137315500251207882642405522627;
inline constexpr double kInvE = 0.367879441171442321595523770161460867;

/// The two real branches of W, the inverse of w -> w e^w.
enum class LambertBranch : std::uint8_t {
  principal,  ///< W0 on [-1/e, inf), values >= -1
  negative,   ///< W-1 on [-1/e, 0), values <= -1
};

/// Q(x) together with a bound on its relative error.
struct QValue {
  double value;
  double accuracy;
};

/// Upper tail of the standard normal distribution, P(Z > x).
///
/// Evaluated as R(|x|) e^{-x^2/2} / sqrt(2 pi) with the exponent formed from
/// an exact square; negative arguments go through Q(x) = 1 - Q(-x). The
/// returned accuracy is 1e-14 while Q(x) is a normal double (|x| <~ 37.5).
/// Past that point the result is subnormal and only absolutely accurate.
QValue q_ref(double x);

/// Convenience for q_ref(x).value.
double q_function(double x);

/// ln Q(x) for x >= 0, finite for every finite x (no underflow).
double log_q(double x);

/// R(x) = sqrt(2 pi) Q(x) e^{x^2/2}, evaluated without forming e^{x^2/2}.
///
/// Uses a rational Chebyshev approximation of the scaled complementary error
/// function below x = 4 and the Laplace continued fraction
/// 1/(x + 1/(x + 2/(x + 3/(x + ...)))) above it.
double mills_ratio(double x);

/// h(w) = w e^w on w <= 0.
double h(double w);

/// Real Lambert W. Halley (or log-space Newton) iteration from
/// branch-specific starting points; the square-root expansion around
/// z = -1/e is used directly next to the branch point.
double lambert_w(double z, LambertBranch branch);

namespace detail {

/// e^{-x^2/2} with x^2 split into an exact hi + lo pair.
double exp_neg_half_square(double x);

/// Laplace continued fraction for R(x); valid for x > 0, fast for x >= 4.
double mills_continued_fraction(double x);

/// e^{x^2} erfc(x) for 0 <= x <= 4 (Cody's rational approximations).
double erfcx_small(double x);

}  // namespace detail

}  // namespace qbound
