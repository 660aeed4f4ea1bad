#pragma once

// The one-parameter Gaussian lower-bound family for Q,
//
//   g(x, k) = alpha(k) e^{-k x^2 / 2},
//   alpha(k) = e^{1/c} / (2k) * sqrt((k - 1) c / pi),  c = pi (k - 1) + 2,
//
// valid for every k >= 1, plus the auxiliary functions used to certify it:
// the scaled bound r, the difference f = r - R, the two crossing points of
// k x r(x, k) = 1, Boyd's Mills-ratio bound and the Chernoff upper bound.

#include <cstdint>

namespace qbound {

/// The order parameter k of the bound family; always k >= 1.
class KappaParam {
 public:
  /// Throws std::domain_error unless kappa is finite and >= 1.
  explicit KappaParam(double kappa);

  double kappa() const noexcept { return kappa_; }
  double kappa_minus_1() const noexcept { return kappa_minus_1_; }
  /// c = pi (k - 1) + 2.
  double c() const noexcept { return c_; }

  /// 1 / sqrt(k - 1); infinite at k = 1.
  double pivot() const noexcept;

  /// Throws std::domain_error when k == 1. Operations defined only for k > 1
  /// call this first.
  void require_strict(const char* operation) const;

 private:
  double kappa_;
  double kappa_minus_1_;
  double c_;
};

enum class BoundSide : std::uint8_t { lower, upper };

/// A bound of the form weight * e^{-order x^2}.
struct GaussianBoundSpec {
  double weight;
  double order;
  BoundSide side;

  double operator()(double x) const;
};

/// Member of the lower-bound family with weight alpha(k) and order k/2.
GaussianBoundSpec lower_bound_spec(const KappaParam& k);
/// The tightest Chernoff-type upper bound, weight = order = 1/2.
GaussianBoundSpec chernoff_spec();

/// Pair of points where k x r(x, k) = 1, with their preimages w = x^2 (1 - k)
/// on the two monotone pieces of w e^w.
struct CriticalPoints {
  double x1;
  double x2;
  double w1;
  double w2;
  double pivot;
};

double alpha_coeff(const KappaParam& k);
/// ln alpha(k); -inf at k = 1.
double log_alpha_coeff(const KappaParam& k);

/// g(x, k); exactly 0 at k = 1.
double g_lower(double x, const KappaParam& k);
/// ln g(x, k).
double log_g_lower(double x, const KappaParam& k);

/// r(x, k) = sqrt(2 pi) g(x, k) e^{x^2/2}, in the collapsed form
/// sqrt(2 pi) alpha(k) e^{-(k-1) x^2 / 2}. Requires k > 1.
double r_scaled(double x, const KappaParam& k);

/// f(x, k) = r(x, k) - R(x). The bound is equivalent to f <= 0 on x >= 0.
double f_diff(double x, const KappaParam& k);

/// Smaller crossing point, sqrt(2) / sqrt((k - 1) c).
double x1_point(const KappaParam& k);

/// Larger crossing point, x1 sqrt(w2 / w1) with w2 = W-1(crossing_level).
/// The ratio is refined by Newton's method on an equivalent equation that
/// stays well conditioned as k -> 1.
double x2_point(const KappaParam& k);

CriticalPoints critical_points(const KappaParam& k);

/// The right-hand side z = (-2/c) e^{-2/c} of the crossing condition.
double crossing_level(const KappaParam& k);

/// x^2 (1-k) e^{x^2 (1-k)} - z. Nonpositive exactly on [x1, x2].
double crossing_condition(double x, const KappaParam& k);

/// k x r(x, k) - 1. Nonnegative exactly on [x1, x2].
double lemma1_relation(double x, const KappaParam& k);

/// Closed form of df/dx: x f(x, k) + 1 - k x r(x, k).
double df_dx_identity(double x, const KappaParam& k);

/// pi / ((pi - 1) x + sqrt(x^2 + 2 pi)), a lower bound on R(x) for x >= 0.
double boyd_lower(double x);

/// pi k x / ((pi - 1) x + sqrt(x^2 + 2 pi)). Where this is >= 1, Boyd's bound
/// implies k x R(x) >= 1.
double boyd_condition(double x, const KappaParam& k);

/// The x at which boyd_condition equals 1, solved from the Boyd form
/// directly: sqrt(2 pi / ((a - 1)(a + 1))) with a = pi (k - 1) + 1.
double boyd_threshold(const KappaParam& k);

/// e^{-x^2/2} / 2 for x >= 0.
double chernoff_upper(double x);

}  // namespace qbound
