#pragma once

// Grid-based certification of the lower bound and of every auxiliary
// inequality and identity used to establish it. Suites are deterministic and
// side-effect free; each returns a report with the worst point found.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbound/bounds.hpp"

namespace qbound {

/// Raised for malformed grids or options (as opposed to domain errors of the
/// underlying functions).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Spacing : std::uint8_t { linear, log };

struct EvaluationGrid {
  double x_min = -10.0;
  double x_max = 10.0;
  int x_count = 2001;
  Spacing spacing = Spacing::linear;
  std::vector<double> kappas = {1.0, 1.001, 1.01, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0, 100.0};

  /// x in [-10, 10] (step 0.01) with the standard kappa set.
  static EvaluationGrid standard();
  /// Nonnegative half of standard() with kappa = 1 removed, for suites that
  /// need x >= 0 and kappa > 1.
  static EvaluationGrid standard_positive();
  /// x in [0, 10] with 10^4 points.
  static EvaluationGrid chernoff_default();

  /// Throws UsageError if the grid is malformed.
  void validate() const;
  /// The x samples; endpoints are reproduced exactly.
  std::vector<double> points() const;
};

/// The kappa set of EvaluationGrid::standard() without kappa = 1.
std::vector<double> standard_strict_kappas();

struct GridPoint {
  double x = 0.0;
  double kappa = 0.0;
};

/// Outcome of one named check. The violation measure is signed: negative
/// values are margins, positive values are violations, and
/// passed == (worst_violation <= tolerance).
struct CheckResult {
  std::string name;
  std::size_t points_checked = 0;
  double worst_violation = 0.0;
  GridPoint worst_point;
  double lhs = 0.0;  ///< the two sides compared at worst_point
  double rhs = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

/// Summary of a suite. The headline fields mirror the check with the largest
/// excess worst_violation - tolerance, so passed is true exactly when every
/// check passed.
struct VerificationReport {
  std::string suite;
  std::size_t points_checked = 0;
  double worst_violation = 0.0;
  GridPoint worst_point;
  double tolerance = 0.0;
  bool passed = true;
  std::vector<CheckResult> checks;
};

struct VerifyOptions {
  double inequality_tolerance = 1e-13;  ///< relative slack for inequalities
  double equality_tolerance = 1e-10;    ///< absolute, endpoint equalities
  double fd_tolerance = 1e-6;           ///< finite-difference matching
  /// Multiplies alpha(kappa) in the theorem suite. Anything but 1 corrupts the
  /// bound; used to confirm that violations are detected.
  double weight_scale = 1.0;
};

/// g(x, k) <= Q(x) (1 + tol) at every grid point, including negative x.
/// Violation measure: (g - Q) / Q.
VerificationReport verify_theorem(const EvaluationGrid& grid, const VerifyOptions& options = {});

/// Sign pattern of k x r(x, k) - 1 on [0, x1), [x1, x2] and (x2, 10 x2];
/// endpoint equalities; x1 < 1/sqrt(k - 1) < x2; sign agreement with the
/// crossing condition. Samples are placed relative to x1 and x2, so they
/// follow the crossing points however far out they move as k -> 1.
VerificationReport verify_lemma1(const KappaParam& k, int points_per_region,
                                 const VerifyOptions& options = {});

/// k x R(x) >= 1 and the Boyd sufficient condition on [x1, x_hi] (log
/// spaced), Boyd's bound itself, sharpness of the Boyd condition at x1 and
/// f(x1) <= 0.
VerificationReport verify_lemma2(const KappaParam& k, double x_hi, int count,
                                 const VerifyOptions& options = {});

/// Closed-form df/dx against central differences of f (one-sided second
/// order where x < h). Tolerance is relative to max(1, |df/dx|).
VerificationReport verify_derivative(const EvaluationGrid& grid, double h_step,
                                     const VerifyOptions& options = {});

/// Q(x) <= e^{-x^2/2} / 2 (1 + tol); grid must satisfy x_min >= 0.
VerificationReport verify_chernoff(const EvaluationGrid& grid, const VerifyOptions& options = {});

/// f <= 0 separately on [0, x1], [x1, x2] and [x2, 10 x2].
VerificationReport verify_cases(const KappaParam& k, int points_per_region,
                                const VerifyOptions& options = {});

}  // namespace qbound
