#include "qbound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "qbound/special_functions.hpp"

namespace qbound {

namespace {

// A check with this tolerance passes only for strictly negative violations.
constexpr double kStrict = -std::numeric_limits<double>::denorm_min();

class CheckAccumulator {
 public:
  CheckAccumulator(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
    result_.worst_violation = -std::numeric_limits<double>::infinity();
  }

  void add(double violation, double x, double kappa, double lhs, double rhs) {
    ++result_.points_checked;
    // NaN counts as a violation.
    if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
    if (violation > result_.worst_violation || result_.points_checked == 1) {
      result_.worst_violation = violation;
      result_.worst_point = {x, kappa};
      result_.lhs = lhs;
      result_.rhs = rhs;
    }
  }

  CheckResult finish() {
    result_.passed = result_.worst_violation <= result_.tolerance;
    return std::move(result_);
  }

 private:
  CheckResult result_;
};

VerificationReport summarize(std::string suite, std::vector<CheckResult> checks) {
  VerificationReport report;
  report.suite = std::move(suite);
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (const CheckResult& check : checks) {
    report.points_checked += check.points_checked;
    const double excess = check.worst_violation - check.tolerance;
    if (excess > worst_excess || &check == &checks.front()) {
      worst_excess = excess;
      report.worst_violation = check.worst_violation;
      report.worst_point = check.worst_point;
      report.tolerance = check.tolerance;
    }
    report.passed = report.passed && check.passed;
  }
  report.checks = std::move(checks);
  return report;
}

// Relative excess (lhs - rhs) / rhs of an inequality lhs <= rhs with rhs >= 0.
double relative_excess(double lhs, double rhs) {
  if (rhs == 0.0) return lhs > 0.0 ? std::numeric_limits<double>::infinity() : -1.0;
  return (lhs - rhs) / rhs;
}

std::vector<KappaParam> strict_kappas(const EvaluationGrid& grid, const char* suite) {
  std::vector<KappaParam> out;
  for (double kappa : grid.kappas) {
    if (!(kappa > 1.0))
      throw UsageError(std::string(suite) + ": every kappa must be > 1, got " +
                       std::to_string(kappa));
    out.emplace_back(kappa);
  }
  return out;
}

void require_nonnegative_grid(const EvaluationGrid& grid, const char* suite) {
  if (grid.x_min < 0.0)
    throw UsageError(std::string(suite) + ": grid must satisfy x_min >= 0");
}

}  // namespace

EvaluationGrid EvaluationGrid::standard() { return {}; }

EvaluationGrid EvaluationGrid::standard_positive() {
  EvaluationGrid grid;
  grid.x_min = 0.0;
  grid.x_max = 10.0;
  grid.x_count = 1001;
  grid.kappas = standard_strict_kappas();
  return grid;
}

EvaluationGrid EvaluationGrid::chernoff_default() {
  EvaluationGrid grid;
  grid.x_min = 0.0;
  grid.x_max = 10.0;
  grid.x_count = 10000;
  grid.kappas = {1.0};
  return grid;
}

std::vector<double> standard_strict_kappas() {
  std::vector<double> kappas = EvaluationGrid{}.kappas;
  std::erase_if(kappas, [](double k) { return k <= 1.0; });
  return kappas;
}

void EvaluationGrid::validate() const {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max))
    throw UsageError("grid: need finite x_min < x_max");
  if (x_count < 2) throw UsageError("grid: x_count must be >= 2");
  if (spacing == Spacing::log && !(x_min > 0.0))
    throw UsageError("grid: log spacing requires x_min > 0");
  if (kappas.empty()) throw UsageError("grid: at least one kappa is required");
  for (double kappa : kappas) {
    if (!std::isfinite(kappa) || kappa < 1.0)
      throw UsageError("grid: kappa " + std::to_string(kappa) + " must be finite and >= 1");
  }
}

std::vector<double> EvaluationGrid::points() const {
  validate();
  std::vector<double> xs(static_cast<std::size_t>(x_count));
  const double last = static_cast<double>(x_count - 1);
  if (spacing == Spacing::linear) {
    for (int i = 0; i < x_count; ++i) xs[i] = x_min + (x_max - x_min) * (i / last);
  } else {
    const double lo = std::log(x_min);
    const double hi = std::log(x_max);
    for (int i = 0; i < x_count; ++i) xs[i] = std::exp(lo + (hi - lo) * (i / last));
  }
  xs.front() = x_min;
  xs.back() = x_max;
  return xs;
}

VerificationReport verify_theorem(const EvaluationGrid& grid, const VerifyOptions& options) {
  const std::vector<double> xs = grid.points();
  CheckAccumulator check("g_lower <= q_ref", options.inequality_tolerance);
  for (double x : xs) {
    const double q = q_function(x);
    for (double kappa : grid.kappas) {
      const double g = options.weight_scale * g_lower(x, KappaParam(kappa));
      check.add(relative_excess(g, q), x, kappa, g, q);
    }
  }
  return summarize("theorem", {check.finish()});
}

VerificationReport verify_lemma1(const KappaParam& k, int points_per_region,
                                 const VerifyOptions& options) {
  k.require_strict("verify_lemma1");
  if (points_per_region < 1) throw UsageError("verify_lemma1: points_per_region must be >= 1");
  const double kappa = k.kappa();
  const CriticalPoints cp = critical_points(k);
  const double n = points_per_region;

  CheckAccumulator ordering("x1 < 1/sqrt(k-1) < x2", kStrict);
  ordering.add(std::max(cp.x1 - cp.pivot, cp.pivot - cp.x2) / cp.pivot, cp.pivot, kappa, cp.x1,
               cp.x2);

  CheckAccumulator endpoints("k x r(x,k) = 1 at x1 and x2", options.equality_tolerance);
  for (double x : {cp.x1, cp.x2}) {
    const double rel = lemma1_relation(x, k);
    endpoints.add(std::abs(rel), x, kappa, rel + 1.0, 1.0);
  }

  CheckAccumulator crossing("crossing condition = 0 at x1 and x2", options.equality_tolerance);
  for (double x : {cp.x1, cp.x2}) {
    const double res = crossing_condition(x, k);
    crossing.add(std::abs(res), x, kappa, res + crossing_level(k), crossing_level(k));
  }

  CheckAccumulator below("k x r < 1 on [0, x1)", kStrict);
  CheckAccumulator between("k x r >= 1 on (x1, x2)", 0.0);
  CheckAccumulator above("k x r < 1 on (x2, 10 x2]", kStrict);
  CheckAccumulator agreement("sign agrees with crossing condition", 0.0);

  auto sample = [&](CheckAccumulator& region, double x, bool inside) {
    const double rel = lemma1_relation(x, k);
    region.add(inside ? -rel : rel, x, kappa, rel + 1.0, 1.0);
    const double cross = crossing_condition(x, k);
    const bool agree = (rel > 0.0 && cross < 0.0) || (rel < 0.0 && cross > 0.0);
    agreement.add(agree ? -1.0 : 1.0, x, kappa, rel, cross);
  };
  for (int i = 0; i < points_per_region; ++i) {
    sample(below, cp.x1 * (i / n), false);
    sample(between, cp.x1 + (cp.x2 - cp.x1) * ((i + 0.5) / n), true);
    sample(above, cp.x2 + 9.0 * cp.x2 * ((i + 1) / n), false);
  }

  return summarize("lemma1", {ordering.finish(), endpoints.finish(), crossing.finish(),
                              below.finish(), between.finish(), above.finish(),
                              agreement.finish()});
}

VerificationReport verify_lemma2(const KappaParam& k, double x_hi, int count,
                                 const VerifyOptions& options) {
  k.require_strict("verify_lemma2");
  const double kappa = k.kappa();
  const double x1 = x1_point(k);
  if (!std::isfinite(x_hi) || !(x_hi > x1))
    throw UsageError("verify_lemma2: x_hi must exceed x1 = " + std::to_string(x1));
  if (count < 2) throw UsageError("verify_lemma2: count must be >= 2");
  const double tol = options.inequality_tolerance;

  EvaluationGrid grid;
  grid.x_min = x1;
  grid.x_max = x_hi;
  grid.x_count = count;
  grid.spacing = Spacing::log;
  grid.kappas = {kappa};

  CheckAccumulator lemma("k x R(x) >= 1 on [x1, x_hi]", tol);
  CheckAccumulator boyd_sufficient("Boyd condition >= 1 on [x1, x_hi]", tol);
  CheckAccumulator boyd_bound("Boyd bound <= R(x)", tol);
  for (double x : grid.points()) {
    const double big_r = mills_ratio(x);
    const double kxr = kappa * x * big_r;
    lemma.add(1.0 - kxr, x, kappa, kxr, 1.0);
    const double cond = boyd_condition(x, k);
    boyd_sufficient.add(1.0 - cond, x, kappa, cond, 1.0);
    const double boyd = boyd_lower(x);
    boyd_bound.add(relative_excess(boyd, big_r), x, kappa, boyd, big_r);
  }

  CheckAccumulator sharp("Boyd condition < 1 just below x1", kStrict);
  const double below = x1 * (1.0 - 1e-6);
  const double cond_below = boyd_condition(below, k);
  sharp.add(cond_below - 1.0, below, kappa, cond_below, 1.0);

  CheckAccumulator threshold("Boyd threshold equals x1", 1e-14);
  const double t = boyd_threshold(k);
  threshold.add(std::abs(t - x1) / x1, x1, kappa, t, x1);

  CheckAccumulator f_at_x1("f(x1) <= 0", tol);
  const double r1 = r_scaled(x1, k);
  const double big_r1 = mills_ratio(x1);
  f_at_x1.add(relative_excess(r1, big_r1), x1, kappa, r1, big_r1);

  return summarize("lemma2", {lemma.finish(), boyd_sufficient.finish(), boyd_bound.finish(),
                              sharp.finish(), threshold.finish(), f_at_x1.finish()});
}

VerificationReport verify_derivative(const EvaluationGrid& grid, double h_step,
                                     const VerifyOptions& options) {
  grid.validate();
  require_nonnegative_grid(grid, "verify_derivative");
  if (!(h_step >= 1e-7 && h_step <= 1e-3))
    throw UsageError("verify_derivative: h_step must lie in [1e-7, 1e-3]");
  const std::vector<KappaParam> kappas = strict_kappas(grid, "verify_derivative");

  CheckAccumulator check("df/dx identity vs finite differences", options.fd_tolerance);
  for (double x : grid.points()) {
    for (const KappaParam& k : kappas) {
      const double identity = df_dx_identity(x, k);
      double fd;
      if (x < h_step) {
        fd = (-3.0 * f_diff(x, k) + 4.0 * f_diff(x + h_step, k) - f_diff(x + 2.0 * h_step, k)) /
             (2.0 * h_step);
      } else {
        fd = (f_diff(x + h_step, k) - f_diff(x - h_step, k)) / (2.0 * h_step);
      }
      const double scale = std::max(1.0, std::abs(identity));
      check.add(std::abs(fd - identity) / scale, x, k.kappa(), identity, fd);
    }
  }
  return summarize("derivative", {check.finish()});
}

VerificationReport verify_chernoff(const EvaluationGrid& grid, const VerifyOptions& options) {
  grid.validate();
  require_nonnegative_grid(grid, "verify_chernoff");
  CheckAccumulator check("q_ref <= chernoff_upper", options.inequality_tolerance);
  for (double x : grid.points()) {
    const double q = q_function(x);
    const double upper = chernoff_upper(x);
    check.add(relative_excess(q, upper), x, 0.0, q, upper);
  }
  return summarize("chernoff", {check.finish()});
}

VerificationReport verify_cases(const KappaParam& k, int points_per_region,
                                const VerifyOptions& options) {
  k.require_strict("verify_cases");
  if (points_per_region < 2) throw UsageError("verify_cases: points_per_region must be >= 2");
  const CriticalPoints cp = critical_points(k);
  const double kappa = k.kappa();
  const double last = points_per_region - 1;

  auto region = [&](const char* name, double lo, double hi) {
    CheckAccumulator check(name, options.inequality_tolerance);
    for (int i = 0; i < points_per_region; ++i) {
      const double x = i == points_per_region - 1 ? hi : lo + (hi - lo) * (i / last);
      const double r = r_scaled(x, k);
      const double big_r = mills_ratio(x);
      check.add(relative_excess(r, big_r), x, kappa, r, big_r);
    }
    return check.finish();
  };
  return summarize("cases", {region("f <= 0 on [0, x1]", 0.0, cp.x1),
                             region("f <= 0 on [x1, x2]", cp.x1, cp.x2),
                             region("f <= 0 on [x2, 10 x2]", cp.x2, 10.0 * cp.x2)});
}

}  // namespace qbound
