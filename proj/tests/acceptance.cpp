// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "qbound/bounds.hpp"
#include "qbound/optimize.hpp"
#include "qbound/special_functions.hpp"
#include "qbound/verify.hpp"

using namespace qbound;

namespace {

// Tolerances.
constexpr double kTheoremTol = 1e-13;
constexpr double kTheoremSeconds = 5.0;
constexpr double kEndpointTol = 1e-10;
constexpr double kLemma2Slack = 1e-12;
constexpr int kLemma2Count = 10000;
constexpr double kLemma2XHi = 1e3;
constexpr double kFdStep = 1e-5;
constexpr double kFdTol = 1e-6;
constexpr double kLambertTol = 1e-14;
constexpr int kLambertSamples = 10000;
constexpr double kOracleTol = 1e-13;
constexpr double kQ1 = 0.1586552539;
constexpr double kQ1Tol = 1e-10;
constexpr double kGapWindow = 0.003;
constexpr double kKappaWindow = 0.2;
constexpr double kWeightSlack = 1e-12;
constexpr double kRatioAt2 = 1.012;
constexpr double kRatioWindow = 0.001;
constexpr double kChernoffZeroTol = 1e-15;
constexpr double kInflation = 1.0 + 1e-6;

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %-28s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int run_cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "qbound");
  std::ostringstream o;
  std::ostringstream e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

void theorem_sweep() {
  const auto start = std::chrono::steady_clock::now();
  VerifyOptions opt;
  opt.inequality_tolerance = kTheoremTol;
  const auto r = verify_theorem(EvaluationGrid::standard(), opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(1, "theorem sweep", r.passed && r.points_checked == 20010 && secs < kTheoremSeconds,
         fmt("points=%zu worst=(g-Q)/Q=%.3g at x=%g k=%g, %.3fs", r.points_checked,
             r.worst_violation, r.worst_point.x, r.worst_point.kappa, secs));
}

void lemma1_endpoints() {
  bool ok = true;
  double worst1 = 0.0;
  double worst2 = 0.0;
  for (double kv : standard_strict_kappas()) {
    const KappaParam k(kv);
    const auto cp = critical_points(k);
    const double e1 = std::abs(kv * cp.x1 * r_scaled(cp.x1, k) - 1.0);
    const double e2 = std::abs(crossing_condition(cp.x2, k));
    worst1 = std::max(worst1, e1);
    worst2 = std::max(worst2, e2);
    ok = ok && e1 <= kEndpointTol && e2 <= kEndpointTol && cp.x1 < cp.pivot && cp.pivot < cp.x2;
  }
  report(2, "lemma 1 endpoints", ok,
         fmt("max |k x1 r - 1|=%.3g, max |residual(x2)|=%.3g, ordering %s", worst1, worst2,
             ok ? "strict" : "checked"));
}

void lemma2_sweep() {
  bool ok = true;
  double worst = INFINITY;
  double worst_x = 0.0;
  double worst_k = 0.0;
  for (double kv : standard_strict_kappas()) {
    const KappaParam k(kv);
    const double x1 = x1_point(k);
    const double step = std::log(kLemma2XHi / x1) / (kLemma2Count - 1);
    for (int i = 0; i < kLemma2Count; ++i) {
      const double x = i == kLemma2Count - 1 ? kLemma2XHi : x1 * std::exp(step * i);
      const double v = kv * x * mills_ratio(x);
      if (v < worst) {
        worst = v;
        worst_x = x;
        worst_k = kv;
      }
      ok = ok && v >= 1.0 - kLemma2Slack;
    }
  }
  report(3, "lemma 2 sweep", ok,
         fmt("min k x R(x)=%.17g at x=%g k=%g", worst, worst_x, worst_k));
}

void derivative_identity() {
  VerifyOptions opt;
  opt.fd_tolerance = kFdTol;
  const auto r = verify_derivative(EvaluationGrid::standard_positive(), kFdStep, opt);
  report(4, "derivative identity", r.passed,
         fmt("points=%zu worst rel err=%.3g at x=%g k=%g", r.points_checked, r.worst_violation,
             r.worst_point.x, r.worst_point.kappa));
}

// Residual |W e^W - z| / max(|z|, 1e-300), in long double.
double lambert_residual(double z, LambertBranch b) {
  const long double w = lambert_w(z, b);
  const long double r = std::fabs(w * std::exp(w) - static_cast<long double>(z));
  return static_cast<double>(r / std::max<long double>(std::fabs(z), 1e-300L));
}

void lambert_round_trip() {
  // Branch point as the double nearest -1/e (which lies just inside the domain).
  const double bp = -0.36787944117144233;
  std::vector<double> principal;
  std::vector<double> negative;
  const int near = kLambertSamples / 4;
  for (int i = 0; i < near; ++i) {
    const double z = bp + 1e-12 * i / (near - 1);
    principal.push_back(z);
    negative.push_back(z);
  }
  // Principal: (-1/e, 0) linearly, then z in [1e-300, 1e20] log spaced.
  for (int i = 1; i <= near; ++i) principal.push_back(bp * (1.0 - static_cast<double>(i) / near));
  const int rest = kLambertSamples - 2 * near;
  for (int i = 0; i < rest; ++i) principal.push_back(std::pow(10.0, -300.0 + 320.0 * i / (rest - 1)));
  // Negative branch: -z in [1e-20 / e, 1/e) log spaced.
  const int neg_rest = kLambertSamples - near;
  for (int i = 0; i < neg_rest; ++i)
    negative.push_back(-kInvE * std::pow(10.0, -20.0 * (1.0 - static_cast<double>(i) / neg_rest)));
  double worst_p = 0.0;
  double worst_n = 0.0;
  for (double z : principal) worst_p = std::max(worst_p, lambert_residual(z, LambertBranch::principal));
  for (double z : negative) {
    if (z < bp) z = bp;
    worst_n = std::max(worst_n, lambert_residual(z, LambertBranch::negative));
  }
  report(5, "lambert round trip", worst_p <= kLambertTol && worst_n <= kLambertTol,
         fmt("%zu+%zu samples, worst rel residual W0=%.3g W-1=%.3g", principal.size(),
             negative.size(), worst_p, worst_n));
}

void oracle_agreement() {
  double worst = 0.0;
  double worst_x = 0.0;
  for (double x : {0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 15.0, 30.0}) {
    const double ref = oracle::q_quadrature(x);
    const double e = std::abs(q_function(x) - ref) / ref;
    if (e > worst) {
      worst = e;
      worst_x = x;
    }
  }
  const double q1 = std::abs(q_function(1.0) - kQ1);
  report(6, "oracle agreement", worst <= kOracleTol && q1 <= kQ1Tol,
         fmt("max rel err vs quadrature=%.3g at x=%g, |Q(1)-0.1586552539|=%.3g", worst, worst_x, q1));
}

void tightness_anchors() {
  struct Anchor {
    double x, gap, kappa;  // target gap, target kappa*
  };
  const Anchor anchors[] = {{1.0, 0.010, 1.5}, {3.0, 0.003, 1.1}, {0.5, 0.012, 2.25}};
  // Regression values from an independent high-precision scan.
  const double frozen_kappa[] = {1.5185518, 1.0938752, 2.287964};
  const double frozen_gap[] = {0.0097915, 0.0017499, 0.011548};
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    const auto r = kappa_star(anchors[i].x);
    const double gap = r.gap.value_or(NAN);
    ok = ok && r.converged && std::abs(gap - anchors[i].gap) <= kGapWindow &&
         std::abs(r.argument - anchors[i].kappa) <= kKappaWindow &&
         std::abs(r.argument - frozen_kappa[i]) <= 1e-5 * frozen_kappa[i] &&
         std::abs(gap - frozen_gap[i]) <= 1e-3 * frozen_gap[i];
    detail += fmt("x=%g: k*=%.7g gap=%.4f%%; ", anchors[i].x, r.argument, 100.0 * gap);
  }
  report(7, "tightness anchors", ok, detail);
}

void weight_consistency() {
  bool ok = true;
  double min_ratio = INFINITY;
  for (double kv : {1.1, 1.5, 2.0, 5.0, 10.0, 100.0}) {
    const KappaParam k(kv);
    const double ratio = max_weight(k).objective / alpha_coeff(k);
    min_ratio = std::min(min_ratio, ratio);
    ok = ok && ratio >= 1.0 - kWeightSlack;
  }
  const double ratio2 = max_weight(KappaParam(2.0)).objective / alpha_coeff(KappaParam(2.0));
  ok = ok && std::abs(ratio2 - kRatioAt2) <= kRatioWindow;
  report(8, "weight consistency", ok,
         fmt("min alpha_max/alpha=%.9g, ratio at k=2 = %.7g", min_ratio, ratio2));
}

void chernoff_sweep() {
  const auto r = verify_chernoff(EvaluationGrid::chernoff_default());
  const double at0 = std::abs(q_function(0.0) - chernoff_upper(0.0));
  report(9, "chernoff upper sweep", r.passed && r.points_checked == 10000 && at0 <= kChernoffZeroTol,
         fmt("points=%zu worst=%.3g, |Q(0)-1/2|=%.3g", r.points_checked, r.worst_violation, at0));
}

void mutation_sensitivity() {
  // The default grid's smallest relative gap is ~3.5e-5, far above 1e-6, so
  // the inflated weight is still a valid bound there. The probe grid follows
  // the optimal order into the far tail, where the gap drops below 1e-6.
  EvaluationGrid probe;
  probe.x_min = 25.0;
  probe.x_max = 37.0;
  probe.x_count = 121;
  probe.kappas = {1.0008, 1.0011, 1.0016};
  VerifyOptions inflated;
  inflated.weight_scale = kInflation;
  const bool clean = verify_theorem(probe).passed;
  const auto bad = verify_theorem(probe, inflated);
  const int code = run_cli({"verify", "theorem", "--inflate-weight", "1.000001", "--x-min", "25",
                            "--x-max", "37", "--x-count", "121", "--kappa", "1.0008", "--kappa",
                            "1.0011", "--kappa", "1.0016"});
  const auto on_default = verify_theorem(EvaluationGrid::standard(), inflated);
  report(10, "mutation sensitivity", clean && !bad.passed && code == 1,
         fmt("probe grid: clean passes, inflated worst=%.3g at x=%g k=%g, cli exit %d "
             "(default grid under inflation: %s, worst=%.3g)",
             bad.worst_violation, bad.worst_point.x, bad.worst_point.kappa, code,
             on_default.passed ? "passes" : "fails", on_default.worst_violation));
}

void cli_contract() {
  std::string csv;
  const int code0 = run_cli({"table", "--x-min", "-3", "--x-max", "12", "--x-count", "31", "--kappa",
                             "1.001", "--kappa", "2", "--kappa", "100"},
                            &csv);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  bool exact = code0 == 0 && line == cli::kCsvHeader;
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<double> v;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) v.push_back(std::strtod(f.c_str(), nullptr));
    if (v.size() != 7) {
      exact = false;
      break;
    }
    const KappaParam k(v[1]);
    const double x = v[0];
    exact = exact && v[2] == q_function(x) && v[3] == g_lower(x, k);
    if (x >= 0.0) {
      exact = exact && v[4] == boyd_lower(x) * detail::exp_neg_half_square(x) * kInvSqrtTwoPi &&
              v[5] == chernoff_upper(x);
    }
    exact = exact && v[6] == cli::make_record(x, k).rel_gap;
    ++rows;
  }
  exact = exact && rows == 93;
  const int c0 = run_cli({"eval", "--x", "1", "--kappa", "2"});
  const int c1 = run_cli({"verify", "theorem", "--inflate-weight", "1.01"});
  const int c2 = run_cli({"eval", "--x", "1", "--kappa", "0.5"});
  report(11, "cli contract", exact && c0 == 0 && c1 == 1 && c2 == 2,
         fmt("csv rows=%d bit-exact=%s, exit codes %d/%d/%d", rows, exact ? "yes" : "no", c0, c1, c2));
}

}  // namespace

int main() {
  theorem_sweep();
  lemma1_endpoints();
  lemma2_sweep();
  derivative_identity();
  lambert_round_trip();
  oracle_agreement();
  tightness_anchors();
  weight_consistency();
  chernoff_sweep();
  mutation_sensitivity();
  cli_contract();
  std::printf("%d of 11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
