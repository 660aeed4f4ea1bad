#include <doctest.h>

#include <cmath>

#include "qbound/bounds.hpp"
#include "qbound/verify.hpp"

using namespace qbound;

TEST_CASE("grid construction") {
  const auto g = EvaluationGrid::standard();
  const auto pts = g.points();
  CHECK(pts.size() == 2001);
  CHECK(pts.front() == -10.0);
  CHECK(pts.back() == 10.0);
  EvaluationGrid lg;
  lg.x_min = 1e-3;
  lg.x_max = 1e3;
  lg.x_count = 7;
  lg.spacing = Spacing::log;
  const auto lp = lg.points();
  CHECK(lp.front() == 1e-3);
  CHECK(lp.back() == 1e3);
  CHECK(lp[3] == doctest::Approx(1.0));

  EvaluationGrid bad = lg;
  bad.x_min = 0.0;
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad = EvaluationGrid::standard();
  bad.x_count = 1;
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad = EvaluationGrid::standard();
  bad.kappas = {0.9};
  CHECK_THROWS(bad.validate());
}

TEST_CASE("theorem on the default grid") {
  const auto r = verify_theorem(EvaluationGrid::standard());
  CHECK(r.passed);
  CHECK(r.points_checked == 2001 * 10);
  CHECK(r.worst_violation < 0.0);
}

TEST_CASE("theorem at the crossing points and far out") {
  EvaluationGrid g;
  g.kappas = {1.0 + 1e-6, 1.001, 2.0, 1e4};
  for (double kv : g.kappas) {
    const auto cp = critical_points(KappaParam(kv));
    for (double x : {cp.x1, cp.x2}) {
      EvaluationGrid local;
      local.x_min = x * (1 - 1e-6);
      local.x_max = x * (1 + 1e-6);
      local.x_count = 21;
      local.kappas = {kv};
      CAPTURE(kv);
      CHECK(verify_theorem(local).passed);
    }
  }
  EvaluationGrid far;
  far.x_min = 10.0;
  far.x_max = 37.0;
  far.x_count = 271;
  far.kappas = {1.0 + 1e-9, 1.0008, 1.5, 1e6};
  CHECK(verify_theorem(far).passed);
}

TEST_CASE("corrupted weight is detected") {
  VerifyOptions inflated;
  inflated.weight_scale = 1.0 + 1e-6;
  EvaluationGrid tight;
  tight.x_min = 25.0;
  tight.x_max = 37.0;
  tight.x_count = 121;
  tight.kappas = {1.0008, 1.0011, 1.0016};
  CHECK(verify_theorem(tight).passed);
  const auto bad = verify_theorem(tight, inflated);
  CHECK_FALSE(bad.passed);
  CHECK(bad.worst_violation > 0.0);
  // A gross corruption shows up on the default grid too.
  inflated.weight_scale = 1.01;
  CHECK_FALSE(verify_theorem(EvaluationGrid::standard(), inflated).passed);
}

TEST_CASE("lemma suites") {
  for (double kv : standard_strict_kappas()) {
    const KappaParam k(kv);
    CAPTURE(kv);
    CHECK(verify_lemma1(k, 200).passed);
    CHECK(verify_lemma2(k, 1e3, 2000).passed);
    CHECK(verify_cases(k, 200).passed);
  }
  CHECK(verify_lemma1(KappaParam(1.0 + 1e-6), 200).passed);
  CHECK(verify_lemma1(KappaParam(1e4), 200).passed);
  CHECK_THROWS(verify_lemma1(KappaParam(1.0), 10));
  CHECK_THROWS_AS(verify_lemma2(KappaParam(2.0), 0.1, 100), UsageError);
}

TEST_CASE("derivative and chernoff suites") {
  CHECK(verify_derivative(EvaluationGrid::standard_positive(), 1e-5).passed);
  CHECK_THROWS_AS(verify_derivative(EvaluationGrid::standard(), 1e-5), UsageError);
  CHECK_THROWS_AS(verify_derivative(EvaluationGrid::standard_positive(), 1e-2), UsageError);
  CHECK(verify_chernoff(EvaluationGrid::chernoff_default()).passed);
  EvaluationGrid neg = EvaluationGrid::chernoff_default();
  neg.x_min = -1.0;
  CHECK_THROWS_AS(verify_chernoff(neg), UsageError);
}

TEST_CASE("reports are reproducible") {
  const auto a = verify_lemma1(KappaParam(1.3), 100);
  const auto b = verify_lemma1(KappaParam(1.3), 100);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].worst_violation == b.checks[i].worst_violation);
    CHECK(a.checks[i].worst_point.x == b.checks[i].worst_point.x);
  }
}
