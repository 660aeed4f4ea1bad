#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "qbound/optimize.hpp"
#include "qbound/special_functions.hpp"
#include "qbound/verify.hpp"

namespace qbound::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct GridFlags {
  std::optional<double> x_min;
  std::optional<double> x_max;
  std::optional<int> x_count;
  std::optional<std::string> spacing;
  std::vector<double> kappas;

  void attach(CLI::App& sub) {
    sub.add_option("--x-min", x_min, "Lower end of the x grid");
    sub.add_option("--x-max", x_max, "Upper end of the x grid");
    sub.add_option("--x-count", x_count, "Number of x grid points");
    sub.add_option("--spacing", spacing, "Grid spacing")
        ->check(CLI::IsMember({"linear", "log"}));
    sub.add_option("--kappa", kappas, "Bound order kappa (repeatable)");
  }

  bool any_x() const { return x_min || x_max || x_count || spacing; }

  EvaluationGrid apply(EvaluationGrid grid) const {
    if (x_min) grid.x_min = *x_min;
    if (x_max) grid.x_max = *x_max;
    if (x_count) grid.x_count = *x_count;
    if (spacing) grid.spacing = *spacing == "log" ? Spacing::log : Spacing::linear;
    if (!kappas.empty()) grid.kappas = kappas;
    grid.validate();
    return grid;
  }
};

ordered_json record_json(const OutputRecord& r) {
  return ordered_json{{"x", r.x},
                      {"kappa", r.kappa},
                      {"q_ref", r.q_ref},
                      {"g_lower", r.g_lower},
                      {"boyd_lower_q", r.boyd_lower_q},
                      {"chernoff_upper", r.chernoff_upper},
                      {"rel_gap", r.rel_gap}};
}

ordered_json check_json(const CheckResult& c) {
  return ordered_json{{"name", c.name},
                      {"points_checked", c.points_checked},
                      {"worst_violation", c.worst_violation},
                      {"worst_point", {{"x", c.worst_point.x}, {"kappa", c.worst_point.kappa}}},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed}};
}

ordered_json report_json(const VerificationReport& r) {
  ordered_json checks = ordered_json::array();
  for (const CheckResult& c : r.checks) checks.push_back(check_json(c));
  return ordered_json{{"suite", r.suite},
                      {"points_checked", r.points_checked},
                      {"worst_violation", r.worst_violation},
                      {"worst_point", {{"x", r.worst_point.x}, {"kappa", r.worst_point.kappa}}},
                      {"tolerance", r.tolerance},
                      {"passed", r.passed},
                      {"checks", checks}};
}

void print_report_text(std::ostream& out, const VerificationReport& r) {
  out << (r.passed ? "PASS " : "FAIL ") << r.suite << ": " << r.points_checked
      << " points, worst violation " << format_number(r.worst_violation) << " at x = "
      << format_number(r.worst_point.x) << ", kappa = " << format_number(r.worst_point.kappa)
      << " (tolerance " << format_number(r.tolerance) << ")\n";
  for (const CheckResult& c : r.checks) {
    out << "  " << (c.passed ? "ok   " : "FAIL ") << c.name << ": worst "
        << format_number(c.worst_violation) << " at (x = " << format_number(c.worst_point.x)
        << ", kappa = " << format_number(c.worst_point.kappa)
        << "), lhs = " << format_number(c.lhs) << ", rhs = " << format_number(c.rhs)
        << ", tolerance " << format_number(c.tolerance) << "\n";
  }
}

void print_fields(std::ostream& out, const ordered_json& doc) {
  for (const auto& [key, value] : doc.items()) {
    out << key << " = ";
    if (value.is_number_float()) {
      out << format_number(value.get<double>());
    } else if (value.is_null()) {
      out << "nan";
    } else if (value.is_string()) {
      out << value.get<std::string>();
    } else {
      out << value.dump();
    }
    out << "\n";
  }
}

void emit(std::ostream& out, const std::string& format, const ordered_json& doc) {
  if (format == "json") {
    out << doc.dump(2) << "\n";
  } else {
    print_fields(out, doc);
  }
}

ordered_json optimization_json(const std::string& mode, const OptimizationResult& r) {
  ordered_json doc{{"mode", mode},
                   {"argument", r.argument},
                   {"objective", r.objective},
                   {"gap", r.gap ? ordered_json(*r.gap) : ordered_json(nullptr)},
                   {"iterations", r.iterations},
                   {"converged", r.converged}};
  if (!r.diagnostic.empty()) doc["diagnostic"] = r.diagnostic;
  return doc;
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

OutputRecord make_record(double x, const KappaParam& k) {
  const double q = q_function(x);
  const double g = g_lower(x, k);
  OutputRecord record{x, k.kappa(), q, g, kNaN, kNaN, (q - g) / q};
  if (x >= 0.0) {
    record.boyd_lower_q = boyd_lower(x) * detail::exp_neg_half_square(x) * kInvSqrtTwoPi;
    record.chernoff_upper = chernoff_upper(x);
  }
  return record;
}

std::string csv_row(const OutputRecord& r) {
  return format_number(r.x) + "," + format_number(r.kappa) + "," + format_number(r.q_ref) + "," +
         format_number(r.g_lower) + "," + format_number(r.boyd_lower_q) + "," +
         format_number(r.chernoff_upper) + "," + format_number(r.rel_gap);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian Q-function lower bounds: evaluation, tables, verification, tuning",
               "qbound"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate the bounds at one point");
  double eval_x = 0.0;
  double eval_kappa = 1.0;
  std::string eval_format = "text";
  eval->add_option("--x", eval_x, "Argument x")->required();
  eval->add_option("--kappa", eval_kappa, "Bound order kappa >= 1")->required();
  eval->add_option("--format", eval_format)->check(CLI::IsMember({"text", "json"}));

  // table
  auto* table = app.add_subcommand("table", "Tabulate Q and its bounds over a grid");
  GridFlags table_grid;
  table_grid.attach(*table);
  std::string table_format = "csv";
  table->add_option("--format", table_format)->check(CLI::IsMember({"csv", "json"}));

  // verify
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  std::string suite;
  GridFlags verify_grid;
  VerifyOptions verify_options;
  int points_per_region = 1000;
  double lemma2_x_hi = 1e3;
  int lemma2_count = 10000;
  double h_step = 1e-5;
  std::string verify_format = "text";
  verify->add_option("suite", suite, "Suite to run")
      ->required()
      ->check(CLI::IsMember({"theorem", "lemma1", "lemma2", "derivative", "chernoff", "all"}));
  verify_grid.attach(*verify);
  verify->add_option("--tolerance", verify_options.inequality_tolerance,
                     "Relative tolerance for inequalities");
  verify->add_option("--equality-tolerance", verify_options.equality_tolerance,
                     "Absolute tolerance for endpoint equalities");
  verify->add_option("--fd-tolerance", verify_options.fd_tolerance,
                     "Tolerance for finite-difference matching");
  verify->add_option("--points", points_per_region, "Samples per region (lemma1)");
  verify->add_option("--x-hi", lemma2_x_hi, "Upper end of the lemma2 sweep");
  verify->add_option("--count", lemma2_count, "Points in the lemma2 sweep");
  verify->add_option("--h-step", h_step, "Finite-difference step (derivative)");
  verify->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--inflate-weight", verify_options.weight_scale)->group("");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Choose kappa or the weight");
  std::string mode;
  std::optional<double> opt_x;
  std::optional<double> opt_kappa;
  std::optional<double> opt_x_lo;
  std::optional<double> opt_x_hi;
  std::string optimize_format = "text";
  optimize->add_option("mode", mode, "pointwise | weight | interval")
      ->required()
      ->check(CLI::IsMember({"pointwise", "weight", "interval"}));
  optimize->add_option("--x", opt_x, "Point for pointwise mode");
  optimize->add_option("--kappa", opt_kappa, "Order for weight mode");
  optimize->add_option("--x-lo", opt_x_lo, "Interval start");
  optimize->add_option("--x-hi", opt_x_hi, "Interval end");
  optimize->add_option("--format", optimize_format)->check(CLI::IsMember({"text", "json"}));

  // roots
  auto* roots = app.add_subcommand("roots", "Crossing points x1, x2 for a kappa");
  double roots_kappa = 2.0;
  std::string roots_format = "text";
  roots->add_option("--kappa", roots_kappa, "Bound order kappa > 1")->required();
  roots->add_option("--format", roots_format)->check(CLI::IsMember({"text", "json"}));

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*eval) {
      if (!std::isfinite(eval_x)) throw std::domain_error("eval: x must be finite");
      emit(out, eval_format, record_json(make_record(eval_x, KappaParam(eval_kappa))));
      return kSuccess;
    }

    if (*table) {
      const EvaluationGrid grid = table_grid.apply(EvaluationGrid::standard());
      std::vector<KappaParam> kappas;
      for (double kappa : grid.kappas) kappas.emplace_back(kappa);
      const std::vector<double> xs = grid.points();
      if (table_format == "csv") {
        out << kCsvHeader << "\n";
        for (double x : xs)
          for (const KappaParam& k : kappas) out << csv_row(make_record(x, k)) << "\n";
      } else {
        ordered_json rows = ordered_json::array();
        for (double x : xs)
          for (const KappaParam& k : kappas) rows.push_back(record_json(make_record(x, k)));
        out << rows.dump(2) << "\n";
      }
      return kSuccess;
    }

    if (*verify) {
      const bool custom_x = verify_grid.any_x();
      const bool custom_kappa = !verify_grid.kappas.empty();
      const std::vector<double> strict =
          custom_kappa ? verify_grid.kappas : standard_strict_kappas();
      auto grid_for = [&](EvaluationGrid fallback) {
        if (!custom_x && !custom_kappa) return fallback;
        return verify_grid.apply(fallback);
      };
      std::vector<VerificationReport> reports;
      const bool all = suite == "all";
      if (all || suite == "theorem")
        reports.push_back(verify_theorem(grid_for(EvaluationGrid::standard()), verify_options));
      if (all || suite == "lemma1")
        for (double kappa : strict)
          reports.push_back(verify_lemma1(KappaParam(kappa), points_per_region, verify_options));
      if (all || suite == "lemma2")
        for (double kappa : strict)
          reports.push_back(
              verify_lemma2(KappaParam(kappa), lemma2_x_hi, lemma2_count, verify_options));
      if (all || suite == "derivative")
        reports.push_back(verify_derivative(grid_for(EvaluationGrid::standard_positive()), h_step,
                                            verify_options));
      if (all || suite == "chernoff")
        reports.push_back(verify_chernoff(grid_for(EvaluationGrid::chernoff_default()),
                                          verify_options));

      bool passed = true;
      for (const VerificationReport& r : reports) passed = passed && r.passed;
      if (verify_format == "json") {
        ordered_json list = ordered_json::array();
        for (const VerificationReport& r : reports) list.push_back(report_json(r));
        out << ordered_json{{"passed", passed}, {"reports", list}}.dump(2) << "\n";
      } else {
        for (const VerificationReport& r : reports) print_report_text(out, r);
        out << (passed ? "all suites passed" : "verification FAILED") << "\n";
      }
      return passed ? kSuccess : kVerificationFailed;
    }

    if (*optimize) {
      ordered_json doc;
      if (mode == "pointwise") {
        if (!opt_x) throw CLI::RequiredError("--x");
        doc = optimization_json(mode, kappa_star(*opt_x));
      } else if (mode == "weight") {
        if (!opt_kappa) throw CLI::RequiredError("--kappa");
        const KappaParam k(*opt_kappa);
        const OptimizationResult r = max_weight(k);
        doc = optimization_json(mode, r);
        doc["alpha_coeff"] = alpha_coeff(k);
        doc["ratio"] = r.objective / alpha_coeff(k);
      } else {
        if (!opt_x_lo || !opt_x_hi) throw CLI::RequiredError("--x-lo and --x-hi");
        doc = optimization_json(mode, interval_kappa(*opt_x_lo, *opt_x_hi));
      }
      emit(out, optimize_format, doc);
      return kSuccess;
    }

    if (*roots) {
      const KappaParam k(roots_kappa);
      const CriticalPoints cp = critical_points(k);
      ordered_json doc{{"kappa", k.kappa()},
                       {"x1", cp.x1},
                       {"x2", cp.x2},
                       {"pivot", cp.pivot},
                       {"w1", cp.w1},
                       {"w2", cp.w2},
                       {"residual_x1", crossing_condition(cp.x1, k)},
                       {"residual_x2", crossing_condition(cp.x2, k)}};
      emit(out, roots_format, doc);
      return kSuccess;
    }
  } catch (const CLI::Error& e) {
    err << "error: missing option " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {  // includes UsageError
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::logic_error& e) {
    err << "inconsistency: " << e.what() << "\n";
    return kVerificationFailed;
  }
  return kUsageError;
}

}  // namespace qbound::cli
