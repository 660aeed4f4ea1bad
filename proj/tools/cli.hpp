#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qbound/bounds.hpp"

namespace qbound::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

/// One row of `eval` / `table` output. boyd_lower_q is Boyd's Mills-ratio
/// bound moved to the Q scale; it and chernoff_upper are NaN for x < 0.
struct OutputRecord {
  double x;
  double kappa;
  double q_ref;
  double g_lower;
  double boyd_lower_q;
  double chernoff_upper;
  double rel_gap;
};

inline constexpr const char* kCsvHeader = "x,kappa,q_ref,g_lower,boyd_lower_q,chernoff_upper,rel_gap";

OutputRecord make_record(double x, const KappaParam& k);

/// 17 significant digits, printf %.17g.
std::string format_number(double value);

std::string csv_row(const OutputRecord& record);

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qbound::cli
