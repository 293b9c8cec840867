#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cwqpt {

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_io = 2, exit_numerical = 3 };

/// Nine significant digits, shortest form, no locale, "-0" printed as "0".
std::string format_number(double x);

/// "start:stop:step" (inclusive within half a step) or a single value.
std::vector<double> parse_range(std::string_view text);

/// Runs the tool on args (without the program name). Results go to the
/// --out file or to out; diagnostics and usage text go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cwqpt
