#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rmt/core.hpp"

namespace rmt::cli {

enum ExitCode : int { exit_pass = 0, exit_failed = 1, exit_usage = 2, exit_numeric = 3 };

/// `args` excludes the program name. The report goes to `out` (or --output),
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "0.5", "0.5+0.2i", "-0.3i".
Complex parse_complex(const std::string& text);
/// Each spec is a point or lo:hi:count; the result keeps spec order.
std::vector<Complex> parse_grid(const std::vector<std::string>& specs);

int exit_code_for(Errc code) noexcept;

}  // namespace rmt::cli
