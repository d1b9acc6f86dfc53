#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage or I/O error,
// 2 indeterminate verdict or residual failure.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cubicbp/blaschke.hpp"

namespace cubicbp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIndeterminate = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// argv[0] is supplied internally.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "0.3", "0.5i", "-i", "0.3-0.2i", "1e-3+2e-3i" or "(0.3,-0.2)".
// Throws InvalidArgument on anything else.
Complex parse_complex(std::string_view text);
std::string format_complex(Complex z);

}  // namespace cubicbp::cli
