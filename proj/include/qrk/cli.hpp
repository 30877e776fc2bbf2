#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qrk::cli {

enum Exit : int { kOk = 0, kNumerical = 1, kUsage = 2 };

// Subcommands: eval zeros kernel transform reconstruct verify table.
// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a:b:n" (n points, ends included), "v1,v2,...", or a single value.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace qrk::cli
