#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rotorbell::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kIo = 3 };

// Runs the rotorbell command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses "a..b", "a,b,c" or a single integer.
std::vector<int> parse_j_max_list(const std::string& text);

}  // namespace rotorbell::cli
