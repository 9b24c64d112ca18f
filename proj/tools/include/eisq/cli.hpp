#pragma once

// The eisq command line, callable in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace eisq::cli {

/// Runs one command line (without the program name) and returns the exit
/// code: 0 success, 2 invalid input, 3 internal inconsistency, 4 resource cap.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a comma separated integer list such as "12,-12".
std::vector<long long> parse_int_list(const std::string& s);

/// Parses "A..B" into an inclusive range.
std::pair<long long, long long> parse_range(const std::string& s);

}  // namespace eisq::cli
