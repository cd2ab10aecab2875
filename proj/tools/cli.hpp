#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dulac::cli {

enum ExitCode : int {
    kOk = 0,
    kOther = 1,
    kHypothesis = 2,
    kResonance = 3,
    kUndecidable = 4,
    kSchema = 5,
};

/// Runs the command line (args excludes the program name). All output goes
/// to out / err; the return value is the process exit code. An input of
/// "-" reads the problem from `in` (std::cin for the first overload).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

} // namespace dulac::cli
