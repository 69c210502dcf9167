#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace margulis::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalidInput = 1,
    kDegenerate = 2,
    kCertificationFailed = 3,
    kInconclusive = 4,
};

/// Runs one command line (args excludes the program name). Reports go to out
/// unless --output is given; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace margulis::cli
