#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kokotsakis/planar.hpp"

namespace kokotsakis::cli {

// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kRightAngle = 2,        // geometric assumption 1
    kTauNotFound = 3,       // assumption 2: no tau puts every r_i, c_i in range
    kBetaUndefined = 4,     // assumption 3
    kNotElliptic = 5,       // assumption 4
    kNotFlexible = 6,       // zeta1 <= 1 or no valid sign pattern
    kVerifyFailed = 7,
    kIo = 8,
    kClosure = 9,
    kStachelFailed = 10,
};

struct CheckResult {
    std::string name;
    double value = 0.0;      // worst deviation measured
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyReport {
    bool renormalized = false;
    std::vector<CheckResult> checks;
    bool pass() const;
};

// Runs every invariant suite on a spec. Never throws for numerical failures;
// a check that cannot be evaluated is reported as failed.
VerifyReport verify_spec(const planar::PolyhedronSpec& spec);

// argv-style entry point; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kokotsakis::cli
