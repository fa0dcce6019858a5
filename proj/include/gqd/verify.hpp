#pragma once

#include <string>
#include <vector>

namespace gqd {

struct CheckResult {
    std::string name;
    bool pass;
    double value;      // measured defect
    double threshold;  // limit it was held against
};

/// Named invariant suites runnable from the command line:
/// gde-residual, optical, mu-invariance, rg, unitarity-evolution, renorm-limit.
std::vector<CheckResult> run_verify_suite(const std::string& suite,
                                          const std::string& preset);

std::vector<std::string> verify_suite_names();

}  // namespace gqd
