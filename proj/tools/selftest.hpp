#pragma once

#include "aquant/types.hpp"

#include <string>
#include <vector>

namespace aquant::cli {

struct SelfCheck {
    std::string name;
    bool pass = false;
    double value = 0;      // measured residual or defect
    double threshold = 0;  // pass bound
    std::string detail;
};

// Names of the invariant checks in suite order.
const std::vector<std::string>& selftest_names();

// Runs the named checks in suite order. Unknown names throw InvalidInput.
std::vector<SelfCheck> run_selftest(const std::vector<std::string>& names, const Tolerances& tol,
                                    const Resolution& res);

}  // namespace aquant::cli
