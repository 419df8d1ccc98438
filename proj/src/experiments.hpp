#pragma once

#include <string>
#include <vector>

#include "flmlab/harness.hpp"
#include "flmlab/hanner.hpp"

namespace flmlab {

std::vector<ExperimentInfo> build_registry();

// "log", "power:D", "eps-log:E" or "const:V".
GrowthFn parse_growth(const std::string& text);

} // namespace flmlab
