#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace langevin {

std::vector<std::string> suite_names();

/// Runs the invariant battery of one module ("mollifier", "potential", "metrics", "bounds").
/// Result: {"suite", "passed", "checks": [{"name", "passed", "detail"}]}.
nlohmann::json run_suite(const std::string& suite, std::uint64_t seed = 1);

}  // namespace langevin
