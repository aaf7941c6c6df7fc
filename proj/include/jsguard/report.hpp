#pragma once

#include <string>

#include "jsguard/types.hpp"

namespace jsguard {

// One verdict as a single-line JSON object (no trailing newline), the unit
// of the machine-readable report stream.
std::string verdict_json_line(const std::string& sample, const Verdict& verdict);

}  // namespace jsguard
