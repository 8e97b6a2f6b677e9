#pragma once

#include <string>
#include <string_view>

#include "charslope/bounds.hpp"

namespace charslope {

/// JSON form: {"case", "C", "Q"?, "R"?, "S"?, "T"?, "per_piece", "warnings", "witnesses"?}.
std::string report_to_json(const BoundReport& report);

/// Inverse of report_to_json. Throws std::invalid_argument on schema mismatches.
BoundReport report_from_json(std::string_view text);

std::string report_to_text(const BoundReport& report);

std::string surgery_to_json(const SurgeryJsjResult& result);
std::string surgery_to_text(const SurgeryJsjResult& result);

}  // namespace charslope
