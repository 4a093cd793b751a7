#pragma once

#include <string>

#include <json.hpp>

#include "hgs/model.hpp"

namespace hgs {

inline constexpr const char* kToolName = "hgs";
inline constexpr const char* kToolVersion = "0.1.0";

// round to 12 significant digits (every numeric output goes through this)
double round12(double v);
std::string format12(double v);

nlohmann::json json12(double v);
nlohmann::json to_json(const CVec3& v);

// report envelope: tool, version, effective config — reports are self-describing
nlohmann::json report_envelope(const nlohmann::json& effective_config);

}  // namespace hgs
