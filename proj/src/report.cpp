#include "hgs/report.hpp"

#include <cstdio>
#include <cstdlib>

namespace hgs {

std::string format12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round12(double v) { return std::strtod(format12(v).c_str(), nullptr); }

nlohmann::json json12(double v) { return round12(v); }

nlohmann::json to_json(const CVec3& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : v)
        arr.push_back({{"re", round12(c.real())}, {"im", round12(c.imag())}});
    return arr;
}

nlohmann::json report_envelope(const nlohmann::json& effective_config) {
    return {{"tool", kToolName}, {"version", kToolVersion}, {"config", effective_config}};
}

}  // namespace hgs
