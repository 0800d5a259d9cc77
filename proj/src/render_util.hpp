#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace qsd::detail {

// Report values carry 10 significant digits; paper-style 4-digit values are
// recovered by rounding, never by truncating internal precision.
inline std::string num10(double v) {
    if (std::isnan(v)) {
        return "null";
    }
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.10g", v == 0.0 ? 0.0 : v);
    return buffer;
}

inline std::string csv_num(double v) {
    if (std::isnan(v)) {
        return "";  // undefined cells stay empty
    }
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.10g", v == 0.0 ? 0.0 : v);
    return buffer;
}

inline std::string json_bool(bool b) { return b ? "true" : "false"; }

inline std::string json_number_array(const std::vector<double>& values) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            os << ", ";
        }
        os << num10(values[i]);
    }
    os << "]";
    return os.str();
}

}  // namespace qsd::detail
