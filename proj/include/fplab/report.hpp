#pragma once

// Stable text serialization shared by the sweep harness and the CLI: floats
// always carry 12 significant digits, columns come in a frozen order.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace fplab {

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// A JSON number carrying exactly the 12-digit value written to CSV.
inline nlohmann::json json_double(double v) {
    if (!std::isfinite(v)) return nullptr;
    return std::stod(format_double(v));
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string join_csv(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += csv_escape(cells[i]);
    }
    return line;
}

}  // namespace fplab
