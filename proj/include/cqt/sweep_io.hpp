// sweep_io.hpp
// Deterministic CSV/JSON serialization for sweep rows and report tables.
// Values carry 12 significant digits, '.' decimal separator, no locale
// dependence, so identical configs produce byte-identical output.

#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "analytics.hpp"
#include "protocol.hpp"

namespace cqt {

inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline constexpr const char* kSweepCsvHeader = "alpha_sq,theta,quantity,value";

inline std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = kSweepCsvHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += format_value(r.alpha_sq);
        out += ',';
        out += format_value(r.theta);
        out += ',';
        out += r.quantity;
        out += ',';
        out += format_value(r.value);
        out += '\n';
    }
    return out;
}

inline std::string sweep_to_json(const std::vector<SweepRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"alpha_sq", std::stod(format_value(r.alpha_sq))},
                       {"theta", std::stod(format_value(r.theta))},
                       {"quantity", r.quantity},
                       {"value", std::stod(format_value(r.value))}});
    }
    return arr.dump(2) + "\n";
}

inline std::string outcome_label(CountOutcome o) {
    switch (o) {
        case CountOutcome::Vacuum: return "0";
        case CountOutcome::NonzeroEven: return "NZE";
        case CountOutcome::OddCount: return "ODD";
        case CountOutcome::EvenParity: return "EVEN";
        case CountOutcome::OddParity: return "ODD";
    }
    return "?";
}

}  // namespace cqt
