// analytics.hpp
// Closed-form probabilities, fidelities, worst-case fidelities and average
// fidelity for the ten measurement cases, plus grid sweeps for reproducing
// the surfaces. Everything is rational in x^2 = e^{-2|alpha|^2} and cos
// theta.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace cqt {

struct ClosedForms {
    double alpha_sq = 0.0;
    double x = 0.0;   // e^{-|alpha|^2}
    double x2 = 0.0;
    double x4 = 0.0;
    double d = 0.0;   // 1 + x^2 + x^4

    static ClosedForms at(double alpha_sq) {
        if (!(alpha_sq > 0.0))
            throw std::invalid_argument("ClosedForms: alpha_sq must be positive");
        ClosedForms c;
        c.alpha_sq = alpha_sq;
        c.x = std::exp(-alpha_sq);
        c.x2 = c.x * c.x;
        c.x4 = c.x2 * c.x2;
        c.d = 1.0 + c.x2 + c.x4;
        return c;
    }
};

inline void check_case_id(int case_id, const char* who) {
    if (case_id < 1 || case_id > 10)
        throw std::out_of_range(std::string(who) + ": case_id must be 1..10");
}

inline void check_theta(double theta, const char* who) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw std::invalid_argument(std::string(who) + ": theta must lie in [0, pi]");
}

// Occurrence probability of one case. Cases 1,2 share the zero-count class
// probability x^2 cos^2(theta/2)/(1+x^2+x^4); cases 3,5,8,10 share
// (1+x^4-2x^2 cos theta)/[8(1+x^2+x^4)]; cases 4,6 share (1-x^2)^2/(8 d);
// cases 7,9 share (1+x^2)^2/(8 d).
inline double p_case(int case_id, double alpha_sq, double theta) {
    check_case_id(case_id, "p_case");
    check_theta(theta, "p_case");
    const auto c = ClosedForms::at(alpha_sq);
    switch (case_id) {
        case 1:
        case 2: {
            const double co = std::cos(theta / 2.0);
            return c.x2 * co * co / c.d;
        }
        case 3:
        case 5:
        case 8:
        case 10:
            return (1.0 + c.x4 - 2.0 * c.x2 * std::cos(theta)) / (8.0 * c.d);
        case 4:
        case 6:
            return (1.0 - c.x2) * (1.0 - c.x2) / (8.0 * c.d);
        default:  // 7, 9
            return (1.0 + c.x2) * (1.0 + c.x2) / (8.0 * c.d);
    }
}

// Post-correction fidelity of one case. Cases 4,6,7,9 are perfect; cases
// 3,5,8,10 give 1 - x^4 sin^2(theta)/(1+x^4-2x^2 cos theta); the zero-count
// cases 1,2 give cos^2(theta/2).
inline double f_case(int case_id, double alpha_sq, double theta) {
    check_case_id(case_id, "f_case");
    check_theta(theta, "f_case");
    const auto c = ClosedForms::at(alpha_sq);
    switch (case_id) {
        case 1:
        case 2: {
            const double co = std::cos(theta / 2.0);
            return co * co;
        }
        case 3:
        case 5:
        case 8:
        case 10: {
            const double s = std::sin(theta);
            return 1.0 - c.x4 * s * s / (1.0 + c.x4 - 2.0 * c.x2 * std::cos(theta));
        }
        default:
            return 1.0;
    }
}

// Tabulated worst-case fidelity constants: 0 for the zero-count cases,
// 1 - x^2 for cases 3,5,8,10, and 1 for the perfect cases.
inline double maf_case(int case_id, double alpha_sq) {
    check_case_id(case_id, "maf_case");
    const auto c = ClosedForms::at(alpha_sq);
    switch (case_id) {
        case 1:
        case 2: return 0.0;
        case 3:
        case 5:
        case 8:
        case 10: return 1.0 - c.x2;
        default: return 1.0;
    }
}

// Average-fidelity closed form, 1 - x^2 (1 + x^2 sin^2 theta)/(2(1+x^2+x^4)).
// The simulator's case sum exceeds this by x^2 cos^2(theta)/(2 d), vanishing
// at theta = pi/2; both values are reported side by side where relevant.
inline double f_avg_closed(double alpha_sq, double theta) {
    check_theta(theta, "f_avg_closed");
    const auto c = ClosedForms::at(alpha_sq);
    const double s = std::sin(theta);
    return 1.0 - c.x2 * (1.0 + c.x2 * s * s) / (2.0 * c.d);
}

// Minimum of the closed form over theta, attained at theta = pi/2.
inline double f_avg_min_closed(double alpha_sq) {
    const auto c = ClosedForms::at(alpha_sq);
    return 1.0 - c.x2 * (1.0 + c.x2) / (2.0 * c.d);
}

// Upper bound of (case-sum average fidelity - closed form): x^2/(2 d).
inline double f_avg_gap_bound(double alpha_sq) {
    const auto c = ClosedForms::at(alpha_sq);
    return c.x2 / (2.0 * c.d);
}

struct SweepRow {
    double alpha_sq;
    double theta;
    std::string quantity;
    double value;
};

inline double quantity_value(const std::string& quantity, double alpha_sq, double theta) {
    auto case_suffix = [&](const std::string& prefix) -> int {
        const std::string num = quantity.substr(prefix.size());
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("unknown quantity: " + quantity);
        const int id = std::stoi(num);
        check_case_id(id, "quantity_value");
        return id;
    };
    if (quantity.rfind("p_case", 0) == 0) return p_case(case_suffix("p_case"), alpha_sq, theta);
    if (quantity.rfind("f_case", 0) == 0) return f_case(case_suffix("f_case"), alpha_sq, theta);
    if (quantity.rfind("maf_case", 0) == 0) return maf_case(case_suffix("maf_case"), alpha_sq);
    if (quantity == "f_avg") return f_avg_closed(alpha_sq, theta);
    if (quantity == "f_avg_min") return f_avg_min_closed(alpha_sq);
    throw std::invalid_argument("unknown quantity: " + quantity);
}

inline std::vector<double> linear_grid(double lo, double hi, int count) {
    if (count < 2) throw std::invalid_argument("linear_grid: need at least 2 points");
    if (!(lo < hi)) throw std::invalid_argument("linear_grid: bounds must be increasing");
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    return g;
}

// Deterministic row list, alpha major, theta minor; one row per grid point
// even for theta-independent quantities.
inline std::vector<SweepRow> sweep(const std::string& quantity,
                                   const std::vector<double>& alpha_sq_grid,
                                   const std::vector<double>& theta_grid) {
    if (alpha_sq_grid.empty() || theta_grid.empty())
        throw std::invalid_argument("sweep: empty grid");
    std::vector<SweepRow> rows;
    rows.reserve(alpha_sq_grid.size() * theta_grid.size());
    for (double a : alpha_sq_grid)
        for (double t : theta_grid)
            rows.push_back(SweepRow{a, t, quantity, quantity_value(quantity, a, t)});
    return rows;
}

}  // namespace cqt
