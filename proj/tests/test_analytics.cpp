#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cqt/analytics.hpp"
#include "cqt/protocol.hpp"

using namespace cqt;
using Catch::Matchers::WithinAbs;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("case probabilities at frozen points") {
    REQUIRE_THAT(p_case(1, 2.0, 0.0), WithinAbs(0.0179802867355315, 1e-13));
    REQUIRE_THAT(p_case(7, 2.0, 1.234), WithinAbs(0.1272475358419415, 1e-13));
    REQUIRE_THAT(p_case(4, 2.0, 0.4), WithinAbs(0.11825739247417567, 1e-13));
    // large-amplitude limit of the shared classes
    REQUIRE_THAT(p_case(3, 30.0, kPi / 2.0), WithinAbs(0.125, 1e-12));
    REQUIRE_THROWS_AS(p_case(11, 2.0, 0.0), std::out_of_range);
    REQUIRE_THROWS_AS(p_case(3, -1.0, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(p_case(3, 2.0, 4.0), std::invalid_argument);
}

TEST_CASE("case fidelities at frozen points") {
    REQUIRE_THAT(f_case(5, 2.0, 0.0), WithinAbs(1.0, 1e-14));
    REQUIRE_THAT(f_case(8, 2.0, kPi / 2.0), WithinAbs(0.9996646498695335, 1e-13));
    for (double th : {0.0, 0.7, kPi / 2.0, 2.9, kPi})
        REQUIRE_THAT(f_case(6, 1.0, th), WithinAbs(1.0, 1e-14));
    REQUIRE_THAT(f_case(1, 3.0, kPi / 3.0), WithinAbs(0.75, 1e-14));
}

TEST_CASE("tabulated worst-case fidelity constants") {
    REQUIRE_THAT(maf_case(10, 2.0), WithinAbs(0.9816843611112658, 1e-13));
    REQUIRE_THAT(maf_case(2, 0.7), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(maf_case(9, 0.7), WithinAbs(1.0, 1e-15));
    REQUIRE_THROWS_AS(maf_case(0, 1.0), std::out_of_range);
}

TEST_CASE("average fidelity closed form") {
    REQUIRE_THAT(f_avg_closed(2.0, kPi / 2.0), WithinAbs(0.9908451964127523, 1e-13));
    REQUIRE_THAT(f_avg_closed(2.0, kPi / 2.0), WithinAbs(f_avg_min_closed(2.0), 1e-14));
    REQUIRE_THAT(f_avg_closed(30.0, 1.1), WithinAbs(1.0, 1e-12));
    // the minimum really is the minimum over theta
    for (double th : {0.0, 0.3, 1.0, 2.2, kPi})
        REQUIRE(f_avg_closed(1.0, th) >= f_avg_min_closed(1.0) - 1e-14);
}

TEST_CASE("probability normalization identity holds exactly") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> ua(0.05, 8.0);
    std::uniform_real_distribution<double> ut(0.0, kPi);
    for (int i = 0; i < 300; ++i) {
        const double a = ua(rng), th = ut(rng);
        const double s = 2.0 * p_case(1, a, th) + 4.0 * p_case(3, a, th) +
                         2.0 * p_case(4, a, th) + 2.0 * p_case(7, a, th);
        REQUIRE_THAT(s, WithinAbs(1.0, 1e-14));
    }
}

TEST_CASE("closed forms match the simulator") {
    for (double a : {0.5, 2.0}) {
        for (double th : {0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0, kPi}) {
            const auto cases = run_cases_exact(InfoParams{std::sqrt(a), th, 0.0});
            for (const auto& c : cases) {
                REQUIRE_THAT(c.probability, WithinAbs(p_case(c.case_id, a, th), 1e-10));
                REQUIRE_THAT(c.fidelity, WithinAbs(f_case(c.case_id, a, th), 1e-10));
            }
        }
    }
}

TEST_CASE("simulated average fidelity sits in the closed-form bracket") {
    // frozen gap at alpha_sq = 1, theta = 0: x^2/(2(1+x^2+x^4))
    const auto cases = run_cases_exact(InfoParams{1.0, 0.0, 0.0});
    double case_sum = 0.0;
    for (const auto& c : cases) case_sum += c.probability * c.fidelity;
    const double gap = case_sum - f_avg_closed(1.0, 0.0);
    REQUIRE_THAT(gap, WithinAbs(0.0586552139130992, 1e-12));
    REQUIRE_THAT(gap, WithinAbs(f_avg_gap_bound(1.0), 1e-12));
    // the gap closes at theta = pi/2
    const auto mid = run_cases_exact(InfoParams{1.0, kPi / 2.0, 0.0});
    double mid_sum = 0.0;
    for (const auto& c : mid) mid_sum += c.probability * c.fidelity;
    REQUIRE_THAT(mid_sum - f_avg_closed(1.0, kPi / 2.0), WithinAbs(0.0, 1e-12));
}

TEST_CASE("limits are monotone in the mean photon number") {
    const auto grid = linear_grid(0.25, 8.0, 32);
    for (double th : {0.0, kPi / 2.0, kPi}) {
        for (int id : {3, 4, 7}) {
            double prev = 1.0;
            for (double a : grid) {
                const double dev = std::abs(p_case(id, a, th) - 0.125);
                REQUIRE(dev <= prev + 1e-15);
                prev = dev;
            }
        }
    }
    double prev = 0.0;
    for (double a : grid) {
        REQUIRE(maf_case(3, a) >= prev - 1e-15);
        prev = maf_case(3, a);
    }
}

TEST_CASE("sweep emits a deterministic alpha-major grid") {
    const auto rows = sweep("p_case1", {0.5, 1.0}, {0.0, 1.0, kPi});
    REQUIRE(rows.size() == 6);
    REQUIRE(rows[0].alpha_sq == 0.5);
    REQUIRE(rows[2].theta == kPi);
    REQUIRE(rows[3].alpha_sq == 1.0);
    // zero-count probability vanishes at theta = pi for every alpha
    REQUIRE_THAT(rows[2].value, WithinAbs(0.0, 1e-30));
    REQUIRE_THAT(rows[5].value, WithinAbs(0.0, 1e-30));
}

TEST_CASE("theta-independent quantities sweep to constant columns") {
    const auto theta_grid = linear_grid(0.0, kPi, 7);
    for (const char* q : {"maf_case3", "p_case4", "f_avg_min"}) {
        const auto rows = sweep(q, {0.5, 2.0}, theta_grid);
        REQUIRE(rows.size() == 14);
        for (std::size_t i = 1; i < 7; ++i) REQUIRE(rows[i].value == rows[0].value);
    }
    const auto m = sweep("maf_case3", {2.0}, {0.0, 1.0});
    REQUIRE_THAT(m[0].value, WithinAbs(0.9816843611112658, 1e-13));
}

TEST_CASE("sweep input validation") {
    REQUIRE_THROWS_AS(sweep("no_such_thing", {1.0}, {0.0, 1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(sweep("p_case", {1.0}, {0.0, 1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(sweep("p_case1", {}, {0.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(linear_grid(0.0, 1.0, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(linear_grid(1.0, 0.5, 4), std::invalid_argument);
}
