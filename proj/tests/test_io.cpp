#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "json.hpp"

#include "cqt/analytics.hpp"
#include "cqt/sweep_io.hpp"
#include "cqt/verify.hpp"

using namespace cqt;

TEST_CASE("values are formatted with 12 significant digits") {
    REQUIRE(format_value(0.12345678901234567) == "0.123456789012");
    REQUIRE(format_value(1.0) == "1");
    REQUIRE(format_value(0.9908451964127523) == "0.990845196413");
    REQUIRE(format_value(-2.5e-7) == "-2.5e-07");
}

TEST_CASE("CSV output carries the exact header and is deterministic") {
    const auto rows = sweep("f_avg", linear_grid(0.5, 2.0, 3), linear_grid(0.0, 3.0, 4));
    const std::string a = sweep_to_csv(rows);
    const std::string b = sweep_to_csv(rows);
    REQUIRE(a == b);
    REQUIRE(a.rfind("alpha_sq,theta,quantity,value\n", 0) == 0);
    // one header line plus one line per row
    REQUIRE(std::count(a.begin(), a.end(), '\n') == 1 + static_cast<long>(rows.size()));
}

TEST_CASE("JSON output mirrors the CSV values as numbers") {
    const auto rows = sweep("p_case3", linear_grid(1.0, 2.0, 2), linear_grid(0.0, 1.0, 2));
    const std::string text = sweep_to_json(rows);
    REQUIRE(text == sweep_to_json(rows));
    const auto doc = nlohmann::json::parse(text);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(doc[i]["quantity"] == "p_case3");
        REQUIRE(doc[i]["value"].get<double>() == std::stod(format_value(rows[i].value)));
        REQUIRE(doc[i]["alpha_sq"].get<double>() == std::stod(format_value(rows[i].alpha_sq)));
    }
}

TEST_CASE("outcome labels match the reporting vocabulary") {
    REQUIRE(outcome_label(CountOutcome::Vacuum) == "0");
    REQUIRE(outcome_label(CountOutcome::NonzeroEven) == "NZE");
    REQUIRE(outcome_label(CountOutcome::OddCount) == "ODD");
    REQUIRE(outcome_label(CountOutcome::EvenParity) == "EVEN");
    REQUIRE(outcome_label(CountOutcome::OddParity) == "ODD");
}

TEST_CASE("a wrong-sign network passes unitarity but fails the closed-form match") {
    // mixes with the opposite splitter phase; still norm preserving
    const NetworkFn wrong = [](const SuperState& s) {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        const cdouble mi{0.0, -1.0};
        std::vector<Term> ts = s.terms();
        for (auto& t : ts) {
            const cdouble beta = t.labels[0];
            const cdouble gamma = t.labels[1] * mi;  // the leading phase shifter
            t.labels[0] = (beta + mi * gamma) * inv_sqrt2;
            t.labels[1] = (gamma + mi * beta) * inv_sqrt2 * mi;  // the trailing one
        }
        return SuperState(s.mode_count(), std::move(ts));
    };

    const InfoParams p{std::sqrt(2.0), 0.9, 0.0};
    const SuperState joint = build_joint(make_info(p), build_channel(p.alpha));
    REQUIRE_THAT(wrong(joint).norm_sq(),
                 Catch::Matchers::WithinAbs(joint.norm_sq(), 1e-12));

    const CheckResult good = check_closed_form_match();
    REQUIRE(good.pass);
    const CheckResult bad = check_closed_form_match(wrong);
    REQUIRE_FALSE(bad.pass);
}
