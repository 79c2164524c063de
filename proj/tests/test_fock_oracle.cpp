#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "cqt/fock_oracle.hpp"
#include "cqt/protocol.hpp"

using namespace cqt;
using Catch::Matchers::WithinAbs;

namespace {

std::mt19937 rng(777);

cdouble random_label(double max_mag) {
    std::uniform_real_distribution<double> mag(0.0, max_mag);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    return std::polar(mag(rng), ang(rng));
}

SuperState random_state(int modes, double max_mag) {
    std::uniform_int_distribution<int> n_terms(1, 3);
    std::uniform_real_distribution<double> re(-1.0, 1.0);
    std::vector<Term> ts;
    const int n = n_terms(rng);
    for (int t = 0; t < n; ++t) {
        Term term{cdouble{re(rng), re(rng)}, {}};
        for (int m = 0; m < modes; ++m) term.labels.push_back(random_label(max_mag));
        ts.push_back(std::move(term));
    }
    return SuperState(modes, std::move(ts));
}

}  // namespace

TEST_CASE("coherent_fock of zero is the vacuum unit vector") {
    const FockVector v = coherent_fock(0.0, 12);
    REQUIRE_THAT(std::abs(v.amp[0] - 1.0), WithinAbs(0.0, 1e-15));
    for (std::size_t n = 1; n < v.amp.size(); ++n)
        REQUIRE_THAT(std::abs(v.amp[n]), WithinAbs(0.0, 1e-15));
}

TEST_CASE("coherent_fock amplitudes follow the factorial formula") {
    const cdouble beta{0.8, -1.1};
    const FockVector v = coherent_fock(beta, 12);
    double fact = 1.0;
    for (int n = 0; n <= 12; ++n) {
        if (n > 0) fact *= n;
        const cdouble expect =
            std::exp(-0.5 * std::norm(beta)) * std::pow(beta, n) / std::sqrt(fact);
        REQUIRE_THAT(std::abs(v.amp[static_cast<std::size_t>(n)] - expect), WithinAbs(0.0, 1e-13));
    }
}

TEST_CASE("coherent_fock mean photon number") {
    for (cdouble beta : {cdouble{1.3, 0.0}, cdouble{0.5, -1.9}, cdouble{2.0, 2.0}}) {
        const FockVector v = coherent_fock(beta, cutoff_for_magnitude(std::abs(beta)));
        REQUIRE_THAT(mean_photon_number(v, 0), WithinAbs(std::norm(beta), 1e-9));
    }
}

TEST_CASE("coherent_fock overlaps match the closed form") {
    for (int i = 0; i < 20; ++i) {
        const cdouble b = random_label(3.0), g = random_label(3.0);
        const int cutoff = cutoff_for_magnitude(std::max(std::abs(b), std::abs(g)));
        const cdouble series = inner_product(coherent_fock(b, cutoff), coherent_fock(g, cutoff));
        REQUIRE_THAT(std::abs(series - coherent_overlap(b, g)), WithinAbs(0.0, 1e-10));
    }
}

TEST_CASE("the cutoff rule keeps tail mass below 1e-13") {
    for (double m : {0.25, 0.5, 1.0, 1.5, 2.0, 2.83, 3.5, 4.0}) {
        const FockVector v = coherent_fock(m, cutoff_for_magnitude(m));
        REQUIRE(1.0 - v.norm_sq() < 1e-13);
    }
    REQUIRE_THROWS_AS(cutoff_for_magnitude(4.5), std::invalid_argument);
    REQUIRE_THROWS_AS(cutoff_for_magnitude(-1.0), std::invalid_argument);
}

TEST_CASE("phase-shift gate reproduces the label transform") {
    const cdouble beta{1.1, -0.7};
    const int cutoff = cutoff_for_magnitude(std::abs(beta));
    const double phase = 0.83;
    const FockVector shifted = apply_gate_fock(coherent_fock(beta, cutoff),
                                               PhaseShiftGate{0, phase});
    const FockVector expected = coherent_fock(std::exp(cdouble{0.0, phase}) * beta, cutoff);
    REQUIRE(std::abs(inner_product(expected, shifted)) >= 1.0 - 1e-9);
    REQUIRE_THAT(shifted.norm_sq(), WithinAbs(1.0, 1e-10));
}

TEST_CASE("opposite phase shifts cancel") {
    const FockVector v = from_super(random_state(2, 2.0));
    FockVector w = apply_gate_fock(v, PhaseShiftGate{1, 0.9});
    w = apply_gate_fock(w, PhaseShiftGate{1, -0.9});
    double worst = 0.0;
    for (std::size_t i = 0; i < v.amp.size(); ++i)
        worst = std::max(worst, std::abs(w.amp[i] - v.amp[i]));
    REQUIRE_THAT(worst, WithinAbs(0.0, 1e-12));
}

TEST_CASE("beam-splitter gate reproduces the coherent label transform") {
    const cdouble b{1.2, 0.4}, g{-0.6, 0.8};
    const double mag = std::sqrt(std::norm(b) + std::norm(g));
    const int cutoff = cutoff_for_magnitude(mag);
    const FockVector in = from_super(SuperState::coherent({b, g}), cutoff);
    const FockVector out = apply_gate_fock(in, BeamSplitterGate{0, 1});
    const cdouble i{0.0, 1.0};
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const FockVector expected =
        from_super(SuperState::coherent({(b + i * g) * inv_sqrt2, (g + i * b) * inv_sqrt2}),
                   cutoff);
    REQUIRE(std::abs(inner_product(expected, out)) >= 1.0 - 1e-9);
    REQUIRE_THAT(out.norm_sq(), WithinAbs(in.norm_sq(), 1e-10));
    REQUIRE_THROWS_AS(apply_gate_fock(in, BeamSplitterGate{0, 0}), std::invalid_argument);
}

TEST_CASE("beam splitter on a non-leading mode pair") {
    const cdouble a{0.5, -0.3}, b{1.0, 0.2}, g{-0.4, 0.7};
    const double mag = std::sqrt(std::norm(b) + std::norm(g));
    const int cutoff = cutoff_for_magnitude(mag + std::abs(a));
    const FockVector in = from_super(SuperState::coherent({a, b, g}), cutoff);
    const FockVector out = apply_gate_fock(in, BeamSplitterGate{1, 2});
    const cdouble i{0.0, 1.0};
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const FockVector expected = from_super(
        SuperState::coherent({a, (b + i * g) * inv_sqrt2, (g + i * b) * inv_sqrt2}), cutoff);
    REQUIRE(std::abs(inner_product(expected, out)) >= 1.0 - 1e-9);
    REQUIRE_THAT(out.norm_sq(), WithinAbs(in.norm_sq(), 1e-10));
}

TEST_CASE("gates preserve norms of arbitrary embedded states") {
    for (int t = 0; t < 5; ++t) {
        const FockVector v = from_super(random_state(2, 2.5));
        const double n0 = v.norm_sq();
        REQUIRE_THAT(apply_gate_fock(v, PhaseShiftGate{0, 2.1}).norm_sq(), WithinAbs(n0, 1e-10));
        REQUIRE_THAT(apply_gate_fock(v, BeamSplitterGate{0, 1}).norm_sq(), WithinAbs(n0, 1e-10));
    }
}

TEST_CASE("vacuum projection probability of a displaced state") {
    // |sqrt(2) alpha> at |alpha|^2 = 2 -> P(vacuum) = e^{-4} = x^2
    const FockVector v = coherent_fock(2.0, cutoff_for_magnitude(2.0));
    const auto proj = project_fock(v, 0, CountOutcome::Vacuum);
    REQUIRE_THAT(proj.probability, WithinAbs(std::exp(-4.0), 1e-12));
}

TEST_CASE("projection families are complete and idempotent") {
    const FockVector v = from_super(random_state(2, 2.0));
    const double n2 = v.norm_sq();
    const double total = project_fock(v, 0, CountOutcome::Vacuum).probability +
                         project_fock(v, 0, CountOutcome::NonzeroEven).probability +
                         project_fock(v, 0, CountOutcome::OddCount).probability;
    REQUIRE_THAT(total, WithinAbs(n2, 1e-12));
    const double parity = project_fock(v, 1, CountOutcome::EvenParity).probability +
                          project_fock(v, 1, CountOutcome::OddParity).probability;
    REQUIRE_THAT(parity, WithinAbs(n2, 1e-12));

    for (auto oc : {CountOutcome::Vacuum, CountOutcome::NonzeroEven, CountOutcome::OddCount}) {
        const auto once = project_fock(v, 0, oc);
        const auto twice = project_fock(once.branch, 0, oc);
        REQUIRE_THAT(twice.probability, WithinAbs(once.probability, 1e-15));
        double drift = 0.0;
        for (std::size_t i = 0; i < once.branch.amp.size(); ++i)
            drift = std::max(drift, std::abs(twice.branch.amp[i] - once.branch.amp[i]));
        REQUIRE_THAT(drift, WithinAbs(0.0, 1e-15));
    }
}

TEST_CASE("nonzero-even probability of a displaced state") {
    // frozen: (1-x^2)^2/2 at |alpha|^2 = 2, confirmed by summing even n >= 2
    const FockVector v = coherent_fock(2.0, cutoff_for_magnitude(2.0));
    const auto proj = project_fock(v, 0, CountOutcome::NonzeroEven);
    REQUIRE_THAT(proj.probability, WithinAbs(0.48185209242521704, 1e-12));
    double manual = 0.0;
    for (std::size_t n = 2; n < v.amp.size(); n += 2) manual += std::norm(v.amp[n]);
    REQUIRE_THAT(proj.probability, WithinAbs(manual, 1e-15));
}

TEST_CASE("from_super embeds cats with the right parity support") {
    const FockVector even = from_super(make_cat(1.3, CountOutcome::EvenParity));
    for (std::size_t n = 1; n < even.amp.size(); n += 2)
        REQUIRE_THAT(std::abs(even.amp[n]), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(even.norm_sq(), WithinAbs(1.0, 1e-9));
    REQUIRE_THROWS_AS(from_super(SuperState::coherent({cdouble{4.3, 0.0}})),
                      std::invalid_argument);
}

TEST_CASE("embedding preserves inner products against the exact engine") {
    for (int t = 0; t < 15; ++t) {
        const int modes = 1 + t % 2;
        const SuperState a = random_state(modes, 4.0);
        const SuperState b = random_state(modes, 4.0);
        double m = 0.0;
        for (const auto& s : {a, b})
            for (const auto& term : s.terms())
                for (const auto& l : term.labels) m = std::max(m, std::abs(l));
        const int cutoff = cutoff_for_magnitude(m);
        const cdouble exact = inner_product(a, b);
        const cdouble fock = inner_product(from_super(a, cutoff), from_super(b, cutoff));
        REQUIRE_THAT(std::abs(exact - fock), WithinAbs(0.0, 1e-9));
    }
}

TEST_CASE("reduce_mode_fock contracts a product state") {
    const cdouble a{0.9, -0.2}, b{1.4, 0.5};
    const int cutoff = cutoff_for_magnitude(std::abs(b) + 1.0);
    const FockVector prod = from_super(SuperState::coherent({a, b}), cutoff);
    const FockVector bra = coherent_fock(a, cutoff);
    const FockVector rest = reduce_mode_fock(prod, 0, bra);
    // <a| (|a> ⊗ |b>) = |b> times the unit self-overlap
    const FockVector expect = coherent_fock(b, cutoff);
    REQUIRE_THAT(std::abs(inner_product(expect, rest) - 1.0), WithinAbs(0.0, 1e-9));
    REQUIRE_THROWS_AS(reduce_mode_fock(prod, 0, coherent_fock(a, cutoff + 1)),
                      std::invalid_argument);
}

TEST_CASE("fidelity_fock basics") {
    const FockVector v = from_super(make_cat(1.2, CountOutcome::EvenParity));
    REQUIRE_THAT(fidelity_fock(v, v), WithinAbs(1.0, 1e-12));
    const FockVector w = from_super(make_cat(1.2, CountOutcome::OddParity));
    REQUIRE_THAT(fidelity_fock(v, w), WithinAbs(0.0, 1e-12));
    REQUIRE_THROWS_AS(fidelity_fock(v, FockVector::zeros(1, v.cutoff)), std::domain_error);
}

TEST_CASE("case-3 corrected fidelity through the full Fock pipeline") {
    // frozen: 1 - x^4/(1 + x^4) at |alpha|^2 = 2, theta = pi/2
    const auto cases = run_cases_fock(InfoParams{std::sqrt(2.0), std::numbers::pi / 2.0, 0.0});
    REQUIRE_THAT(cases[2].fidelity, WithinAbs(0.9996646498695335, 1e-9));
}
