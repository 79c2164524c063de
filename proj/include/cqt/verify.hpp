// verify.hpp
// Invariant suite over the standard verification grid. Each check returns a
// pass flag plus a short diagnostic with the worst violation found; the CLI
// prints one line per check and the acceptance suite reuses the same grid
// machinery.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "analytics.hpp"
#include "coherent_algebra.hpp"
#include "fock_oracle.hpp"
#include "protocol.hpp"

namespace cqt {

inline const std::vector<double> kGridAlphaSq{0.5, 1.0, 2.0, 4.0};
inline const std::vector<double> kGridTheta{0.0, std::numbers::pi / 4.0, std::numbers::pi / 2.0,
                                            3.0 * std::numbers::pi / 4.0, std::numbers::pi};
inline const std::vector<double> kGridPhi{0.0, std::numbers::pi / 3.0};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct GridPointData {
    InfoParams params;
    std::vector<CaseResult> exact_cases;
    std::vector<CaseResult> fock_cases;  // empty when the Fock pass is skipped
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string at_point(const InfoParams& p, int case_id = 0) {
    std::string s = "alpha_sq=" + fmt(std::norm(p.alpha)) + " theta=" + fmt(p.theta) +
                    " phi=" + fmt(p.phi);
    if (case_id > 0) s += " case=" + std::to_string(case_id);
    return s;
}

inline cdouble random_label(std::mt19937& rng, double max_mag) {
    std::uniform_real_distribution<double> mag(0.0, max_mag);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    return std::polar(mag(rng), ang(rng));
}

inline SuperState random_state(std::mt19937& rng, int modes, double max_mag) {
    std::uniform_int_distribution<int> n_terms(1, 3);
    std::uniform_real_distribution<double> re(-1.0, 1.0);
    std::vector<Term> ts;
    const int n = n_terms(rng);
    for (int t = 0; t < n; ++t) {
        Term term;
        term.coeff = cdouble{re(rng), re(rng)};
        for (int m = 0; m < modes; ++m) term.labels.push_back(random_label(rng, max_mag));
        ts.push_back(std::move(term));
    }
    return SuperState(modes, std::move(ts));
}

}  // namespace detail

// One protocol run per grid point; the Fock context is shared per amplitude.
inline std::vector<GridPointData> compute_grid_data(bool with_fock) {
    std::vector<GridPointData> out;
    for (double a : kGridAlphaSq) {
        std::optional<FockProtocolContext> ctx;
        if (with_fock) ctx.emplace(std::sqrt(a));
        for (double th : kGridTheta) {
            for (double ph : kGridPhi) {
                GridPointData d;
                d.params = InfoParams{std::sqrt(a), th, ph};
                d.exact_cases = run_cases_exact(d.params);
                if (ctx) d.fock_cases = ctx->cases(th, ph);
                out.push_back(std::move(d));
            }
        }
    }
    return out;
}

// --------------------------- individual checks ------------------------------

inline CheckResult check_gram_consistency() {
    std::mt19937 rng(20240811);
    double worst = 0.0;
    for (int trial = 0; trial < 24; ++trial) {
        const int modes = 1 + trial % 2;
        const SuperState a = detail::random_state(rng, modes, 4.0);
        const SuperState b = detail::random_state(rng, modes, 4.0);
        double m = 0.0;
        for (const auto& s : {a, b})
            for (const auto& t : s.terms())
                for (const auto& l : t.labels) m = std::max(m, std::abs(l));
        const int cutoff = cutoff_for_magnitude(m);
        const cdouble exact = inner_product(a, b);
        const cdouble fock = inner_product(from_super(a, cutoff), from_super(b, cutoff));
        worst = std::max(worst, std::abs(exact - fock));
    }
    return {"gram-consistency", worst <= 1e-9,
            "max |exact - fock| inner product deviation " + detail::fmt(worst)};
}

inline CheckResult check_gate_unitarity_exact() {
    std::mt19937 rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        const SuperState a = detail::random_state(rng, 2, 3.0);
        const SuperState b = detail::random_state(rng, 2, 3.0);
        const cdouble before = inner_product(a, b);
        std::uniform_real_distribution<double> ph(-std::numbers::pi, std::numbers::pi);
        const double phase = ph(rng);
        const cdouble after_ps =
            inner_product(apply_phase_shift(a, 1, phase), apply_phase_shift(b, 1, phase));
        const cdouble after_bs =
            inner_product(apply_beam_splitter(a, 0, 1), apply_beam_splitter(b, 0, 1));
        worst = std::max({worst, std::abs(after_ps - before), std::abs(after_bs - before)});
    }
    return {"gate-unitarity-exact", worst <= 1e-12,
            "max inner-product change under phase shift / beam splitter " + detail::fmt(worst)};
}

inline CheckResult check_gate_unitarity_fock() {
    std::mt19937 rng(11);
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
        const SuperState s = detail::random_state(rng, 2, 2.5);
        const FockVector v = from_super(s);
        const double n0 = std::sqrt(v.norm_sq());
        FockVector w = apply_gate_fock(v, PhaseShiftGate{0, 1.234});
        w = apply_gate_fock(w, BeamSplitterGate{0, 1});
        worst = std::max(worst, std::abs(std::sqrt(w.norm_sq()) - n0));
    }
    return {"gate-unitarity-fock", worst <= 1e-9, "max norm drift " + detail::fmt(worst)};
}

inline CheckResult check_projection_completeness() {
    std::mt19937 rng(13);
    double worst = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
        const SuperState s = detail::random_state(rng, 2, 3.0);
        const double n2 = s.norm_sq();
        for (int mode = 0; mode < 2; ++mode) {
            const double count_sum = project_mode(s, mode, CountOutcome::Vacuum).probability +
                                     project_mode(s, mode, CountOutcome::NonzeroEven).probability +
                                     project_mode(s, mode, CountOutcome::OddCount).probability;
            const double parity_sum = project_mode(s, mode, CountOutcome::EvenParity).probability +
                                      project_mode(s, mode, CountOutcome::OddParity).probability;
            worst = std::max({worst, std::abs(count_sum - n2), std::abs(parity_sum - n2)});
        }
    }
    return {"projection-completeness", worst <= 1e-12,
            "max |sum of outcome probabilities - norm^2| = " + detail::fmt(worst)};
}

inline CheckResult check_parity_consistency() {
    std::mt19937 rng(17);
    double worst = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
        const SuperState s = detail::random_state(rng, 2, 3.0);
        for (int mode = 0; mode < 2; ++mode) {
            const double even = project_mode(s, mode, CountOutcome::EvenParity).probability;
            const double vac = project_mode(s, mode, CountOutcome::Vacuum).probability;
            const double nze = project_mode(s, mode, CountOutcome::NonzeroEven).probability;
            worst = std::max(worst, std::abs(even - vac - nze));
        }
    }
    return {"parity-consistency", worst <= 1e-12,
            "max |P(even) - P(vacuum) - P(nonzero even)| = " + detail::fmt(worst)};
}

inline CheckResult check_merge_invariance() {
    std::mt19937 rng(19);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        SuperState s = detail::random_state(rng, 2, 3.0);
        // duplicate every term with split coefficients; merged() must undo it
        std::vector<Term> ts;
        for (const auto& t : s.terms()) {
            ts.push_back(Term{t.coeff * 0.25, t.labels});
            ts.push_back(Term{t.coeff * 0.75, t.labels});
        }
        const SuperState dup(2, std::move(ts));
        worst = std::max(worst, std::abs(dup.norm_sq() - s.norm_sq()));
        worst = std::max(worst, std::abs(inner_product(dup.merged(), s) - inner_product(dup, s)));
        for (auto oc : {CountOutcome::Vacuum, CountOutcome::NonzeroEven, CountOutcome::OddCount})
            worst = std::max(worst, std::abs(project_mode(dup, 0, oc).probability -
                                             project_mode(s, 0, oc).probability));
    }
    return {"merge-invariance", worst <= 1e-12,
            "max deviation between merged and unmerged results " + detail::fmt(worst)};
}

inline CheckResult check_fock_projector_idempotence() {
    std::mt19937 rng(23);
    double worst = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
        const FockVector v = from_super(detail::random_state(rng, 2, 2.0));
        for (auto oc : {CountOutcome::Vacuum, CountOutcome::NonzeroEven, CountOutcome::OddCount,
                        CountOutcome::EvenParity}) {
            const FockProjection once = project_fock(v, 0, oc);
            const FockProjection twice = project_fock(once.branch, 0, oc);
            worst = std::max(worst, std::abs(twice.probability - once.probability));
            for (std::size_t i = 0; i < once.branch.amp.size(); ++i)
                worst = std::max(worst, std::abs(twice.branch.amp[i] - once.branch.amp[i]));
        }
    }
    return {"fock-projector-idempotence", worst <= 1e-15,
            "max change on re-projection " + detail::fmt(worst)};
}

inline CheckResult check_probability_completeness(const std::vector<GridPointData>& grid) {
    double worst_exact = 0.0, worst_fock = 0.0;
    for (const auto& d : grid) {
        double se = 0.0;
        for (const auto& c : d.exact_cases) se += c.probability;
        worst_exact = std::max(worst_exact, std::abs(se - 1.0));
        if (!d.fock_cases.empty()) {
            double sf = 0.0;
            for (const auto& c : d.fock_cases) sf += c.probability;
            worst_fock = std::max(worst_fock, std::abs(sf - 1.0));
        }
    }
    const bool pass = worst_exact <= 1e-10 && worst_fock <= 1e-8;
    return {"probability-completeness", pass,
            "max |sum P - 1|: exact " + detail::fmt(worst_exact) + ", fock " +
                detail::fmt(worst_fock)};
}

inline CheckResult check_phi_invariance() {
    double worst = 0.0;
    for (double a : kGridAlphaSq) {
        for (double th : kGridTheta) {
            const auto base = run_cases_exact(InfoParams{std::sqrt(a), th, 0.0});
            for (double ph : {std::numbers::pi / 3.0, 2.5, 5.8}) {
                const auto other = run_cases_exact(InfoParams{std::sqrt(a), th, ph});
                for (std::size_t i = 0; i < base.size(); ++i) {
                    worst = std::max(worst,
                                     std::abs(base[i].probability - other[i].probability));
                    worst = std::max(worst, std::abs(base[i].fidelity - other[i].fidelity));
                }
            }
        }
    }
    return {"phi-invariance", worst <= 1e-10,
            "max change of any probability/fidelity under phi shifts " + detail::fmt(worst)};
}

// Fidelity of one case under an arbitrary correction choice, floor applied.
inline double fidelity_with_correction(const CaseResult& c, const Correction& corr,
                                       const SuperState& info, cdouble alpha) {
    if (c.probability < kZeroProbabilityFloor) return 0.0;
    return teleport_fidelity(apply_correction(c.bob_state, corr, alpha), info);
}

inline CheckResult check_correction_optimality(const std::vector<GridPointData>& grid) {
    double worst_margin = 1.0;
    std::string where = "n/a";
    int failures = 0;
    for (const auto& d : grid) {
        const SuperState info = make_info(d.params);
        for (const auto& c : d.exact_cases) {
            double best_other = 0.0;
            for (auto kind : {CorrectionKind::Identity, CorrectionKind::Swap,
                              CorrectionKind::SwapFlip, CorrectionKind::ParityFlip}) {
                if (kind == c.correction.kind) continue;
                best_other = std::max(best_other, fidelity_with_correction(
                                                      c, Correction{kind, 1}, info, d.params.alpha));
            }
            const double margin = c.fidelity - best_other;
            if (margin < worst_margin) {
                worst_margin = margin;
                where = detail::at_point(d.params, c.case_id);
            }
            if (margin < -1e-12) ++failures;
        }
    }
    return {"correction-optimality", failures == 0,
            std::to_string(failures) + " case-points where the assigned correction is beaten; "
            "worst margin " + detail::fmt(worst_margin) + " at " + where};
}

inline CheckResult check_perfect_cases(const std::vector<GridPointData>& grid) {
    double worst = 0.0;
    for (const auto& d : grid)
        for (int id : {4, 6, 7, 9})
            worst = std::max(worst,
                             std::abs(d.exact_cases[static_cast<std::size_t>(id - 1)].fidelity - 1.0));
    return {"perfect-cases", worst <= 1e-10,
            "max |fidelity - 1| over cases 4,6,7,9: " + detail::fmt(worst)};
}

inline CheckResult check_probability_limits() {
    // large-amplitude behaviour at alpha_sq = 8 for every grid theta
    double worst_dev = 0.0, worst_p12 = 0.0;
    for (double th : kGridTheta) {
        const auto cases = run_cases_exact(InfoParams{std::sqrt(8.0), th, 0.0});
        for (int id = 3; id <= 10; ++id)
            worst_dev = std::max(worst_dev,
                                 std::abs(cases[static_cast<std::size_t>(id - 1)].probability - 0.125));
        worst_p12 = std::max(worst_p12, cases[0].probability + cases[1].probability);
    }
    const bool pass = worst_dev <= 1e-3 && worst_p12 <= 2.5e-7;
    return {"probability-limits", pass,
            "alpha_sq=8: max |P - 1/8| = " + detail::fmt(worst_dev) +
                ", P(case1)+P(case2) = " + detail::fmt(worst_p12)};
}

inline CheckResult check_backend_equivalence(const std::vector<GridPointData>& grid) {
    double worst = 0.0;
    std::string where = "n/a";
    for (const auto& d : grid) {
        if (d.fock_cases.empty()) continue;
        for (std::size_t i = 0; i < d.exact_cases.size(); ++i) {
            const double dp =
                std::abs(d.exact_cases[i].probability - d.fock_cases[i].probability);
            const double df = std::abs(d.exact_cases[i].fidelity - d.fock_cases[i].fidelity);
            if (std::max(dp, df) > worst) {
                worst = std::max(dp, df);
                where = detail::at_point(d.params, static_cast<int>(i) + 1);
            }
        }
    }
    return {"backend-equivalence", worst <= 1e-8,
            "max |exact - fock| over probabilities and fidelities " + detail::fmt(worst) +
                " at " + where};
}

inline CheckResult check_closed_form_match(const NetworkFn& network = {}) {
    double worst_p = 0.0, worst_f = 0.0;
    for (double a : kGridAlphaSq) {
        for (double th : kGridTheta) {
            for (double ph : kGridPhi) {
                const auto cases = run_cases_exact(InfoParams{std::sqrt(a), th, ph}, network);
                for (const auto& c : cases) {
                    worst_p = std::max(worst_p,
                                       std::abs(c.probability - p_case(c.case_id, a, th)));
                    worst_f = std::max(worst_f, std::abs(c.fidelity - f_case(c.case_id, a, th)));
                }
            }
        }
    }
    const bool pass = worst_p <= 1e-10 && worst_f <= 1e-10;
    return {"closed-form-match", pass,
            "max |P_sim - P_closed| = " + detail::fmt(worst_p) +
                ", max |F_sim - F_closed| = " + detail::fmt(worst_f)};
}

inline CheckResult check_normalization_identity() {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> ua(0.05, 8.0);
    std::uniform_real_distribution<double> ut(0.0, std::numbers::pi);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const double a = ua(rng), th = ut(rng);
        const double s = 2.0 * p_case(1, a, th) + 4.0 * p_case(3, a, th) +
                         2.0 * p_case(4, a, th) + 2.0 * p_case(7, a, th);
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return {"normalization-identity", worst <= 1e-14,
            "max |2 P0 + 4 P1 + 2 P2 + 2 P3 - 1| = " + detail::fmt(worst)};
}

inline CheckResult check_monotone_limits() {
    const auto grid = linear_grid(0.25, 8.0, 64);
    bool ok = true;
    for (double th : {0.0, std::numbers::pi / 2.0, std::numbers::pi}) {
        for (int id : {3, 4, 7}) {  // one representative per probability class
            double prev = 1.0;
            for (double a : grid) {
                const double dev = std::abs(p_case(id, a, th) - 0.125);
                if (dev > prev + 1e-15) ok = false;
                prev = dev;
            }
        }
    }
    double prev = 0.0;
    for (double a : grid) {
        const double m = maf_case(3, a);
        if (m < prev - 1e-15) ok = false;
        prev = m;
    }
    return {"monotone-limits", ok,
            "|P - 1/8| non-increasing and worst-case fidelity constant non-decreasing in alpha_sq"};
}

inline CheckResult check_avg_fidelity_bracket(const std::vector<GridPointData>& grid) {
    double worst_low = 0.0, worst_high = 0.0, worst_mid = 0.0;
    for (const auto& d : grid) {
        const double a = std::norm(d.params.alpha);
        double case_sum = 0.0;
        for (const auto& c : d.exact_cases) case_sum += c.probability * c.fidelity;
        const double gap = case_sum - f_avg_closed(a, d.params.theta);
        worst_low = std::min(worst_low, gap);
        worst_high = std::max(worst_high, gap - f_avg_gap_bound(a));
        if (std::abs(d.params.theta - std::numbers::pi / 2.0) < 1e-12)
            worst_mid = std::max(worst_mid, std::abs(gap));
    }
    const bool pass = worst_low >= -1e-12 && worst_high <= 1e-12 && worst_mid <= 1e-12;
    return {"avg-fidelity-bracket", pass,
            "gap range ok within [" + detail::fmt(worst_low) + ", bound+" +
                detail::fmt(worst_high) + "], |gap| at theta=pi/2 " + detail::fmt(worst_mid)};
}

inline CheckResult check_maf_values() {
    double worst = 0.0;
    std::string where = "n/a";
    int failures = 0;
    for (double a : kGridAlphaSq) {
        const auto mafs = minimum_assured_fidelities(std::sqrt(a));
        for (int id = 1; id <= 10; ++id) {
            const double dev = std::abs(mafs[static_cast<std::size_t>(id - 1)] - maf_case(id, a));
            if (dev > worst) {
                worst = dev;
                where = "alpha_sq=" + detail::fmt(a) + " case=" + std::to_string(id);
            }
            if (dev > 1e-9) ++failures;
        }
    }
    return {"maf-values", failures == 0,
            std::to_string(failures) +
                " cases where the simulated worst-case fidelity deviates from the tabulated "
                "constant; max deviation " + detail::fmt(worst) + " at " + where};
}

// ----------------------------- the full suite -------------------------------

inline std::vector<CheckResult> run_verification() {
    const auto grid = compute_grid_data(/*with_fock=*/true);
    std::vector<CheckResult> out;
    out.push_back(check_gram_consistency());
    out.push_back(check_gate_unitarity_exact());
    out.push_back(check_gate_unitarity_fock());
    out.push_back(check_projection_completeness());
    out.push_back(check_parity_consistency());
    out.push_back(check_merge_invariance());
    out.push_back(check_fock_projector_idempotence());
    out.push_back(check_probability_completeness(grid));
    out.push_back(check_phi_invariance());
    out.push_back(check_closed_form_match());
    out.push_back(check_normalization_identity());
    out.push_back(check_perfect_cases(grid));
    out.push_back(check_correction_optimality(grid));
    out.push_back(check_probability_limits());
    out.push_back(check_backend_equivalence(grid));
    out.push_back(check_monotone_limits());
    out.push_back(check_avg_fidelity_bracket(grid));
    out.push_back(check_maf_values());
    return out;
}

}  // namespace cqt
