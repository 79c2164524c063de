// protocol.hpp
// End-to-end controlled teleportation of a superposed-coherent-state qubit
// through a three-mode entangled coherent channel: channel construction, the
// sender's phase-shifter/beam-splitter network, the ten-outcome measurement
// enumeration, the receiver's fixed corrections, and fidelity aggregation.
// Runs on the exact engine or on the Fock oracle.

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "coherent_algebra.hpp"
#include "fock_oracle.hpp"

namespace cqt {

enum class Backend { Exact, Fock };

// Receiver corrections, 2x2 in the {|EVEN>, |ODD>} cat basis:
//   Swap      = |E><O| + |O><E|      (conventionally U1)
//   SwapFlip  = |E><O| - |O><E|      (U2)
//   ParityFlip= |E><E| - |O><O|      (U3)
enum class CorrectionKind { Identity, Swap, SwapFlip, ParityFlip };

struct Correction {
    CorrectionKind kind = CorrectionKind::Identity;
    int sign = 1;  // global sign; irrelevant to fidelity, kept for reporting
};

inline std::string to_string(const Correction& c) {
    std::string base;
    switch (c.kind) {
        case CorrectionKind::Identity: base = "I"; break;
        case CorrectionKind::Swap: base = "U1"; break;
        case CorrectionKind::SwapFlip: base = "U2"; break;
        case CorrectionKind::ParityFlip: base = "U3"; break;
    }
    return c.sign < 0 ? "-" + base : base;
}

// Branches with probability below this floor are treated as never occurring;
// their conditional state is a zero vector (or, on the Fock backend, pure
// truncation noise), so the reported fidelity is pinned to 0 there. The only
// branches that can reach the floor are the two zero-count cases at theta=pi,
// where 0 is also the analytic limit of their fidelity.
inline constexpr double kZeroProbabilityFloor = 1e-25;

struct CaseResult {
    int case_id = 0;
    CountOutcome alice_first = CountOutcome::Vacuum;   // sum output mode
    CountOutcome alice_second = CountOutcome::Vacuum;  // difference output mode
    CountOutcome charlie_parity = CountOutcome::EvenParity;
    double probability = 0.0;
    SuperState bob_state = SuperState::vacuum(1);  // unnormalized conditional state
    Correction correction;
    double fidelity = 0.0;  // after the fixed correction
    double maf = 0.0;       // worst-case fidelity over all input qubits
};

struct ProtocolReport {
    InfoParams params;
    Backend backend = Backend::Exact;
    std::vector<CaseResult> cases;  // ordered by case_id
    double total_probability = 0.0;
    double average_fidelity = 0.0;  // sum of probability * fidelity
};

struct CaseOutcomes {
    int id;
    CountOutcome alice_first, alice_second, charlie;
};

inline constexpr std::array<CaseOutcomes, 10> kCaseTable{{
    {1, CountOutcome::Vacuum, CountOutcome::Vacuum, CountOutcome::EvenParity},
    {2, CountOutcome::Vacuum, CountOutcome::Vacuum, CountOutcome::OddParity},
    {3, CountOutcome::NonzeroEven, CountOutcome::Vacuum, CountOutcome::EvenParity},
    {4, CountOutcome::NonzeroEven, CountOutcome::Vacuum, CountOutcome::OddParity},
    {5, CountOutcome::Vacuum, CountOutcome::NonzeroEven, CountOutcome::EvenParity},
    {6, CountOutcome::Vacuum, CountOutcome::NonzeroEven, CountOutcome::OddParity},
    {7, CountOutcome::OddCount, CountOutcome::Vacuum, CountOutcome::EvenParity},
    {8, CountOutcome::OddCount, CountOutcome::Vacuum, CountOutcome::OddParity},
    {9, CountOutcome::Vacuum, CountOutcome::OddCount, CountOutcome::EvenParity},
    {10, CountOutcome::Vacuum, CountOutcome::OddCount, CountOutcome::OddParity},
}};

inline Correction correction_for_case(int case_id) {
    switch (case_id) {
        case 1:
        case 3:
        case 8: return {CorrectionKind::Swap, 1};
        case 2:
        case 4:
        case 7: return {CorrectionKind::Identity, 1};
        case 5: return {CorrectionKind::SwapFlip, 1};
        case 6: return {CorrectionKind::ParityFlip, 1};
        case 9: return {CorrectionKind::ParityFlip, -1};
        case 10: return {CorrectionKind::SwapFlip, -1};
        default: throw std::out_of_range("correction_for_case: case_id must be 1..10");
    }
}

// Three-mode channel N_G (|a,a,a> - |-a,-a,-a>) over (sender, controller,
// receiver), N_G = [2(1-x^6)]^{-1/2}.
inline SuperState build_channel(cdouble alpha) {
    if (std::norm(alpha) == 0.0)
        throw std::invalid_argument("build_channel: alpha must be nonzero");
    const double x = x_of(alpha);
    const double ng = 1.0 / std::sqrt(2.0 * (1.0 - std::pow(x, 6)));
    std::vector<Term> ts{Term{cdouble{ng, 0.0}, {alpha, alpha, alpha}},
                         Term{cdouble{-ng, 0.0}, {-alpha, -alpha, -alpha}}};
    return SuperState(3, std::move(ts));
}

// Four-mode joint state (input qubit, sender channel mode, controller mode,
// receiver mode); plain tensor product, at most 4 coherent terms.
inline SuperState build_joint(const SuperState& info, const SuperState& channel) {
    if (info.mode_count() != 1)
        throw std::invalid_argument("build_joint: info must be a 1-mode state");
    if (channel.mode_count() != 3)
        throw std::invalid_argument("build_joint: channel must be a 3-mode state");
    return tensor(info, channel).merged();
}

// Phase shifter, symmetric beam splitter, phase shifter: per-term labels on
// the designated pair map as (b_info, b_send) ->
// ((b_info + b_send)/sqrt2, (b_info - b_send)/sqrt2).
inline SuperState apply_alice_network(const SuperState& s, int info_mode = 0,
                                      int alice_mode = 1) {
    if (s.mode_count() != 4)
        throw std::invalid_argument("apply_alice_network: expected a 4-mode state");
    if (info_mode == alice_mode || info_mode < 0 || info_mode >= 4 || alice_mode < 0 ||
        alice_mode >= 4)
        throw std::invalid_argument("apply_alice_network: invalid mode designation");
    const double half_pi = std::numbers::pi / 2.0;
    SuperState out = apply_phase_shift(s, alice_mode, -half_pi);
    out = apply_beam_splitter(out, info_mode, alice_mode);
    return apply_phase_shift(out, alice_mode, -half_pi);
}

namespace detail {

// Normalized states the measured modes collapse onto, one per outcome class.
inline SuperState collapse_state(CountOutcome o, cdouble beta) {
    switch (o) {
        case CountOutcome::Vacuum: return SuperState::vacuum(1);
        case CountOutcome::NonzeroEven: return make_nonzero_even(beta);
        case CountOutcome::OddCount:
        case CountOutcome::OddParity: return make_cat(beta, CountOutcome::OddParity);
        case CountOutcome::EvenParity: return make_cat(beta, CountOutcome::EvenParity);
    }
    throw std::invalid_argument("collapse_state: bad outcome");
}

}  // namespace detail

// Projects the two sender output modes onto the five admissible joint count
// outcomes and the controller mode onto both parities; emits the ten cases
// with probabilities and the receiver's unnormalized conditional states.
// The four non-admissible joint outcomes (both output modes non-vacuum) are
// asserted to carry probability below 1e-12 rather than silently ignored.
inline std::vector<CaseResult> enumerate_cases(const SuperState& state, cdouble alpha) {
    if (state.mode_count() != 4)
        throw std::invalid_argument("enumerate_cases: expected a 4-mode state");
    const cdouble beta = std::sqrt(2.0) * alpha;

    const std::array<CountOutcome, 2> nonvac{CountOutcome::NonzeroEven, CountOutcome::OddCount};
    for (CountOutcome o0 : nonvac) {
        const Projection p0 = project_mode(state, 0, o0);
        for (CountOutcome o1 : nonvac) {
            const double p = project_mode(p0.branch, 1, o1).probability;
            if (p > 1e-12)
                throw std::logic_error(
                    "enumerate_cases: non-admissible joint outcome carries probability " +
                    std::to_string(p));
        }
    }

    std::vector<CaseResult> out;
    out.reserve(kCaseTable.size());
    for (const auto& row : kCaseTable) {
        const SuperState bra0 = detail::collapse_state(row.alice_first, beta);
        const SuperState bra1 = detail::collapse_state(row.alice_second, beta);
        const SuperState bra2 = detail::collapse_state(row.charlie, alpha);
        SuperState bob = reduce_mode(state, 2, bra2);
        bob = reduce_mode(bob, 1, bra1);
        bob = reduce_mode(bob, 0, bra0);
        CaseResult r;
        r.case_id = row.id;
        r.alice_first = row.alice_first;
        r.alice_second = row.alice_second;
        r.charlie_parity = row.charlie;
        r.probability = bob.norm_sq();
        r.bob_state = bob;
        r.correction = correction_for_case(row.id);
        out.push_back(std::move(r));
    }
    return out;
}

// 2x2 action in the cat basis; the result is re-expressed over the labels
// {+alpha, -alpha}. Requires the state to lie in the logical span.
inline SuperState apply_correction(const SuperState& bob_state, const Correction& c,
                                   cdouble alpha) {
    if (bob_state.mode_count() != 1)
        throw std::invalid_argument("apply_correction: expected a 1-mode state");
    const SuperState cat_e = make_cat(alpha, CountOutcome::EvenParity);
    const SuperState cat_o = make_cat(alpha, CountOutcome::OddParity);
    const cdouble e = inner_product(cat_e, bob_state);
    const cdouble o = inner_product(cat_o, bob_state);
    const double n2 = bob_state.norm_sq();
    const double residual = n2 - std::norm(e) - std::norm(o);
    if (n2 > 1e-20 && residual > 1e-10 * n2)
        throw std::domain_error("apply_correction: state lies outside the logical cat span");
    cdouble e2 = e, o2 = o;
    switch (c.kind) {
        case CorrectionKind::Identity: break;
        case CorrectionKind::Swap: e2 = o; o2 = e; break;
        case CorrectionKind::SwapFlip: e2 = o; o2 = -e; break;
        case CorrectionKind::ParityFlip: e2 = e; o2 = -o; break;
    }
    if (c.sign < 0) {
        e2 = -e2;
        o2 = -o2;
    }
    std::vector<Term> ts = cat_e.scaled(e2).terms();
    const std::vector<Term> ts2 = cat_o.scaled(o2).terms();
    ts.insert(ts.end(), ts2.begin(), ts2.end());
    return SuperState(1, std::move(ts)).merged();
}

// |<info|corrected>|^2 / (||info||^2 ||corrected||^2)
inline double teleport_fidelity(const SuperState& corrected, const SuperState& info) {
    if (corrected.mode_count() != 1 || info.mode_count() != 1)
        throw std::invalid_argument("teleport_fidelity: expected 1-mode states");
    const double n1 = corrected.norm_sq();
    const double n2 = info.norm_sq();
    if (n1 < 1e-300 || n2 < 1e-300)
        throw std::domain_error("teleport_fidelity: zero-norm input");
    double f = std::norm(inner_product(info, corrected)) / (n1 * n2);
    return f > 1.0 ? 1.0 : f;
}

// Replaceable network stage, used by the verification suite to check that a
// wrong (but still unitary) network is caught by the closed-form match.
using NetworkFn = std::function<SuperState(const SuperState&)>;

// Full exact-engine pipeline: prepare, evolve, measure, correct. Fidelities
// are filled in; the maf column is not.
inline std::vector<CaseResult> run_cases_exact(const InfoParams& p,
                                               const NetworkFn& network = {}) {
    p.validate();
    const SuperState info = make_info(p);
    const SuperState joint = build_joint(info, build_channel(p.alpha));
    const SuperState net = network ? network(joint) : apply_alice_network(joint);
    std::vector<CaseResult> cases = enumerate_cases(net, p.alpha);
    for (auto& c : cases) {
        c.fidelity = c.probability < kZeroProbabilityFloor
                         ? 0.0
                         : teleport_fidelity(apply_correction(c.bob_state, c.correction, p.alpha),
                                             info);
    }
    return cases;
}

// Fock-oracle pipeline, shared across qubit angles at a fixed amplitude.
// The joint state is linear in the coherent-basis coefficients (eps+, eps-),
// so the two basis branches are embedded and pushed through the gates once;
// measurement statistics for any (theta, phi) then follow from
// slice-restricted Gram accumulators of the evolved branches, and the
// receiver's conditional states from their mode-reduced images. The gates
// themselves always act in the occupation basis, keeping this route
// independent of the label algebra.
class FockProtocolContext {
public:
    explicit FockProtocolContext(cdouble alpha)
        : alpha_(alpha),
          cutoff_(cutoff_for_magnitude(std::sqrt(2.0) * std::abs(alpha))),
          cat_e_(make_cat(alpha, CountOutcome::EvenParity)),
          cat_o_(make_cat(alpha, CountOutcome::OddParity)) {
        const SuperState channel = build_channel(alpha_);
        const double half_pi = std::numbers::pi / 2.0;
        auto evolve = [&](cdouble label) {
            FockVector w = from_super(tensor(SuperState::coherent({label}), channel), cutoff_);
            w = apply_gate_fock(w, PhaseShiftGate{1, -half_pi});
            w = apply_gate_fock(w, BeamSplitterGate{0, 1});
            return apply_gate_fock(w, PhaseShiftGate{1, -half_pi});
        };
        const FockVector wp = evolve(alpha_);
        const FockVector wm = evolve(-alpha_);

        // one pass accumulates every (count, count, parity) slice restriction
        const int d = cutoff_ + 1;
        std::size_t i = 0;
        for (int n0 = 0; n0 < d; ++n0) {
            const int c0 = count_class(n0);
            for (int n1 = 0; n1 < d; ++n1) {
                const int c1 = count_class(n1);
                for (int n2 = 0; n2 < d; ++n2) {
                    const int p2 = n2 % 2;
                    double app = 0.0, amm = 0.0;
                    cdouble apm{0.0, 0.0};
                    for (int n3 = 0; n3 < d; ++n3, ++i) {
                        app += std::norm(wp.amp[i]);
                        amm += std::norm(wm.amp[i]);
                        apm += std::conj(wp.amp[i]) * wm.amp[i];
                    }
                    acc_pp_[c0][c1][p2] += app;
                    acc_mm_[c0][c1][p2] += amm;
                    acc_pm_[c0][c1][p2] += apm;
                }
            }
        }

        cat_e_f_ = from_super(cat_e_, cutoff_);
        cat_o_f_ = from_super(cat_o_, cutoff_);
        red_plus_ = {reduce_mode_fock(wp, 2, cat_e_f_), reduce_mode_fock(wp, 2, cat_o_f_)};
        red_minus_ = {reduce_mode_fock(wm, 2, cat_e_f_), reduce_mode_fock(wm, 2, cat_o_f_)};
        const cdouble beta = std::sqrt(2.0) * alpha_;
        alice_bras_ = {coherent_fock(cdouble{0.0, 0.0}, cutoff_),
                       from_super(make_nonzero_even(beta), cutoff_),
                       from_super(make_cat(beta, CountOutcome::OddParity), cutoff_)};
    }

    std::vector<CaseResult> cases(double theta, double phi) const {
        const InfoParams p{alpha_, theta, phi};
        p.validate();
        auto [ep, em] = eps_from_amplitudes(p.a_plus(), p.a_minus(), alpha_);
        const FockVector info_f = from_super(make_info(p), cutoff_);

        std::array<FockVector, 2> red;
        for (int par = 0; par < 2; ++par) {
            red[static_cast<std::size_t>(par)] = FockVector::zeros(3, cutoff_);
            auto& r = red[static_cast<std::size_t>(par)];
            const auto& rp = red_plus_[static_cast<std::size_t>(par)];
            const auto& rm = red_minus_[static_cast<std::size_t>(par)];
            for (std::size_t i = 0; i < r.amp.size(); ++i)
                r.amp[i] = ep * rp.amp[i] + em * rm.amp[i];
        }

        std::vector<CaseResult> out;
        out.reserve(kCaseTable.size());
        for (const auto& row : kCaseTable) {
            const int c0 = outcome_class(row.alice_first);
            const int c1 = outcome_class(row.alice_second);
            const int p2 = row.charlie == CountOutcome::EvenParity ? 0 : 1;
            const double prob = std::norm(ep) * acc_pp_[c0][c1][p2] +
                                std::norm(em) * acc_mm_[c0][c1][p2] +
                                2.0 * (std::conj(ep) * em * acc_pm_[c0][c1][p2]).real();

            FockVector bob = reduce_mode_fock(red[static_cast<std::size_t>(p2)], 1,
                                              alice_bras_[static_cast<std::size_t>(c1)]);
            bob = reduce_mode_fock(bob, 0, alice_bras_[static_cast<std::size_t>(c0)]);
            if (std::abs(bob.norm_sq() - prob) > 1e-8)
                throw std::logic_error(
                    "FockProtocolContext: branch does not factorize onto its class states");

            const cdouble e = inner_product(cat_e_f_, bob);
            const cdouble o = inner_product(cat_o_f_, bob);
            CaseResult r;
            r.case_id = row.id;
            r.alice_first = row.alice_first;
            r.alice_second = row.alice_second;
            r.charlie_parity = row.charlie;
            r.probability = prob;
            r.correction = correction_for_case(row.id);
            {
                std::vector<Term> ts = cat_e_.scaled(e).terms();
                const std::vector<Term> ts2 = cat_o_.scaled(o).terms();
                ts.insert(ts.end(), ts2.begin(), ts2.end());
                r.bob_state = SuperState(1, std::move(ts)).merged();
            }
            if (prob < kZeroProbabilityFloor) {
                r.fidelity = 0.0;
            } else {
                cdouble e2 = e, o2 = o;
                switch (r.correction.kind) {
                    case CorrectionKind::Identity: break;
                    case CorrectionKind::Swap: e2 = o; o2 = e; break;
                    case CorrectionKind::SwapFlip: e2 = o; o2 = -e; break;
                    case CorrectionKind::ParityFlip: e2 = e; o2 = -o; break;
                }
                FockVector tele = FockVector::zeros(1, cutoff_);
                const double sgn = r.correction.sign < 0 ? -1.0 : 1.0;
                for (std::size_t i = 0; i < tele.amp.size(); ++i)
                    tele.amp[i] = sgn * (e2 * cat_e_f_.amp[i] + o2 * cat_o_f_.amp[i]);
                r.fidelity = fidelity_fock(tele, info_f);
            }
            out.push_back(std::move(r));
        }
        return out;
    }

private:
    static int count_class(int n) { return n == 0 ? 0 : (n % 2 == 0 ? 1 : 2); }

    static int outcome_class(CountOutcome o) {
        switch (o) {
            case CountOutcome::Vacuum: return 0;
            case CountOutcome::NonzeroEven: return 1;
            default: return 2;
        }
    }

    cdouble alpha_;
    int cutoff_;
    SuperState cat_e_, cat_o_;
    double acc_pp_[3][3][2] = {};
    double acc_mm_[3][3][2] = {};
    cdouble acc_pm_[3][3][2] = {};
    std::array<FockVector, 2> red_plus_;   // controller mode reduced on even/odd cats
    std::array<FockVector, 2> red_minus_;
    std::array<FockVector, 3> alice_bras_;  // vacuum / nonzero-even / odd class states
    FockVector cat_e_f_, cat_o_f_;
};

inline std::vector<CaseResult> run_cases_fock(const InfoParams& p) {
    p.validate();
    return FockProtocolContext(p.alpha).cases(p.theta, p.phi);
}

namespace detail {

inline double case_fidelity_at(cdouble alpha, double theta, int case_index) {
    return run_cases_exact(InfoParams{alpha, theta, 0.0})[static_cast<std::size_t>(case_index)]
        .fidelity;
}

// Golden-section minimization on [lo, hi]; returns the smallest value seen.
inline double golden_min(const std::function<double(double)>& f, double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double best = std::min(f(lo), f(hi));
    double a = lo, b = hi;
    double c = b - (b - a) * inv_phi;
    double d = a + (b - a) * inv_phi;
    double fc = f(c), fd = f(d);
    while (b - a > 1e-10) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = f(d);
        }
        best = std::min({best, fc, fd});
    }
    return best;
}

}  // namespace detail

// Worst-case fidelity of every case over all input qubits: the fidelities
// are phi-independent (a tested property), so the minimization runs over a
// 721-point theta grid refined by golden section. Simulated on the exact
// engine.
inline std::array<double, 10> minimum_assured_fidelities(cdouble alpha) {
    constexpr int n_grid = 721;
    const double pi = std::numbers::pi;
    std::array<std::array<double, n_grid>, 10> fids{};
    for (int i = 0; i < n_grid; ++i) {
        const double theta = pi * i / (n_grid - 1);
        const auto cases = run_cases_exact(InfoParams{alpha, theta, 0.0});
        for (int c = 0; c < 10; ++c)
            fids[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)] =
                cases[static_cast<std::size_t>(c)].fidelity;
    }
    std::array<double, 10> out{};
    for (int c = 0; c < 10; ++c) {
        const auto& row = fids[static_cast<std::size_t>(c)];
        int i0 = 0;
        for (int i = 1; i < n_grid; ++i)
            if (row[static_cast<std::size_t>(i)] < row[static_cast<std::size_t>(i0)]) i0 = i;
        const double lo = pi * std::max(0, i0 - 1) / (n_grid - 1);
        const double hi = pi * std::min(n_grid - 1, i0 + 1) / (n_grid - 1);
        const double refined = detail::golden_min(
            [&](double th) { return detail::case_fidelity_at(alpha, th, c); }, lo, hi);
        out[static_cast<std::size_t>(c)] = std::min(row[static_cast<std::size_t>(i0)], refined);
    }
    return out;
}

inline double minimum_assured_fidelity(int case_id, cdouble alpha) {
    if (case_id < 1 || case_id > 10)
        throw std::out_of_range("minimum_assured_fidelity: case_id must be 1..10");
    return minimum_assured_fidelities(alpha)[static_cast<std::size_t>(case_id - 1)];
}

// Deterministic full report, cases ordered by id. The maf column is always
// evaluated on the exact engine (the quantity does not depend on the backend
// and a Fock-space theta sweep would be needlessly expensive); with_maf=false
// skips it for callers that only need probabilities and fidelities.
inline ProtocolReport run_protocol(const InfoParams& p, Backend backend,
                                   bool with_maf = true) {
    p.validate();
    ProtocolReport rep;
    rep.params = p;
    rep.backend = backend;
    rep.cases = backend == Backend::Exact ? run_cases_exact(p) : run_cases_fock(p);
    if (with_maf) {
        const auto mafs = minimum_assured_fidelities(p.alpha);
        for (auto& c : rep.cases) c.maf = mafs[static_cast<std::size_t>(c.case_id - 1)];
    }
    for (const auto& c : rep.cases) {
        rep.total_probability += c.probability;
        rep.average_fidelity += c.probability * c.fidelity;
    }
    return rep;
}

}  // namespace cqt
