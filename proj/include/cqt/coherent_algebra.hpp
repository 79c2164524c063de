// coherent_algebra.hpp
// Exact engine for states that are finite complex-linear combinations of
// multimode coherent states. Inner products go through the Gram expansion of
// pairwise coherent overlaps, so no truncation is involved anywhere.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cqt {

using cdouble = std::complex<double>;

// Labels closer than this (per mode, complex distance) are treated as equal
// when merging terms. All labels produced by the protocol are exact linear
// images of the inputs, so collisions are either exact or absent.
inline constexpr double kLabelMergeTol = 1e-12;

// <beta|gamma> = exp(-|beta|^2/2 - |gamma|^2/2 + conj(beta)*gamma),
// so |<beta|gamma>|^2 = exp(-|beta-gamma|^2).
inline cdouble coherent_overlap(cdouble beta, cdouble gamma) {
    return std::exp(-0.5 * std::norm(beta) - 0.5 * std::norm(gamma) +
                    std::conj(beta) * gamma);
}

// x parameter of an amplitude: x = e^{-|alpha|^2}, so <alpha|-alpha> = x^2
// and <0|sqrt(2) alpha> = x.
inline double x_of(cdouble alpha) { return std::exp(-std::norm(alpha)); }

// Measurement outcome classes. {Vacuum, NonzeroEven, OddCount} is the
// photon-count family; {EvenParity, OddParity} is the parity family.
enum class CountOutcome { Vacuum, NonzeroEven, OddCount, EvenParity, OddParity };

inline bool is_count_outcome(CountOutcome o) {
    return o == CountOutcome::Vacuum || o == CountOutcome::NonzeroEven ||
           o == CountOutcome::OddCount;
}

inline bool is_parity_outcome(CountOutcome o) {
    return o == CountOutcome::EvenParity || o == CountOutcome::OddParity;
}

struct Term {
    cdouble coeff;
    std::vector<cdouble> labels;  // one coherent amplitude per mode
};

class SuperState {
public:
    SuperState(int mode_count, std::vector<Term> terms)
        : mode_count_(mode_count), terms_(std::move(terms)) {
        if (mode_count_ <= 0)
            throw std::invalid_argument("SuperState: mode count must be positive");
        for (const auto& t : terms_)
            if (static_cast<int>(t.labels.size()) != mode_count_)
                throw std::invalid_argument("SuperState: term label count != mode count");
    }

    // |labels[0], labels[1], ...> with unit coefficient.
    static SuperState coherent(std::vector<cdouble> labels) {
        const int n = static_cast<int>(labels.size());
        return SuperState(n, {Term{cdouble{1.0, 0.0}, std::move(labels)}});
    }

    static SuperState vacuum(int mode_count) {
        return coherent(std::vector<cdouble>(static_cast<size_t>(mode_count), cdouble{0.0, 0.0}));
    }

    int mode_count() const { return mode_count_; }
    const std::vector<Term>& terms() const { return terms_; }

    double norm_sq() const;
    SuperState merged() const;
    SuperState normalized() const;
    SuperState scaled(cdouble factor) const {
        std::vector<Term> ts = terms_;
        for (auto& t : ts) t.coeff *= factor;
        return SuperState(mode_count_, std::move(ts));
    }

private:
    int mode_count_;
    std::vector<Term> terms_;
};

inline cdouble inner_product(const SuperState& a, const SuperState& b) {
    if (a.mode_count() != b.mode_count())
        throw std::invalid_argument("inner_product: mode count mismatch");
    cdouble acc{0.0, 0.0};
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            cdouble g = std::conj(ta.coeff) * tb.coeff;
            for (int m = 0; m < a.mode_count(); ++m)
                g *= coherent_overlap(ta.labels[static_cast<size_t>(m)],
                                      tb.labels[static_cast<size_t>(m)]);
            acc += g;
        }
    }
    return acc;
}

inline double SuperState::norm_sq() const {
    double n = inner_product(*this, *this).real();
    return n < 0.0 ? 0.0 : n;  // clamp Gram rounding dust
}

inline SuperState SuperState::merged() const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        bool found = false;
        for (auto& o : out) {
            bool same = true;
            for (int m = 0; m < mode_count_; ++m) {
                if (std::abs(t.labels[static_cast<size_t>(m)] - o.labels[static_cast<size_t>(m)]) >
                    kLabelMergeTol) {
                    same = false;
                    break;
                }
            }
            if (same) {
                o.coeff += t.coeff;
                found = true;
                break;
            }
        }
        if (!found) out.push_back(t);
    }
    std::erase_if(out, [](const Term& t) { return t.coeff == cdouble{0.0, 0.0}; });
    return SuperState(mode_count_, std::move(out));
}

inline SuperState SuperState::normalized() const {
    const double n2 = norm_sq();
    if (n2 < 1e-300) throw std::domain_error("SuperState: cannot normalize zero state");
    return scaled(cdouble{1.0 / std::sqrt(n2), 0.0});
}

inline SuperState tensor(const SuperState& a, const SuperState& b) {
    std::vector<Term> out;
    out.reserve(a.terms().size() * b.terms().size());
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            Term t;
            t.coeff = ta.coeff * tb.coeff;
            t.labels = ta.labels;
            t.labels.insert(t.labels.end(), tb.labels.begin(), tb.labels.end());
            out.push_back(std::move(t));
        }
    }
    return SuperState(a.mode_count() + b.mode_count(), std::move(out));
}

inline void check_mode(const SuperState& s, int mode, const char* who) {
    if (mode < 0 || mode >= s.mode_count())
        throw std::out_of_range(std::string(who) + ": mode index out of range");
}

// |beta> -> |e^{i phase} beta> on one mode; coefficients untouched.
inline SuperState apply_phase_shift(const SuperState& s, int mode, double phase) {
    check_mode(s, mode, "apply_phase_shift");
    const cdouble f = std::exp(cdouble{0.0, phase});
    std::vector<Term> ts = s.terms();
    for (auto& t : ts) t.labels[static_cast<size_t>(mode)] *= f;
    return SuperState(s.mode_count(), std::move(ts));
}

// Symmetric lossless mix: per-term labels (beta, gamma) ->
// ((beta + i gamma)/sqrt2, (gamma + i beta)/sqrt2). |beta|^2 + |gamma|^2 is
// preserved term by term, hence all inner products are preserved.
inline SuperState apply_beam_splitter(const SuperState& s, int mode_a, int mode_b) {
    check_mode(s, mode_a, "apply_beam_splitter");
    check_mode(s, mode_b, "apply_beam_splitter");
    if (mode_a == mode_b)
        throw std::invalid_argument("apply_beam_splitter: modes must be distinct");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const cdouble i{0.0, 1.0};
    std::vector<Term> ts = s.terms();
    for (auto& t : ts) {
        const cdouble beta = t.labels[static_cast<size_t>(mode_a)];
        const cdouble gamma = t.labels[static_cast<size_t>(mode_b)];
        t.labels[static_cast<size_t>(mode_a)] = (beta + i * gamma) * inv_sqrt2;
        t.labels[static_cast<size_t>(mode_b)] = (gamma + i * beta) * inv_sqrt2;
    }
    return SuperState(s.mode_count(), std::move(ts));
}

struct Projection {
    SuperState branch;   // unnormalized post-measurement state, same mode count
    double probability;  // squared norm of the branch
};

// Projects one mode onto an outcome class. Vacuum keeps the |0> component
// (per-term amplitude <0|beta>), the parity classes keep (|beta> +- |-beta>)/2,
// and NonzeroEven is the even-parity component minus the vacuum component.
inline Projection project_mode(const SuperState& s, int mode, CountOutcome outcome) {
    check_mode(s, mode, "project_mode");
    std::vector<Term> out;
    const auto m = static_cast<size_t>(mode);
    for (const auto& t : s.terms()) {
        const cdouble beta = t.labels[m];
        auto emit = [&](cdouble coeff, cdouble label) {
            Term nt = t;
            nt.coeff = coeff;
            nt.labels[m] = label;
            out.push_back(std::move(nt));
        };
        const cdouble vac_amp = coherent_overlap(cdouble{0.0, 0.0}, beta);
        switch (outcome) {
            case CountOutcome::Vacuum:
                emit(t.coeff * vac_amp, cdouble{0.0, 0.0});
                break;
            case CountOutcome::EvenParity:
                emit(t.coeff * 0.5, beta);
                emit(t.coeff * 0.5, -beta);
                break;
            case CountOutcome::OddCount:
            case CountOutcome::OddParity:
                emit(t.coeff * 0.5, beta);
                emit(-t.coeff * 0.5, -beta);
                break;
            case CountOutcome::NonzeroEven:
                emit(t.coeff * 0.5, beta);
                emit(t.coeff * 0.5, -beta);
                emit(-t.coeff * vac_amp, cdouble{0.0, 0.0});
                break;
        }
    }
    SuperState branch = SuperState(s.mode_count(), std::move(out)).merged();
    return Projection{branch, branch.norm_sq()};
}

// (<bra|_mode ⊗ I) |s> for a 1-mode bra; the measured mode is removed.
inline SuperState reduce_mode(const SuperState& s, int mode, const SuperState& bra) {
    check_mode(s, mode, "reduce_mode");
    if (bra.mode_count() != 1)
        throw std::invalid_argument("reduce_mode: bra must be a 1-mode state");
    if (s.mode_count() < 2)
        throw std::invalid_argument("reduce_mode: state must keep at least one mode");
    std::vector<Term> out;
    for (const auto& t : s.terms()) {
        for (const auto& b : bra.terms()) {
            Term nt;
            nt.coeff = t.coeff * std::conj(b.coeff) *
                       coherent_overlap(b.labels[0], t.labels[static_cast<size_t>(mode)]);
            nt.labels = t.labels;
            nt.labels.erase(nt.labels.begin() + mode);
            out.push_back(std::move(nt));
        }
    }
    return SuperState(s.mode_count() - 1, std::move(out)).merged();
}

// Orthogonal cat states, [2(1 +- x^2)]^{-1/2} (|alpha> +- |-alpha>).
inline SuperState make_cat(cdouble alpha, CountOutcome parity) {
    if (std::norm(alpha) == 0.0)
        throw std::invalid_argument("make_cat: amplitude must be nonzero");
    if (!is_parity_outcome(parity))
        throw std::invalid_argument("make_cat: parity must be EvenParity or OddParity");
    const double x2 = x_of(alpha) * x_of(alpha);
    const bool even = parity == CountOutcome::EvenParity;
    const double norm = 1.0 / std::sqrt(2.0 * (even ? 1.0 + x2 : 1.0 - x2));
    std::vector<Term> ts{Term{cdouble{norm, 0.0}, {alpha}},
                         Term{cdouble{even ? norm : -norm, 0.0}, {-alpha}}};
    return SuperState(1, std::move(ts));
}

// State with a nonzero even photon number: the even-parity component of
// |beta> with the vacuum removed, normalized.
inline SuperState make_nonzero_even(cdouble beta) {
    if (std::norm(beta) == 0.0)
        throw std::invalid_argument("make_nonzero_even: amplitude must be nonzero");
    const cdouble vac = coherent_overlap(cdouble{0.0, 0.0}, beta);  // <0|beta>
    std::vector<Term> ts{Term{cdouble{1.0, 0.0}, {beta}},
                         Term{cdouble{1.0, 0.0}, {-beta}},
                         Term{-2.0 * vac, {cdouble{0.0, 0.0}}}};
    return SuperState(1, std::move(ts)).normalized();
}

// Qubit parameters on the cat-state Bloch sphere:
// A+ = cos(theta/2), A- = e^{i phi} sin(theta/2).
struct InfoParams {
    cdouble alpha;
    double theta = 0.0;  // radians, [0, pi]
    double phi = 0.0;    // radians, [0, 2 pi)

    void validate() const {
        if (std::norm(alpha) == 0.0)
            throw std::invalid_argument("InfoParams: alpha must be nonzero");
        if (!(theta >= 0.0 && theta <= std::numbers::pi))
            throw std::invalid_argument("InfoParams: theta must lie in [0, pi]");
        if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
            throw std::invalid_argument("InfoParams: phi must lie in [0, 2 pi)");
    }

    cdouble a_plus() const { return std::cos(theta / 2.0); }
    cdouble a_minus() const { return std::exp(cdouble{0.0, phi}) * std::sin(theta / 2.0); }
};

// Cat-basis amplitudes (A+, A-) -> coherent-basis coefficients (eps+, eps-):
//   eps+- = (1/2) [ A+ / sqrt((1+x^2)/2)  +-  A- / sqrt((1-x^2)/2) ].
inline std::pair<cdouble, cdouble> eps_from_amplitudes(cdouble a_plus, cdouble a_minus,
                                                       cdouble alpha) {
    if (std::norm(alpha) == 0.0)
        throw std::invalid_argument("eps_from_amplitudes: alpha must be nonzero");
    if (std::abs(std::norm(a_plus) + std::norm(a_minus) - 1.0) > 1e-10)
        throw std::invalid_argument("eps_from_amplitudes: |A+|^2 + |A-|^2 must equal 1");
    const double x2 = x_of(alpha) * x_of(alpha);
    const cdouble p = a_plus / std::sqrt((1.0 + x2) / 2.0);
    const cdouble m = a_minus / std::sqrt((1.0 - x2) / 2.0);
    return {0.5 * (p + m), 0.5 * (p - m)};
}

// Inverse map: A+ = sqrt((1+x^2)/2) (eps+ + eps-), A- = sqrt((1-x^2)/2) (eps+ - eps-).
// Accepts any eps pair (no normalization requirement).
inline std::pair<cdouble, cdouble> amplitudes_from_eps(cdouble eps_plus, cdouble eps_minus,
                                                       cdouble alpha) {
    if (std::norm(alpha) == 0.0)
        throw std::invalid_argument("amplitudes_from_eps: alpha must be nonzero");
    const double x2 = x_of(alpha) * x_of(alpha);
    return {std::sqrt((1.0 + x2) / 2.0) * (eps_plus + eps_minus),
            std::sqrt((1.0 - x2) / 2.0) * (eps_plus - eps_minus)};
}

// A+ |EVEN,alpha> + A- |ODD,alpha> expressed over the labels {+alpha, -alpha}.
inline SuperState make_info(const InfoParams& p) {
    p.validate();
    auto [eps_plus, eps_minus] = eps_from_amplitudes(p.a_plus(), p.a_minus(), p.alpha);
    std::vector<Term> ts{Term{eps_plus, {p.alpha}}, Term{eps_minus, {-p.alpha}}};
    return SuperState(1, std::move(ts)).normalized();
}

}  // namespace cqt
