// fock_oracle.hpp
// Independent truncated occupation-number simulator. Everything here is a
// brute-force counterpart of the exact engine: states are dense amplitude
// arrays over occupation tuples, gates act on those amplitudes directly, and
// projections slice occupation classes. Used to validate the exact engine
// and every closed-form result.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "coherent_algebra.hpp"

namespace cqt {

inline constexpr double kMaxFockLabelMagnitude = 4.0;

// Cutoff rule: for a maximum label magnitude m, N = ceil(m^2 + 8m + 12)
// keeps the coherent tail mass beyond N below 1e-13 for m <= 4.
inline int cutoff_for_magnitude(double m) {
    if (!(m >= 0.0) || m > kMaxFockLabelMagnitude + 1e-9)
        throw std::invalid_argument("cutoff_for_magnitude: label magnitude outside supported range");
    return static_cast<int>(std::ceil(m * m + 8.0 * m + 12.0));
}

struct FockVector {
    int mode_count = 1;
    int cutoff = 0;               // per-mode maximum occupation, inclusive
    std::vector<cdouble> amp;     // dense, mode 0 slowest

    int dim() const { return cutoff + 1; }

    std::size_t stride(int mode) const {
        std::size_t s = 1;
        for (int m = mode + 1; m < mode_count; ++m) s *= static_cast<std::size_t>(dim());
        return s;
    }

    int occupation(std::size_t flat, int mode) const {
        return static_cast<int>((flat / stride(mode)) % static_cast<std::size_t>(dim()));
    }

    double norm_sq() const {
        double n = 0.0;
        for (const auto& a : amp) n += std::norm(a);
        return n;
    }

    static FockVector zeros(int mode_count, int cutoff) {
        FockVector v;
        v.mode_count = mode_count;
        v.cutoff = cutoff;
        std::size_t sz = 1;
        for (int m = 0; m < mode_count; ++m) sz *= static_cast<std::size_t>(cutoff + 1);
        v.amp.assign(sz, cdouble{0.0, 0.0});
        return v;
    }
};

inline void check_fock_mode(const FockVector& s, int mode, const char* who) {
    if (mode < 0 || mode >= s.mode_count)
        throw std::out_of_range(std::string(who) + ": mode index out of range");
}

// Amplitudes e^{-|beta|^2/2} beta^n / sqrt(n!), built iteratively.
inline FockVector coherent_fock(cdouble beta, int cutoff) {
    if (cutoff < 0) throw std::invalid_argument("coherent_fock: cutoff must be >= 0");
    FockVector v = FockVector::zeros(1, cutoff);
    v.amp[0] = std::exp(-0.5 * std::norm(beta));
    for (int n = 1; n <= cutoff; ++n)
        v.amp[static_cast<std::size_t>(n)] =
            v.amp[static_cast<std::size_t>(n - 1)] * beta / std::sqrt(static_cast<double>(n));
    return v;
}

inline cdouble inner_product(const FockVector& a, const FockVector& b) {
    if (a.mode_count != b.mode_count || a.cutoff != b.cutoff)
        throw std::invalid_argument("inner_product: Fock shapes differ");
    cdouble acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.amp.size(); ++i) acc += std::conj(a.amp[i]) * b.amp[i];
    return acc;
}

// Linear embedding of an exact-engine state at the given cutoff.
inline FockVector from_super(const SuperState& s, int cutoff) {
    FockVector out = FockVector::zeros(s.mode_count(), cutoff);
    const int dim = cutoff + 1;
    for (const auto& t : s.terms()) {
        std::vector<FockVector> modes;
        modes.reserve(t.labels.size());
        for (const auto& l : t.labels) {
            if (std::abs(l) > kMaxFockLabelMagnitude + 1e-9)
                throw std::invalid_argument("from_super: label magnitude outside supported range");
            modes.push_back(coherent_fock(l, cutoff));
        }
        // accumulate coeff * prod_m modes[m][n_m], recursing one mode at a time
        auto fill = [&](auto&& self, int mode, std::size_t base, cdouble partial) -> void {
            if (mode == s.mode_count()) {
                out.amp[base] += partial;
                return;
            }
            for (int n = 0; n < dim; ++n)
                self(self, mode + 1, base * static_cast<std::size_t>(dim) + static_cast<std::size_t>(n),
                     partial * modes[static_cast<std::size_t>(mode)].amp[static_cast<std::size_t>(n)]);
        };
        fill(fill, 0, 0, t.coeff);
    }
    return out;
}

// Embedding with the cutoff chosen by the rule from the largest label.
inline FockVector from_super(const SuperState& s) {
    double m = 0.0;
    for (const auto& t : s.terms())
        for (const auto& l : t.labels) m = std::max(m, std::abs(l));
    return from_super(s, cutoff_for_magnitude(m));
}

struct PhaseShiftGate {
    int mode;
    double phase;
};

struct BeamSplitterGate {
    int mode_a;
    int mode_b;
};

// Multiplies each basis amplitude by e^{i n phase} for occupation n.
inline FockVector apply_gate_fock(const FockVector& s, const PhaseShiftGate& g) {
    check_fock_mode(s, g.mode, "apply_gate_fock(phase-shift)");
    FockVector out = s;
    std::vector<cdouble> phases(static_cast<std::size_t>(s.dim()));
    for (int n = 0; n < s.dim(); ++n)
        phases[static_cast<std::size_t>(n)] = std::exp(cdouble{0.0, g.phase * n});
    const std::size_t st = s.stride(g.mode);
    const auto d = static_cast<std::size_t>(s.dim());
    for (std::size_t i = 0; i < out.amp.size(); ++i) out.amp[i] *= phases[(i / st) % d];
    return out;
}

// Two-mode unitary exp(i pi/4 (a^dag b + a b^dag)), whose action on coherent
// labels is (beta, gamma) -> ((beta + i gamma)/sqrt2, (gamma + i beta)/sqrt2).
// The generator conserves total photon number, so it is exponentiated block
// by block (each block is real symmetric tridiagonal); the result is exactly
// unitary on the truncated space.
inline FockVector apply_gate_fock(const FockVector& s, const BeamSplitterGate& g) {
    check_fock_mode(s, g.mode_a, "apply_gate_fock(beam-splitter)");
    check_fock_mode(s, g.mode_b, "apply_gate_fock(beam-splitter)");
    if (g.mode_a == g.mode_b)
        throw std::invalid_argument("apply_gate_fock(beam-splitter): modes must be distinct");

    const int N = s.cutoff;
    std::vector<Eigen::MatrixXcd> blocks(static_cast<std::size_t>(2 * N + 1));
    for (int n = 0; n <= 2 * N; ++n) {
        const int k0 = std::max(0, n - N);
        const int k1 = std::min(n, N);
        const int L = k1 - k0 + 1;
        Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(L, L);
        for (int i = 0; i + 1 < L; ++i) {
            const int k = k0 + i;
            const double v = std::sqrt(static_cast<double>((k + 1) * (n - k)));
            gen(i + 1, i) = v;
            gen(i, i + 1) = v;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gen);
        const Eigen::MatrixXd& V = es.eigenvectors();
        Eigen::VectorXcd phases(L);
        for (int i = 0; i < L; ++i)
            phases(i) = std::exp(cdouble{0.0, std::numbers::pi / 4.0 * es.eigenvalues()(i)});
        blocks[static_cast<std::size_t>(n)] =
            V.cast<cdouble>() * phases.asDiagonal() * V.transpose().cast<cdouble>();
    }

    FockVector out = s;
    const std::size_t sa = s.stride(g.mode_a);
    const std::size_t sb = s.stride(g.mode_b);
    const auto d = static_cast<std::size_t>(s.dim());

    if (g.mode_a == 0 && g.mode_b == 1) {
        // the two leading modes leave a contiguous tail block per (k0, k1);
        // each total-n block then becomes one small GEMM over those rows
        const std::size_t tail = sb;
        using RowMat = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        RowMat rows, mixed;
        for (int n = 0; n <= 2 * N; ++n) {
            const int k0 = std::max(0, n - N);
            const int k1 = std::min(n, N);
            const int L = k1 - k0 + 1;
            rows.resize(L, static_cast<Eigen::Index>(tail));
            for (int i = 0; i < L; ++i) {
                const int k = k0 + i;
                const std::size_t off = (static_cast<std::size_t>(k) * d +
                                         static_cast<std::size_t>(n - k)) * tail;
                std::copy_n(s.amp.data() + off, tail, rows.data() + i * static_cast<int>(tail));
            }
            mixed = blocks[static_cast<std::size_t>(n)] * rows;
            for (int i = 0; i < L; ++i) {
                const int k = k0 + i;
                const std::size_t off = (static_cast<std::size_t>(k) * d +
                                         static_cast<std::size_t>(n - k)) * tail;
                std::copy_n(mixed.data() + i * static_cast<int>(tail), tail, out.amp.data() + off);
            }
        }
        return out;
    }

    // generic mode pair: enumerate base offsets over all the other modes
    std::vector<int> rest_modes;
    for (int m = 0; m < s.mode_count; ++m)
        if (m != g.mode_a && m != g.mode_b) rest_modes.push_back(m);
    std::vector<std::size_t> bases{0};
    for (int m : rest_modes) {
        std::vector<std::size_t> next;
        next.reserve(bases.size() * d);
        const std::size_t st = s.stride(m);
        for (std::size_t b : bases)
            for (std::size_t n = 0; n < d; ++n) next.push_back(b + n * st);
        bases = std::move(next);
    }

    Eigen::VectorXcd v, w;
    for (std::size_t base : bases) {
        for (int n = 0; n <= 2 * N; ++n) {
            const int k0 = std::max(0, n - N);
            const int k1 = std::min(n, N);
            const int L = k1 - k0 + 1;
            v.resize(L);
            for (int i = 0; i < L; ++i) {
                const int k = k0 + i;
                v(i) = s.amp[base + static_cast<std::size_t>(k) * sa +
                             static_cast<std::size_t>(n - k) * sb];
            }
            w = blocks[static_cast<std::size_t>(n)] * v;
            for (int i = 0; i < L; ++i) {
                const int k = k0 + i;
                out.amp[base + static_cast<std::size_t>(k) * sa +
                        static_cast<std::size_t>(n - k) * sb] = w(i);
            }
        }
    }
    return out;
}

struct FockProjection {
    FockVector branch;
    double probability;
};

// Keeps the occupation slices of one mode that belong to the outcome class.
inline FockProjection project_fock(const FockVector& s, int mode, CountOutcome outcome) {
    check_fock_mode(s, mode, "project_fock");
    auto keep = [&](int n) {
        switch (outcome) {
            case CountOutcome::Vacuum: return n == 0;
            case CountOutcome::NonzeroEven: return n >= 2 && n % 2 == 0;
            case CountOutcome::OddCount:
            case CountOutcome::OddParity: return n % 2 == 1;
            case CountOutcome::EvenParity: return n % 2 == 0;
        }
        return false;
    };
    FockVector out = s;
    const std::size_t st = s.stride(mode);
    const auto d = static_cast<std::size_t>(s.dim());
    double p = 0.0;
    for (std::size_t i = 0; i < out.amp.size(); ++i) {
        if (keep(static_cast<int>((i / st) % d)))
            p += std::norm(out.amp[i]);
        else
            out.amp[i] = cdouble{0.0, 0.0};
    }
    return FockProjection{std::move(out), p};
}

// (<bra|_mode ⊗ I) |s> for a 1-mode bra at the same cutoff.
inline FockVector reduce_mode_fock(const FockVector& s, int mode, const FockVector& bra) {
    check_fock_mode(s, mode, "reduce_mode_fock");
    if (bra.mode_count != 1 || bra.cutoff != s.cutoff)
        throw std::invalid_argument("reduce_mode_fock: bra must be 1-mode at the same cutoff");
    if (s.mode_count < 2)
        throw std::invalid_argument("reduce_mode_fock: state must keep at least one mode");
    FockVector out = FockVector::zeros(s.mode_count - 1, s.cutoff);
    const std::size_t st = s.stride(mode);
    const auto d = static_cast<std::size_t>(s.dim());
    for (std::size_t i = 0; i < s.amp.size(); ++i) {
        const std::size_t n = (i / st) % d;
        const std::size_t low = i % st;
        const std::size_t high = i / (st * d);
        out.amp[high * st + low] += std::conj(bra.amp[n]) * s.amp[i];
    }
    return out;
}

inline double fidelity_fock(const FockVector& a, const FockVector& b) {
    const double na = a.norm_sq();
    const double nb = b.norm_sq();
    if (na < 1e-300 || nb < 1e-300)
        throw std::domain_error("fidelity_fock: zero-norm input");
    double f = std::norm(inner_product(a, b)) / (na * nb);
    return f > 1.0 ? 1.0 : f;
}

inline double mean_photon_number(const FockVector& s, int mode) {
    check_fock_mode(s, mode, "mean_photon_number");
    const std::size_t st = s.stride(mode);
    const auto d = static_cast<std::size_t>(s.dim());
    double acc = 0.0;
    for (std::size_t i = 0; i < s.amp.size(); ++i)
        acc += static_cast<double>((i / st) % d) * std::norm(s.amp[i]);
    return acc;
}

}  // namespace cqt
