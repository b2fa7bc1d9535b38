#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "qgame/errors.hpp"

// Exact small-dimension complex linear algebra for two-player strategy
// spaces: 2-dim single-player strategy vectors, 4-dim compound states,
// 4x4 density matrices and local tactic conjugation.
//
// Basis order is fixed globally as (OO, OT, TO, TT); Alice owns the left
// factor. Every payoff index in the library depends on this convention.

namespace qgame {

using complex = std::complex<double>;

enum class outcome : int { oo = 0, ot = 1, to = 2, tt = 3 };

// Local tactic: leave the strategy alone or apply the bit-flip (O <-> T).
enum class tactic { identity, flip };

// Real diagonal 4x4 operator, stored as its diagonal.
using diagonal_operator = std::array<double, 4>;

namespace tolerances {
inline constexpr double norm = 1e-12;          // unit-norm defect on construction
inline constexpr double hermitian = 1e-12;     // max |m(i,j) - conj(m(j,i))|
inline constexpr double trace = 1e-12;         // |tr - 1|, real and imaginary parts
inline constexpr double psd = 1e-10;           // eigenvalues >= -psd
inline constexpr double factorizable = 1e-10;  // reshaped 2x2 determinant magnitude
inline constexpr double imag_residue = 1e-12;  // expectation values must be real
}  // namespace tolerances

namespace detail {

inline bool finite(const complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <std::size_t N>
double squared_norm(const std::array<complex, N>& a) {
    double s = 0.0;
    for (const complex& z : a) s += std::norm(z);
    return s;
}

template <std::size_t N>
void require_unit_norm(const std::array<complex, N>& a, const char* what) {
    for (const complex& z : a)
        if (!finite(z)) throw normalization_error(std::string(what) + ": non-finite amplitude");
    if (std::abs(squared_norm(a) - 1.0) > tolerances::norm)
        throw normalization_error(std::string(what) + ": squared-modulus sum differs from 1 beyond 1e-12");
}

}  // namespace detail

// One player's strategy vector over the basis {|O>, |T>}.
class single_strategy {
public:
    explicit single_strategy(const std::array<complex, 2>& amplitudes) : amps_(amplitudes) {
        detail::require_unit_norm(amps_, "single_strategy");
    }
    single_strategy(const complex& o, const complex& t) : single_strategy(std::array<complex, 2>{o, t}) {}

    static single_strategy basis_o() { return single_strategy(complex(1.0), complex(0.0)); }
    static single_strategy basis_t() { return single_strategy(complex(0.0), complex(1.0)); }

    const complex& operator[](std::size_t i) const { return amps_[i]; }
    const std::array<complex, 2>& amplitudes() const { return amps_; }

private:
    std::array<complex, 2> amps_;
};

// Compound two-player strategy state over (OO, OT, TO, TT).
class strategy_state {
public:
    explicit strategy_state(const std::array<complex, 4>& amplitudes) : amps_(amplitudes) {
        detail::require_unit_norm(amps_, "strategy_state");
    }

    static strategy_state basis(outcome k) {
        std::array<complex, 4> a{};
        a[static_cast<std::size_t>(k)] = complex(1.0);
        return strategy_state(a);
    }

    const complex& operator[](std::size_t i) const { return amps_[i]; }
    const complex& amplitude(outcome k) const { return amps_[static_cast<std::size_t>(k)]; }
    const std::array<complex, 4>& amplitudes() const { return amps_; }

private:
    std::array<complex, 4> amps_;
};

namespace detail {

// Semidefinite Cholesky on m + shift*I. A pivot below -pivot_slack means an
// eigenvalue under -shift; a vanishing pivot must leave a vanishing column.
inline bool psd_with_shift(const std::array<complex, 16>& m, double shift) {
    constexpr double pivot_slack = 1e-13;
    constexpr double column_slack = 1e-6;
    std::array<complex, 16> l{};
    for (std::size_t k = 0; k < 4; ++k) {
        double pivot = m[5 * k].real() + shift;
        for (std::size_t j = 0; j < k; ++j) pivot -= std::norm(l[4 * k + j]);
        if (!std::isfinite(pivot) || pivot < -pivot_slack) return false;
        if (pivot <= pivot_slack) {
            for (std::size_t i = k + 1; i < 4; ++i) {
                complex r = m[4 * i + k];
                for (std::size_t j = 0; j < k; ++j) r -= l[4 * i + j] * std::conj(l[4 * k + j]);
                if (std::abs(r) > column_slack) return false;
                l[4 * i + k] = complex(0.0);
            }
            l[5 * k] = complex(0.0);
            continue;
        }
        const double root = std::sqrt(pivot);
        l[5 * k] = complex(root);
        for (std::size_t i = k + 1; i < 4; ++i) {
            complex r = m[4 * i + k];
            for (std::size_t j = 0; j < k; ++j) r -= l[4 * i + j] * std::conj(l[4 * k + j]);
            l[4 * i + k] = r / root;
        }
    }
    return true;
}

struct unchecked_t {};

}  // namespace detail

// Hermitian, unit-trace, positive-semidefinite 4x4 matrix: the compound
// strategy as a probabilistic mixture carrier. Constructors reject invalid
// input rather than repairing it.
class density_matrix {
public:
    explicit density_matrix(const std::array<complex, 16>& entries) : m_(entries) { validate(); }

    const complex& operator()(std::size_t i, std::size_t j) const { return m_[4 * i + j]; }
    const std::array<complex, 16>& entries() const { return m_; }

    complex trace() const {
        complex t(0.0);
        for (std::size_t k = 0; k < 4; ++k) t += m_[5 * k];
        return t;
    }

private:
    friend density_matrix make_density_unchecked(const std::array<complex, 16>&);

    density_matrix(const std::array<complex, 16>& entries, detail::unchecked_t) : m_(entries) {}

    void validate() const {
        for (const complex& z : m_)
            if (!detail::finite(z)) throw numeric_integrity_error("density_matrix: non-finite entry");
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i; j < 4; ++j)
                if (std::abs(m_[4 * i + j] - std::conj(m_[4 * j + i])) > tolerances::hermitian)
                    throw numeric_integrity_error("density_matrix: not Hermitian within 1e-12");
        const complex t = trace();
        if (std::abs(t.real() - 1.0) > tolerances::trace || std::abs(t.imag()) > tolerances::trace)
            throw numeric_integrity_error("density_matrix: trace differs from 1 beyond 1e-12");
        if (!detail::psd_with_shift(m_, tolerances::psd))
            throw numeric_integrity_error("density_matrix: not positive semidefinite within 1e-10");
    }

    std::array<complex, 16> m_;
};

// Internal fast path for operations that preserve the invariants exactly
// (entry permutations). Never exposed to user input.
inline density_matrix make_density_unchecked(const std::array<complex, 16>& entries) {
    return density_matrix(entries, detail::unchecked_t{});
}

inline bool is_positive_semidefinite(const density_matrix& rho, double tol = tolerances::psd) {
    return detail::psd_with_shift(rho.entries(), tol);
}

inline double hermiticity_defect(const density_matrix& rho) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            worst = std::max(worst, std::abs(rho(i, j) - std::conj(rho(j, i))));
    return worst;
}

// amplitudes[2i+j] = u[i] * v[j]; factorizable by construction.
inline strategy_state tensor_product(const single_strategy& u, const single_strategy& v) {
    std::array<complex, 4> a;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) a[2 * i + j] = u[i] * v[j];
    return strategy_state(a);
}

// (|OO> + |TT>) / sqrt(2): the maximally entangled coordination state.
inline strategy_state entangled_bos_state() {
    const complex h(std::sqrt(0.5));
    return strategy_state({h, complex(0.0), complex(0.0), h});
}

// True iff the reshaped 2x2 determinant a00*a11 - a01*a10 vanishes, i.e. the
// state is a tensor product of single-player strategies.
inline bool is_factorizable(const strategy_state& psi, double tol = tolerances::factorizable) {
    return std::abs(psi[0] * psi[3] - psi[1] * psi[2]) < tol;
}

// rho(i,j) = psi[i] * conj(psi[j])
inline density_matrix density_from_state(const strategy_state& psi) {
    std::array<complex, 16> m;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m[4 * i + j] = psi[i] * std::conj(psi[j]);
    return density_matrix(m);
}

// Density of the entangled coordination state with exact rational entries.
// Squaring the floating 1/sqrt(2) amplitudes would put one-ulp noise on
// every payoff, so the named start is built directly.
inline density_matrix entangled_bos_density() {
    std::array<complex, 16> m{};
    m[0] = m[3] = m[12] = m[15] = complex(0.5);
    return density_matrix(m);
}

namespace detail {

// Index mask of A (x) B over {I, sigma_x}: flipping Alice toggles the high
// basis bit, flipping Bob the low one.
inline std::size_t tactic_mask(tactic a, tactic b) {
    return (a == tactic::flip ? 2u : 0u) | (b == tactic::flip ? 1u : 0u);
}

inline std::array<complex, 16> permuted_by_mask(const std::array<complex, 16>& m, std::size_t mask) {
    std::array<complex, 16> out;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) out[4 * i + j] = m[4 * (i ^ mask) + (j ^ mask)];
    return out;
}

}  // namespace detail

// (A (x) B) rho (A (x) B)^dagger for A, B in {I, sigma_x}. A permutation of
// entries, so every density-matrix invariant is preserved exactly.
inline density_matrix conjugate_by_tactics(const density_matrix& rho, tactic a, tactic b) {
    return make_density_unchecked(detail::permuted_by_mask(rho.entries(), detail::tactic_mask(a, b)));
}

// tr(P rho) for real diagonal P. The value must be real: an imaginary
// residue at or above 1e-12 signals a corrupted density matrix.
inline double expectation(const diagonal_operator& p, const density_matrix& rho) {
    complex t(0.0);
    for (std::size_t k = 0; k < 4; ++k) t += p[k] * rho(k, k);
    if (std::abs(t.imag()) >= tolerances::imag_residue)
        throw numeric_integrity_error("expectation: imaginary residue at or above 1e-12");
    return t.real();
}

inline double frobenius_distance(const density_matrix& a, const density_matrix& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < 16; ++k) s += std::norm(a.entries()[k] - b.entries()[k]);
    return std::sqrt(s);
}

}  // namespace qgame
