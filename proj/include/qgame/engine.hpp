#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "qgame/errors.hpp"
#include "qgame/game.hpp"
#include "qgame/state.hpp"

// Evolution of a compound strategy under independent probabilistic tactics:
// each player applies the identity with their own probability (p for Alice,
// q for Bob) and the bit-flip otherwise. The final state is the exact
// four-branch mixture, never a sampled one.

namespace qgame {

// Convention: p = Prob(Alice applies identity), q = Prob(Bob applies
// identity), so (p, q) = (1, 1) leaves the initial strategy unchanged.
class tactics_profile {
public:
    tactics_profile(double p, double q) : p_(clamped(p, "p")), q_(clamped(q, "q")) {}

    double p() const { return p_; }
    double q() const { return q_; }

    // Branch weights in tactic order (II, IX, XI, XX).
    std::array<double, 4> branch_probabilities() const {
        return {p_ * q_, p_ * (1.0 - q_), (1.0 - p_) * q_, (1.0 - p_) * (1.0 - q_)};
    }

private:
    static double clamped(double v, const char* name) {
        if (!std::isfinite(v) || v < -1e-12 || v > 1.0 + 1e-12)
            throw parameter_error(std::string("tactics_profile: ") + name + " outside [0,1]");
        return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    }

    double p_, q_;
};

struct payoff_pair {
    double alice = 0.0;
    double bob = 0.0;
};

// rho_fin = pq rho_II + p(1-q) rho_IX + (1-p)q rho_XI + (1-p)(1-q) rho_XX,
// where rho_AB conjugates rho_in by A (x) B.
inline density_matrix final_state(const density_matrix& rho_in, const tactics_profile& t) {
    const std::array<double, 4> w = t.branch_probabilities();
    std::array<complex, 16> out{};
    for (std::size_t mask = 0; mask < 4; ++mask) {
        const std::array<complex, 16> branch = detail::permuted_by_mask(rho_in.entries(), mask);
        for (std::size_t k = 0; k < 16; ++k) out[k] += w[mask] * branch[k];
    }
    return density_matrix(out);
}

inline payoff_pair expected_payoffs(const game_payoffs& g, const density_matrix& rho_in,
                                    const tactics_profile& t) {
    const density_matrix rho_fin = final_state(rho_in, t);
    return {expectation(payoff_operator(g, player::alice), rho_fin),
            expectation(payoff_operator(g, player::bob), rho_fin)};
}

// payoff(p, q) = c0 + c1*p + c2*q + c3*p*q
struct bilinear_form {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;

    double eval(double p, double q) const { return c0 + c1 * p + c2 * q + c3 * p * q; }
};

// Fit from the four corner evaluations; exact for any bilinear payoff.
inline bilinear_form bilinear_coefficients(const game_payoffs& g, const density_matrix& rho_in,
                                           player who) {
    const diagonal_operator op = payoff_operator(g, who);
    auto corner = [&](double p, double q) {
        return expectation(op, final_state(rho_in, tactics_profile(p, q)));
    };
    const double f00 = corner(0.0, 0.0);
    const double f10 = corner(1.0, 0.0);
    const double f01 = corner(0.0, 1.0);
    const double f11 = corner(1.0, 1.0);
    return {f00, f10 - f00, f01 - f00, f11 - f10 - f01 + f00};
}

struct surface_cell {
    double p = 0.0;
    double q = 0.0;
    payoff_pair payoffs;
};

// Row-major grid over p, q in {k/(resolution-1)}; p outer ascending, q inner
// ascending. The ordering is part of the CSV contract downstream.
inline std::vector<surface_cell> payoff_surface(const game_payoffs& g, const density_matrix& rho_in,
                                                int resolution) {
    if (resolution < 2) throw parameter_error("payoff_surface: resolution must be at least 2");
    std::vector<surface_cell> grid;
    grid.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
    const double step = 1.0 / (resolution - 1);
    for (int i = 0; i < resolution; ++i) {
        const double p = (i == resolution - 1) ? 1.0 : i * step;
        for (int j = 0; j < resolution; ++j) {
            const double q = (j == resolution - 1) ? 1.0 : j * step;
            grid.push_back({p, q, expected_payoffs(g, rho_in, tactics_profile(p, q))});
        }
    }
    return grid;
}

}  // namespace qgame
