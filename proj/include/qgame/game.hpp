#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "qgame/errors.hpp"
#include "qgame/state.hpp"

// Payoff model for static 2x2 games of complete information. Tables are
// indexed in the global basis order (OO, OT, TO, TT).

namespace qgame {

enum class player { alice, bob };

// Battle-of-the-Sexes parameters: coordinated outcomes pay (alpha, beta) or
// (beta, alpha), any mismatch pays gamma to both. Requires alpha > beta > gamma.
class bos_parameters {
public:
    bos_parameters(double alpha, double beta, double gamma) : alpha_(alpha), beta_(beta), gamma_(gamma) {
        if (!(std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(gamma)))
            throw parameter_error("bos_parameters: payoffs must be finite");
        if (!(alpha > beta && beta > gamma))
            throw parameter_error("bos_parameters: requires alpha > beta > gamma (strict)");
    }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }

    bool operator==(const bos_parameters&) const = default;

private:
    double alpha_, beta_, gamma_;
};

class game_payoffs {
public:
    game_payoffs(const std::array<double, 4>& alice_table, const std::array<double, 4>& bob_table,
                 std::string alice_label = "Alice", std::string bob_label = "Bob")
        : a_(alice_table), b_(bob_table), alice_label_(std::move(alice_label)), bob_label_(std::move(bob_label)) {
        for (double v : a_)
            if (!std::isfinite(v)) throw parameter_error("game_payoffs: non-finite payoff");
        for (double v : b_)
            if (!std::isfinite(v)) throw parameter_error("game_payoffs: non-finite payoff");
    }

    double alice(outcome k) const { return a_[static_cast<std::size_t>(k)]; }
    double bob(outcome k) const { return b_[static_cast<std::size_t>(k)]; }
    const std::array<double, 4>& alice_table() const { return a_; }
    const std::array<double, 4>& bob_table() const { return b_; }
    const std::string& alice_label() const { return alice_label_; }
    const std::string& bob_label() const { return bob_label_; }

    const std::array<double, 4>& table(player p) const { return p == player::alice ? a_ : b_; }

private:
    std::array<double, 4> a_, b_;
    std::string alice_label_, bob_label_;
};

// a = (alpha, gamma, gamma, beta), b = (beta, gamma, gamma, alpha).
inline game_payoffs battle_of_sexes(const bos_parameters& params) {
    const double al = params.alpha(), be = params.beta(), ga = params.gamma();
    return game_payoffs({al, ga, ga, be}, {be, ga, ga, al});
}

inline diagonal_operator payoff_operator(const game_payoffs& g, player p) {
    return g.table(p);
}

// Exchange roles and seats: the new left player is the old right one, so
// a'[st] = b[ts] and b'[st] = a[ts]. An involution.
inline game_payoffs swap_players(const game_payoffs& g) {
    auto transpose = [](const std::array<double, 4>& t) {
        return std::array<double, 4>{t[0], t[2], t[1], t[3]};
    };
    return game_payoffs(transpose(g.bob_table()), transpose(g.alice_table()), g.bob_label(), g.alice_label());
}

}  // namespace qgame
