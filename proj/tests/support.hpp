#pragma once

#include <array>
#include <random>

#include "qgame/qgame.hpp"

// Deterministic random inputs for the property tests and the acceptance
// suite. Every generator takes the engine by reference so a fixed seed
// reproduces the exact sequence.

namespace qtest {

using rng_t = std::mt19937;

inline double uniform(rng_t& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline qgame::single_strategy random_single(rng_t& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::array<qgame::complex, 2> a{qgame::complex(gauss(rng), gauss(rng)),
                                    qgame::complex(gauss(rng), gauss(rng))};
    double norm = 0.0;
    for (const auto& z : a) norm += std::norm(z);
    norm = std::sqrt(norm);
    for (auto& z : a) z /= norm;
    return qgame::single_strategy(a);
}

inline qgame::strategy_state random_state(rng_t& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::array<qgame::complex, 4> a;
    double norm = 0.0;
    for (auto& z : a) {
        z = qgame::complex(gauss(rng), gauss(rng));
        norm += std::norm(z);
    }
    norm = std::sqrt(norm);
    for (auto& z : a) z /= norm;
    return qgame::strategy_state(a);
}

inline qgame::strategy_state random_factorizable_state(rng_t& rng) {
    return qgame::tensor_product(random_single(rng), random_single(rng));
}

inline qgame::strategy_state random_entangled_state(rng_t& rng) {
    for (;;) {
        qgame::strategy_state psi = random_state(rng);
        if (!qgame::is_factorizable(psi)) return psi;
    }
}

// Mixture of one to three random pure projectors.
inline qgame::density_matrix random_density(rng_t& rng) {
    const int parts = std::uniform_int_distribution<int>(1, 3)(rng);
    std::array<double, 3> w{};
    double total = 0.0;
    for (int k = 0; k < parts; ++k) total += (w[k] = uniform(rng, 0.1, 1.0));
    std::array<qgame::complex, 16> m{};
    for (int k = 0; k < parts; ++k) {
        const qgame::strategy_state psi = random_state(rng);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                m[4 * i + j] += (w[k] / total) * psi[i] * std::conj(psi[j]);
    }
    return qgame::density_matrix(m);
}

inline qgame::game_payoffs random_game(rng_t& rng) {
    std::array<double, 4> a, b;
    for (auto& v : a) v = uniform(rng, -5.0, 5.0);
    for (auto& v : b) v = uniform(rng, -5.0, 5.0);
    return qgame::game_payoffs(a, b);
}

}  // namespace qtest
