#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qgame/equilibrium.hpp"
#include "support.hpp"

using namespace qgame;

namespace {

const game_payoffs kBos = battle_of_sexes(bos_parameters(5.0, 3.0, 1.0));

density_matrix oo_density() { return density_from_state(strategy_state::basis(outcome::oo)); }
density_matrix entangled_density() { return entangled_bos_density(); }

// Test-side brute force over the classical payoff formula only.
bool classical_no_grid_deviation(const game_payoffs& g, double p, double q, int res, double tol) {
    const payoff_pair base = classical_mixed_payoff(g, p, q);
    for (int k = 0; k < res; ++k) {
        const double v = (k == res - 1) ? 1.0 : k / (res - 1.0);
        if (classical_mixed_payoff(g, v, q).alice > base.alice + tol) return false;
        if (classical_mixed_payoff(g, p, v).bob > base.bob + tol) return false;
    }
    return true;
}

const equilibrium_point* find_point(const std::vector<equilibrium_point>& eqs, double p, double q,
                                    double tol = 1e-9) {
    for (const equilibrium_point& e : eqs)
        if (std::abs(e.p_star - p) <= tol && std::abs(e.q_star - q) <= tol) return &e;
    return nullptr;
}

}  // namespace

TEST_CASE("classical mixed payoffs") {
    const payoff_pair oo = classical_mixed_payoff(kBos, 1.0, 1.0);
    REQUIRE(oo.alice == 5.0);
    REQUIRE(oo.bob == 3.0);

    const payoff_pair tt = classical_mixed_payoff(kBos, 0.0, 0.0);
    REQUIRE(tt.alice == 3.0);
    REQUIRE(tt.bob == 5.0);

    const payoff_pair mixed = classical_mixed_payoff(kBos, 2.0 / 3.0, 1.0 / 3.0);
    REQUIRE(mixed.alice == Catch::Approx(7.0 / 3.0).margin(1e-12));
    REQUIRE(mixed.bob == Catch::Approx(7.0 / 3.0).margin(1e-12));

    REQUIRE_THROWS_AS(classical_mixed_payoff(kBos, -0.1, 0.5), parameter_error);
    REQUIRE_THROWS_AS(classical_mixed_payoff(kBos, 0.5, 1.1), parameter_error);
}

TEST_CASE("mixed equilibrium survives a million random deviations") {
    const double pa = 2.0 / 3.0, qb = 1.0 / 3.0;
    const payoff_pair base = classical_mixed_payoff(kBos, pa, qb);
    qtest::rng_t rng(7401);
    for (int k = 0; k < 1000000; ++k) {
        const double dev = qtest::uniform(rng, 0.0, 1.0);
        if (k % 2 == 0) {
            REQUIRE(classical_mixed_payoff(kBos, dev, qb).alice <= base.alice + 1e-12);
        } else {
            REQUIRE(classical_mixed_payoff(kBos, pa, dev).bob <= base.bob + 1e-12);
        }
    }
}

TEST_CASE("classical equilibria of the default instance") {
    const auto eqs = classical_nash_equilibria(kBos);
    REQUIRE(eqs.size() == 3);

    const equilibrium_point* both_t = find_point(eqs, 0.0, 0.0);
    REQUIRE(both_t != nullptr);
    REQUIRE(both_t->payoffs.alice == Catch::Approx(3.0).margin(1e-12));
    REQUIRE(both_t->payoffs.bob == Catch::Approx(5.0).margin(1e-12));
    REQUIRE(both_t->kind == equilibrium_kind::corner);

    const equilibrium_point* both_o = find_point(eqs, 1.0, 1.0);
    REQUIRE(both_o != nullptr);
    REQUIRE(both_o->payoffs.alice == Catch::Approx(5.0).margin(1e-12));
    REQUIRE(both_o->payoffs.bob == Catch::Approx(3.0).margin(1e-12));

    const equilibrium_point* mixed = find_point(eqs, 2.0 / 3.0, 1.0 / 3.0);
    REQUIRE(mixed != nullptr);
    REQUIRE(mixed->kind == equilibrium_kind::interior);
    REQUIRE(mixed->payoffs.alice == Catch::Approx(7.0 / 3.0).margin(1e-12));
    REQUIRE(mixed->payoffs.bob == Catch::Approx(7.0 / 3.0).margin(1e-12));

    for (const equilibrium_point& e : eqs)
        REQUIRE(classical_no_grid_deviation(kBos, e.p_star, e.q_star, 1001, 1e-9));
}

TEST_CASE("degenerate and dominance-solvable games") {
    const game_payoffs constant({2, 2, 2, 2}, {2, 2, 2, 2});
    const auto flat = classical_nash_equilibria(constant);
    REQUIRE(flat.size() == 4);
    for (const equilibrium_point& e : flat) {
        REQUIRE(e.kind == equilibrium_kind::edge_degenerate);
        REQUIRE(classical_no_grid_deviation(constant, e.p_star, e.q_star, 101, 1e-9));
    }

    const game_payoffs dominance({3, 2, 1, 0}, {3, 2, 1, 0});
    const auto unique = classical_nash_equilibria(dominance);
    REQUIRE(unique.size() == 1);
    REQUIRE(unique[0].p_star == 1.0);
    REQUIRE(unique[0].q_star == 1.0);
    REQUIRE(unique[0].kind == equilibrium_kind::corner);
    REQUIRE(classical_no_grid_deviation(dominance, 1.0, 1.0, 1001, 1e-9));
}

TEST_CASE("quantum equilibria with the entangled start") {
    const density_matrix ent = entangled_density();
    const auto eqs = quantum_nash_equilibria(kBos, ent);
    REQUIRE(eqs.size() == 3);

    const equilibrium_point* flip = find_point(eqs, 0.0, 0.0);
    const equilibrium_point* stay = find_point(eqs, 1.0, 1.0);
    const equilibrium_point* mixed = find_point(eqs, 0.5, 0.5);
    REQUIRE(flip != nullptr);
    REQUIRE(stay != nullptr);
    REQUIRE(mixed != nullptr);
    REQUIRE(flip->payoffs.alice == Catch::Approx(4.0).margin(1e-12));
    REQUIRE(flip->payoffs.bob == Catch::Approx(4.0).margin(1e-12));
    REQUIRE(stay->payoffs.alice == Catch::Approx(4.0).margin(1e-12));
    REQUIRE(mixed->payoffs.alice == Catch::Approx(2.5).margin(1e-12));
    REQUIRE(mixed->kind == equilibrium_kind::interior);

    // Slope cross-check: both players see s(x) = -3 + 6x, so the zero
    // crossing sits at one half and the strict corners are (0,0) and (1,1).
    const bilinear_form fa = bilinear_coefficients(kBos, ent, player::alice);
    const bilinear_form fb = bilinear_coefficients(kBos, ent, player::bob);
    REQUIRE(fa.c1 + fa.c3 * 0.5 == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(fb.c2 + fb.c3 * 0.5 == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(fa.c1 < -1e-6);
    REQUIRE(fa.c1 + fa.c3 > 1e-6);

    for (const equilibrium_point& e : eqs)
        REQUIRE(verify_equilibrium_grid(kBos, ent, e.p_star, e.q_star, 1001, 1e-9));
}

TEST_CASE("factorizable start matches the classical finder") {
    qtest::rng_t rng(7402);
    const density_matrix oo = oo_density();
    for (int k = 0; k < 200; ++k) {
        const game_payoffs g = qtest::random_game(rng);
        const auto classical = classical_nash_equilibria(g);
        const auto quantum = quantum_nash_equilibria(g, oo);
        REQUIRE(quantum.size() == classical.size());
        for (const equilibrium_point& e : classical) {
            const equilibrium_point* match = find_point(quantum, e.p_star, e.q_star, 1e-9);
            REQUIRE(match != nullptr);
            REQUIRE(std::abs(match->payoffs.alice - e.payoffs.alice) < 1e-9);
            REQUIRE(std::abs(match->payoffs.bob - e.payoffs.bob) < 1e-9);
        }
    }
}

TEST_CASE("zero game degenerates everywhere") {
    const game_payoffs zero({0, 0, 0, 0}, {0, 0, 0, 0});
    qtest::rng_t rng(7403);
    const density_matrix rho = qtest::random_density(rng);
    const auto eqs = quantum_nash_equilibria(zero, rho);
    REQUIRE(eqs.size() == 4);
    for (const equilibrium_point& e : eqs) REQUIRE(e.kind == equilibrium_kind::edge_degenerate);

    const dilemma_verdict verdict = classify_dilemma(zero, rho, eqs);
    REQUIRE(verdict.status == dilemma_status::degenerate);
    REQUIRE_FALSE(verdict.note.empty());
}

TEST_CASE("grid verification oracle") {
    const density_matrix ent = entangled_density();
    REQUIRE(verify_equilibrium_grid(kBos, ent, 1.0, 1.0, 1001, 1e-9));
    // Alice gains 4 - 1 = 3 by deviating to p = 0.
    REQUIRE_FALSE(verify_equilibrium_grid(kBos, ent, 1.0, 0.0, 1001, 1e-9));

    const game_payoffs constant({2, 2, 2, 2}, {2, 2, 2, 2});
    qtest::rng_t rng(7404);
    for (int k = 0; k < 20; ++k)
        REQUIRE(verify_equilibrium_grid(constant, qtest::random_density(rng),
                                        qtest::uniform(rng, 0.0, 1.0), qtest::uniform(rng, 0.0, 1.0), 51,
                                        1e-9));

    REQUIRE_THROWS_AS(verify_equilibrium_grid(kBos, ent, 0.5, 0.5, 1, 1e-9), parameter_error);
}

TEST_CASE("dilemma classification") {
    const density_matrix oo = oo_density();
    const auto classical_eqs = quantum_nash_equilibria(kBos, oo);
    const dilemma_verdict classical = classify_dilemma(kBos, oo, classical_eqs);
    REQUIRE(classical.status == dilemma_status::classical_dilemma);
    REQUIRE(classical.equally_attractive.size() == 1);
    REQUIRE(classical.coincidence_distance.has_value());
    REQUIRE(*classical.coincidence_distance == Catch::Approx(std::sqrt(2.0)).margin(1e-12));

    const density_matrix ent = entangled_density();
    const auto quantum_eqs = quantum_nash_equilibria(kBos, ent);
    const dilemma_verdict quantum = classify_dilemma(kBos, ent, quantum_eqs);
    REQUIRE(quantum.status == dilemma_status::resolved_by_coincidence);
    REQUIRE(quantum.equally_attractive.size() == 1);
    REQUIRE(*quantum.coincidence_distance < 1e-12);
    const auto [i, j] = quantum.equally_attractive[0];
    REQUIRE(quantum_eqs[i].kind == equilibrium_kind::corner);
    REQUIRE(quantum_eqs[j].kind == equilibrium_kind::corner);

    const game_payoffs dominance({3, 2, 1, 0}, {3, 2, 1, 0});
    const auto unique_eqs = quantum_nash_equilibria(dominance, oo);
    REQUIRE(classify_dilemma(dominance, oo, unique_eqs).status == dilemma_status::no_dilemma);

    // Unverified input lists violate the contract.
    REQUIRE_THROWS_AS(classify_dilemma(kBos, ent, {{1.0, 0.0, {1.0, 1.0}, equilibrium_kind::corner}}),
                      contract_error);
    REQUIRE_THROWS_AS(classify_dilemma(kBos, ent, {}), contract_error);
}

TEST_CASE("analytic equilibria always pass the brute-force oracle") {
    qtest::rng_t rng(7405);
    for (int k = 0; k < 50; ++k) {
        const game_payoffs g = qtest::random_game(rng);
        const density_matrix states[] = {oo_density(), entangled_density(),
                                         density_from_state(qtest::random_factorizable_state(rng)),
                                         density_from_state(qtest::random_entangled_state(rng))};
        for (const density_matrix& rho : states) {
            const auto eqs = quantum_nash_equilibria(g, rho);
            REQUIRE_FALSE(eqs.empty());
            for (const equilibrium_point& e : eqs)
                REQUIRE(verify_equilibrium_grid(g, rho, e.p_star, e.q_star, 201, 1e-9));
        }
    }
}

TEST_CASE("equilibrium set is invariant under positive affine payoff maps") {
    qtest::rng_t rng(7406);
    for (int k = 0; k < 200; ++k) {
        const game_payoffs g = qtest::random_game(rng);
        const density_matrix rho = density_from_state(k % 2 ? qtest::random_entangled_state(rng)
                                                            : qtest::random_factorizable_state(rng));
        const double scale = qtest::uniform(rng, 0.2, 3.0);
        const double shift = qtest::uniform(rng, -4.0, 4.0);
        std::array<double, 4> rescaled = g.alice_table();
        for (double& v : rescaled) v = scale * v + shift;
        const game_payoffs h(rescaled, g.bob_table());

        const auto base = quantum_nash_equilibria(g, rho);
        const auto mapped = quantum_nash_equilibria(h, rho);
        REQUIRE(mapped.size() == base.size());
        for (const equilibrium_point& e : base)
            REQUIRE(find_point(mapped, e.p_star, e.q_star, 1e-9) != nullptr);
    }
}

TEST_CASE("entangled coordination resolves across the parameter range") {
    for (double gamma : {0.0, 1.0, 2.5}) {
        for (double dbeta : {0.5, 1.0, 2.0}) {
            for (double dalpha : {0.5, 1.0, 2.0}) {
                const bos_parameters params(gamma + dbeta + dalpha, gamma + dbeta, gamma);
                const game_payoffs g = battle_of_sexes(params);
                const density_matrix ent = entangled_density();
                const auto eqs = quantum_nash_equilibria(g, ent);
                REQUIRE(eqs.size() == 3);
                const dilemma_verdict verdict = classify_dilemma(g, ent, eqs);
                REQUIRE(verdict.status == dilemma_status::resolved_by_coincidence);
                const double expected = (params.alpha() + params.beta()) / 2.0;
                for (const auto& [i, j] : verdict.equally_attractive) {
                    REQUIRE(eqs[i].payoffs.alice == Catch::Approx(expected).margin(1e-9));
                    REQUIRE(eqs[j].payoffs.bob == Catch::Approx(expected).margin(1e-9));
                }
            }
        }
    }
}

TEST_CASE("report bundles equilibria, verdict and provenance") {
    const equilibrium_report r =
        make_equilibrium_report(kBos, entangled_density(), 1e-9, "bos alpha=5 beta=3 gamma=1", "entangled-bos");
    REQUIRE(r.equilibria.size() == 3);
    REQUIRE(r.verdict.status == dilemma_status::resolved_by_coincidence);
    REQUIRE(r.game_description == "bos alpha=5 beta=3 gamma=1");
    REQUIRE(r.state_description == "entangled-bos");

    // Reported points are pairwise separated.
    for (std::size_t a = 0; a < r.equilibria.size(); ++a)
        for (std::size_t b = a + 1; b < r.equilibria.size(); ++b)
            REQUIRE(std::max(std::abs(r.equilibria[a].p_star - r.equilibria[b].p_star),
                             std::abs(r.equilibria[a].q_star - r.equilibria[b].q_star)) >= 1e-6);
}
