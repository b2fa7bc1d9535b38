#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgame/engine.hpp"
#include "qgame/errors.hpp"
#include "qgame/game.hpp"
#include "qgame/state.hpp"

// Equilibrium analysis for payoffs that are bilinear in the two identity
// probabilities (p, q). That covers both the classical mixed extension of a
// 2x2 game and the tactic-mixture evolution for any initial state.
//
// The analytic finder works from slopes: Alice's payoff slope in p at fixed
// q is sA(q) = c1 + c3*q, Bob's slope in q at fixed p is sB(p) = c2 + c3*p.
// A profile is an equilibrium iff each player's own coordinate maximizes a
// linear function, so only corner sign conditions, slope zero-crossings and
// identically vanishing slopes can occur.

namespace qgame {

namespace equilibrium_defaults {
inline constexpr double tol = 1e-9;         // slope / payoff comparison tolerance
inline constexpr double dedup_linf = 1e-6;  // minimum L-inf separation of reported points
}  // namespace equilibrium_defaults

enum class equilibrium_kind { corner, interior, edge_degenerate };

struct equilibrium_point {
    double p_star = 0.0;
    double q_star = 0.0;
    payoff_pair payoffs;
    equilibrium_kind kind = equilibrium_kind::corner;
};

enum class dilemma_status { no_dilemma, classical_dilemma, resolved_by_coincidence, degenerate };

struct dilemma_verdict {
    dilemma_status status = dilemma_status::no_dilemma;
    // Index pairs into the equilibrium list whose sorted payoff pairs match.
    std::vector<std::pair<std::size_t, std::size_t>> equally_attractive;
    // Max Frobenius distance between final states of the flagged equilibria.
    std::optional<double> coincidence_distance;
    std::string note;
};

struct equilibrium_report {
    std::vector<equilibrium_point> equilibria;
    dilemma_verdict verdict;
    std::string game_description;
    std::string state_description;
};

inline const char* to_string(equilibrium_kind k) {
    switch (k) {
        case equilibrium_kind::corner: return "corner";
        case equilibrium_kind::interior: return "interior";
        default: return "edge-degenerate";
    }
}

inline const char* to_string(dilemma_status s) {
    switch (s) {
        case dilemma_status::no_dilemma: return "no-dilemma";
        case dilemma_status::classical_dilemma: return "classical-dilemma";
        case dilemma_status::resolved_by_coincidence: return "resolved-by-coincidence";
        default: return "degenerate";
    }
}

// p = Prob(Alice plays O), q = Prob(Bob plays O). The classical side of the
// reproduction requirement; kept independent of the mixture engine.
inline payoff_pair classical_mixed_payoff(const game_payoffs& g, double p, double q) {
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
        throw parameter_error("classical_mixed_payoff: probabilities must lie in [0,1]");
    const std::array<double, 4> w{p * q, p * (1.0 - q), (1.0 - p) * q, (1.0 - p) * (1.0 - q)};
    payoff_pair out;
    for (std::size_t k = 0; k < 4; ++k) {
        out.alice += g.alice_table()[k] * w[k];
        out.bob += g.bob_table()[k] * w[k];
    }
    return out;
}

namespace detail {

inline bilinear_form classical_bilinear(const game_payoffs& g, player who) {
    const std::array<double, 4>& t = g.table(who);
    return {t[3], t[1] - t[3], t[2] - t[3], t[0] - t[1] - t[2] + t[3]};
}

inline double alice_slope(const bilinear_form& fa, double q) { return fa.c1 + fa.c3 * q; }
inline double bob_slope(const bilinear_form& fb, double p) { return fb.c2 + fb.c3 * p; }

// A linear slope vanishes on all of [0,1] iff it vanishes at both endpoints.
inline bool alice_slope_vanishes(const bilinear_form& fa, double tol) {
    return std::abs(fa.c1) < tol && std::abs(fa.c1 + fa.c3) < tol;
}
inline bool bob_slope_vanishes(const bilinear_form& fb, double tol) {
    return std::abs(fb.c2) < tol && std::abs(fb.c2 + fb.c3) < tol;
}

// Shared analytic finder. payoff_at(p, q) supplies the reported payoffs.
// Corners are scanned in the fixed order (0,0), (0,1), (1,0), (1,1); the
// interior candidate comes last. |slope| < tol counts as indifference; an
// equilibrium supported by indifference marks a continuum representative.
template <typename Eval>
std::vector<equilibrium_point> bilinear_equilibria(const bilinear_form& fa, const bilinear_form& fb,
                                                   double tol, Eval&& payoff_at) {
    std::vector<equilibrium_point> found;
    auto push_unique = [&found](const equilibrium_point& e) {
        for (const equilibrium_point& o : found)
            if (std::max(std::abs(e.p_star - o.p_star), std::abs(e.q_star - o.q_star)) <
                equilibrium_defaults::dedup_linf)
                return;
        found.push_back(e);
    };

    for (double cp : {0.0, 1.0}) {
        for (double cq : {0.0, 1.0}) {
            const double sa = alice_slope(fa, cq);
            const double sb = bob_slope(fb, cp);
            const bool alice_ok = (cp == 1.0) ? sa >= -tol : sa <= tol;
            const bool bob_ok = (cq == 1.0) ? sb >= -tol : sb <= tol;
            if (!alice_ok || !bob_ok) continue;
            const equilibrium_kind kind = (std::abs(sa) < tol || std::abs(sb) < tol)
                                              ? equilibrium_kind::edge_degenerate
                                              : equilibrium_kind::corner;
            push_unique({cp, cq, payoff_at(cp, cq), kind});
        }
    }

    if (std::abs(fa.c3) >= tol && std::abs(fb.c3) >= tol) {
        const double q0 = -fa.c1 / fa.c3;
        const double p0 = -fb.c2 / fb.c3;
        if (p0 > 0.0 && p0 < 1.0 && q0 > 0.0 && q0 < 1.0)
            push_unique({p0, q0, payoff_at(p0, q0), equilibrium_kind::interior});
    }
    return found;
}

// True iff neither player can improve by more than tol by deviating to any
// grid value of their own coordinate. Brute force; no slope analysis.
template <typename Eval>
bool no_improving_grid_deviation(Eval&& payoff_at, double p, double q, int resolution, double tol) {
    if (resolution < 2) throw parameter_error("verify_equilibrium_grid: resolution must be at least 2");
    const payoff_pair base = payoff_at(p, q);
    const double step = 1.0 / (resolution - 1);
    for (int k = 0; k < resolution; ++k) {
        const double v = (k == resolution - 1) ? 1.0 : k * step;
        if (payoff_at(v, q).alice > base.alice + tol) return false;
        if (payoff_at(p, v).bob > base.bob + tol) return false;
    }
    return true;
}

}  // namespace detail

// Pure equilibria by best-response check at the four corners plus the mixed
// interior point from the indifference conditions, e.g. for the Battle of
// the Sexes p* = (alpha-gamma)/(alpha+beta-2*gamma) and
// q* = (beta-gamma)/(alpha+beta-2*gamma). Candidates with a degenerate
// indifference denominator are skipped; indifference-supported points are
// reported with kind edge-degenerate.
inline std::vector<equilibrium_point> classical_nash_equilibria(const game_payoffs& g,
                                                                double tol = equilibrium_defaults::tol) {
    return detail::bilinear_equilibria(detail::classical_bilinear(g, player::alice),
                                       detail::classical_bilinear(g, player::bob), tol,
                                       [&](double p, double q) { return classical_mixed_payoff(g, p, q); });
}

// Same analysis on the exact bilinear payoffs of the tactic-mixture game.
inline std::vector<equilibrium_point> quantum_nash_equilibria(const game_payoffs& g,
                                                              const density_matrix& rho_in,
                                                              double tol = equilibrium_defaults::tol) {
    return detail::bilinear_equilibria(bilinear_coefficients(g, rho_in, player::alice),
                                       bilinear_coefficients(g, rho_in, player::bob), tol,
                                       [&](double p, double q) {
                                           return expected_payoffs(g, rho_in, tactics_profile(p, q));
                                       });
}

// Independent brute-force oracle for the analytic finder.
inline bool verify_equilibrium_grid(const game_payoffs& g, const density_matrix& rho_in, double p, double q,
                                    int resolution, double tol) {
    return detail::no_improving_grid_deviation(
        [&](double pp, double qq) { return expected_payoffs(g, rho_in, tactics_profile(pp, qq)); }, p, q,
        resolution, tol);
}

namespace detail {

inline std::string degeneracy_note(const game_payoffs& g, const density_matrix& rho_in, double tol) {
    const bilinear_form fa = bilinear_coefficients(g, rho_in, player::alice);
    const bilinear_form fb = bilinear_coefficients(g, rho_in, player::bob);
    const bool a_flat = alice_slope_vanishes(fa, tol);
    const bool b_flat = bob_slope_vanishes(fb, tol);
    if (a_flat && b_flat) return "both payoff slopes vanish identically; every profile is an equilibrium";
    if (a_flat) return "alice's payoff slope in p vanishes identically; equilibria form a continuum";
    if (b_flat) return "bob's payoff slope in q vanishes identically; equilibria form a continuum";
    return "a player is indifferent at an equilibrium corner; equilibria extend along the adjoining edge";
}

}  // namespace detail

// Status rules: degenerate when the verified set contains a continuum
// representative; no-dilemma for a single or a strictly dominant
// equilibrium; otherwise the non-dominated equilibria are compared pairwise
// ("equally attractive" = sorted payoff pairs match within tol) and the
// final states of the matching ones decide between classical-dilemma and
// resolved-by-coincidence.
inline dilemma_verdict classify_dilemma(const game_payoffs& g, const density_matrix& rho_in,
                                        const std::vector<equilibrium_point>& eqs,
                                        double tol = equilibrium_defaults::tol) {
    if (eqs.empty()) throw contract_error("classify_dilemma: equilibrium list is empty");
    for (const equilibrium_point& e : eqs)
        if (!verify_equilibrium_grid(g, rho_in, e.p_star, e.q_star, 101, tol))
            throw contract_error("classify_dilemma: list contains a point that fails grid verification");

    dilemma_verdict verdict;

    const bool continuum = std::any_of(eqs.begin(), eqs.end(), [](const equilibrium_point& e) {
        return e.kind == equilibrium_kind::edge_degenerate;
    });
    if (continuum) {
        verdict.status = dilemma_status::degenerate;
        verdict.note = detail::degeneracy_note(g, rho_in, tol);
        return verdict;
    }

    if (eqs.size() == 1) return verdict;  // no-dilemma

    auto dominates = [&](std::size_t i, std::size_t j) {
        return eqs[i].payoffs.alice > eqs[j].payoffs.alice + tol &&
               eqs[i].payoffs.bob > eqs[j].payoffs.bob + tol;
    };
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        bool dominates_all = true;
        for (std::size_t j = 0; j < eqs.size() && dominates_all; ++j)
            if (j != i && !dominates(i, j)) dominates_all = false;
        if (dominates_all) return verdict;  // no-dilemma
    }

    std::vector<std::size_t> maximal;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < eqs.size() && !dominated; ++j)
            if (j != i && dominates(j, i)) dominated = true;
        if (!dominated) maximal.push_back(i);
    }

    auto sorted_pair = [](const payoff_pair& pp) {
        return pp.alice <= pp.bob ? std::pair<double, double>{pp.alice, pp.bob}
                                  : std::pair<double, double>{pp.bob, pp.alice};
    };
    std::vector<std::size_t> flagged;
    for (std::size_t a = 0; a < maximal.size(); ++a) {
        for (std::size_t b = a + 1; b < maximal.size(); ++b) {
            const auto [lo1, hi1] = sorted_pair(eqs[maximal[a]].payoffs);
            const auto [lo2, hi2] = sorted_pair(eqs[maximal[b]].payoffs);
            if (std::abs(lo1 - lo2) <= tol && std::abs(hi1 - hi2) <= tol) {
                verdict.equally_attractive.emplace_back(maximal[a], maximal[b]);
                for (std::size_t idx : {maximal[a], maximal[b]})
                    if (std::find(flagged.begin(), flagged.end(), idx) == flagged.end())
                        flagged.push_back(idx);
            }
        }
    }
    if (verdict.equally_attractive.empty()) return verdict;  // no-dilemma

    std::vector<density_matrix> finals;
    finals.reserve(flagged.size());
    for (std::size_t idx : flagged)
        finals.push_back(final_state(rho_in, tactics_profile(eqs[idx].p_star, eqs[idx].q_star)));
    double worst = 0.0;
    for (std::size_t a = 0; a < finals.size(); ++a)
        for (std::size_t b = a + 1; b < finals.size(); ++b)
            worst = std::max(worst, frobenius_distance(finals[a], finals[b]));
    verdict.coincidence_distance = worst;
    verdict.status = worst < tol ? dilemma_status::resolved_by_coincidence : dilemma_status::classical_dilemma;
    return verdict;
}

inline equilibrium_report make_equilibrium_report(const game_payoffs& g, const density_matrix& rho_in,
                                                  double tol = equilibrium_defaults::tol,
                                                  std::string game_description = "",
                                                  std::string state_description = "") {
    equilibrium_report report;
    report.equilibria = quantum_nash_equilibria(g, rho_in, tol);
    report.verdict = classify_dilemma(g, rho_in, report.equilibria, tol);
    report.game_description = std::move(game_description);
    report.state_description = std::move(state_description);
    return report;
}

}  // namespace qgame
