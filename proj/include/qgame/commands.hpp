#pragma once

#include <string>

#include "qgame/config.hpp"
#include "qgame/engine.hpp"
#include "qgame/equilibrium.hpp"
#include "qgame/format.hpp"

// Command bodies behind the CLI subcommands. Each returns the complete
// output document as a string; everything is deterministic, so two runs
// with the same inputs are byte-identical.

namespace qgame {

inline std::string run_payoff(const run_config& cfg, double p, double q) {
    const tactics_profile t(p, q);
    const payoff_pair pay = expected_payoffs(cfg.game(), cfg.initial_state(), t);
    const std::array<double, 4> w = t.branch_probabilities();
    std::string out;
    out += "alice=" + format_display(pay.alice) + " bob=" + format_display(pay.bob) + "\n";
    out += "branches: ii=" + format_display(w[0]) + " ix=" + format_display(w[1]) +
           " xi=" + format_display(w[2]) + " xx=" + format_display(w[3]) + "\n";
    return out;
}

// Header "p,q,payoff_a,payoff_b", rows in the engine's fixed grid order,
// 17 significant digits, trailing newline.
inline std::string run_sweep(const run_config& cfg, int resolution) {
    const game_payoffs g = cfg.game();
    const density_matrix rho = cfg.initial_state();
    std::string out = "p,q,payoff_a,payoff_b\n";
    for (const surface_cell& cell : payoff_surface(g, rho, resolution))
        out += format_exact(cell.p) + "," + format_exact(cell.q) + "," + format_exact(cell.payoffs.alice) +
               "," + format_exact(cell.payoffs.bob) + "\n";
    return out;
}

namespace detail {

inline std::string render_equilibria_lines(const std::vector<equilibrium_point>& eqs,
                                           const std::string& indent) {
    std::string out;
    for (std::size_t k = 0; k < eqs.size(); ++k) {
        const equilibrium_point& e = eqs[k];
        out += indent + "eq[" + std::to_string(k) + "]: p=" + format_display(e.p_star) +
               " q=" + format_display(e.q_star) + " alice=" + format_display(e.payoffs.alice) +
               " bob=" + format_display(e.payoffs.bob) + " kind=" + to_string(e.kind) + "\n";
    }
    return out;
}

inline std::string render_verdict_lines(const dilemma_verdict& v, const std::string& indent) {
    std::string out = indent + "verdict: " + std::string(to_string(v.status)) + "\n";
    out += indent + "equally-attractive:";
    if (v.equally_attractive.empty()) {
        out += " none\n";
    } else {
        for (const auto& [i, j] : v.equally_attractive)
            out += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
        out += "\n";
    }
    out += indent + "coincidence-distance: " +
           (v.coincidence_distance ? format_display(*v.coincidence_distance) : std::string("n/a")) + "\n";
    if (!v.note.empty()) out += indent + "note: " + v.note + "\n";
    return out;
}

}  // namespace detail

inline std::string render_report(const equilibrium_report& r) {
    std::string out;
    out += "game: " + r.game_description + "\n";
    out += "state: " + r.state_description + "\n";
    out += "equilibria: " + std::to_string(r.equilibria.size()) + "\n";
    out += detail::render_equilibria_lines(r.equilibria, "");
    out += detail::render_verdict_lines(r.verdict, "");
    return out;
}

inline std::string run_equilibria(const run_config& cfg, double tol) {
    return render_report(make_equilibrium_report(cfg.game(), cfg.initial_state(), tol,
                                                 cfg.game_description(), cfg.state_description()));
}

// Guided run of the (5,3,1) instance: the classical coordination dilemma,
// the mismatch risk away from the equilibria, and the entangled start whose
// pure equilibria share one final state.
inline std::string run_demo_bos() {
    const game_payoffs g = battle_of_sexes(bos_parameters(5.0, 3.0, 1.0));
    const density_matrix classical_start = density_from_state(
        tensor_product(single_strategy::basis_o(), single_strategy::basis_o()));
    const density_matrix entangled_start = entangled_bos_density();
    const double tol = equilibrium_defaults::tol;

    std::string out;
    out += "battle of the sexes: alpha=5 beta=3 gamma=1\n";
    out += "payoff tables: alice=(5,1,1,3) bob=(3,1,1,5)\n";
    out += "\n";

    out += "classical play, factorizable start |OO>:\n";
    const std::vector<equilibrium_point> ceq = quantum_nash_equilibria(g, classical_start, tol);
    out += detail::render_equilibria_lines(ceq, "  ");
    out += detail::render_verdict_lines(classify_dilemma(g, classical_start, ceq, tol), "  ");
    out += "  the two pure equilibria carry mirrored payoffs and distinct final states:\n";
    const double classical_gap = frobenius_distance(final_state(classical_start, tactics_profile(0.0, 0.0)),
                                                    final_state(classical_start, tactics_profile(1.0, 1.0)));
    out += "  distance(final(0,0), final(1,1)) = " + format_display(classical_gap) + "\n";
    out += "\n";

    out += "entangled start (|OO> + |TT>)/sqrt(2):\n";
    const std::vector<equilibrium_point> qeq = quantum_nash_equilibria(g, entangled_start, tol);
    out += detail::render_equilibria_lines(qeq, "  ");
    out += "  mismatched tactics miss both coordinated outcomes:\n";
    for (const auto& [p, q] : {std::pair<double, double>{0.0, 1.0}, {1.0, 0.0}}) {
        const payoff_pair pay = expected_payoffs(g, entangled_start, tactics_profile(p, q));
        out += "  (p,q)=(" + format_display(p) + "," + format_display(q) + "): alice=" +
               format_display(pay.alice) + " bob=" + format_display(pay.bob) + "\n";
    }
    out += "  the two pure equilibria lead to one and the same final state:\n";
    const density_matrix fin00 = final_state(entangled_start, tactics_profile(0.0, 0.0));
    const density_matrix fin11 = final_state(entangled_start, tactics_profile(1.0, 1.0));
    out += "  distance(final(0,0), final(1,1)) = " + format_display(frobenius_distance(fin00, fin11)) + "\n";
    out += "  distance(final(0,0), initial)    = " + format_display(frobenius_distance(fin00, entangled_start)) + "\n";
    out += "  distance(final(1,1), initial)    = " + format_display(frobenius_distance(fin11, entangled_start)) + "\n";
    out += detail::render_verdict_lines(classify_dilemma(g, entangled_start, qeq, tol), "  ");
    return out;
}

}  // namespace qgame
