#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgame/qgame.hpp"

// Exit codes: 0 success, 2 parse/parameter error, 3 numeric-integrity error.

namespace {

qgame::run_config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qgame::parse_error(0, "", "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::vector<std::string> warnings;
    qgame::run_config cfg = qgame::parse_config(buf.str(), &warnings);
    for (const std::string& w : warnings) std::cerr << w << "\n";
    return cfg;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw qgame::parameter_error("cannot open output file '" + out_path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantized 2x2 static games: tactic mixtures, payoff surfaces, equilibrium reports"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    double p_flag = -1.0, q_flag = -1.0, tol_flag = 0.0;
    int resolution_flag = 0;
    bool have_p = false, have_q = false, have_tol = false, have_resolution = false;

    CLI::App* payoff = app.add_subcommand("payoff", "expected payoffs at a tactics profile (p, q)");
    payoff->add_option("--config", config_path, "config file")->required();
    payoff->add_option("--p", p_flag, "Alice's identity probability")->each([&](const std::string&) { have_p = true; });
    payoff->add_option("--q", q_flag, "Bob's identity probability")->each([&](const std::string&) { have_q = true; });
    payoff->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* sweep = app.add_subcommand("sweep", "CSV payoff surface over the (p, q) grid");
    sweep->add_option("--config", config_path, "config file")->required();
    sweep->add_option("--resolution", resolution_flag, "grid resolution (default from config, else 101)")
        ->each([&](const std::string&) { have_resolution = true; });
    sweep->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* equilibria = app.add_subcommand("equilibria", "equilibrium list and dilemma verdict");
    equilibria->add_option("--config", config_path, "config file")->required();
    equilibria->add_option("--tol", tol_flag, "equilibrium tolerance (default from config, else 1e-9)")
        ->each([&](const std::string&) { have_tol = true; });
    equilibria->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* demo = app.add_subcommand("demo-bos", "guided battle-of-the-sexes run, classical vs entangled");
    demo->add_option("--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (payoff->parsed()) {
            const qgame::run_config cfg = load_config(config_path);
            double p = 0.0, q = 0.0;
            if (have_p != have_q) throw qgame::parameter_error("give both --p and --q, or neither");
            if (have_p) {
                p = p_flag;
                q = q_flag;
            } else if (cfg.tactics) {
                p = cfg.tactics->first;
                q = cfg.tactics->second;
            } else {
                throw qgame::parameter_error("no tactics profile: pass --p/--q or set tactics.p/tactics.q");
            }
            emit(qgame::run_payoff(cfg, p, q), out_path);
        } else if (sweep->parsed()) {
            const qgame::run_config cfg = load_config(config_path);
            emit(qgame::run_sweep(cfg, have_resolution ? resolution_flag : cfg.resolution_or_default()),
                 out_path);
        } else if (equilibria->parsed()) {
            const qgame::run_config cfg = load_config(config_path);
            emit(qgame::run_equilibria(cfg, have_tol ? tol_flag : cfg.tolerance_or_default()), out_path);
        } else if (demo->parsed()) {
            emit(qgame::run_demo_bos(), out_path);
        }
    } catch (const qgame::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qgame::parameter_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qgame::normalization_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qgame::numeric_integrity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
