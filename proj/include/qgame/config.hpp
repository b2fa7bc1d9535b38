#pragma once

#include <array>
#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgame/engine.hpp"
#include "qgame/equilibrium.hpp"
#include "qgame/errors.hpp"
#include "qgame/format.hpp"
#include "qgame/game.hpp"
#include "qgame/state.hpp"

// Run configuration and its file format: flat "section.key = values" lines,
// '#' comments, whitespace-separated numbers. Amplitudes are written as a
// bare real ("0.5") or as real and imaginary part joined without spaces
// ("0.5+0.25i", "1e-3-2e-4i").
//
// Core constructors stay strict; config amplitudes carry rounded decimals,
// so states are renormalized on load (with a warning past 1e-9 deviation)
// and rejected as non-normalizable below norm 1e-6.

namespace qgame {

struct run_config {
    enum class state_kind { entangled_bos, factorizable, raw };

    std::optional<bos_parameters> bos;
    std::optional<std::pair<std::array<double, 4>, std::array<double, 4>>> tables;

    std::optional<state_kind> state;
    std::array<complex, 2> alice_amplitudes{};
    std::array<complex, 2> bob_amplitudes{};
    std::array<complex, 4> raw_amplitudes{};

    std::optional<std::pair<double, double>> tactics;
    std::optional<int> sweep_resolution;
    std::optional<double> tolerance;

    bool operator==(const run_config&) const = default;

    int resolution_or_default() const { return sweep_resolution.value_or(101); }
    double tolerance_or_default() const { return tolerance.value_or(equilibrium_defaults::tol); }

    game_payoffs game() const {
        if (bos) return battle_of_sexes(*bos);
        return game_payoffs(tables->first, tables->second);
    }

    density_matrix initial_state() const {
        switch (*state) {
            case state_kind::entangled_bos:
                return entangled_bos_density();
            case state_kind::factorizable:
                return density_from_state(
                    tensor_product(single_strategy(alice_amplitudes), single_strategy(bob_amplitudes)));
            default:
                return density_from_state(strategy_state(raw_amplitudes));
        }
    }

    std::string game_description() const {
        if (bos)
            return "bos alpha=" + format_exact(bos->alpha()) + " beta=" + format_exact(bos->beta()) +
                   " gamma=" + format_exact(bos->gamma());
        auto row = [](const std::array<double, 4>& t) {
            return "(" + format_exact(t[0]) + "," + format_exact(t[1]) + "," + format_exact(t[2]) + "," +
                   format_exact(t[3]) + ")";
        };
        return "tables alice=" + row(tables->first) + " bob=" + row(tables->second);
    }

    std::string state_description() const;
};

namespace detail {

inline std::string render_amplitude(const complex& z) {
    if (z.imag() == 0.0) return format_exact(z.real());
    if (z.imag() < 0.0) return format_exact(z.real()) + "-" + format_exact(-z.imag()) + "i";
    return format_exact(z.real()) + "+" + format_exact(z.imag()) + "i";
}

inline double parse_real_token(const std::string& tok, int line, const std::string& key) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + tok.size() || tok.empty())
        throw parse_error(line, key, "malformed number '" + tok + "'");
    return v;
}

inline complex parse_amplitude_token(const std::string& tok, int line, const std::string& key) {
    if (tok.empty()) throw parse_error(line, key, "empty amplitude");
    if (tok.back() != 'i') return complex(parse_real_token(tok, line, key), 0.0);
    const std::string body = tok.substr(0, tok.size() - 1);
    // Split at the first sign that is not an exponent sign.
    for (std::size_t k = 1; k < body.size(); ++k) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            const double re = parse_real_token(body.substr(0, k), line, key);
            const double im = parse_real_token(body.substr(k), line, key);
            return complex(re, im);
        }
    }
    throw parse_error(line, key, "malformed amplitude '" + tok + "' (expected re or re+imi)");
}

template <std::size_t N>
void load_amplitudes(std::array<complex, N>& out, const std::vector<std::string>& tokens, int line,
                     const std::string& key, std::vector<std::string>* warnings) {
    if (tokens.size() != N)
        throw parse_error(line, key, "expected " + std::to_string(N) + " amplitudes, got " +
                                         std::to_string(tokens.size()));
    for (std::size_t k = 0; k < N; ++k) out[k] = parse_amplitude_token(tokens[k], line, key);
    const double norm = std::sqrt(squared_norm(out));
    if (!(norm >= 1e-6)) throw parse_error(line, key, "state is not normalizable (norm below 1e-6)");
    if (std::abs(norm - 1.0) <= 1e-12) return;
    for (complex& z : out) z /= norm;
    if (std::abs(norm - 1.0) > 1e-9 && warnings)
        warnings->push_back("warning: " + key + " renormalized on load (norm was " + format_exact(norm) + ")");
}

}  // namespace detail

inline std::string run_config::state_description() const {
    switch (*state) {
        case state_kind::entangled_bos:
            return "entangled-bos";
        case state_kind::factorizable:
            return "factorizable alice=(" + detail::render_amplitude(alice_amplitudes[0]) + "," +
                   detail::render_amplitude(alice_amplitudes[1]) + ") bob=(" +
                   detail::render_amplitude(bob_amplitudes[0]) + "," +
                   detail::render_amplitude(bob_amplitudes[1]) + ")";
        default:
            return "raw (" + detail::render_amplitude(raw_amplitudes[0]) + "," +
                   detail::render_amplitude(raw_amplitudes[1]) + "," +
                   detail::render_amplitude(raw_amplitudes[2]) + "," +
                   detail::render_amplitude(raw_amplitudes[3]) + ")";
    }
}

inline run_config parse_config(std::string_view text, std::vector<std::string>* warnings = nullptr) {
    run_config cfg;
    std::map<std::string, int> seen;  // key -> first line, for duplicate detection

    std::optional<double> tactic_p, tactic_q;
    bool have_alice_table = false, have_bob_table = false;
    std::array<double, 4> alice_table{}, bob_table{};
    bool have_state_alice = false, have_state_bob = false;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string line(text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos));
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const std::size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
        std::size_t b = 0, e = line.size();
        while (b < e && is_space(line[b])) ++b;
        while (e > b && is_space(line[e - 1])) --e;
        if (b == e) continue;
        line = line.substr(b, e - b);

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw parse_error(line_no, "", "expected 'key = values'");
        std::string key = line.substr(0, eq);
        while (!key.empty() && is_space(key.back())) key.pop_back();
        if (key.empty()) throw parse_error(line_no, "", "missing key before '='");

        std::vector<std::string> tokens;
        for (std::size_t k = eq + 1; k < line.size();) {
            while (k < line.size() && is_space(line[k])) ++k;
            std::size_t start = k;
            while (k < line.size() && !is_space(line[k])) ++k;
            if (k > start) tokens.push_back(line.substr(start, k - start));
        }

        if (auto [it, inserted] = seen.emplace(key, line_no); !inserted)
            throw parse_error(line_no, key, "duplicate key (first given on line " + std::to_string(it->second) + ")");

        auto want = [&](std::size_t n) {
            if (tokens.size() != n)
                throw parse_error(line_no, key,
                                  "expected " + std::to_string(n) + " values, got " + std::to_string(tokens.size()));
        };
        auto real_at = [&](std::size_t k) { return detail::parse_real_token(tokens[k], line_no, key); };

        if (key == "game.bos") {
            want(3);
            try {
                cfg.bos.emplace(real_at(0), real_at(1), real_at(2));
            } catch (const parameter_error& err) {
                throw parse_error(line_no, key, err.what());
            }
        } else if (key == "game.alice") {
            want(4);
            for (std::size_t k = 0; k < 4; ++k) alice_table[k] = real_at(k);
            have_alice_table = true;
        } else if (key == "game.bob") {
            want(4);
            for (std::size_t k = 0; k < 4; ++k) bob_table[k] = real_at(k);
            have_bob_table = true;
        } else if (key == "state") {
            want(1);
            if (tokens[0] != "entangled-bos")
                throw parse_error(line_no, key, "unknown named state '" + tokens[0] + "'");
            cfg.state = run_config::state_kind::entangled_bos;
        } else if (key == "state.alice") {
            detail::load_amplitudes(cfg.alice_amplitudes, tokens, line_no, key, warnings);
            have_state_alice = true;
        } else if (key == "state.bob") {
            detail::load_amplitudes(cfg.bob_amplitudes, tokens, line_no, key, warnings);
            have_state_bob = true;
        } else if (key == "state.raw") {
            detail::load_amplitudes(cfg.raw_amplitudes, tokens, line_no, key, warnings);
            cfg.state = run_config::state_kind::raw;
        } else if (key == "tactics.p") {
            want(1);
            tactic_p = real_at(0);
        } else if (key == "tactics.q") {
            want(1);
            tactic_q = real_at(0);
        } else if (key == "sweep.resolution") {
            want(1);
            const double v = real_at(0);
            if (v < 1.0 || v != static_cast<int>(v))
                throw parse_error(line_no, key, "expected a positive integer");
            cfg.sweep_resolution = static_cast<int>(v);
        } else if (key == "tolerance") {
            want(1);
            const double v = real_at(0);
            if (!(v > 0.0)) throw parse_error(line_no, key, "tolerance must be positive");
            cfg.tolerance = v;
        } else {
            throw parse_error(line_no, key, "unknown key");
        }
    }

    if (have_alice_table != have_bob_table)
        throw parse_error(line_no, "game", "game.alice and game.bob must be given together");
    if (have_alice_table) {
        if (cfg.bos) throw parse_error(line_no, "game", "give either game.bos or explicit tables, not both");
        cfg.tables = {alice_table, bob_table};
    }
    if (!cfg.bos && !cfg.tables) throw parse_error(line_no, "game", "missing required game section");

    if (have_state_alice != have_state_bob)
        throw parse_error(line_no, "state", "state.alice and state.bob must be given together");
    const int state_forms =
        (seen.count("state") ? 1 : 0) + (seen.count("state.raw") ? 1 : 0) + (have_state_alice ? 1 : 0);
    if (state_forms > 1) throw parse_error(line_no, "state", "more than one state form given");
    if (have_state_alice) cfg.state = run_config::state_kind::factorizable;
    if (!cfg.state) throw parse_error(line_no, "state", "missing required state section");

    if (tactic_p.has_value() != tactic_q.has_value())
        throw parse_error(line_no, "tactics", "tactics.p and tactics.q must be given together");
    if (tactic_p) {
        if (*tactic_p < 0.0 || *tactic_p > 1.0 || *tactic_q < 0.0 || *tactic_q > 1.0)
            throw parse_error(line_no, "tactics", "probabilities must lie in [0,1]");
        cfg.tactics = {*tactic_p, *tactic_q};
    }
    return cfg;
}

// Canonical text form; parse_config(render_config(c)) reproduces c.
inline std::string render_config(const run_config& cfg) {
    std::string out;
    if (cfg.bos) {
        out += "game.bos = " + format_exact(cfg.bos->alpha()) + " " + format_exact(cfg.bos->beta()) + " " +
               format_exact(cfg.bos->gamma()) + "\n";
    } else {
        auto row = [](const std::array<double, 4>& t) {
            return format_exact(t[0]) + " " + format_exact(t[1]) + " " + format_exact(t[2]) + " " +
                   format_exact(t[3]);
        };
        out += "game.alice = " + row(cfg.tables->first) + "\n";
        out += "game.bob = " + row(cfg.tables->second) + "\n";
    }
    switch (*cfg.state) {
        case run_config::state_kind::entangled_bos:
            out += "state = entangled-bos\n";
            break;
        case run_config::state_kind::factorizable:
            out += "state.alice = " + detail::render_amplitude(cfg.alice_amplitudes[0]) + " " +
                   detail::render_amplitude(cfg.alice_amplitudes[1]) + "\n";
            out += "state.bob = " + detail::render_amplitude(cfg.bob_amplitudes[0]) + " " +
                   detail::render_amplitude(cfg.bob_amplitudes[1]) + "\n";
            break;
        default:
            out += "state.raw =";
            for (const complex& z : cfg.raw_amplitudes) out += " " + detail::render_amplitude(z);
            out += "\n";
    }
    if (cfg.tactics) {
        out += "tactics.p = " + format_exact(cfg.tactics->first) + "\n";
        out += "tactics.q = " + format_exact(cfg.tactics->second) + "\n";
    }
    if (cfg.sweep_resolution) out += "sweep.resolution = " + std::to_string(*cfg.sweep_resolution) + "\n";
    if (cfg.tolerance) out += "tolerance = " + format_exact(*cfg.tolerance) + "\n";
    return out;
}

}  // namespace qgame
