// config.hpp — run configuration: plain-text key/value parsing with sections,
// named scenario presets, command-line overrides, and validation diagnostics.
//
// Config format (all keys optional; unknown keys are errors):
//
//   mode = sweep              # sweep | wavepacket | levels | overlaps_dump
//   out  = results/myrun
//
//   [params]
//   g0 = 1.0
//   lambda = 0.05
//   Gamma = 0.1
//   gamma_a = 0.0
//   delta_ac = 0.0
//   n0 = 0
//   geometry = side           # side | direct
//
//   [grid]
//   min = -2.5
//   max = 3.5
//   points = 2001
//
//   [solver]
//   n_max = auto              # auto or an integer
//   convergence_tol = 1e-8
//   series_order = 2
//   auto_nmax_step = 8
//   auto_nmax_ceiling = 512
//
//   [wavepacket]
//   delta_0 = 0.0
//   d = 4.0
//
//   [levels]
//   n_lo = 0
//   n_hi = 4

#pragma once

#include "sps1d/params.hpp"
#include "sps1d/scattering.hpp"
#include "sps1d/spectra.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sps {

// --------------------------------- RunConfig ---------------------------------

enum class RunMode { sweep, wavepacket, levels, overlaps_dump };

inline const char* to_string(RunMode m) noexcept {
    switch (m) {
        case RunMode::sweep: return "sweep";
        case RunMode::wavepacket: return "wavepacket";
        case RunMode::levels: return "levels";
        default: return "overlaps_dump";
    }
}

// Gaussian-pulse section of a config; WavepacketSpec is assembled from this
// plus the shared grid at run time.
struct PulseSection {
    std::optional<double> delta_0;
    std::optional<double> d;
};

struct LevelsRange {
    int n_lo = 0;
    int n_hi = 4;
};

struct RunConfig {
    SystemParams params;
    RunMode mode = RunMode::sweep;
    SweepGrid grid;  // defaults to [-2.5, 3.5] x 2001
    PulseSection pulse;
    LevelsRange levels;
    SolverConfig solver;
    std::string output_path = "out";
    std::string preset;  // name this config was expanded from, if any
};

// ------------------------------- diagnostics ---------------------------------

struct Diagnostic {
    enum class Severity { warning, error };
    Severity severity = Severity::error;
    std::string field;
    std::string message;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Collects hard errors and advisory warnings without mutating the config.
inline std::vector<Diagnostic> validate(const RunConfig& cfg) {
    std::vector<Diagnostic> out;
    auto error = [&](const std::string& field, const std::string& msg) {
        out.push_back({Diagnostic::Severity::error, field, msg});
    };
    auto warning = [&](const std::string& field, const std::string& msg) {
        out.push_back({Diagnostic::Severity::warning, field, msg});
    };

    try {
        cfg.params.validate();
    } catch (const std::exception& e) {
        error("params", e.what());
    }
    try {
        cfg.grid.validate();
    } catch (const std::exception& e) {
        error("grid", e.what());
    }
    try {
        cfg.solver.validate();
    } catch (const std::exception& e) {
        error("solver", e.what());
    }
    if (cfg.solver.n_max != SolverConfig::automatic && cfg.solver.n_max < cfg.params.n0) {
        error("solver.n_max", "n_max must be >= params.n0");
    }
    if (cfg.output_path.empty()) {
        error("out", "output path must not be empty");
    }

    if (cfg.mode == RunMode::wavepacket) {
        if (!cfg.pulse.d) {
            error("wavepacket.d", "required in wavepacket mode");
        } else if (!(std::isfinite(*cfg.pulse.d) && *cfg.pulse.d > 0.0)) {
            error("wavepacket.d", "must be a finite positive width");
        }
        if (cfg.pulse.delta_0 && !std::isfinite(*cfg.pulse.delta_0)) {
            error("wavepacket.delta_0", "must be finite");
        }
        if (cfg.pulse.d && std::isfinite(*cfg.pulse.d) && *cfg.pulse.d > 0.0) {
            const double d0 = cfg.pulse.delta_0.value_or(0.0);
            if (cfg.grid.delta_c_min > d0 - 3.0 * (*cfg.pulse.d) ||
                cfg.grid.delta_c_max < d0 + 3.0 * (*cfg.pulse.d)) {
                warning("grid", "grid narrower than the pulse core delta_0 +- 3d; "
                                "scattered mass will fall outside it");
            }
        }
    }

    if (cfg.mode == RunMode::levels && cfg.levels.n_hi < cfg.levels.n_lo) {
        error("levels", "n_hi must be >= n_lo");
    }
    if (cfg.mode == RunMode::levels && cfg.levels.n_lo < 0) {
        error("levels.n_lo", "must be >= 0");
    }

    if (std::isfinite(cfg.params.Gamma) && cfg.params.Gamma > 0.0 &&
        !cfg.params.sideband_resolved()) {
        warning("params.Gamma",
                "Gamma >= 1 (in units of the mechanical frequency) leaves the "
                "sideband-resolved regime the model targets");
    }
    return out;
}

// --------------------------------- parsing -----------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

[[noreturn]] inline void config_fail(const std::string& where, const std::string& msg) {
    throw ConfigError(where.empty() ? msg : where + ": " + msg);
}

inline double parse_real(const std::string& value, const std::string& field,
                         const std::string& where) {
    const std::string v = trim(value);
    if (!v.empty()) {
        char* end = nullptr;
        const double parsed = std::strtod(v.c_str(), &end);
        if (end == v.c_str() + v.size()) {
            return parsed;
        }
    }
    config_fail(where, "field '" + field + "': cannot parse '" + value + "' as a number");
}

inline int parse_integer(const std::string& value, const std::string& field,
                         const std::string& where) {
    const std::string v = trim(value);
    if (!v.empty()) {
        char* end = nullptr;
        const long parsed = std::strtol(v.c_str(), &end, 10);
        if (end == v.c_str() + v.size()) {
            return static_cast<int>(parsed);
        }
    }
    config_fail(where, "field '" + field + "': cannot parse '" + value + "' as an integer");
}

// Routes one section.key assignment into the config; shared by the file parser
// and --override handling so both report errors the same way.
inline void set_field(RunConfig& cfg, const std::string& section, const std::string& key,
                      const std::string& value, const std::string& where) {
    const std::string v = trim(value);
    if (section.empty()) {
        if (key == "mode") {
            if (v == "sweep") cfg.mode = RunMode::sweep;
            else if (v == "wavepacket") cfg.mode = RunMode::wavepacket;
            else if (v == "levels") cfg.mode = RunMode::levels;
            else if (v == "overlaps_dump") cfg.mode = RunMode::overlaps_dump;
            else config_fail(where, "unknown mode '" + v + "'");
        } else if (key == "out") {
            cfg.output_path = v;
        } else {
            config_fail(where, "unknown key '" + key + "'");
        }
        return;
    }
    if (section == "params") {
        if (key == "g0") cfg.params.g0 = parse_real(v, "params.g0", where);
        else if (key == "lambda") cfg.params.lambda = parse_real(v, "params.lambda", where);
        else if (key == "Gamma") cfg.params.Gamma = parse_real(v, "params.Gamma", where);
        else if (key == "gamma_a") cfg.params.gamma_a = parse_real(v, "params.gamma_a", where);
        else if (key == "delta_ac") cfg.params.delta_ac = parse_real(v, "params.delta_ac", where);
        else if (key == "n0") cfg.params.n0 = parse_integer(v, "params.n0", where);
        else if (key == "geometry") {
            if (v == "side") cfg.params.geometry = Geometry::side;
            else if (v == "direct") cfg.params.geometry = Geometry::direct;
            else config_fail(where, "geometry must be 'side' or 'direct', got '" + v + "'");
        } else {
            config_fail(where, "unknown key 'params." + key + "'");
        }
        return;
    }
    if (section == "grid") {
        if (key == "min") cfg.grid.delta_c_min = parse_real(v, "grid.min", where);
        else if (key == "max") cfg.grid.delta_c_max = parse_real(v, "grid.max", where);
        else if (key == "points") cfg.grid.points = parse_integer(v, "grid.points", where);
        else config_fail(where, "unknown key 'grid." + key + "'");
        return;
    }
    if (section == "solver") {
        if (key == "n_max") {
            if (v == "auto") cfg.solver.n_max = SolverConfig::automatic;
            else cfg.solver.n_max = parse_integer(v, "solver.n_max", where);
        } else if (key == "convergence_tol") {
            cfg.solver.convergence_tol = parse_real(v, "solver.convergence_tol", where);
        } else if (key == "series_order") {
            cfg.solver.series_order = parse_integer(v, "solver.series_order", where);
        } else if (key == "auto_nmax_step") {
            cfg.solver.auto_nmax_step = parse_integer(v, "solver.auto_nmax_step", where);
        } else if (key == "auto_nmax_ceiling") {
            cfg.solver.auto_nmax_ceiling = parse_integer(v, "solver.auto_nmax_ceiling", where);
        } else {
            config_fail(where, "unknown key 'solver." + key + "'");
        }
        return;
    }
    if (section == "wavepacket") {
        if (key == "delta_0") cfg.pulse.delta_0 = parse_real(v, "wavepacket.delta_0", where);
        else if (key == "d") cfg.pulse.d = parse_real(v, "wavepacket.d", where);
        else config_fail(where, "unknown key 'wavepacket." + key + "'");
        return;
    }
    if (section == "levels") {
        if (key == "n_lo") cfg.levels.n_lo = parse_integer(v, "levels.n_lo", where);
        else if (key == "n_hi") cfg.levels.n_hi = parse_integer(v, "levels.n_hi", where);
        else config_fail(where, "unknown key 'levels." + key + "'");
        return;
    }
    config_fail(where, "unknown section '[" + section + "]'");
}

}  // namespace detail

// Parses config text on top of an existing config (so presets compose with
// files and overrides). `source` names the text in error messages.
inline void parse_config_into(RunConfig& cfg, const std::string& text,
                              const std::string& source = "config") {
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string line = text.substr(
            pos, eol == std::string::npos ? std::string::npos : eol - pos);
        pos = (eol == std::string::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        const std::string where = source + " line " + std::to_string(line_no);

        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                detail::config_fail(where, "malformed section header '" + line + "'");
            }
            section = detail::trim(line.substr(1, line.size() - 2));
            if (section != "params" && section != "grid" && section != "solver" &&
                section != "wavepacket" && section != "levels") {
                detail::config_fail(where, "unknown section '[" + section + "]'");
            }
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            detail::config_fail(where, "expected 'key = value', got '" + line + "'");
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) {
            detail::config_fail(where, "empty key");
        }
        detail::set_field(cfg, section, key, value, where);
    }
}

inline RunConfig parse_config(const std::string& text, const std::string& source = "config") {
    RunConfig cfg;
    parse_config_into(cfg, text, source);
    return cfg;
}

// Applies one "section.key=value" (or "key=value" for top-level keys) override.
inline void apply_override(RunConfig& cfg, const std::string& assignment) {
    const std::string where = "override '" + assignment + "'";
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos) {
        detail::config_fail(where, "expected key=value");
    }
    const std::string path = detail::trim(assignment.substr(0, eq));
    const std::string value = detail::trim(assignment.substr(eq + 1));
    if (path.empty()) {
        detail::config_fail(where, "empty key");
    }
    const std::size_t dot = path.find('.');
    const std::string section = (dot == std::string::npos) ? "" : path.substr(0, dot);
    const std::string key = (dot == std::string::npos) ? path : path.substr(dot + 1);
    detail::set_field(cfg, section, key, value, where);
}

// ---------------------------------- presets ----------------------------------

// Scenario presets: monochromatic T/R sweeps over detuning for ladders of g0 at
// several atom couplings, plus one Gaussian-pulse run. All use Gamma = 0.1,
// n0 = 0, a 2001-point grid, and a tight truncation ladder (tol 1e-12) so the
// flux audit of lossless runs is conserved to ~1e-15.
inline std::vector<std::string> preset_names() {
    return {
        "fig2a", "fig2b", "fig2c", "fig2d",  // lambda = 0 (bare optomechanics)
        "fig4a", "fig4b", "fig4c", "fig4d",  // lambda = 4 (vacuum Rabi regime)
        "fig5a", "fig5b", "fig5c", "fig5d",  // lambda = 0.05 (EIT regime)
        "fig6a", "fig6b", "fig6c", "fig6d", "fig6e", "fig6f",  // detuned atom
        "fig7a", "fig7b", "fig7c", "fig7d", "fig7e", "fig7f",  // lossy atom
        "fig8",                                                // Gaussian pulse
    };
}

inline RunConfig preset_config(const std::string& name) {
    RunConfig cfg;
    cfg.preset = name;
    cfg.output_path = "out/" + name;
    cfg.params.Gamma = 0.1;
    cfg.solver.convergence_tol = 1e-12;

    const double root2 = std::sqrt(2.0);
    auto narrow = [&] { cfg.grid = {-2.5, 3.5, 2001, GridSpacing::uniform}; };
    auto wide = [&] { cfg.grid = {-6.5, 6.5, 2001, GridSpacing::uniform}; };

    if (name == "fig2a" || name == "fig2b" || name == "fig2c" || name == "fig2d") {
        cfg.params.lambda = 0.0;
        cfg.params.g0 = (name == "fig2a") ? 0.0
                        : (name == "fig2b") ? 0.5
                        : (name == "fig2c") ? 1.0 : root2;
        narrow();
    } else if (name == "fig4a" || name == "fig4b" || name == "fig4c" || name == "fig4d") {
        cfg.params.lambda = 4.0;
        cfg.params.g0 = (name == "fig4a") ? 0.0
                        : (name == "fig4b") ? 0.5
                        : (name == "fig4c") ? 1.0 : root2;
        wide();
    } else if (name == "fig5a" || name == "fig5b" || name == "fig5c" || name == "fig5d") {
        cfg.params.lambda = 0.05;
        cfg.params.g0 = (name == "fig5a") ? 0.0
                        : (name == "fig5b") ? 0.5
                        : (name == "fig5c") ? 1.0 : root2;
        narrow();
    } else if (name == "fig6a" || name == "fig6b" || name == "fig6c" || name == "fig6d" ||
               name == "fig6e" || name == "fig6f") {
        cfg.params.lambda = 0.05;
        cfg.params.g0 = (name == "fig6a" || name == "fig6b") ? 0.0
                        : (name == "fig6c" || name == "fig6d") ? 1.0 : root2;
        cfg.params.delta_ac = (name == "fig6a" || name == "fig6c" || name == "fig6e")
                                  ? -0.1 : 0.1;
        narrow();
    } else if (name == "fig7a" || name == "fig7b" || name == "fig7c" || name == "fig7d" ||
               name == "fig7e" || name == "fig7f") {
        cfg.params.gamma_a = 0.01;
        cfg.params.g0 = (name == "fig7a" || name == "fig7b") ? 0.0
                        : (name == "fig7c" || name == "fig7d") ? 1.0 : root2;
        const bool strong = (name == "fig7b" || name == "fig7d" || name == "fig7f");
        cfg.params.lambda = strong ? 4.0 : 0.1;
        if (strong) {
            wide();
        } else {
            narrow();
        }
    } else if (name == "fig8") {
        cfg.mode = RunMode::wavepacket;
        cfg.params.g0 = 1.0;
        cfg.params.lambda = 0.1;
        cfg.params.gamma_a = 0.01;
        cfg.pulse.delta_0 = 0.0;
        cfg.pulse.d = 4.0;
        cfg.grid = {-30.0, 25.0, 2201, GridSpacing::uniform};
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return cfg;
}

}  // namespace sps
