// run.hpp — executes a validated RunConfig: runs the requested computation,
// writes the CSV outputs and a manifest of resolved parameters and audits.

#pragma once

#include "sps1d/config.hpp"
#include "sps1d/dressed.hpp"
#include "sps1d/io.hpp"
#include "sps1d/overlap.hpp"
#include "sps1d/scattering.hpp"
#include "sps1d/spectra.hpp"
#include "sps1d/wavepacket.hpp"

#include <algorithm>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace sps {

struct RunReport {
    RunMode mode = RunMode::sweep;
    std::string output_dir;
    std::vector<std::string> files;     // everything written, manifest included
    std::vector<std::string> warnings;  // validation + runtime advisories
    int n_max_used = 0;
    double max_residual = 0.0;
    double max_flux_defect = 0.0;  // sweeps: max |T+R-1| over the grid
    double total_T = 0.0;          // wavepacket runs
    double total_R = 0.0;
};

inline RunReport run(const RunConfig& cfg) {
    std::string error_text;
    RunReport report;
    report.mode = cfg.mode;
    report.output_dir = cfg.output_path;

    for (const Diagnostic& d : validate(cfg)) {
        if (d.severity == Diagnostic::Severity::error) {
            if (!error_text.empty()) {
                error_text += "; ";
            }
            error_text += d.field + ": " + d.message;
        } else {
            report.warnings.push_back(d.field + ": " + d.message);
        }
    }
    if (!error_text.empty()) {
        throw ConfigError("invalid configuration: " + error_text);
    }

    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_path);
    auto out_file = [&](const std::string& name) {
        return (fs::path(cfg.output_path) / name).string();
    };

    std::vector<std::pair<std::string, std::string>> manifest;
    auto record = [&](const std::string& key, const std::string& value) {
        manifest.emplace_back(key, value);
    };
    record("mode", to_string(cfg.mode));
    record("preset", cfg.preset.empty() ? "(none)" : cfg.preset);
    record("params.g0", format_full(cfg.params.g0));
    record("params.lambda", format_full(cfg.params.lambda));
    record("params.Gamma", format_full(cfg.params.Gamma));
    record("params.gamma_a", format_full(cfg.params.gamma_a));
    record("params.delta_ac", format_full(cfg.params.delta_ac));
    record("params.n0", std::to_string(cfg.params.n0));
    record("params.geometry", to_string(cfg.params.geometry));
    record("grid.min", format_full(cfg.grid.delta_c_min));
    record("grid.max", format_full(cfg.grid.delta_c_max));
    record("grid.points", std::to_string(cfg.grid.points));
    record("solver.n_max", cfg.solver.n_max == SolverConfig::automatic
                               ? "auto"
                               : std::to_string(cfg.solver.n_max));
    record("solver.convergence_tol", format_full(cfg.solver.convergence_tol));
    record("solver.series_order", std::to_string(cfg.solver.series_order));
    record("solver.auto_nmax_step", std::to_string(cfg.solver.auto_nmax_step));
    record("solver.auto_nmax_ceiling", std::to_string(cfg.solver.auto_nmax_ceiling));

    switch (cfg.mode) {
        case RunMode::sweep: {
            const SpectrumSweep sw = sweep(cfg.params, cfg.grid, cfg.solver);
            const std::string csv = out_file("sweep.csv");
            write_sweep_csv(csv, sw);
            report.files.push_back(csv);
            report.n_max_used = sw.n_max_used;
            report.max_residual = sw.max_residual;
            report.max_flux_defect = sw.max_flux_defect;

            double flux_min = sw.points.front().flux;
            double flux_max = flux_min;
            for (const SweepPoint& pt : sw.points) {
                flux_min = std::min(flux_min, pt.flux);
                flux_max = std::max(flux_max, pt.flux);
            }
            record("n_max_used", std::to_string(sw.n_max_used));
            record("max_residual", format_full(sw.max_residual));
            record("flux.max_defect", format_full(sw.max_flux_defect));
            record("flux.min", format_full(flux_min));
            record("flux.max", format_full(flux_max));
            break;
        }
        case RunMode::wavepacket: {
            WavepacketSpec wp;
            wp.delta_0 = cfg.pulse.delta_0.value_or(0.0);
            wp.d = cfg.pulse.d.value();  // presence enforced by validate()
            wp.grid = cfg.grid;
            const OccupationSpectra occ = occupation_spectra(cfg.params, wp, cfg.solver);

            const std::string csv = out_file("wavepacket.csv");
            const std::string summary = out_file("wavepacket_summary.txt");
            write_wavepacket_csv(csv, occ);
            write_wavepacket_summary(summary, occ);
            report.files.push_back(csv);
            report.files.push_back(summary);
            report.n_max_used = occ.n_max_used;
            report.max_residual = occ.max_residual;
            report.total_T = occ.total_T;
            report.total_R = occ.total_R;
            if (!occ.coverage_warning.empty()) {
                report.warnings.push_back("wavepacket: " + occ.coverage_warning);
            }

            record("wavepacket.delta_0", format_full(wp.delta_0));
            record("wavepacket.d", format_full(wp.d));
            record("n_max_used", std::to_string(occ.n_max_used));
            record("max_residual", format_full(occ.max_residual));
            record("flux.min", format_full(occ.flux_min));
            record("flux.max", format_full(occ.flux_max));
            record("integral_S_T", format_full(occ.total_T));
            record("integral_S_R", format_full(occ.total_R));
            record("loss", format_full(1.0 - occ.total_T - occ.total_R));
            record("g_quadrature_defect", format_full(occ.g_quadrature_defect));
            break;
        }
        case RunMode::levels: {
            const auto levels = dressed_levels(cfg.params, cfg.levels.n_lo, cfg.levels.n_hi);
            const std::string csv = out_file("levels.csv");
            write_levels_csv(csv, levels);
            report.files.push_back(csv);
            record("levels.n_lo", std::to_string(cfg.levels.n_lo));
            record("levels.n_hi", std::to_string(cfg.levels.n_hi));
            record("levels.count", std::to_string(levels.size()));
            record("levels.mixing_angle", format_full(mixing_angle(cfg.params)));
            break;
        }
        case RunMode::overlaps_dump: {
            double probe = cfg.grid.at(0);
            for (int i = 1; i < cfg.grid.points; ++i) {
                if (std::abs(cfg.grid.at(i)) > std::abs(probe)) {
                    probe = cfg.grid.at(i);
                }
            }
            const int nm = (cfg.solver.n_max == SolverConfig::automatic)
                               ? auto_truncate(cfg.params, probe, cfg.solver)
                               : cfg.solver.n_max;
            const OverlapMatrix u = compute_overlaps(cfg.params.g0, nm);
            const std::string csv = out_file("overlaps.csv");
            write_overlaps_csv(csv, u);
            report.files.push_back(csv);
            report.n_max_used = nm;
            record("n_max_used", std::to_string(nm));
            record("overlap.beta", format_full(u.beta));
            record("overlap.dim_external", std::to_string(u.dim_external));
            record("overlap.dim_internal", std::to_string(u.dim_internal));
            record("overlap.unitarity_defect", format_full(u.unitarity_defect));
            break;
        }
    }

    for (std::size_t i = 0; i < report.warnings.size(); ++i) {
        record("warning." + std::to_string(i), report.warnings[i]);
    }
    const std::string manifest_path = out_file("manifest");
    write_manifest(manifest_path, manifest);
    report.files.push_back(manifest_path);
    return report;
}

}  // namespace sps
