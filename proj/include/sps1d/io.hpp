// io.hpp — CSV and manifest emission. All numeric output uses %.17g so doubles
// round-trip exactly and identical runs produce byte-identical files.

#pragma once

#include "sps1d/dressed.hpp"
#include "sps1d/overlap.hpp"
#include "sps1d/spectra.hpp"
#include "sps1d/wavepacket.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sps {

inline std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    return f;
}

}  // namespace detail

// Schema: delta_c,T,R,flux,t2_0..t2_N,r2_0..r2_N — one row per grid point.
inline void write_sweep_csv(const std::string& path, const SpectrumSweep& sw) {
    auto f = detail::open_output(path);
    f << "delta_c,T,R,flux";
    for (int n = 0; n <= sw.n_max_used; ++n) {
        f << ",t2_" << n;
    }
    for (int n = 0; n <= sw.n_max_used; ++n) {
        f << ",r2_" << n;
    }
    f << "\n";
    for (const SweepPoint& pt : sw.points) {
        f << format_full(pt.delta_c) << ',' << format_full(pt.T) << ','
          << format_full(pt.R) << ',' << format_full(pt.flux);
        for (Eigen::Index n = 0; n < pt.t2.size(); ++n) {
            f << ',' << format_full(pt.t2(n));
        }
        for (Eigen::Index n = 0; n < pt.r2.size(); ++n) {
            f << ',' << format_full(pt.r2(n));
        }
        f << "\n";
    }
}

// Schema: delta_c,G,S_T,S_R.
inline void write_wavepacket_csv(const std::string& path, const OccupationSpectra& occ) {
    auto f = detail::open_output(path);
    f << "delta_c,G,S_T,S_R\n";
    for (int j = 0; j < occ.grid.points; ++j) {
        const auto k = static_cast<std::size_t>(j);
        f << format_full(occ.grid.at(j)) << ',' << format_full(occ.G[k]) << ','
          << format_full(occ.S_T[k]) << ',' << format_full(occ.S_R[k]) << "\n";
    }
}

// Sidecar conservation summary for a wavepacket run.
inline void write_wavepacket_summary(const std::string& path,
                                     const OccupationSpectra& occ) {
    auto f = detail::open_output(path);
    f << "integral_S_T = " << format_full(occ.total_T) << "\n";
    f << "integral_S_R = " << format_full(occ.total_R) << "\n";
    f << "loss = " << format_full(1.0 - occ.total_T - occ.total_R) << "\n";
}

// Schema: n,branch,energy,mixing_angle.
inline void write_levels_csv(const std::string& path,
                             const std::vector<DressedLevel>& levels) {
    auto f = detail::open_output(path);
    f << "n,branch,energy,mixing_angle\n";
    for (const DressedLevel& lv : levels) {
        f << lv.n << ',' << to_string(lv.branch) << ',' << format_full(lv.energy)
          << ',' << format_full(lv.mixing_angle) << "\n";
    }
}

// Schema: n,m,u — one row per matrix entry, row-major.
inline void write_overlaps_csv(const std::string& path, const OverlapMatrix& u) {
    auto f = detail::open_output(path);
    f << "n,m,u\n";
    for (int n = 0; n < u.dim_external; ++n) {
        for (int m = 0; m < u.dim_external; ++m) {
            f << n << ',' << m << ',' << format_full(u(n, m)) << "\n";
        }
    }
}

// Plain key = value lines describing a finished run.
inline void write_manifest(const std::string& path,
                           const std::vector<std::pair<std::string, std::string>>& entries) {
    auto f = detail::open_output(path);
    for (const auto& [key, value] : entries) {
        f << key << " = " << value << "\n";
    }
}

}  // namespace sps
