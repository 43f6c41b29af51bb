// spectra.hpp — detuning sweeps, spectral feature extraction, and the
// side <-> direct coupling-geometry mapping.

#pragma once

#include "sps1d/parallel.hpp"
#include "sps1d/params.hpp"
#include "sps1d/scattering.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace sps {

// -------------------------------- SweepGrid ----------------------------------

enum class GridSpacing { uniform };

struct SweepGrid {
    double delta_c_min = -2.5;
    double delta_c_max = 3.5;
    int points = 2001;
    GridSpacing spacing = GridSpacing::uniform;

    void validate() const {
        if (!std::isfinite(delta_c_min) || !std::isfinite(delta_c_max)) {
            throw std::invalid_argument("SweepGrid: bounds must be finite");
        }
        if (!(delta_c_min < delta_c_max)) {
            throw std::invalid_argument("SweepGrid: delta_c_min must be < delta_c_max");
        }
        if (points < 2) {
            throw std::invalid_argument("SweepGrid: points must be >= 2");
        }
    }

    double at(int i) const {
        return delta_c_min +
               (delta_c_max - delta_c_min) * static_cast<double>(i) /
                   static_cast<double>(points - 1);
    }

    double step() const {
        return (delta_c_max - delta_c_min) / static_cast<double>(points - 1);
    }
};

// ----------------------------- geometry mapping ------------------------------

// Amplitudes are always computed in the side-coupled convention. In the
// direct-coupled geometry the photon must pass through the cavity, so the
// roles of the two outgoing movers exchange channel-wise: t'_n = r_n and
// r'_n = t_n. An involution; T + R is preserved exactly.
inline AmplitudeSet map_geometry(const AmplitudeSet& amps, Geometry geometry) {
    if (geometry == Geometry::side) {
        return amps;
    }
    AmplitudeSet out = amps;
    out.t = amps.r;
    out.r = amps.t;
    return out;
}

// ------------------------------ SpectrumSweep --------------------------------

struct SweepPoint {
    double delta_c = 0.0;
    double T = 0.0;
    double R = 0.0;
    double flux = 0.0;       // T + R; equals 1 when gamma_a = 0
    Eigen::VectorXd t2, r2;  // |t_n|^2, |r_n|^2 per final phonon number
    double residual = 0.0;   // back-substitution residual of the solve (not in CSV)
};

struct SpectrumSweep {
    SweepGrid grid;
    SystemParams params;
    std::vector<SweepPoint> points;
    int n_max_used = 0;
    double max_residual = 0.0;   // worst back-substitution residual over the grid
    double max_flux_defect = 0.0;  // max |T+R-1|, the gamma_a = 0 audit
};

// Sweeps the grid with one shared n_max: when cfg.n_max is automatic, the
// truncation ladder runs once at the grid point of largest |delta_c| and the
// result is reused everywhere (keeps the per-channel columns aligned).
// Points are solved in parallel but reduced by grid index, so the output is
// identical to a sequential run.
inline SpectrumSweep sweep(const SystemParams& params, const SweepGrid& grid,
                           const SolverConfig& cfg = {}) {
    params.validate();
    grid.validate();
    cfg.validate();

    SpectrumSweep out;
    out.grid = grid;
    out.params = params;

    double probe = grid.at(0);
    for (int i = 1; i < grid.points; ++i) {
        if (std::abs(grid.at(i)) > std::abs(probe)) {
            probe = grid.at(i);
        }
    }
    out.n_max_used = (cfg.n_max == SolverConfig::automatic)
                         ? auto_truncate(params, probe, cfg)
                         : cfg.n_max;
    if (out.n_max_used < params.n0) {
        throw std::invalid_argument("sweep: n_max must be >= n0");
    }

    const OverlapMatrix u = compute_overlaps(params.g0, out.n_max_used);

    out.points.resize(static_cast<std::size_t>(grid.points));
    detail::parallel_for_index(grid.points, [&](int i) {
        const double dc = grid.at(i);
        AmplitudeSet amps;
        try {
            amps = solve_exact(params, dc, u);
        } catch (const std::exception& err) {
            throw std::runtime_error("sweep: solver failure at grid point " +
                                     std::to_string(i) + " (delta_c = " +
                                     std::to_string(dc) + "): " + err.what());
        }
        amps = map_geometry(amps, params.geometry);

        SweepPoint& pt = out.points[static_cast<std::size_t>(i)];
        pt.delta_c = dc;
        const auto [t, r] = transmission_reflection(amps);
        pt.T = t;
        pt.R = r;
        pt.flux = t + r;
        pt.t2 = amps.t.cwiseAbs2();
        pt.r2 = amps.r.cwiseAbs2();
        pt.residual = amps.residual;
    });

    for (const SweepPoint& pt : out.points) {
        out.max_residual = std::max(out.max_residual, pt.residual);
        out.max_flux_defect = std::max(out.max_flux_defect, std::abs(pt.flux - 1.0));
    }
    return out;
}

// ----------------------------- feature extraction ----------------------------

enum class FeatureKind { dip, peak, eit_window };

inline const char* to_string(FeatureKind k) noexcept {
    switch (k) {
        case FeatureKind::dip: return "dip";
        case FeatureKind::peak: return "peak";
        default: return "eit_window";
    }
}

struct SpectralFeature {
    FeatureKind kind = FeatureKind::dip;
    double location = 0.0;  // delta_c
    double value = 0.0;     // T at the extremum (clamped to [0,1])
    double width = 0.0;     // half-width at half-depth; 0 when undefined
};

namespace detail {

// Parabolic vertex through three equispaced samples; offset clamped to half a cell.
inline void refine_extremum(double ym, double y0, double yp, double x0, double h,
                            double& x_out, double& y_out) {
    const double denom = ym - 2.0 * y0 + yp;
    double off = 0.0;
    if (denom != 0.0) {
        off = 0.5 * (ym - yp) / denom;
        off = std::clamp(off, -0.5, 0.5);
    }
    x_out = x0 + off * h;
    y_out = y0 - 0.25 * (ym - yp) * off;
}

// Walk outward from index i until T crosses `level`; linear interpolation of
// the crossing point. Search bounded to |delta_c - x_center| <= window.
inline bool find_crossing(const std::vector<SweepPoint>& pts, int i, int dir,
                          double level, bool upward, double x_center, double window,
                          double& x_cross) {
    for (int j = i + dir; j >= 0 && j < static_cast<int>(pts.size()); j += dir) {
        if (std::abs(pts[static_cast<std::size_t>(j)].delta_c - x_center) > window) {
            return false;
        }
        const double ta = pts[static_cast<std::size_t>(j - dir)].T;
        const double tb = pts[static_cast<std::size_t>(j)].T;
        const bool crossed = upward ? (tb >= level) : (tb <= level);
        if (crossed) {
            const double xa = pts[static_cast<std::size_t>(j - dir)].delta_c;
            const double xb = pts[static_cast<std::size_t>(j)].delta_c;
            const double frac = (ta == tb) ? 0.0 : (level - ta) / (tb - ta);
            x_cross = xa + frac * (xb - xa);
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Local extrema of T on the grid with parabolic refinement. Dips are minima
// with T below `threshold`; peaks are maxima with T above 1 - threshold; an
// eit_window is a peak flanked by dips on both sides within 3 Gamma. Widths
// are half-widths at half depth (depth measured from T = 1 for dips and from
// T = 0 for peaks), searched within 3 Gamma and reported as 0 when no
// crossing exists there.
inline std::vector<SpectralFeature> find_features(const SpectrumSweep& sweep,
                                                  double threshold) {
    if (sweep.points.size() < 3) {
        return {};
    }
    const auto& pts = sweep.points;
    const int n = static_cast<int>(pts.size());
    const double h = sweep.grid.step();
    const double window = 3.0 * sweep.params.Gamma;

    std::vector<SpectralFeature> dips, peaks;
    for (int i = 1; i + 1 < n; ++i) {
        const double ym = pts[static_cast<std::size_t>(i - 1)].T;
        const double y0 = pts[static_cast<std::size_t>(i)].T;
        const double yp = pts[static_cast<std::size_t>(i + 1)].T;
        const double x0 = pts[static_cast<std::size_t>(i)].delta_c;

        const bool is_min = (y0 < ym && y0 <= yp);
        const bool is_max = (y0 > ym && y0 >= yp);
        if (!is_min && !is_max) {
            continue;
        }

        double loc, val;
        detail::refine_extremum(ym, y0, yp, x0, h, loc, val);
        val = std::clamp(val, 0.0, 1.0);

        if (is_min && val < threshold) {
            SpectralFeature ft{FeatureKind::dip, loc, val, 0.0};
            const double level = 0.5 * (1.0 + val);
            double xl, xr;
            if (detail::find_crossing(pts, i, -1, level, true, loc, window, xl) &&
                detail::find_crossing(pts, i, +1, level, true, loc, window, xr)) {
                ft.width = 0.5 * (xr - xl);
            }
            dips.push_back(ft);
        } else if (is_max && val > 1.0 - threshold) {
            SpectralFeature ft{FeatureKind::peak, loc, val, 0.0};
            const double level = 0.5 * val;
            double xl, xr;
            if (detail::find_crossing(pts, i, -1, level, false, loc, window, xl) &&
                detail::find_crossing(pts, i, +1, level, false, loc, window, xr)) {
                ft.width = 0.5 * (xr - xl);
            }
            peaks.push_back(ft);
        }
    }

    std::vector<SpectralFeature> out;
    out.reserve(dips.size() + 2 * peaks.size());
    out.insert(out.end(), dips.begin(), dips.end());
    out.insert(out.end(), peaks.begin(), peaks.end());

    for (const SpectralFeature& pk : peaks) {
        const SpectralFeature* left = nullptr;
        const SpectralFeature* right = nullptr;
        for (const SpectralFeature& d : dips) {
            if (d.location < pk.location && pk.location - d.location <= window) {
                if (!left || d.location > left->location) {
                    left = &d;
                }
            }
            if (d.location > pk.location && d.location - pk.location <= window) {
                if (!right || d.location < right->location) {
                    right = &d;
                }
            }
        }
        if (left && right) {
            out.push_back({FeatureKind::eit_window, pk.location, pk.value,
                           0.5 * (right->location - left->location)});
        }
    }

    std::sort(out.begin(), out.end(), [](const SpectralFeature& a, const SpectralFeature& b) {
        if (a.location != b.location) {
            return a.location < b.location;
        }
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    return out;
}

}  // namespace sps
