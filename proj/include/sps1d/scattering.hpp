// scattering.hpp — exact and perturbative solution of the single-photon scattering
// amplitudes off the dressed cavity.
//
// Working frame: v_g = 1 and V = sqrt(Gamma), so only Gamma is observable. For an
// incident photon of detuning Delta_c = v_g k - omega_c (units of Omega) arriving
// with the mirror in |n0>, the outgoing state carries channel amplitudes t_n / r_n
// (photon transmitted / reflected, mirror left in |n>) plus intracavity amplitudes
// e_n and atomic amplitudes f_n. Eliminating t, r, f yields a dense complex
// (n_max+1) system in e whose matrix couples channels through the Franck-Condon
// overlaps; the raw 4(n_max+1) system is kept for residual audits and as the
// fallback near atomic poles.

#pragma once

#include "sps1d/overlap.hpp"
#include "sps1d/params.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace sps {

using Complex = std::complex<double>;

// ------------------------------- SolverConfig -------------------------------

struct SolverConfig {
    static constexpr int automatic = -1;

    int n_max = automatic;         // phonon-channel cutoff; automatic = ladder search
    double convergence_tol = 1e-8; // rung-to-rung T and R agreement for the ladder
    int series_order = 2;          // number of lambda^2 terms kept by solve_series
    int auto_nmax_step = 8;        // ladder increment
    int auto_nmax_ceiling = 512;   // give up past this many phonon levels

    void validate() const {
        if (n_max != automatic && n_max < 0) {
            throw std::invalid_argument("SolverConfig: n_max must be >= 0 or automatic");
        }
        if (!(convergence_tol > 0.0)) {
            throw std::invalid_argument("SolverConfig: convergence_tol must be > 0");
        }
        if (series_order < 1) {
            throw std::invalid_argument("SolverConfig: series_order must be >= 1");
        }
        if (auto_nmax_step < 1) {
            throw std::invalid_argument("SolverConfig: auto_nmax_step must be >= 1");
        }
        if (auto_nmax_ceiling < 1) {
            throw std::invalid_argument("SolverConfig: auto_nmax_ceiling must be >= 1");
        }
    }
};

// ------------------------------- AmplitudeSet --------------------------------

struct AmplitudeSet {
    double delta_c = 0.0;  // incident detuning, units of Omega
    int n0 = 0;
    Eigen::VectorXcd t;    // transmitted photon, mirror in |n>
    Eigen::VectorXcd r;    // reflected photon, mirror in |n>
    Eigen::VectorXcd e;    // intracavity amplitudes (displaced mirror basis)
    Eigen::VectorXcd f;    // atomic excitation amplitudes

    // Relative back-substitution residual of the raw 4(n_max+1) linear system;
    // machine-small for solve_exact, the truncation defect for solve_series.
    double residual = 0.0;

    int n_max() const noexcept { return static_cast<int>(t.size()) - 1; }
};

struct TransmissionReflection {
    double T = 0.0;
    double R = 0.0;
};

inline TransmissionReflection transmission_reflection(const AmplitudeSet& amps) {
    return {amps.t.squaredNorm(), amps.r.squaredNorm()};
}

// ------------------------------ error reporting ------------------------------

// Truncation ladder exhausted its ceiling without T and R settling.
struct TruncationError : std::runtime_error {
    double t_prev;  // total transmission at the second-to-last rung
    double t_last;  // total transmission at the last rung tried

    TruncationError(const std::string& msg, double prev, double last)
        : std::runtime_error(msg), t_prev(prev), t_last(last) {}
};

// --------------------------- detuning shorthands -----------------------------

// Complex detuning of the cavity channel m: Delta_c + (n0-m)Omega + delta + iGamma.
inline Complex delta_c_tilde(const SystemParams& p, double delta_c, int m) {
    return {delta_c + static_cast<double>(p.n0 - m) + polaron_shift(p).delta, p.Gamma};
}

// Complex detuning of the atomic channel n: Delta_c - Delta_ac + (n0-n)Omega + i gamma_a.
inline Complex delta_a_tilde(const SystemParams& p, double delta_c, int n) {
    return {delta_c - p.delta_ac + static_cast<double>(p.n0 - n), p.gamma_a};
}

// ---------------------------------- internals --------------------------------

namespace detail {

// Below this, the f-elimination divides by a near-vanishing atomic detuning and
// the raw system takes over.
inline constexpr double kAtomPoleGuard = 1e-8;

inline void check_overlap_compatible(const SystemParams& p, const OverlapMatrix& u,
                                     const char* who) {
    if (u.beta != p.g0) {
        throw std::invalid_argument(std::string(who) +
                                    ": overlap matrix was built for a different g0");
    }
    if (u.dim_external < p.n0 + 1) {
        throw std::invalid_argument(std::string(who) +
                                    ": overlap matrix too small for n0");
    }
}

// Raw 4(N+1) system over x = [t; r; e; f]. Row blocks, for each channel n:
//   (a)  -i t_n + V (U e)_n                                  = -i delta_{n,n0}
//   (b)  -i r_n + V (U e)_n                                  = 0
//   (c)  (V/2)(t_n + r_n) + lambda f_n
//          - sum_m (Delta_c + (n0-m) + delta) U_nm e_m       = -(V/2) delta_{n,n0}
//   (d)  lambda (U e)_n - delta_a_tilde(n) f_n               = 0
// Singular when lambda = 0 (block (d) decouples and can vanish), so the raw
// solve is only used at atomic poles, which require lambda != 0 to matter.
inline void assemble_raw_system(const SystemParams& p, double delta_c,
                                const OverlapMatrix& u, Eigen::MatrixXcd& a,
                                Eigen::VectorXcd& b) {
    const int dim = u.dim_external;
    const double v = std::sqrt(p.Gamma);
    const double delta = polaron_shift(p).delta;
    const Complex im(0.0, 1.0);

    a.setZero(4 * dim, 4 * dim);
    b.setZero(4 * dim);
    const int t0 = 0, r0 = dim, e0 = 2 * dim, f0 = 3 * dim;

    for (int n = 0; n < dim; ++n) {
        const int row_a = t0 + n;
        const int row_b = r0 + n;
        const int row_c = e0 + n;
        const int row_d = f0 + n;

        a(row_a, t0 + n) = -im;
        a(row_b, r0 + n) = -im;
        a(row_c, t0 + n) = 0.5 * v;
        a(row_c, r0 + n) = 0.5 * v;
        a(row_c, f0 + n) = p.lambda;
        a(row_d, f0 + n) = -delta_a_tilde(p, delta_c, n);

        for (int m = 0; m < dim; ++m) {
            const double unm = u(n, m);
            a(row_a, e0 + m) = v * unm;
            a(row_b, e0 + m) = v * unm;
            a(row_c, e0 + m) =
                -(delta_c + static_cast<double>(p.n0 - m) + delta) * unm;
            a(row_d, e0 + m) = p.lambda * unm;
        }
        if (n == p.n0) {
            b(row_a) = -im;
            b(row_c) = -0.5 * v;
        }
    }
}

// Relative infinity-norm residual ||A x - b|| / (||A|| ||x|| + ||b||).
inline double raw_residual(const SystemParams& p, double delta_c, const OverlapMatrix& u,
                           const AmplitudeSet& amps) {
    const int dim = u.dim_external;
    Eigen::MatrixXcd a;
    Eigen::VectorXcd b;
    assemble_raw_system(p, delta_c, u, a, b);

    Eigen::VectorXcd x(4 * dim);
    x.segment(0, dim) = amps.t;
    x.segment(dim, dim) = amps.r;
    x.segment(2 * dim, dim) = amps.e;
    x.segment(3 * dim, dim) = amps.f;

    const double num = (a * x - b).cwiseAbs().maxCoeff();
    const double norm_a = a.cwiseAbs().rowwise().sum().maxCoeff();
    const double norm_x = x.cwiseAbs().maxCoeff();
    const double norm_b = b.cwiseAbs().maxCoeff();
    return num / (norm_a * norm_x + norm_b);
}

}  // namespace detail

// --------------------------------- solvers -----------------------------------

// Exact solve at one incident detuning with a caller-supplied overlap matrix
// (built for beta = g0 and the desired n_max). Shared read-only across calls.
inline AmplitudeSet solve_exact(const SystemParams& p, double delta_c,
                                const OverlapMatrix& u) {
    p.validate();
    detail::check_overlap_compatible(p, u, "solve_exact");

    const int dim = u.dim_external;
    const double v = std::sqrt(p.Gamma);
    const Complex im(0.0, 1.0);

    Eigen::VectorXcd dct(dim), dat(dim);
    double min_abs_dat = std::numeric_limits<double>::infinity();
    for (int k = 0; k < dim; ++k) {
        dct(k) = delta_c_tilde(p, delta_c, k);
        dat(k) = delta_a_tilde(p, delta_c, k);
        min_abs_dat = std::min(min_abs_dat, std::abs(dat(k)));
    }

    AmplitudeSet out;
    out.delta_c = delta_c;
    out.n0 = p.n0;

    const bool atom_pole = (p.lambda != 0.0) && (min_abs_dat < detail::kAtomPoleGuard);
    if (atom_pole) {
        // f cannot be eliminated; solve the raw system directly.
        Eigen::MatrixXcd a;
        Eigen::VectorXcd b;
        detail::assemble_raw_system(p, delta_c, u, a, b);
        const Eigen::VectorXcd x = a.partialPivLu().solve(b);
        out.t = x.segment(0, dim);
        out.r = x.segment(dim, dim);
        out.e = x.segment(2 * dim, dim);
        out.f = x.segment(3 * dim, dim);
    } else {
        const Eigen::MatrixXcd uc = u.entries.cast<Complex>();
        Eigen::MatrixXcd a(dim, dim);
        for (int n = 0; n < dim; ++n) {
            const Complex atom_term =
                (p.lambda != 0.0) ? p.lambda * p.lambda / dat(n) : Complex(0.0, 0.0);
            for (int m = 0; m < dim; ++m) {
                a(n, m) = (dct(m) - atom_term) * uc(n, m);
            }
        }
        Eigen::VectorXcd b = Eigen::VectorXcd::Zero(dim);
        b(p.n0) = v;

        out.e = a.partialPivLu().solve(b);
        const Eigen::VectorXcd s = uc * out.e;
        out.r = -im * v * s;
        out.t = out.r;
        out.t(p.n0) += 1.0;
        out.f = Eigen::VectorXcd::Zero(dim);
        if (p.lambda != 0.0) {
            out.f = p.lambda * s.cwiseQuotient(dat);
        }
    }

    out.residual = detail::raw_residual(p, delta_c, u, out);
    return out;
}

// Perturbative solve: Neumann chain in lambda^2 around the lambda = 0 solution,
// keeping `order` powers of lambda^2. Intermediate sums share the overlap
// matrix's n_max. Undefined exactly on an atomic pole (gamma_a = 0 and
// delta_a_tilde(n) = 0); diverges, as it should, when lambda is not small.
inline AmplitudeSet solve_series(const SystemParams& p, double delta_c,
                                 const OverlapMatrix& u, int order) {
    p.validate();
    detail::check_overlap_compatible(p, u, "solve_series");
    if (order < 1) {
        throw std::invalid_argument("solve_series: order must be >= 1");
    }

    const int dim = u.dim_external;
    const double v = std::sqrt(p.Gamma);
    const Complex im(0.0, 1.0);

    Eigen::VectorXcd dct(dim), dat(dim);
    for (int k = 0; k < dim; ++k) {
        dct(k) = delta_c_tilde(p, delta_c, k);
        dat(k) = delta_a_tilde(p, delta_c, k);
        if (p.lambda != 0.0 && dat(k) == Complex(0.0, 0.0)) {
            throw std::runtime_error(
                "solve_series: atomic pole (delta_a_tilde = 0) at channel n = " +
                std::to_string(k) + "; the series is undefined there");
        }
    }

    const Eigen::MatrixXcd uc = u.entries.cast<Complex>();

    Eigen::VectorXcd w = uc.row(p.n0).transpose().cwiseQuotient(dct);
    Eigen::VectorXcd e_sum = w;
    Eigen::VectorXcd s = uc * w;
    Eigen::VectorXcd acc = s;
    if (p.lambda != 0.0) {
        const double lam2 = p.lambda * p.lambda;
        for (int j = 0; j < order; ++j) {
            const Eigen::VectorXcd y = s.cwiseQuotient(dat);
            w = lam2 * (uc.transpose() * y).cwiseQuotient(dct);
            e_sum += w;
            s = uc * w;
            acc += s;
        }
    }

    AmplitudeSet out;
    out.delta_c = delta_c;
    out.n0 = p.n0;
    out.r = -im * p.Gamma * acc;
    out.t = out.r;
    out.t(p.n0) += 1.0;
    out.e = v * e_sum;
    out.f = Eigen::VectorXcd::Zero(dim);
    if (p.lambda != 0.0) {
        // f_n = lambda (U e)_n / delta_a_tilde(n); note U e = v * acc.
        out.f = (p.lambda * v) * acc.cwiseQuotient(dat);
    }
    out.residual = detail::raw_residual(p, delta_c, u, out);
    return out;
}

// ------------------------------ auto-truncation ------------------------------

// Climb n_max in steps until total T and R stop moving (both by less than
// convergence_tol between adjacent rungs); returns the smaller rung of the
// first converged pair.
inline int auto_truncate(const SystemParams& p, double delta_c, const SolverConfig& cfg) {
    p.validate();
    cfg.validate();

    double prev_t = 0.0, prev_r = 0.0;
    bool have_prev = false;
    double last_t = std::numeric_limits<double>::quiet_NaN();

    for (int nm = p.n0 + cfg.auto_nmax_step; nm <= cfg.auto_nmax_ceiling;
         nm += cfg.auto_nmax_step) {
        const OverlapMatrix u = compute_overlaps(p.g0, nm);
        const auto [t, r] = transmission_reflection(solve_exact(p, delta_c, u));
        if (have_prev && std::abs(t - prev_t) < cfg.convergence_tol &&
            std::abs(r - prev_r) < cfg.convergence_tol) {
            return nm - cfg.auto_nmax_step;
        }
        prev_t = t;
        prev_r = r;
        have_prev = true;
        last_t = t;
    }
    throw TruncationError(
        "auto_truncate: T/R not converged below n_max = " +
            std::to_string(cfg.auto_nmax_ceiling) + " (last two T values " +
            std::to_string(prev_t) + ", " + std::to_string(last_t) + ")",
        prev_t, last_t);
}

// ------------------------- convenience entry points --------------------------

inline int resolve_n_max(const SystemParams& p, double delta_c, const SolverConfig& cfg) {
    if (cfg.n_max == SolverConfig::automatic) {
        return auto_truncate(p, delta_c, cfg);
    }
    if (cfg.n_max < p.n0) {
        throw std::invalid_argument("SolverConfig: n_max must be >= n0");
    }
    return cfg.n_max;
}

inline AmplitudeSet solve_exact(const SystemParams& p, double delta_c,
                                const SolverConfig& cfg = {}) {
    cfg.validate();
    const int nm = resolve_n_max(p, delta_c, cfg);
    return solve_exact(p, delta_c, compute_overlaps(p.g0, nm));
}

inline AmplitudeSet solve_series(const SystemParams& p, double delta_c,
                                 const SolverConfig& cfg = {}) {
    cfg.validate();
    const int nm = resolve_n_max(p, delta_c, cfg);
    return solve_series(p, delta_c, compute_overlaps(p.g0, nm), cfg.series_order);
}

// ------------------------------ closed-form oracle ---------------------------

// Frozen mirror (g0 = 0): the overlap matrix is the identity, only channel n0
// scatters, and the reflection amplitude collapses to
//   r = -i Gamma / (Delta_c + i Gamma - lambda^2 / (Delta_c - Delta_ac + i gamma_a)).
inline Complex analytic_reference_g0_zero(const SystemParams& p, double delta_c) {
    p.validate();
    if (p.g0 != 0.0) {
        throw std::invalid_argument("analytic_reference_g0_zero: requires g0 = 0");
    }
    const Complex im(0.0, 1.0);
    Complex denom(delta_c, p.Gamma);
    if (p.lambda != 0.0) {
        const Complex atom(delta_c - p.delta_ac, p.gamma_a);
        if (atom == Complex(0.0, 0.0)) {
            return {0.0, 0.0};  // dark state: the atomic pole pins r to zero
        }
        denom -= p.lambda * p.lambda / atom;
    }
    return -im * p.Gamma / denom;
}

}  // namespace sps
