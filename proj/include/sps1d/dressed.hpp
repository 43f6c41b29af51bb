// dressed.hpp — analytic eigenstructure of the coupled atom + cavity + mirror block.
//
// One excitation shared between the atom and the (polaron-displaced) cavity forms
// dressed ladders E_n^(±) = n - delta/2 ± sqrt((delta_ac + delta)^2 + 4 lambda^2)/2,
// quoted relative to omega_c/2 in units of Omega, with mixing angle
// theta = arctan(2 lambda / (delta_ac + delta)) / 2.

#pragma once

#include "sps1d/params.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sps {

enum class Branch { plus, minus };

inline const char* to_string(Branch b) noexcept {
    return b == Branch::plus ? "plus" : "minus";
}

struct DressedLevel {
    int n = 0;                 // phonon rung
    Branch branch = Branch::plus;
    double energy = 0.0;       // relative to omega_c/2, units of Omega
    double mixing_angle = 0.0; // theta
};

// theta in [0, pi/2]: lambda -> 0 with delta_ac + delta > 0 gives 0; a vanishing
// denominator gives exactly pi/4.
inline double mixing_angle(const SystemParams& p) noexcept {
    return 0.5 * std::atan2(2.0 * p.lambda, p.delta_ac + polaron_shift(p).delta);
}

namespace detail {

inline void check_range(int n_lo, int n_hi, const char* who) {
    if (n_lo < 0) {
        throw std::invalid_argument(std::string(who) + ": n_lo must be >= 0");
    }
    if (n_hi < n_lo) {
        throw std::invalid_argument(std::string(who) + ": empty rung range");
    }
}

}  // namespace detail

// Exact two-level dressing of each phonon rung: both branches for n in [n_lo, n_hi].
inline std::vector<DressedLevel> dressed_levels(const SystemParams& p, int n_lo, int n_hi) {
    detail::check_range(n_lo, n_hi, "dressed_levels");
    const double delta = polaron_shift(p).delta;
    const double half_split =
        0.5 * std::hypot(p.delta_ac + delta, 2.0 * p.lambda);
    const double theta = mixing_angle(p);

    std::vector<DressedLevel> out;
    out.reserve(2 * static_cast<std::size_t>(n_hi - n_lo + 1));
    for (int n = n_lo; n <= n_hi; ++n) {
        const double center = n - 0.5 * delta;
        out.push_back({n, Branch::minus, center - half_split, theta});
        out.push_back({n, Branch::plus, center + half_split, theta});
    }
    return out;
}

// Rabi asymptote (lambda >> delta_ac + delta): E_n^(±) ≈ n - delta/2 ± lambda.
// No validity gate; intended for asymptotic-agreement tests.
inline std::vector<DressedLevel> rabi_limit_levels(const SystemParams& p, int n_lo, int n_hi) {
    detail::check_range(n_lo, n_hi, "rabi_limit_levels");
    const double delta = polaron_shift(p).delta;
    const double theta = mixing_angle(p);

    std::vector<DressedLevel> out;
    out.reserve(2 * static_cast<std::size_t>(n_hi - n_lo + 1));
    for (int n = n_lo; n <= n_hi; ++n) {
        const double center = n - 0.5 * delta;
        out.push_back({n, Branch::minus, center - p.lambda, theta});
        out.push_back({n, Branch::plus, center + p.lambda, theta});
    }
    return out;
}

// Near-degenerate perturbative pairs at the resonance delta = m*Omega (g0 = sqrt(m)),
// delta_ac = 0: for each n the pair straddles the bare rung,
//   E_n^(+)    ≈ n + lambda^2/delta,
//   E_{n+m}^(-) ≈ n - lambda^2/delta,
// i.e. a split of 2 lambda^2/delta. Intended for lambda < Gamma.
inline std::vector<DressedLevel> degenerate_limit_levels(const SystemParams& p, int n_lo,
                                                         int n_hi, int m) {
    detail::check_range(n_lo, n_hi, "degenerate_limit_levels");
    if (m < 1) {
        throw std::invalid_argument("degenerate_limit_levels: m must be >= 1");
    }
    const double delta = polaron_shift(p).delta;
    if (std::abs(delta - static_cast<double>(m)) > 1e-9) {
        throw std::invalid_argument(
            "degenerate_limit_levels: requires delta = m within 1e-9 (g0 = sqrt(m))");
    }
    const double shift = p.lambda * p.lambda / delta;
    const double theta = mixing_angle(p);

    std::vector<DressedLevel> out;
    out.reserve(2 * static_cast<std::size_t>(n_hi - n_lo + 1));
    for (int n = n_lo; n <= n_hi; ++n) {
        out.push_back({n + m, Branch::minus, n - shift, theta});
        out.push_back({n, Branch::plus, n + shift, theta});
    }
    return out;
}

}  // namespace sps
