// overlap.hpp — Franck-Condon overlaps U_nm = <n|exp[beta(b^dag - b)]|m> between the
// bare and displaced phonon number ladders.
//
// Closed form for n >= m: U_nm = e^{-beta^2/2} sqrt(m!/n!) beta^{n-m} L_m^{(n-m)}(beta^2),
// evaluated here by normalized recurrences (no factorials, no Laguerre calls), plus a
// brute-force matrix-exponential oracle for validation.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace sps {

// -------------------------- truncation settings -----------------------------

// Construction window for the overlap matrix. The displacement spreads a number
// state over ~beta^2 neighbouring levels, so rows near the exposed edge need a
// margin of internal levels before orthonormality diagnostics are meaningful.
struct OverlapConfig {
    int dim_internal = 0;  // 0 selects the default margin below

    static int default_internal_dim(double beta, int n_max) {
        return (n_max + 1) + static_cast<int>(std::ceil(10.0 * beta * beta)) + 20;
    }
};

// ------------------------------ OverlapMatrix -------------------------------

struct OverlapMatrix {
    double beta = 0.0;       // displacement parameter g0/Omega
    int dim_external = 0;    // exposed rows/cols, = n_max+1
    int dim_internal = 0;    // levels carried during construction (>= dim_external)
    Eigen::MatrixXd entries; // dim_external x dim_external block, entries(n,m) = <n|m~>

    // Worst deviation of (U^T U) from the identity over the exposed block,
    // computed on the internal window; measures how much displaced-ladder mass
    // leaks past dim_internal.
    double unitarity_defect = 0.0;

    double operator()(int n, int m) const { return entries(n, m); }
    int n_max() const noexcept { return dim_external - 1; }
};

namespace detail {

// Entries of exp[beta(b^dag - b)] on a dim x dim number-basis window, by the
// closed-form recurrences. These are the exact infinite-dimensional entries
// (the recurrence never references levels above the diagonal being filled).
inline Eigen::MatrixXd displacement_entries(double beta, int dim) {
    Eigen::MatrixXd u(dim, dim);
    const double x = beta * beta;

    // First column: U_k0 = e^{-x/2} beta^k / sqrt(k!), built as a ladder.
    u(0, 0) = std::exp(-0.5 * x);
    for (int k = 1; k < dim; ++k) {
        u(k, 0) = u(k - 1, 0) * beta / std::sqrt(static_cast<double>(k));
    }

    // Walk each upper diagonal k = n - m >= 0 upward in m. With
    // d_m = U_{m+k,m}, the normalized Laguerre recurrence reads
    //   d_{m+1} = [(2m+k+1-x) d_m] / sqrt((m+1)(m+k+1))
    //           - sqrt(m(m+k) / ((m+1)(m+k+1))) d_{m-1}.
    for (int k = 0; k < dim; ++k) {
        double prev = 0.0;
        double cur = u(k, 0);
        for (int m = 0; m + 1 + k < dim; ++m) {
            const double a = static_cast<double>(m + 1) * static_cast<double>(m + k + 1);
            double next = (2.0 * m + k + 1.0 - x) * cur / std::sqrt(a);
            if (m > 0) {
                next -= std::sqrt(static_cast<double>(m) * static_cast<double>(m + k) / a) * prev;
            }
            u(m + 1 + k, m + 1) = next;
            prev = cur;
            cur = next;
        }
    }

    // Lower triangle from the sign relation U_nm = (-1)^{n-m} U_mn.
    for (int n = 0; n < dim; ++n) {
        for (int m = n + 1; m < dim; ++m) {
            u(n, m) = (((m - n) & 1) ? -1.0 : 1.0) * u(m, n);
        }
    }
    return u;
}

}  // namespace detail

// ------------------------------ construction --------------------------------

inline OverlapMatrix compute_overlaps(double beta, int n_max, OverlapConfig config = {}) {
    if (!std::isfinite(beta)) {
        throw std::invalid_argument("compute_overlaps: beta must be finite");
    }
    if (n_max < 0) {
        throw std::invalid_argument("compute_overlaps: n_max must be >= 0");
    }
    int dim_internal = config.dim_internal;
    if (dim_internal == 0) {
        dim_internal = OverlapConfig::default_internal_dim(beta, n_max);
    }
    if (dim_internal < n_max + 1) {
        throw std::invalid_argument("compute_overlaps: dim_internal must be >= n_max+1");
    }

    const Eigen::MatrixXd full = detail::displacement_entries(beta, dim_internal);

    OverlapMatrix out;
    out.beta = beta;
    out.dim_external = n_max + 1;
    out.dim_internal = dim_internal;
    out.entries = full.topLeftCorner(n_max + 1, n_max + 1);

    const Eigen::MatrixXd gram =
        (full.transpose() * full).topLeftCorner(n_max + 1, n_max + 1);
    out.unitarity_defect =
        (gram - Eigen::MatrixXd::Identity(n_max + 1, n_max + 1)).cwiseAbs().maxCoeff();
    return out;
}

// --------------------------------- oracle -----------------------------------

inline constexpr int kOracleDimCeiling = 200;

// Dense reference construction: exponentiate the truncated generator
// beta(b^dag - b) by scaling-and-squaring with a Taylor core. O(dim^3); entries
// approximate <n|D(beta)|m> with an error controlled by dim. Deliberately
// shares no code with compute_overlaps.
inline Eigen::MatrixXd oracle_overlaps(double beta, int dim) {
    if (!std::isfinite(beta)) {
        throw std::invalid_argument("oracle_overlaps: beta must be finite");
    }
    if (dim < 1) {
        throw std::invalid_argument("oracle_overlaps: dim must be >= 1");
    }
    if (dim > kOracleDimCeiling) {
        throw std::invalid_argument("oracle_overlaps: dim exceeds the oracle ceiling (" +
                                    std::to_string(kOracleDimCeiling) + ")");
    }

    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) {
        const double c = beta * std::sqrt(static_cast<double>(n + 1));
        gen(n + 1, n) = c;   // b^dag
        gen(n, n + 1) = -c;  // -b
    }

    // Scale so the infinity norm is <= 1/2, exponentiate by Taylor, square back.
    const double norm = gen.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    Eigen::MatrixXd scaled = gen / std::ldexp(1.0, squarings);

    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(dim, dim);
    Eigen::MatrixXd acc = term;
    for (int k = 1; k <= 64; ++k) {
        term = (term * scaled) / static_cast<double>(k);
        acc += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) {
            break;
        }
    }
    for (int i = 0; i < squarings; ++i) {
        acc = acc * acc;
    }
    return acc;
}

}  // namespace sps
