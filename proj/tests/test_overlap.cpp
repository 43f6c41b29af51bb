// Displaced-ladder overlap matrix: recurrence vs brute-force exponential oracle.

#include "sps1d/overlap.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using sps::compute_overlaps;
using sps::oracle_overlaps;
using sps::OverlapConfig;

TEST_CASE("zero displacement is the identity") {
    const auto u = compute_overlaps(0.0, 3);
    REQUIRE(u.dim_external == 4);
    for (int n = 0; n < 4; ++n) {
        for (int m = 0; m < 4; ++m) {
            REQUIRE(u(n, m) == ((n == m) ? 1.0 : 0.0));
        }
    }
    const auto oracle = oracle_overlaps(0.0, 5);
    REQUIRE((oracle - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("vacuum-to-vacuum amplitude at beta = 1") {
    const auto u = compute_overlaps(1.0, 5);
    REQUIRE(std::abs(u(0, 0) - std::exp(-0.5)) < 1e-15);
    const auto oracle = oracle_overlaps(1.0, 60);
    REQUIRE(std::abs(u(0, 0) - oracle(0, 0)) < 1e-12);
}

TEST_CASE("recurrence matches the exponential oracle on the 10x10 corner") {
    for (double beta : {0.1, 0.5, 1.0, 2.0}) {
        const auto u = compute_overlaps(beta, 9);
        const auto oracle = oracle_overlaps(beta, 60);
        const double worst =
            (u.entries - oracle.topLeftCorner(10, 10)).cwiseAbs().maxCoeff();
        INFO("beta = " << beta);
        REQUIRE(worst < 1e-10);
    }
}

TEST_CASE("sign relation U_nm = (-1)^(n-m) U_mn") {
    const auto u = compute_overlaps(0.7, 12);
    for (int n = 0; n <= 12; ++n) {
        for (int m = 0; m <= 12; ++m) {
            const double sign = ((n - m) % 2 == 0) ? 1.0 : -1.0;
            REQUIRE(u(n, m) == sign * u(m, n));
        }
    }
    // Non-circular check: the oracle obeys the same relation to rounding.
    const auto oracle = oracle_overlaps(0.7, 40);
    for (int n = 0; n < 10; ++n) {
        for (int m = 0; m < 10; ++m) {
            const double sign = ((n - m) % 2 == 0) ? 1.0 : -1.0;
            REQUIRE(std::abs(oracle(n, m) - sign * oracle(m, n)) < 1e-12);
        }
    }
}

TEST_CASE("odd-order entries flip sign, U_01 = -U_10") {
    const auto u = compute_overlaps(1.0, 3);
    REQUIRE(u(0, 1) == -u(1, 0));
    REQUIRE(u(1, 0) > 0.0);  // beta U_00 / sqrt(1) > 0
}

TEST_CASE("approximate orthonormality of the exposed window") {
    for (double beta : {0.5, 1.0, 2.0}) {
        const auto u = compute_overlaps(beta, 24);
        INFO("beta = " << beta << " defect = " << u.unitarity_defect);
        REQUIRE(u.unitarity_defect < 1e-10);
    }
    // Oracle-side check mirroring the same property on a well-converged block.
    const auto oracle = oracle_overlaps(1.0, 60);
    const Eigen::MatrixXd gram =
        (oracle * oracle.transpose()).topLeftCorner(10, 10);
    REQUIRE((gram - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("row norms never exceed one") {
    const auto u = compute_overlaps(1.3, 20);
    for (int n = 0; n <= 20; ++n) {
        REQUIRE(u.entries.row(n).squaredNorm() <= 1.0 + 1e-12);
    }
}

TEST_CASE("column 0 squared follows the Poisson weight") {
    const double beta = 0.8;
    const auto u = compute_overlaps(beta, 10);
    double factorial = 1.0;
    for (int n = 0; n <= 10; ++n) {
        if (n > 0) {
            factorial *= n;
        }
        const double poisson =
            std::exp(-beta * beta) * std::pow(beta * beta, n) / factorial;
        REQUIRE(std::abs(u(n, 0) * u(n, 0) - poisson) < 1e-14);
    }
}

TEST_CASE("negative displacement transposes the matrix") {
    const auto plus = compute_overlaps(0.9, 10);
    const auto minus = compute_overlaps(-0.9, 10);
    REQUIRE((plus.entries - minus.entries.transpose()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("input validation") {
    REQUIRE_THROWS_AS(compute_overlaps(std::numeric_limits<double>::quiet_NaN(), 4),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(compute_overlaps(1.0, -1), std::invalid_argument);
    REQUIRE_THROWS_AS(compute_overlaps(1.0, 10, OverlapConfig{5}), std::invalid_argument);
    REQUIRE_THROWS_AS(oracle_overlaps(1.0, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(oracle_overlaps(1.0, 201), std::invalid_argument);
    REQUIRE_NOTHROW(oracle_overlaps(1.0, 200));
}

TEST_CASE("explicit internal dimension is honoured") {
    const auto u = compute_overlaps(0.5, 9, OverlapConfig{60});
    REQUIRE(u.dim_internal == 60);
    const auto oracle = oracle_overlaps(0.5, 60);
    REQUIRE((u.entries - oracle.topLeftCorner(10, 10)).cwiseAbs().maxCoeff() < 1e-10);
    REQUIRE(OverlapConfig::default_internal_dim(1.0, 9) == 10 + 10 + 20);
}
