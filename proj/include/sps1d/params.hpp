// params.hpp — physical parameters of the waveguide + hybrid atom-optomechanical cavity
//
// Everything is dimensionless: frequencies and rates are measured in units of the
// mechanical frequency (Omega = 1), and the waveguide group velocity is set to 1,
// so the photon-cavity coupling V enters only through the linewidth Gamma = V^2.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace sps {

// Coupling geometry of the cavity-waveguide junction.
enum class Geometry {
    side,    // cavity sits beside the line; the photon can pass it untouched
    direct,  // cavity interrupts the line; the photon must traverse it
};

inline const char* to_string(Geometry g) noexcept {
    return g == Geometry::side ? "side" : "direct";
}

// ------------------------------ SystemParams --------------------------------

struct SystemParams {
    double g0       = 0.0;   // single-photon optomechanical coupling / Omega
    double lambda   = 0.0;   // atom-cavity coupling / Omega
    double Gamma    = 0.1;   // cavity-waveguide decay / Omega
    double gamma_a  = 0.0;   // atomic dissipation / Omega (non-waveguide loss)
    double delta_ac = 0.0;   // atom-cavity detuning (omega_a - omega_c) / Omega
    int n0          = 0;     // initial mirror Fock state
    Geometry geometry = Geometry::side;

    void validate() const {
        auto finite = [](double v, const char* name) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument(std::string("SystemParams: ") + name +
                                            " must be finite");
            }
        };
        finite(g0, "g0");
        finite(lambda, "lambda");
        finite(Gamma, "Gamma");
        finite(gamma_a, "gamma_a");
        finite(delta_ac, "delta_ac");
        if (g0 < 0.0) {
            throw std::invalid_argument("SystemParams: g0 must be >= 0");
        }
        if (lambda < 0.0) {
            throw std::invalid_argument("SystemParams: lambda must be >= 0");
        }
        if (Gamma <= 0.0) {
            throw std::invalid_argument("SystemParams: Gamma must be > 0");
        }
        if (gamma_a < 0.0) {
            throw std::invalid_argument("SystemParams: gamma_a must be >= 0");
        }
        if (n0 < 0) {
            throw std::invalid_argument("SystemParams: n0 must be >= 0");
        }
    }

    // Linewidth below the mechanical frequency: phonon sidebands are resolvable.
    // Not an error when violated — callers surface it as a warning.
    bool sideband_resolved() const noexcept { return Gamma < 1.0; }
};

// ------------------------------ Polaron shift -------------------------------

// Frequency drop of the cavity resonance caused by the radiation pressure of a
// single intracavity photon: delta = g0^2 (units of Omega).
struct PolaronShift {
    double delta = 0.0;
};

inline PolaronShift polaron_shift(const SystemParams& p) noexcept {
    return PolaronShift{p.g0 * p.g0};
}

}  // namespace sps
