#pragma once

#include <optional>
#include <string>
#include <vector>

namespace optomech {

// Unit system. Everything downstream is expressed in these units; the
// dimensionless default hbar = 1 pairs with m = omega_m = 1 oscillators.
struct Units {
    double hbar = 1.0;  // > 0
};

// Damped mechanical mode in its bath. n_occ is the bath occupancy seen by
// the mode (residual occupancy for a pre-cooled mode), not a temperature.
struct OscillatorParams {
    double mass = 1.0;      // > 0
    double omega_m = 1.0;   // > 0
    double kappa_m = 0.01;  // > 0, < omega_m (underdamped)
    double n_occ = 0.0;     // >= 0
};

// Readout cavity driven at detuning Delta = omega_r - omega_drive.
// G0_bar is the field-enhanced displacement-to-frequency coupling; the
// optional raw quantities are metadata and, when all present, must satisfy
// G0_bar = a_bar * omega_r / L_c.
struct CavityParams {
    double kappa_r = 0.1;   // > 0
    double detuning = 1.0;  // != 0, signed
    double G0_bar = 0.01;   // > 0
    std::optional<double> omega_r;
    std::optional<double> L_c;
    std::optional<double> a_bar;
};

struct DerivedQuantities {
    double x_zpf;    // sqrt(hbar / (2 m omega_m))
    double g0_bar;   // G0_bar * x_zpf
    double quality;  // omega_m / kappa_m
};

// Everything validate() hands back: the echoed parameters plus any
// validation warnings (computation proceeds despite warnings).
struct ModelBundle {
    Units units;
    OscillatorParams osc;
    CavityParams cavity;
    std::vector<std::string> warnings;
};

// Checks positivity/finiteness, the underdamped condition, nonzero
// detuning, and the optional coupling consistency (1e-12 relative).
// Raises exactly one of NonPositiveParameter, ZeroDetuning,
// OverdampedOscillator, InconsistentCoupling. Appends a warning when the
// back-action force spectrum's peak exceeds 10% of the quantum bath force
// spectrum (the linear readout model neglects the coupling-induced
// modification of the mechanical response).
ModelBundle validate(const Units& units, const OscillatorParams& osc,
                     const CavityParams& cavity);

DerivedQuantities derive(const Units& units, const OscillatorParams& osc,
                         const CavityParams& cavity);

}  // namespace optomech
