#pragma once

#include "optomech/grid.hpp"
#include "optomech/model.hpp"

namespace optomech {

// Cavity density of states seen by the scattered sidebands, a Lorentzian of
// half width kappa_r/2 centered on the detuning:
//   (kappa_r/2) / ((w - detuning)^2 + (kappa_r/2)^2),
// peak 2/kappa_r, full-line area pi.
double density_of_states(const ModelBundle& mb, double omega);

struct ScatteringRates {
    double gamma_as;  // anti-Stokes, weight n_occ, filtered by dos(w)
    double gamma_s;   // Stokes, weight n_occ + 1, filtered by dos(-w)
};

// Spectral scattering rates with the full cavity filter at the measurement
// frequency. Both share the mechanical line 1/((w - w_m)^2 + (kappa_m/2)^2).
ScatteringRates scattering_rates(const ModelBundle& mb, double omega);

// Output spectrum assembled from the scattering picture:
//   floor * (1 + 2 gamma_as + 2 gamma_s),   floor = kappa_r / (2 G0^2).
// With pin_dos the cavity filter is frozen at its peak 2/kappa_r for the
// sideband the detuning selects and the far sideband is dropped, which is
// the form that matches resolved_sideband_output_psd identically instead of
// to O(kappa_m/kappa_r); that form needs detuning = +/- w_m.
double syy_from_scattering(const ModelBundle& mb, double omega, bool pin_dos = false);

struct AreaOptions {
    double window_w = 50.0;  // peak half window, units of kappa_m
    double band_lo = 100.0;  // floor bands at [band_lo, band_hi] kappa_m
    double band_hi = 200.0;  //   on both sides of the line
};

struct SidebandArea {
    double area;   // integrated line area above the floor, tail corrected
    double floor;  // median level over the floor bands
};

// Integrates a measured or modeled spectrum over the mechanical line after
// subtracting the median floor, then adds the out-of-window Lorentzian tail
// from a least-squares amplitude fit (center w_m, half width kappa_m/2).
// WindowExceedsGrid when the grid does not cover the bands or window,
// NegativeArea when the floor-subtracted area comes out negative. A zero
// area is legal: it is the flat ground-state limit.
SidebandArea sideband_area(const SpectrumGrid& spectrum, const ModelBundle& mb,
                           const AreaOptions& opt = {});

struct AsymmetryFactor {
    double eta;     // I_minus / I_plus - 1
    bool infinite;  // I_plus vanished (ground-state limit); eta is +inf
};

// Sideband asymmetry from the two detuning areas. Never throws: a vanishing
// I_plus is the physical ground-state signature, reported as the marker.
AsymmetryFactor asymmetry_factor(double i_plus, double i_minus);

// The model prediction eta = 1 / n_occ, with the same marker at n_occ = 0.
AsymmetryFactor eta_from_occupation(double n_occ);

// Inverse map: n = 1 / eta, and 0 for the infinite marker.
double occupation_from_eta(const AsymmetryFactor& af);

}  // namespace optomech
