#pragma once

#include <complex>
#include <vector>

#include "optomech/model.hpp"

namespace optomech {

// Mechanical susceptibility x(w)/F(w):
//   chi(w) = -1 / (m (w^2 - w_m^2 + i kappa_m w)).
// Im chi = m kappa_m w |chi|^2, positive for w > 0.
std::complex<double> chi_freq(const ModelBundle& mb, double omega);

// Damped impulse response exp(-kappa_m |t| / 2) sin(w_m t) / (m w_m).
// Odd in t and zero at t = 0.
double chi_time(const ModelBundle& mb, double t);

// Symmetrized thermal plus zero-point force noise of the mechanical bath,
// white: (4 n_occ + 2) hbar m kappa_m w_m.
double bath_force_psd(const ModelBundle& mb);

// Displacement noise |chi(w)|^2 * bath_force_psd.
double displacement_psd(const ModelBundle& mb, double omega);

// Integral of displacement_psd d omega / (2 pi) over [0, inf), computed as a
// trapezoid over the supplied grid plus exact tail integrals outside it.
// Requires n_occ = 0 and a strictly increasing nonnegative grid carrying at
// least 99.9% of the analytic line mass (GridTooNarrow otherwise). Equals
// hbar / (2 m w_m) for any underdamped oscillator.
double integrated_zero_point_variance(const ModelBundle& mb,
                                      const std::vector<double>& omega_grid);

}  // namespace optomech
