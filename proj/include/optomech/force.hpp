#pragma once

#include "optomech/model.hpp"

namespace optomech {

struct ForceSensitivity {
    double s_f_total;     // total output spectrum referred to force, s_yy_total / |chi|^2
    double sql;           // 2 hbar / |chi| = 2 hbar m sqrt((w^2-w_m^2)^2 + kappa_m^2 w^2)
    double s_f_zp;        // 2 hbar m kappa_m w_m, zero-point bath floor (n independent)
    double s_f_qtot;      // sql + s_f_zp
    double ratio_exact;   // sql / s_f_zp; equals 1 exactly on resonance
    double ratio_approx;  // sqrt(1 + ((w - w_m)/(kappa_m/2))^2), narrow-line form
};

// Force-referred sensitivity figures at one frequency. s_f_total divides the
// measured output spectrum by |chi|^2 literally, so multiplying back by
// |chi|^2 reproduces s_yy_total to rounding.
ForceSensitivity force_sensitivity(const ModelBundle& mb, double omega);

// sql plus the full bath force noise (4 n + 2) hbar m kappa_m w_m: the noise
// floor no detuning choice can beat at this frequency and occupancy.
double force_bound(const ModelBundle& mb, double omega);

}  // namespace optomech
