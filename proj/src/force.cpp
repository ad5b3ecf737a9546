#include "optomech/force.hpp"

#include <cmath>
#include <complex>

#include "optomech/readout.hpp"
#include "optomech/response.hpp"

namespace optomech {

ForceSensitivity force_sensitivity(const ModelBundle& mb, double omega) {
    const auto& o = mb.osc;
    const double hbar = mb.units.hbar;
    const double chi2 = std::norm(chi_freq(mb, omega));
    ForceSensitivity f;
    f.s_f_total = output_psd(mb, omega).s_yy_total / chi2;
    f.sql = 2.0 * hbar / std::sqrt(chi2);
    f.s_f_zp = 2.0 * hbar * o.mass * o.kappa_m * o.omega_m;
    f.s_f_qtot = f.sql + f.s_f_zp;
    f.ratio_exact = f.sql / f.s_f_zp;
    const double u = (omega - o.omega_m) / (0.5 * o.kappa_m);
    f.ratio_approx = std::sqrt(1.0 + u * u);
    return f;
}

double force_bound(const ModelBundle& mb, double omega) {
    const double chi2 = std::norm(chi_freq(mb, omega));
    return 2.0 * mb.units.hbar / std::sqrt(chi2) + bath_force_psd(mb);
}

}  // namespace optomech
