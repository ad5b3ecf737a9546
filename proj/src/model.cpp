#include "optomech/model.hpp"

#include <cmath>
#include <cstdio>

#include "optomech/errors.hpp"

namespace optomech {

namespace {

std::string fmt(const char* name, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s must be positive and finite (got %g)", name, v);
    return buf;
}

void require_positive(const char* name, double v) {
    // NaN fails the comparison, infinities fail isfinite; both fold into
    // the same failure mode so validation stays total over all inputs.
    if (!(v > 0.0) || !std::isfinite(v)) throw NonPositiveParameter(fmt(name, v));
}

// Peak of the back-action force spectrum over omega >= 0, closed form.
// With u = omega^2 and a = detuning^2 + kappa_r^2/4 the spectrum is
// proportional to (u + a) / ((u - a)^2 + kappa_r^2 u), maximized at
// u* = sqrt(a) (2|detuning| - sqrt(a)) when that is positive, else at u=0.
double back_action_peak(const Units& units, const CavityParams& cav) {
    const double kr = cav.kappa_r;
    const double d2 = cav.detuning * cav.detuning;
    const double a = d2 + 0.25 * kr * kr;
    const double ustar = std::sqrt(a) * (2.0 * std::abs(cav.detuning) - std::sqrt(a));
    const double u = ustar > 0.0 ? ustar : 0.0;
    const double num = 2.0 * units.hbar * units.hbar * cav.G0_bar * cav.G0_bar * kr * (u + a);
    const double den = (u - a) * (u - a) + kr * kr * u;
    return num / den;
}

}  // namespace

ModelBundle validate(const Units& units, const OscillatorParams& osc,
                     const CavityParams& cavity) {
    require_positive("hbar", units.hbar);
    require_positive("mass", osc.mass);
    require_positive("omega_m", osc.omega_m);
    require_positive("kappa_m", osc.kappa_m);
    if (!(osc.n_occ >= 0.0) || !std::isfinite(osc.n_occ))
        throw NonPositiveParameter("n_occ must be >= 0 and finite");
    require_positive("kappa_r", cavity.kappa_r);
    require_positive("g0_bar_coupling", cavity.G0_bar);
    if (cavity.omega_r) require_positive("omega_r", *cavity.omega_r);
    if (cavity.L_c) require_positive("cavity_length", *cavity.L_c);
    if (cavity.a_bar) require_positive("a_bar", *cavity.a_bar);

    if (!std::isfinite(cavity.detuning))
        throw NonPositiveParameter("detuning must be finite");
    if (cavity.detuning == 0.0)
        throw ZeroDetuning("detuning must be nonzero; the phase readout loses the displacement signal at zero detuning");

    if (!(osc.kappa_m < osc.omega_m))
        throw OverdampedOscillator("kappa_m must be smaller than omega_m; the mode must be an underdamped resonance");

    if (cavity.omega_r && cavity.L_c && cavity.a_bar) {
        const double implied = *cavity.a_bar * (*cavity.omega_r) / (*cavity.L_c);
        if (std::abs(implied - cavity.G0_bar) > 1e-12 * std::abs(cavity.G0_bar)) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "g0_bar_coupling %.17g inconsistent with a_bar*omega_r/cavity_length %.17g",
                          cavity.G0_bar, implied);
            throw InconsistentCoupling(buf);
        }
    }

    ModelBundle bundle{units, osc, cavity, {}};

    // The readout model treats the mechanical response as fixed by the bath
    // alone. Once the back-action force spectrum rivals the bath force
    // spectrum that neglect starts to matter, so flag it.
    const double s_q = (4.0 * osc.n_occ + 2.0) * units.hbar * osc.mass * osc.kappa_m * osc.omega_m;
    const double s_ba = back_action_peak(units, cavity);
    if (s_ba > 0.1 * s_q) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "back-action force spectrum peaks at %.3g, more than 10%% of the bath force spectrum %.3g; "
                      "the fixed-response approximation is strained",
                      s_ba, s_q);
        bundle.warnings.emplace_back(buf);
    }
    return bundle;
}

DerivedQuantities derive(const Units& units, const OscillatorParams& osc,
                         const CavityParams& cavity) {
    validate(units, osc, cavity);
    DerivedQuantities d{};
    d.x_zpf = std::sqrt(units.hbar / (2.0 * osc.mass * osc.omega_m));
    d.g0_bar = cavity.G0_bar * d.x_zpf;
    d.quality = osc.omega_m / osc.kappa_m;
    return d;
}

}  // namespace optomech
