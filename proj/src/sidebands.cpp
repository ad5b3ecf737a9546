#include "optomech/sidebands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "optomech/errors.hpp"
#include "optomech/quadrature.hpp"

namespace optomech {

namespace {

double mechanical_line(const OscillatorParams& o, double omega) {
    const double d = omega - o.omega_m;
    return 1.0 / (d * d + 0.25 * o.kappa_m * o.kappa_m);
}

double g0_bar_squared(const ModelBundle& mb) {
    const DerivedQuantities dq = derive(mb.units, mb.osc, mb.cavity);
    return dq.g0_bar * dq.g0_bar;
}

// Linear interpolation of the spectrum at w; callers guarantee w is inside
// the grid span.
double interp(const SpectrumGrid& s, double w) {
    const auto it = std::lower_bound(s.omega.begin(), s.omega.end(), w);
    if (it == s.omega.begin()) return s.value.front();
    if (it == s.omega.end()) return s.value.back();
    const std::size_t i = std::size_t(it - s.omega.begin());
    const double t = (w - s.omega[i - 1]) / (s.omega[i] - s.omega[i - 1]);
    return s.value[i - 1] + t * (s.value[i] - s.value[i - 1]);
}

}  // namespace

double density_of_states(const ModelBundle& mb, double omega) {
    const auto& c = mb.cavity;
    const double half = 0.5 * c.kappa_r;
    const double d = omega - c.detuning;
    return half / (d * d + half * half);
}

ScatteringRates scattering_rates(const ModelBundle& mb, double omega) {
    const auto& o = mb.osc;
    const double g2 = g0_bar_squared(mb);
    const double line = mechanical_line(o, omega);
    ScatteringRates r;
    r.gamma_as = g2 * o.kappa_m * o.n_occ * density_of_states(mb, omega) * line;
    r.gamma_s = g2 * o.kappa_m * (o.n_occ + 1.0) * density_of_states(mb, -omega) * line;
    return r;
}

double syy_from_scattering(const ModelBundle& mb, double omega, bool pin_dos) {
    const auto& o = mb.osc;
    const auto& c = mb.cavity;
    const double floor_level = c.kappa_r / (2.0 * c.G0_bar * c.G0_bar);
    if (!pin_dos) {
        const ScatteringRates r = scattering_rates(mb, omega);
        return floor_level * (1.0 + 2.0 * r.gamma_as + 2.0 * r.gamma_s);
    }
    if (std::abs(std::abs(c.detuning) - o.omega_m) > 1e-9 * o.omega_m)
        throw DetuningNotSideband("syy_from_scattering with pin_dos needs detuning = +/- omega_m");
    // Only the cavity-resonant sideband survives; its filter is frozen at
    // the line-center value 2/kappa_r.
    const double weight = c.detuning > 0.0 ? o.n_occ : o.n_occ + 1.0;
    const double gamma = g0_bar_squared(mb) * o.kappa_m * weight * (2.0 / c.kappa_r) *
                         mechanical_line(o, omega);
    return floor_level * (1.0 + 2.0 * gamma);
}

SidebandArea sideband_area(const SpectrumGrid& spectrum, const ModelBundle& mb,
                           const AreaOptions& opt) {
    const auto& o = mb.osc;
    if (spectrum.omega.size() != spectrum.value.size() || spectrum.omega.size() < 2)
        throw Error("sideband_area needs matching omega/value arrays with >= 2 points");
    if (!(opt.window_w > 0.0) || !(opt.band_lo > opt.window_w) || !(opt.band_hi > opt.band_lo))
        throw Error("sideband_area needs 0 < window_w < band_lo < band_hi");
    const double wm = o.omega_m, km = o.kappa_m;
    const double win_lo = wm - opt.window_w * km, win_hi = wm + opt.window_w * km;
    const double outer_lo = wm - opt.band_hi * km, outer_hi = wm + opt.band_hi * km;
    if (spectrum.omega.front() > outer_lo || spectrum.omega.back() < outer_hi)
        throw WindowExceedsGrid("sideband_area grid does not cover the floor bands");

    // Median floor over the two off-line bands.
    std::vector<double> band_values;
    for (std::size_t i = 0; i < spectrum.omega.size(); ++i) {
        const double off = std::abs(spectrum.omega[i] - wm);
        if (off >= opt.band_lo * km && off <= opt.band_hi * km)
            band_values.push_back(spectrum.value[i]);
    }
    if (band_values.size() < 4) throw WindowExceedsGrid("sideband_area floor bands hold too few points");
    const std::size_t mid = band_values.size() / 2;
    std::nth_element(band_values.begin(), band_values.begin() + mid, band_values.end());
    double floor_level = band_values[mid];
    if (band_values.size() % 2 == 0) {
        const double upper = floor_level;
        std::nth_element(band_values.begin(), band_values.begin() + mid - 1,
                         band_values.begin() + mid);
        floor_level = 0.5 * (band_values[mid - 1] + upper);
    }

    // Peak window, clipped exactly at the edges by interpolation.
    std::vector<double> wx{win_lo}, wy{interp(spectrum, win_lo) - floor_level};
    for (std::size_t i = 0; i < spectrum.omega.size(); ++i) {
        if (spectrum.omega[i] > win_lo && spectrum.omega[i] < win_hi) {
            wx.push_back(spectrum.omega[i]);
            wy.push_back(spectrum.value[i] - floor_level);
        }
    }
    wx.push_back(win_hi);
    wy.push_back(interp(spectrum, win_hi) - floor_level);
    if (wx.size() < 6) throw WindowExceedsGrid("sideband_area peak window holds too few points");
    double area = trapezoid(wx, wy);

    // Out-of-window tails from a one-parameter Lorentzian fit on the window.
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < wx.size(); ++i) {
        const double d = wx[i] - wm;
        const double shape = 0.25 * km * km / (d * d + 0.25 * km * km);
        num += wy[i] * shape;
        den += shape * shape;
    }
    const double amp = den > 0.0 ? num / den : 0.0;
    area += amp * 0.5 * km * (std::numbers::pi - 2.0 * std::atan(2.0 * opt.window_w));

    if (area < 0.0) throw NegativeArea("sideband_area integrated to a negative area");
    return {area, floor_level};
}

AsymmetryFactor asymmetry_factor(double i_plus, double i_minus) {
    if (!(i_plus > 0.0)) return {std::numeric_limits<double>::infinity(), true};
    return {i_minus / i_plus - 1.0, false};
}

AsymmetryFactor eta_from_occupation(double n_occ) {
    if (!(n_occ > 0.0)) return {std::numeric_limits<double>::infinity(), true};
    return {1.0 / n_occ, false};
}

double occupation_from_eta(const AsymmetryFactor& af) {
    if (af.infinite) return 0.0;
    return 1.0 / af.eta;
}

}  // namespace optomech
