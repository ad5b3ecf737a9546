#include "optomech/response.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

#include "optomech/errors.hpp"
#include "optomech/quadrature.hpp"

namespace optomech {

std::complex<double> chi_freq(const ModelBundle& mb, double omega) {
    const auto& o = mb.osc;
    const std::complex<double> den(omega * omega - o.omega_m * o.omega_m, o.kappa_m * omega);
    return -1.0 / (o.mass * den);
}

double chi_time(const ModelBundle& mb, double t) {
    const auto& o = mb.osc;
    return std::exp(-0.5 * o.kappa_m * std::abs(t)) * std::sin(o.omega_m * t) / (o.mass * o.omega_m);
}

double bath_force_psd(const ModelBundle& mb) {
    const auto& o = mb.osc;
    return (4.0 * o.n_occ + 2.0) * mb.units.hbar * o.mass * o.kappa_m * o.omega_m;
}

double displacement_psd(const ModelBundle& mb, double omega) {
    return std::norm(chi_freq(mb, omega)) * bath_force_psd(mb);
}

double integrated_zero_point_variance(const ModelBundle& mb,
                                      const std::vector<double>& omega_grid) {
    if (mb.osc.n_occ != 0.0) throw Error("integrated_zero_point_variance requires n_occ = 0");
    if (omega_grid.size() < 2) throw Error("integrated_zero_point_variance needs >= 2 grid points");
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        if (!(omega_grid[i] >= 0.0))
            throw Error("integrated_zero_point_variance grid must be nonnegative");
        if (i > 0 && !(omega_grid[i] > omega_grid[i - 1]))
            throw Error("integrated_zero_point_variance grid must be strictly increasing");
    }
    const auto& o = mb.osc;
    const double a = o.omega_m, b = o.kappa_m;
    if (quartic_mass_fraction(a, b, omega_grid.front(), omega_grid.back()) < 0.999)
        throw GridTooNarrow("integrated_zero_point_variance grid spans under 99.9% of the line mass");
    std::vector<double> psd(omega_grid.size());
    for (std::size_t i = 0; i < omega_grid.size(); ++i) psd[i] = displacement_psd(mb, omega_grid[i]);
    double integral = trapezoid(omega_grid, psd);
    // displacement_psd = amp / ((w^2 - a^2)^2 + b^2 w^2), so the parts of the
    // half line the grid misses integrate in closed form.
    const double amp = bath_force_psd(mb) / (o.mass * o.mass);
    if (omega_grid.front() > 0.0)
        integral += quartic_integral(amp, 0.0, a, b, 0.0, omega_grid.front());
    integral += quartic_integral(amp, 0.0, a, b, omega_grid.back(),
                                 std::numeric_limits<double>::infinity());
    return integral / (2.0 * std::numbers::pi);
}

}  // namespace optomech
