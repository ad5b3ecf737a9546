#include "optomech/checks.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "optomech/force.hpp"
#include "optomech/grid.hpp"
#include "optomech/quadrature.hpp"
#include "optomech/readout.hpp"
#include "optomech/response.hpp"

namespace optomech {

namespace {

std::vector<double> peak_quadrature_grid(const ModelBundle& mb, double span_in_kappa) {
    const auto& o = mb.osc;
    const double lo = std::max(1e-6 * o.omega_m, o.omega_m - span_in_kappa * o.kappa_m);
    const double hi = o.omega_m + span_in_kappa * o.kappa_m;
    return graded_peak_grid(lo, hi, o.omega_m, 30.0 * o.kappa_m, o.kappa_m / 20.0, 1.02);
}

CheckResult heisenberg_check(const ModelBundle& mb) {
    const double h2 = mb.units.hbar * mb.units.hbar;
    double worst = 0.0;
    for (double w : log_grid(1e-2 * mb.osc.omega_m, 1e2 * mb.osc.omega_m, 201)) {
        const HeisenbergProduct hp = heisenberg_product(mb, w);
        worst = std::max(worst, std::abs(hp.difference / h2 - 1.0));
    }
    return {"heisenberg floor", "", worst, 1e-10, worst <= 1e-10};
}

CheckResult kernel_zz_check(const ModelBundle& mb) {
    double worst = 0.0;
    for (double w : log_grid(1e-2 * mb.osc.omega_m, 1e2 * mb.osc.omega_m, 201))
        worst = std::max(worst, std::abs(commutator_kernels(mb, w).k_zz) / mb.units.hbar);
    return {"kernel k_zz", "", worst, 1e-12, worst <= 1e-12};
}

CheckResult kernel_zf_check(const ModelBundle& mb) {
    double worst = 0.0;
    for (double w : log_grid(1e-2 * mb.osc.omega_m, 1e2 * mb.osc.omega_m, 201))
        worst = std::max(worst,
                         std::abs(std::abs(commutator_kernels(mb, w).k_zf) - mb.units.hbar) /
                             mb.units.hbar);
    return {"kernel k_zf magnitude", "", worst, 1e-10, worst <= 1e-10};
}

CheckResult variance_check(const ModelBundle& mb) {
    ModelBundle zero = mb;
    std::string note;
    if (zero.osc.n_occ != 0.0) {
        zero = validate(mb.units, {mb.osc.mass, mb.osc.omega_m, mb.osc.kappa_m, 0.0}, mb.cavity);
        note = "checked at n_occ = 0";
    }
    const double got = integrated_zero_point_variance(zero, peak_quadrature_grid(zero, 600.0));
    const double want = zero.units.hbar / (2.0 * zero.osc.mass * zero.osc.omega_m);
    const double dev = std::abs(got / want - 1.0);
    return {"integrated zero-point variance", note, dev, 1e-3, dev <= 1e-3};
}

CheckResult correlation_check(const ModelBundle& mb, bool flip) {
    // Sum rule: the integral of the imprecision/back-action cross term over
    // [0, inf) equals -pi hbar / (m detuning) for any cavity width, which at
    // detuning = +/- w_m is minus/plus the integrated zero-point displacement
    // noise. Both sides are evaluated numerically at n_occ = 0.
    ModelBundle zero = mb;
    std::string note;
    if (zero.osc.n_occ != 0.0) {
        zero = validate(mb.units, {mb.osc.mass, mb.osc.omega_m, mb.osc.kappa_m, 0.0}, mb.cavity);
        note = "checked at n_occ = 0";
    }
    const double span = 50.0 * std::max({zero.osc.omega_m, std::abs(zero.cavity.detuning),
                                         zero.cavity.kappa_r});
    std::vector<double> grid = graded_peak_grid(1e-8 * zero.osc.omega_m, span, zero.osc.omega_m,
                                                30.0 * zero.osc.kappa_m,
                                                zero.osc.kappa_m / 20.0, 1.02);
    std::vector<double> corr(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::complex<double> c = std::conj(chi_freq(zero, grid[i]));
        double term = 2.0 * (c * correlation_psd(zero, grid[i])).real();
        if (flip) term = -term;
        corr[i] = term;
    }
    const double lhs = trapezoid(grid, corr);
    const double sign = zero.cavity.detuning > 0.0 ? -1.0 : 1.0;
    const double rhs = sign * 2.0 * std::numbers::pi *
                       integrated_zero_point_variance(zero, peak_quadrature_grid(zero, 600.0)) *
                       (zero.osc.omega_m / std::abs(zero.cavity.detuning));
    const double bound = 3.0 * zero.cavity.kappa_r / zero.osc.omega_m;
    const double dev = std::abs(lhs / rhs - 1.0);
    return {"correlation sum rule", note, dev, bound, dev <= bound};
}

CheckResult sql_resonance_check(const ModelBundle& mb) {
    const double dev = std::abs(force_sensitivity(mb, mb.osc.omega_m).ratio_exact - 1.0);
    return {"quantum-limit ratio on resonance", "", dev, 1e-12, dev <= 1e-12};
}

CheckResult sql_narrow_line_check(const ModelBundle& mb) {
    ModelBundle narrow = mb;
    std::string note;
    if (narrow.osc.kappa_m > 1e-3 * narrow.osc.omega_m) {
        narrow = validate(mb.units,
                          {mb.osc.mass, mb.osc.omega_m, 1e-3 * mb.osc.omega_m, mb.osc.n_occ},
                          mb.cavity);
        note = "checked at kappa_m = 1e-3 omega_m";
    }
    double worst = 0.0;
    const auto& o = narrow.osc;
    for (double w : linear_grid(o.omega_m - 5.0 * o.kappa_m, o.omega_m + 5.0 * o.kappa_m, 101)) {
        const ForceSensitivity f = force_sensitivity(narrow, w);
        worst = std::max(worst, std::abs(f.ratio_approx / f.ratio_exact - 1.0));
    }
    return {"quantum-limit narrow-line ratio", note, worst, 1e-2, worst <= 1e-2};
}

}  // namespace

std::vector<CheckResult> run_invariant_checks(const ModelBundle& mb, bool flip_correlation_sign) {
    std::vector<CheckResult> out;
    out.push_back(heisenberg_check(mb));
    out.push_back(kernel_zz_check(mb));
    out.push_back(kernel_zf_check(mb));
    out.push_back(variance_check(mb));
    out.push_back(correlation_check(mb, flip_correlation_sign));
    out.push_back(sql_resonance_check(mb));
    out.push_back(sql_narrow_line_check(mb));
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.passed; });
}

}  // namespace optomech
