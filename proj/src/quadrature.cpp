#include "optomech/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "optomech/errors.hpp"
#include "optomech/grid.hpp"

namespace optomech {

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (!(lo < hi) || n < 2) throw Error("linear_grid needs lo < hi and n >= 2");
    std::vector<double> w(n);
    const double h = (hi - lo) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) w[i] = lo + h * double(i);
    w.back() = hi;
    return w;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(lo < hi) || n < 2) throw Error("log_grid needs 0 < lo < hi and n >= 2");
    std::vector<double> w(n);
    const double llo = std::log(lo);
    const double h = (std::log(hi) - llo) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::exp(llo + h * double(i));
    w.front() = lo;
    w.back() = hi;
    return w;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error("trapezoid needs two matching arrays with >= 2 points");
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return acc;
}

namespace {

// log((w - c)/(w + c)) on the branch that is continuous for real w >= 0 when
// c sits in the open first quadrant: the ratio starts at -1 for w = 0 and
// stays in the closed lower half plane, so the angle lives in [-pi, 0].
std::complex<double> log_ratio(double w, std::complex<double> c) {
    const std::complex<double> r = (w - c) / (w + c);
    double th = std::atan2(r.imag(), r.real());
    if (th > 0.0) th -= 2.0 * std::numbers::pi;
    return {std::log(std::abs(r)), th};
}

}  // namespace

double quartic_integral(double p, double q, double a, double b, double lo, double hi) {
    if (!(a > 0.0) || !(b > 0.0) || !(b < 2.0 * a)) throw Error("quartic_integral needs 0 < b < 2a");
    if (!(lo >= 0.0) || !(hi > lo)) throw Error("quartic_integral needs 0 <= lo < hi");
    // (w^2 - a^2)^2 + b^2 w^2 = (w^2 - r)(w^2 - conj r) with r in the upper
    // half plane; the integrand splits as 2 Re[alpha / (w^2 - r)].
    const double s = b * std::sqrt(4.0 * a * a - b * b);
    const std::complex<double> r(a * a - 0.5 * b * b, 0.5 * s);
    const std::complex<double> alpha = std::complex<double>(0.0, -1.0) * (p + q * r) / s;
    const std::complex<double> c = std::sqrt(r);
    std::complex<double> dl = std::isfinite(hi) ? log_ratio(hi, c) : std::complex<double>(0.0, 0.0);
    dl -= log_ratio(lo, c);
    return (alpha / c * dl).real();
}

double quartic_mass_fraction(double a, double b, double lo, double hi) {
    // Full-line mass of 1/((w^2-a^2)^2 + b^2 w^2) over [0, inf) is pi/(2 a^2 b).
    return quartic_integral(1.0, 0.0, a, b, lo, hi) * (2.0 * a * a * b / std::numbers::pi);
}

std::vector<double> graded_peak_grid(double lo, double hi, double center, double half_core,
                                     double h_core, double grade) {
    if (!(lo < center) || !(center < hi) || !(half_core > 0.0) || !(h_core > 0.0) || !(grade > 1.0))
        throw Error("graded_peak_grid needs lo < center < hi, half_core > 0, h_core > 0, grade > 1");
    std::vector<double> w{center};
    double t = center, h = h_core;
    while (t < hi) {
        t += h;
        if (t >= hi) {
            w.push_back(hi);
            break;
        }
        w.push_back(t);
        if (t - center >= half_core) h *= grade;
    }
    t = center;
    h = h_core;
    while (t > lo) {
        t -= h;
        if (t <= lo) {
            w.push_back(lo);
            break;
        }
        w.push_back(t);
        if (center - t >= half_core) h *= grade;
    }
    std::sort(w.begin(), w.end());
    return w;
}

}  // namespace optomech
