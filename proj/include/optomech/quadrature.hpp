#pragma once

#include <cstddef>
#include <vector>

namespace optomech {

// Composite trapezoid on an arbitrary (sorted, not necessarily uniform) grid.
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

// Exact integral of (p + q w^2) / ((w^2 - a^2)^2 + b^2 w^2) over [lo, hi],
// hi may be infinite. Underdamped quartic (b < 2a) via complex partial
// fractions; the log branch is chosen continuous along the real axis, so
// lo = 0 is fine. This is the tail engine behind every analytic tail
// correction in the library.
double quartic_integral(double p, double q, double a, double b, double lo, double hi);

// Fraction of the full [0, inf) mass of 1/((w^2-a^2)^2 + b^2 w^2) covered
// by [lo, hi]. Used for grid-coverage preconditions.
double quartic_mass_fraction(double a, double b, double lo, double hi);

// Grid refined around a resonance: uniform spacing h_core inside
// [center - half_core, center + half_core], spacing growing by `grade`
// per step outside, clipped to [lo, hi] with exact endpoints.
std::vector<double> graded_peak_grid(double lo, double hi, double center, double half_core,
                                     double h_core, double grade = 1.03);

}  // namespace optomech
