#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include "optomech/errors.hpp"
#include "optomech/grid.hpp"
#include "optomech/quadrature.hpp"
#include "optomech/response.hpp"
#include "support/bundles.hpp"
#include "support/fourier.hpp"

using namespace optomech;
using doctest::Approx;
using omtest::bundle;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("frequency response at pinned points") {
    const ModelBundle mb = bundle();
    const std::complex<double> dc = chi_freq(mb, 0.0);
    CHECK(dc.real() == Approx(1.0).epsilon(1e-15));
    CHECK(dc.imag() == 0.0);

    // On resonance the response is purely reactive-free: i / (kappa_m omega).
    const std::complex<double> res = chi_freq(mb, 1.0);
    CHECK(res.real() == Approx(0.0).scale(100.0).epsilon(1e-15));
    CHECK(res.imag() == Approx(100.0).epsilon(1e-14));

    const std::complex<double> above = chi_freq(mb, 2.0);
    CHECK(above.real() == Approx(-0.3333185192).epsilon(1e-9));
    CHECK(above.imag() == Approx(0.0022221235).epsilon(1e-9));
}

TEST_CASE("dissipative part identity and reflection symmetry") {
    const ModelBundle mb = bundle({.kappa_m = 0.137});
    for (double w : {0.05, 0.4, 0.9, 1.0, 1.3, 7.0}) {
        const std::complex<double> c = chi_freq(mb, w);
        CHECK(c.imag() == Approx(0.137 * w * std::norm(c)).epsilon(1e-13));
        CHECK(chi_freq(mb, -w) == std::conj(c));
    }
}

TEST_CASE("time response: odd, zero at zero, damped quarter-period value") {
    const ModelBundle mb = bundle();
    CHECK(chi_time(mb, 0.0) == 0.0);
    for (double t : {0.3, 2.0, 11.0}) CHECK(chi_time(mb, -t) == -chi_time(mb, t));
    CHECK(chi_time(mb, kPi / 2.0) == Approx(std::exp(-0.01 * kPi / 4.0)).epsilon(1e-12));
    CHECK(chi_time(mb, kPi / 2.0) == Approx(0.992177).epsilon(1e-6));

    // Undamped limit: quarter period reaches 1 / (m omega_m).
    const ModelBundle lossless = bundle({.kappa_m = 1e-12});
    CHECK(chi_time(lossless, kPi / 2.0) == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("time and frequency kernels are one Fourier pair") {
    // Independent quadrature of (1/pi) Re int chi(w) e^{-iwt} dw. The line is
    // narrow enough that the closed-form kernel's use of the undamped
    // oscillation frequency stays below the comparison tolerance.
    const ModelBundle mb = bundle({.kappa_m = 1e-4});
    const omtest::ChiTransform transform(mb);
    CHECK(transform.points() > 100000);
    for (double t : {0.05, 0.08, 0.13, 0.5, 1.0, kPi / 2.0, 3.0, 10.0, 31.4, 100.0, 240.0}) {
        CAPTURE(t);
        CHECK(std::abs(transform(t) - chi_time(mb, t)) < 1e-6);
    }
}

TEST_CASE("exponential integral branches agree with reference values") {
    // E1(ix) = -Ci(x) + i (Si(x) - pi/2).
    const omtest::cd a = omtest::e1_imag(1.0);  // series branch
    CHECK(a.real() == Approx(-0.3374039229009681).epsilon(1e-13));
    CHECK(a.imag() == Approx(0.9460830703671830 - kPi / 2.0).epsilon(1e-12));
    const omtest::cd b = omtest::e1_imag(5.0);  // continued-fraction branch
    CHECK(b.real() == Approx(0.1900297496566439).epsilon(1e-12));
    CHECK(b.imag() == Approx(1.5499312449446741 - kPi / 2.0).epsilon(1e-10));
    // Branch seam is continuous.
    CHECK(std::abs(omtest::e1_imag(2.9999995) - omtest::e1_imag(3.0000005)) < 1e-6);
}

TEST_CASE("oscillatory panel weights collapse to the trapezoid at zero phase") {
    omtest::cd w0, w1;
    omtest::filon_weights(1e-9, w0, w1);
    CHECK(std::abs(w0 - omtest::cd(0.5, 0.0)) < 1e-8);
    CHECK(std::abs(w1 - omtest::cd(0.5, 0.0)) < 1e-8);
    // Series and closed form agree at one phase just inside the series branch.
    // The closed form cancels twice near the handover, so it only carries
    // ~1e-16/theta^2 absolute accuracy there; each panel scales weights by
    // h |f|, which buries that.
    const double theta = 0.999e-3;
    omtest::cd s0, s1;
    omtest::filon_weights(theta, s0, s1);
    const omtest::cd e = std::polar(1.0, -theta);
    const omtest::cd it(0.0, theta);
    const omtest::cd ave = (1.0 - e) / it;
    const omtest::cd c1 = (ave - e) / it;
    const omtest::cd c0 = ave - c1;
    CHECK(std::abs(s0 - c0) < 5e-11);
    CHECK(std::abs(s1 - c1) < 5e-11);
}

TEST_CASE("bath force noise is white with the pinned magnitude") {
    CHECK(bath_force_psd(bundle()) == Approx(0.02).epsilon(1e-15));
    CHECK(bath_force_psd(bundle({.n_occ = 1.0})) == Approx(0.06).epsilon(1e-15));
    // Linear in hbar and mass.
    CHECK(bath_force_psd(bundle({.mass = 3.0}, {}, {.hbar = 2.0})) ==
          Approx(0.12).epsilon(1e-15));
}

TEST_CASE("displacement noise peaks at |chi|^2 times the bath floor") {
    const ModelBundle mb = bundle();
    CHECK(displacement_psd(mb, 1.0) == Approx(200.0).epsilon(1e-13));
    for (double w : {0.2, 0.8, 1.0, 1.7})
        CHECK(displacement_psd(mb, w) ==
              Approx(std::norm(chi_freq(mb, w)) * 0.02).epsilon(1e-14));
}

TEST_CASE("integrated zero-point variance is half the zero-point amplitude squared") {
    auto grid_for = [](double kappa_m) {
        return graded_peak_grid(std::max(1e-6, 1.0 - 600.0 * kappa_m), 1.0 + 600.0 * kappa_m,
                                1.0, 30.0 * kappa_m, kappa_m / 20.0, 1.02);
    };
    const ModelBundle narrow = bundle({.kappa_m = 1e-3});
    CHECK(integrated_zero_point_variance(narrow, grid_for(1e-3)) ==
          Approx(0.5).epsilon(1e-3));
    const ModelBundle wide = bundle({.kappa_m = 1e-2});
    CHECK(integrated_zero_point_variance(wide, grid_for(1e-2)) ==
          Approx(0.5).epsilon(1e-2));
    // Mass and frequency move the value as hbar / (2 m omega_m).
    const ModelBundle heavy = bundle({.mass = 4.0, .kappa_m = 1e-3});
    CHECK(integrated_zero_point_variance(heavy, grid_for(1e-3)) ==
          Approx(0.125).epsilon(1e-3));
}

TEST_CASE("integrated variance preconditions") {
    const ModelBundle mb = bundle({.kappa_m = 1e-3});
    CHECK_THROWS_AS(integrated_zero_point_variance(mb, linear_grid(0.9, 1.1, 2001)),
                    GridTooNarrow);
    const ModelBundle warm = bundle({.kappa_m = 1e-3, .n_occ = 0.5});
    CHECK_THROWS_AS(
        integrated_zero_point_variance(warm, linear_grid(0.0, 10.0, 1001)), Error);
    CHECK_THROWS_AS(integrated_zero_point_variance(mb, {1.0}), Error);
    CHECK_THROWS_AS(integrated_zero_point_variance(mb, {0.5, 0.4, 1.5}), Error);
    CHECK_THROWS_AS(integrated_zero_point_variance(mb, {-0.5, 0.5, 1.5}), Error);
}

TEST_CASE("closed-form quartic integral matches its two exactly known moments") {
    // int_0^inf dw / ((w^2-a^2)^2 + b^2 w^2) = pi / (2 a^2 b), and the
    // w^2-weighted integral is pi / (2 b).
    for (double a : {0.3, 1.0, 2.5}) {
        for (double b : {1e-3, 0.1, 0.5 * a}) {
            CHECK(quartic_integral(1.0, 0.0, a, b, 0.0,
                                   std::numeric_limits<double>::infinity()) ==
                  Approx(kPi / (2.0 * a * a * b)).epsilon(1e-12));
            CHECK(quartic_integral(0.0, 1.0, a, b, 0.0,
                                   std::numeric_limits<double>::infinity()) ==
                  Approx(kPi / (2.0 * b)).epsilon(1e-12));
        }
    }
}

TEST_CASE("quartic integral agrees with brute-force quadrature on finite spans") {
    const double a = 1.0, b = 0.05;
    for (auto [lo, hi] : std::vector<std::pair<double, double>>{
             {0.0, 0.7}, {0.9, 1.1}, {1.5, 40.0}}) {
        const std::vector<double> x = linear_grid(lo, hi, 200001);
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double u = x[i] * x[i] - a * a;
            y[i] = (2.0 + 3.0 * x[i] * x[i]) / (u * u + b * b * x[i] * x[i]);
        }
        CHECK(quartic_integral(2.0, 3.0, a, b, lo, hi) ==
              Approx(trapezoid(x, y)).epsilon(1e-6));
    }
}

TEST_CASE("line-mass fraction drives the coverage precondition") {
    // Outside +/- W kappa the mass is 1 - (2/pi) atan(2W).
    const double a = 1.0, b = 1e-3;
    const double inside = quartic_mass_fraction(a, b, 1.0 - 50.0 * b, 1.0 + 50.0 * b);
    CHECK(inside == Approx((2.0 / kPi) * std::atan(100.0)).epsilon(1e-4));
    CHECK(quartic_mass_fraction(a, b, 0.0, std::numeric_limits<double>::infinity()) ==
          Approx(1.0).epsilon(1e-13));
}
