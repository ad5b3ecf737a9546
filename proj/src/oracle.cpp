#include "optomech/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "optomech/errors.hpp"
#include "optomech/readout.hpp"
#include "optomech/response.hpp"
#include "optomech/rng.hpp"

namespace optomech {

namespace {

constexpr int kStates = 7;  // x, p, av_re, av_im, a_re, a_im, output integrator

double fastest_rate(const ModelBundle& mb) {
    return std::max({mb.osc.omega_m, std::abs(mb.cavity.detuning), mb.cavity.kappa_r,
                     mb.osc.kappa_m});
}

// Drift of the augmented state. The av pair is the vacuum-only cavity copy
// sourcing the back-action force on p; the a pair carries the displacement
// signal into the measured output. Row 6 integrates the output so the state
// step lands directly on the bin average.
Eigen::MatrixXd drift_matrix(const ModelBundle& mb) {
    const auto& o = mb.osc;
    const auto& c = mb.cavity;
    const double hbar = mb.units.hbar;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(kStates, kStates);
    a(0, 1) = 1.0 / o.mass;
    a(1, 0) = -o.mass * o.omega_m * o.omega_m;
    a(1, 1) = -o.kappa_m;
    a(1, 2) = -2.0 * hbar * c.G0_bar;
    a(2, 2) = -0.5 * c.kappa_r;
    a(2, 3) = c.detuning;
    a(3, 2) = -c.detuning;
    a(3, 3) = -0.5 * c.kappa_r;
    a(4, 4) = -0.5 * c.kappa_r;
    a(4, 5) = c.detuning;
    a(5, 0) = -c.G0_bar;
    a(5, 4) = -c.detuning;
    a(5, 5) = -0.5 * c.kappa_r;
    a(6, 4) = std::sqrt(2.0 * c.kappa_r);
    return a;
}

// Input columns for the three white channels: the two vacuum quadratures
// (each feeding both cavity copies, plus the direct -v1 feedthrough into the
// output integrator) and the mechanical bath force.
std::array<Eigen::VectorXd, 3> input_columns(const ModelBundle& mb) {
    const double root = std::sqrt(0.5 * mb.cavity.kappa_r);
    std::array<Eigen::VectorXd, 3> cols;
    for (auto& c : cols) c = Eigen::VectorXd::Zero(kStates);
    cols[0](2) = root;
    cols[0](4) = root;
    cols[0](6) = -1.0;
    cols[1](3) = root;
    cols[1](5) = root;
    cols[2](1) = 1.0;
    return cols;
}

// Exact one-step noise covariance for one input column: Van Loan block
// exponential of [[-A, b s2 b^T], [0, A^T]] dt; the top-right block times
// the transposed bottom-right block is the integral of F B B^T F^T.
Eigen::MatrixXd discrete_covariance(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                    double s2, double dt) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * kStates, 2 * kStates);
    m.topLeftCorner(kStates, kStates) = -a;
    m.topRightCorner(kStates, kStates) = b * (s2 * b.transpose());
    m.bottomRightCorner(kStates, kStates) = a.transpose();
    const Eigen::MatrixXd e = (m * dt).exp();
    const Eigen::MatrixXd q = e.bottomRightCorner(kStates, kStates).transpose() *
                              e.topRightCorner(kStates, kStates);
    return 0.5 * (q + q.transpose());
}

// Square-root factor with clamped spectrum; columns below 1e-16 of the top
// eigenvalue carry no statistical weight and are dropped.
Eigen::MatrixXd covariance_factor(const Eigen::MatrixXd& q) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
    const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    const double top = lam.maxCoeff();
    std::vector<int> keep;
    for (int i = 0; i < lam.size(); ++i)
        if (top > 0.0 && lam(i) > 1e-16 * top) keep.push_back(i);
    Eigen::MatrixXd f(kStates, std::ptrdiff_t(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j)
        f.col(std::ptrdiff_t(j)) = es.eigenvectors().col(keep[j]) * std::sqrt(lam(keep[j]));
    return f;
}

}  // namespace

SimOptions resolved_options(const ModelBundle& mb, SimOptions opt) {
    const double rate = fastest_rate(mb);
    const double two_pi = 2.0 * std::numbers::pi;
    if (opt.dt <= 0.0) opt.dt = two_pi / (64.0 * rate);
    if (opt.duration <= 0.0) opt.duration = 500.0 * two_pi / mb.osc.kappa_m;
    if (opt.transient_skip < 0.0) opt.transient_skip = 50.0 / mb.osc.kappa_m;
    if (!std::isfinite(opt.dt) || opt.dt > two_pi / (40.0 * rate))
        throw UnstableConfig("sim dt must give at least 40 samples per fastest model cycle");
    if (!std::isfinite(opt.duration) || opt.duration < 200.0 * two_pi / mb.osc.kappa_m)
        throw TooShort("sim duration must span at least 200 mechanical linewidth times");
    if (!std::isfinite(opt.transient_skip) || opt.transient_skip >= opt.duration)
        throw TooShort("sim transient skip must leave part of the record");
    return opt;
}

TimeSeries simulate(const ModelBundle& mb, const SimOptions& raw) {
    const SimOptions opt = resolved_options(mb, raw);
    const Eigen::MatrixXd a = drift_matrix(mb);
    const auto cols = input_columns(mb);
    const double variances[3] = {0.5, 0.5, 0.5 * bath_force_psd(mb)};

    const Eigen::MatrixXd propagator = (a * opt.dt).exp();

    std::vector<Eigen::MatrixXd> factors;
    std::vector<NormalSampler> draws;
    SplitMix64 master(opt.seed);
    for (int ch = 0; ch < 3; ++ch) {
        const std::uint64_t stream_seed = master.next();
        if (ch == 2 && !opt.thermal_drive) continue;
        factors.push_back(
            covariance_factor(discrete_covariance(a, cols[ch], variances[ch], opt.dt)));
        draws.emplace_back(stream_seed);
    }

    const std::size_t n_total = std::size_t(std::llround(opt.duration / opt.dt));
    const std::size_t n_skip = std::size_t(std::llround(opt.transient_skip / opt.dt));
    TimeSeries ts;
    ts.dt = opt.dt;
    ts.y.reserve(n_total - n_skip);
    Eigen::VectorXd state = Eigen::VectorXd::Zero(kStates);
    for (std::size_t k = 0; k < n_total; ++k) {
        state(6) = 0.0;
        state = propagator * state;
        for (std::size_t ch = 0; ch < factors.size(); ++ch)
            for (Eigen::Index j = 0; j < factors[ch].cols(); ++j)
                state += factors[ch].col(j) * draws[ch]();
        const double bin_mean = state(6) / opt.dt;
        if (!std::isfinite(bin_mean)) throw NonFiniteState("simulate produced a non-finite sample");
        if (k >= n_skip) ts.y.push_back(bin_mean);
    }
    return ts;
}

PsdEstimate simulate_psd(const ModelBundle& mb, const SimOptions& raw) {
    const SimOptions opt = resolved_options(mb, raw);
    const TimeSeries ts = simulate(mb, opt);
    return welch_psd(ts.y, ts.dt, opt.welch_segment_length, opt.welch_overlap);
}

SpectrumGrid sampled_output_model(const ModelBundle& mb, const std::vector<double>& omega,
                                  double dt, bool include_thermal) {
    if (!(dt > 0.0)) throw Error("sampled_output_model needs dt > 0");
    SpectrumGrid g;
    g.omega = omega;
    g.value.resize(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) {
        double s_out = 1.0;
        if (mb.cavity.G0_bar != 0.0) {
            const OutputSpectrum s = output_psd(mb, omega[i]);
            const double total = include_thermal ? s.s_yy_total : s.s_yy_total - s.s_thermal_zp;
            s_out = total / s.s_zz;
        }
        const double x = 0.5 * omega[i] * dt;
        const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
        g.value[i] = 1.0 + sinc * sinc * (s_out - 1.0);
    }
    return g;
}

SpectrumComparison compare_psd(const PsdEstimate& est, const SpectrumGrid& model) {
    const std::size_t n = est.omega.size();
    if (n != model.omega.size() || n != est.psd.size() || n != est.stderr_psd.size() ||
        n != model.value.size())
        throw BandMismatch("compare_psd needs estimate and model on the same grid");
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(est.omega[i] - model.omega[i]) >
            1e-12 * std::max(1.0, std::abs(model.omega[i])))
            throw BandMismatch("compare_psd frequency grids disagree");
    if (n < 3) throw BandMismatch("compare_psd needs interior bins");
    SpectrumComparison c;
    double sum_sq = 0.0;
    std::size_t within = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double dev = est.psd[i] - model.value[i];
        const double sigma = std::abs(dev) / est.stderr_psd[i];
        const double rel = dev / model.value[i];
        sum_sq += rel * rel;
        if (sigma <= 3.0) ++within;
        c.max_abs_sigma = std::max(c.max_abs_sigma, sigma);
    }
    c.n_bins = n - 2;
    c.frac_within_3 = double(within) / double(c.n_bins);
    c.rms_rel_dev = std::sqrt(sum_sq / double(c.n_bins));
    return c;
}

}  // namespace optomech
