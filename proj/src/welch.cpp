#include "optomech/welch.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "optomech/errors.hpp"

namespace optomech {

void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw Error("fft_radix2 needs a power-of-two size");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    // One twiddle table at the finest stride serves every level.
    std::vector<std::complex<double>> tw(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
        tw[k] = std::polar(1.0, -2.0 * std::numbers::pi * double(k) / double(n));
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * tw[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

PsdEstimate welch_psd(const std::vector<double>& samples, double dt,
                      std::size_t segment_length, double overlap) {
    if (!(dt > 0.0)) throw ConfigError("welch_psd needs dt > 0");
    const std::size_t L = segment_length;
    if (L < 16 || (L & (L - 1)) != 0)
        throw ConfigError("welch segment length must be a power of two >= 16");
    if (!(overlap >= 0.0) || !(overlap <= 0.95))
        throw ConfigError("welch overlap must lie in [0, 0.95]");
    std::size_t hop = std::size_t(std::llround(double(L) * (1.0 - overlap)));
    if (hop == 0) hop = 1;
    const std::size_t n = samples.size();
    const std::size_t K = n < L ? 0 : (n - L) / hop + 1;
    if (K < 4) throw TooShort("welch_psd needs at least 4 segments");

    std::vector<double> window(L);
    double power_sum = 0.0;
    for (std::size_t j = 0; j < L; ++j) {
        window[j] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * double(j) / double(L)));
        power_sum += window[j] * window[j];
    }

    PsdEstimate est;
    est.dt = dt;
    est.segments = K;
    est.omega.resize(L / 2 + 1);
    est.psd.assign(L / 2 + 1, 0.0);
    est.stderr_psd.resize(L / 2 + 1);
    for (std::size_t j = 0; j <= L / 2; ++j)
        est.omega[j] = 2.0 * std::numbers::pi * double(j) / (double(L) * dt);

    std::vector<std::complex<double>> buf(L);
    for (std::size_t k = 0; k < K; ++k) {
        const double* seg = samples.data() + k * hop;
        for (std::size_t j = 0; j < L; ++j) buf[j] = seg[j] * window[j];
        fft_radix2(buf);
        for (std::size_t j = 0; j <= L / 2; ++j) est.psd[j] += std::norm(buf[j]);
    }
    const double interior_scale = 2.0 * dt / (power_sum * double(K));
    for (std::size_t j = 0; j <= L / 2; ++j) {
        const double scale = (j == 0 || j == L / 2) ? 0.5 * interior_scale : interior_scale;
        est.psd[j] *= scale;
        est.stderr_psd[j] = est.psd[j] / std::sqrt(double(K));
    }
    return est;
}

}  // namespace optomech
