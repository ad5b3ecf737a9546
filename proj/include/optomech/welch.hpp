#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace optomech {

// Forward FFT, in place, unnormalized; size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& a);

struct PsdEstimate {
    double dt = 0.0;
    std::size_t segments = 0;        // number of averaged segments K
    std::vector<double> omega;       // 2 pi j / (L dt), j = 0 .. L/2
    std::vector<double> psd;         // single sided, units of sample^2 * time
    std::vector<double> stderr_psd;  // psd / sqrt(K)
};

// Welch average of Hann-windowed periodograms. Single sided: interior bins
// carry (2 dt / U) |X|^2, the DC and Nyquist bins (dt / U) |X|^2, with
// U the window power sum. The input is taken as zero mean (the simulated
// records here are); no mean is removed. Throws ConfigError for a segment
// length that is not a power of two >= 16 or an overlap outside [0, 0.95],
// TooShort when fewer than 4 segments fit.
PsdEstimate welch_psd(const std::vector<double>& samples, double dt,
                      std::size_t segment_length, double overlap);

}  // namespace optomech
