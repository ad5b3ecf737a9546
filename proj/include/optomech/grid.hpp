#pragma once

#include <vector>

namespace optomech {

// Frequency axis plus per-frequency real values. Component breakdowns and
// complex cross-spectra get their own row types; this is the plain carrier
// used by area pipelines and file output.
struct SpectrumGrid {
    std::vector<double> omega;
    std::vector<double> value;
};

std::vector<double> linear_grid(double lo, double hi, std::size_t n);

// Multiplicative spacing; requires lo > 0.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace optomech
