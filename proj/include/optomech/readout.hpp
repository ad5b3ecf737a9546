#pragma once

#include <complex>

#include "optomech/model.hpp"

namespace optomech {

// Linear response of the detuned readout at frequency w. The measured
// displacement record is z = c_z1 v1 + c_z2 v2 + x and the back-action
// force on the oscillator is F = c_f1 v1 + c_f2 v2, with v1, v2 the two
// incident vacuum quadratures. c_z1, c_z2 are real; c_f1, c_f2 share the
// cavity pole pair.
struct TransferCoefficients {
    double c_z1;
    double c_z2;
    std::complex<double> c_f1;
    std::complex<double> c_f2;
};

TransferCoefficients transfer_coefficients(const ModelBundle& mb, double omega);

// Imprecision floor S_zz = c_z1^2 + c_z2^2, closed form
//   [(D^2 - kr^2/4 - w^2)^2 + kr^2 D^2] / (2 kr G0^2 D^2).
double imprecision_psd(const ModelBundle& mb, double omega);

// Back-action force noise S_FF = |c_f1|^2 + |c_f2|^2, closed form
//   2 hbar^2 G0^2 kr (kr^2/4 + w^2 + D^2) / [(D^2 - kr^2/4 - w^2)^2 + kr^2 D^2].
double back_action_psd(const ModelBundle& mb, double omega);

// Imprecision/back-action cross spectrum S_zF = c_z1 conj(c_f1) +
// c_z2 conj(c_f2); collapses to hbar (kr/2 - i w) / D, flat in magnitude
// across the cavity line.
std::complex<double> correlation_psd(const ModelBundle& mb, double omega);

struct HeisenbergProduct {
    double product;     // S_zz * S_FF
    double cross;       // |S_zF|^2
    double difference;  // product - cross; equals hbar^2 for every parameter set
};

// Uncertainty-relation floor of the readout chain, evaluated in extended
// precision so the cancellation down to hbar^2 survives extreme parameters.
HeisenbergProduct heisenberg_product(const ModelBundle& mb, double omega);

struct CommutatorKernels {
    std::complex<double> k_zz;  // i (c_z1 conj(c_z2) - c_z2 conj(c_z1)); vanishes
    std::complex<double> k_zf;  // i (c_z1 conj(c_f2) - c_z2 conj(c_f1)); equals -i hbar
};

// Antisymmetrized two-channel kernels of the measurement chain. Their fixed
// values (0 and -i hbar) are what forces the Heisenberg floor above.
CommutatorKernels commutator_kernels(const ModelBundle& mb, double omega);

struct OutputSpectrum {
    double s_zz;          // imprecision floor
    double corr_term;     // 2 Re[conj(chi) S_zF]
    double s_ba;          // |chi|^2 S_FF, displacement referred
    double s_thermal_zp;  // |chi|^2 bath force noise
    double s_yy_total;    // sum of the four
};

// Total displacement-referred output spectrum and its decomposition.
OutputSpectrum output_psd(const ModelBundle& mb, double omega);

// Lorentzian limit of the total output spectrum for a sideband-resolved
// readout parked at detuning = +/- w_m: flat floor kr / (2 G0^2) plus a
// mechanical line of weight 2 n_occ (detuning +w_m) or 2 n_occ + 2
// (detuning -w_m). Throws DetuningNotSideband unless |detuning| = w_m.
double resolved_sideband_output_psd(const ModelBundle& mb, double omega);

}  // namespace optomech
