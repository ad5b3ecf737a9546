#pragma once

#include <cstdint>
#include <vector>

#include "optomech/grid.hpp"
#include "optomech/model.hpp"
#include "optomech/welch.hpp"

namespace optomech {

struct SimOptions {
    double dt = 0.0;               // <= 0: derived, 64 samples per fastest cycle
    double duration = 0.0;         // <= 0: derived, 500 * 2 pi / kappa_m
    double transient_skip = -1.0;  // < 0: derived, 50 / kappa_m
    std::uint64_t seed = 1;
    bool thermal_drive = true;     // include the mechanical bath force channel
    std::size_t welch_segment_length = std::size_t(1) << 15;
    double welch_overlap = 0.5;
};

// Fills the derived fields and validates: the sample spacing must resolve
// the fastest model rate with at least 40 samples per cycle
// (UnstableConfig) and the record must span at least 200 mechanical
// linewidth times 2 pi / kappa_m (TooShort).
SimOptions resolved_options(const ModelBundle& mb, SimOptions opt);

struct TimeSeries {
    double dt = 0.0;
    std::vector<double> y;  // bin-averaged homodyne record, output units
};

// Time-domain stochastic reference for the analytic spectra. Propagates the
// oscillator plus two cavity copies exactly over each sample bin (matrix
// exponential and exact discrete noise covariance), records the bin average
// of the homodyne output. One cavity copy carries the displacement signal,
// the other sources the back-action force from the same incident vacuum, so
// the measurement back-action correlations survive while the coupling-
// induced modification of the mechanical response (which the analytic model
// also drops) stays out. Three independent, deterministically seeded noise
// streams drive the two vacuum quadratures and the bath force; G0_bar = 0
// is allowed here and produces the bare vacuum record.
TimeSeries simulate(const ModelBundle& mb, const SimOptions& opt);

// simulate() followed by welch_psd with the options' Welch settings.
PsdEstimate simulate_psd(const ModelBundle& mb, const SimOptions& opt);

// Analytic prediction for the bin-averaged sampled record,
//   1 + sinc^2(w dt / 2) (s_yy_total(w) / s_zz(w) - 1),
// flat 1 when the probe is off (G0_bar = 0). include_thermal = false drops
// the bath-force part, matching simulate with thermal_drive = false.
SpectrumGrid sampled_output_model(const ModelBundle& mb, const std::vector<double>& omega,
                                  double dt, bool include_thermal = true);

struct SpectrumComparison {
    std::size_t n_bins = 0;       // interior bins entering the statistics
    double frac_within_3 = 0.0;   // fraction within 3 standard errors
    double rms_rel_dev = 0.0;     // rms of (estimate - model) / model
    double max_abs_sigma = 0.0;   // worst |estimate - model| / stderr
};

// Bin-by-bin comparison with DC and Nyquist excluded. The estimate and the
// model must share the frequency grid to 1e-12 (BandMismatch).
SpectrumComparison compare_psd(const PsdEstimate& est, const SpectrumGrid& model);

}  // namespace optomech
