#pragma once

#include <string>
#include <vector>

#include "optomech/model.hpp"

namespace optomech {

struct CheckResult {
    std::string name;
    std::string note;   // regime substitutions applied, empty when none
    double deviation;   // worst observed deviation, same units as bound
    double bound;       // pass threshold
    bool passed;
};

// Cross-checks the closed-form spectra against the identities that pin them
// down: the Heisenberg floor, the commutator kernels, the integrated
// zero-point variance, the imprecision/back-action correlation sum rule, and
// the quantum-limit ratio forms. Runs on the validated bundle, substituting
// a canonical regime (and saying so in the note) where an identity needs one
// (zero occupancy, narrow line). flip_correlation_sign negates the
// correlation integrand in the sum-rule check only; it exists to prove the
// check pipeline can fail.
std::vector<CheckResult> run_invariant_checks(const ModelBundle& mb,
                                              bool flip_correlation_sign = false);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace optomech
