#pragma once

#include <stdexcept>
#include <string>

namespace optomech {

// Base for every named failure the library can raise. Catching Error is
// enough to map any library failure to a diagnostic plus exit code.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter validation failures. One failure mode per class so callers can
// test for the exact cause; validation raises at most one of these.
struct NonPositiveParameter : Error {
    using Error::Error;
};
struct ZeroDetuning : Error {
    using Error::Error;
};
struct OverdampedOscillator : Error {
    using Error::Error;
};
struct InconsistentCoupling : Error {
    using Error::Error;
};

// Numerics / pipeline failures.
struct GridTooNarrow : Error {
    using Error::Error;
};
struct DetuningNotSideband : Error {
    using Error::Error;
};
struct WindowExceedsGrid : Error {
    using Error::Error;
};
struct NegativeArea : Error {
    using Error::Error;
};
struct UnstableConfig : Error {
    using Error::Error;
};
struct NonFiniteState : Error {
    using Error::Error;
};
struct TooShort : Error {
    using Error::Error;
};
struct BandMismatch : Error {
    using Error::Error;
};

// Config-file / CLI schema failures; message names the offending key path.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace optomech
