#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace orbitforge {

inline constexpr const char* kVersion = "0.1.0";

using cplx = std::complex<double>;

/// Raised when two objects from different ambient spaces (or with
/// incompatible dimensions / anchor tables) are combined.
struct SpaceMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised for invalid arguments (p < 1, empty schedules, bad ranges).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised for evaluation outside a model's domain (e.g. a reciprocal
/// segment at local coordinate 0).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Worker cap for the embarrassingly-parallel loops. Reads
/// ORBITFORGE_THREADS; falls back to the hardware count.
int worker_count();

}  // namespace orbitforge
