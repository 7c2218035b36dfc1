#pragma once

#include <stdexcept>
#include <string>

namespace irsim {

// Mismatched or impossible array dimensions for the requested operation.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Non-physical or out-of-range configuration value.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerically rank-deficient least-squares system, e.g. an ill-conditioned
// random training design.
struct SingularSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reflection coefficient violating the unit-modulus constraint.
struct ReflectionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Zadoff-Chu root not coprime to the sequence length.
struct RootError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Pilot symbol too short for the number of coefficients to estimate.
struct InsufficientLengthError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Accumulated channel power is zero; normalization impossible.
struct DegenerateChannelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File could not be opened or written.
struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace irsim
