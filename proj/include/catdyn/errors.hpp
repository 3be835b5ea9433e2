// errors.hpp — exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace catdyn {

// Base for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The two coherent components of a mode are too close: the two-dimensional
// orthogonal basis does not exist.
struct DegenerateSuperposition : Error {
    using Error::Error;
};

// All superposition weights vanish; the state cannot be normalized.
struct ZeroState : Error {
    using Error::Error;
};

// Matrix handed to the Hermitian eigensolver is not Hermitian within tolerance.
struct NotHermitian : Error {
    using Error::Error;
};

// A density matrix failed its construction invariants (Hermiticity / unit trace).
struct InvalidDensityMatrix : Error {
    using Error::Error;
};

// Requested pair of subsystem labels is not a valid bipartition.
struct InvalidSubsystemPair : Error {
    using Error::Error;
};

// Fock-space truncation cannot represent the requested coherent state.
struct CutoffTooSmall : Error {
    using Error::Error;
};

// Integration step violates the stability bound or fails the halving test.
struct StepTooLarge : Error {
    using Error::Error;
};

// Integrated state left the coherent-component subspace beyond tolerance.
struct LeakageExceeded : Error {
    using Error::Error;
};

// Run configuration is malformed.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace catdyn
