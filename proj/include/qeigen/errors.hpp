#pragma once

#include <stdexcept>
#include <string>

namespace qeigen {

// Validation errors (bad inputs, malformed files, contract violations the
// caller can fix). The CLI maps these to exit code 2.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failures (iteration budgets, missing brackets). Exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : ValidationError {
    using ValidationError::ValidationError;
};
struct DimensionMismatch : ValidationError {
    using ValidationError::ValidationError;
};
struct IndexOutOfRange : ValidationError {
    using ValidationError::ValidationError;
};
struct OutOfRange : ValidationError {
    using ValidationError::ValidationError;
};
struct InvalidNorm : ValidationError {
    using ValidationError::ValidationError;
};
struct InvalidInput : ValidationError {
    using ValidationError::ValidationError;
};
struct BitWidthMismatch : ValidationError {
    using ValidationError::ValidationError;
};
struct TooManyQubits : ValidationError {
    using ValidationError::ValidationError;
};
struct DimNotPowerOfTwo : ValidationError {
    using ValidationError::ValidationError;
};
struct ParseError : ValidationError {
    using ValidationError::ValidationError;
};
struct InterfaceMisaligned : ValidationError {
    using ValidationError::ValidationError;
};

struct NoConvergence : NumericalError {
    using NumericalError::NumericalError;
};
struct NoBracket : NumericalError {
    using NumericalError::NumericalError;
};
struct NoEigenvalueInHalf : NumericalError {
    using NumericalError::NumericalError;
};
struct PreconditionViolated : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace qeigen
