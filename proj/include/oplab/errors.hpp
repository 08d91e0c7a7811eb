#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oplab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

// Result would exceed a configured size cap (Kronecker systems, CAR mode count).
struct SizeCapError : Error {
    using Error::Error;
};

struct SingularMatrixError : Error {
    SingularMatrixError(const std::string& what, std::size_t pivot)
        : Error(what), pivot_index(pivot) {}
    std::size_t pivot_index;
};

// Norm estimate did not settle within the iteration cap; carries the last estimate.
struct NormConvergenceError : Error {
    NormConvergenceError(const std::string& what, double estimate)
        : Error(what), last_estimate(estimate) {}
    double last_estimate;
};

struct PreconditionError : Error {
    using Error::Error;
};

} // namespace oplab
