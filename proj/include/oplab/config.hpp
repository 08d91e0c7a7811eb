#pragma once

#include <cstddef>

#include "oplab/errors.hpp"

namespace oplab {

// Shared numerical knobs. Every tolerance is strictly positive; identity
// checks scale identity_tol by the norm of the matrices involved.
struct ToleranceConfig {
    double solve_tol = 1e-10;    // relative residual bound for linear solves
    double norm_tol = 1e-11;     // convergence tolerance for norm estimates
    double identity_tol = 1e-10; // absolute tolerance for identity checks, norm-scaled

    std::size_t norm_max_iter = 4000; // power-iteration cap before escalation/failure

    void validate() const {
        if (solve_tol <= 0.0 || norm_tol <= 0.0 || identity_tol <= 0.0)
            throw PreconditionError("ToleranceConfig: tolerances must be strictly positive");
        if (norm_max_iter == 0)
            throw PreconditionError("ToleranceConfig: norm_max_iter must be positive");
    }
};

// Kronecker-produced systems refuse to materialize beyond this many rows.
inline constexpr std::size_t kKroneckerRowCap = 4096;

// CAR generator matrices live on 2^modes dimensions; capped to keep things desk-sized.
inline constexpr std::size_t kCarModeCap = 8;

} // namespace oplab
