#pragma once

#include "oplab/config.hpp"
#include "oplab/matrix.hpp"

namespace oplab {

// Largest singular value, estimated by power iteration on the Gram matrix
// (the smaller of A*A and AA*), all-ones start plus one seeded random restart.
// The returned value never undershoots ||Ax||/||x|| for any probe used.
// Throws NormConvergenceError when the iteration cap is hit without settling.
double operator_norm(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

struct SpectralRadiusEstimate {
    double value = 0.0;
    // true: estimation overflowed and only "radius >= value" can be asserted.
    bool lower_bound_only = false;
    std::size_t squarings = 0;
};

// Gelfand limit ||A^{2^k}||^{1/2^k}, squared in log space until the relative
// change drops below norm_tol. Each iterate sits above the true radius (up to
// the norm estimator's own bias).
SpectralRadiusEstimate spectral_radius(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

} // namespace oplab
