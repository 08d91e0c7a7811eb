#pragma once

#include <cstddef>
#include <vector>

#include "oplab/config.hpp"
#include "oplab/matrix.hpp"
#include "oplab/window.hpp"

namespace oplab {

// Quadratic closeness of power orbits: the norm of the row operator
// [ (T^n - C^n) P / beta(n) ]_{n=0..N} with P the projection onto the
// subspace the inputs are restricted to. The n = 0 column vanishes.
struct NearnessReport {
    double value = 0.0;       // row norm at the deepest window
    double gram_value = 0.0;  // sqrt of |sum (1/beta^2) D_n P D_n*|, D_n = T^n - C^n
    std::vector<double> partial_values;  // row norm for N = 0..n_max
};

NearnessReport nearness_modulo(const ComplexMatrix& t, const ComplexMatrix& c,
                               const ComplexMatrix& subspace_proj,
                               const BetaSequence& beta, std::size_t n_max,
                               const ToleranceConfig& cfg = {});

// Unrestricted variant (subspace = everything).
NearnessReport nearness(const ComplexMatrix& t, const ComplexMatrix& c,
                        const BetaSequence& beta, std::size_t n_max,
                        const ToleranceConfig& cfg = {});

}  // namespace oplab
