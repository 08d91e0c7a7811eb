#pragma once

#include <cstddef>
#include <vector>

#include "oplab/config.hpp"
#include "oplab/matrix.hpp"

namespace oplab {

// Packed LU factorization with partial pivoting. perm[i] names the row of the
// original matrix that became row i of the permuted one.
struct LuFactors {
    ComplexMatrix lu;
    std::vector<std::size_t> perm;
};

LuFactors lu_factor(const ComplexMatrix& a);

// Solve A X = B resp. A* X = B using an existing factorization.
ComplexMatrix lu_apply(const LuFactors& f, const ComplexMatrix& b);
ComplexMatrix lu_apply_adjoint(const LuFactors& f, const ComplexMatrix& b);

struct LinearSolve {
    ComplexMatrix x;
    double condition_estimate = 0.0;
};

// Factor once, solve, and attach a two-norm condition estimate. Throws
// SingularMatrixError when elimination hits a negligible pivot.
LinearSolve lu_solve(const ComplexMatrix& a, const ComplexMatrix& b,
                     const ToleranceConfig& cfg = {});

struct MinNormSolution {
    ComplexMatrix minimizer;
    double value = 0.0;
};

// Least-norm solution of A k = c for a wide full-row-rank A: k = A* (AA*)^{-1} c,
// value = |k|^2. c must be a single column.
MinNormSolution min_norm_constrained(const ComplexMatrix& a, const ComplexMatrix& c,
                                     const ToleranceConfig& cfg = {});

}  // namespace oplab
