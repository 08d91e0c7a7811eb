#pragma once

#include <cstddef>
#include <vector>

#include "oplab/config.hpp"
#include "oplab/matrix.hpp"

namespace oplab {

// P(z) = sum_{j=0}^{d} A_j z^j with p x p matrix coefficients.
struct MatrixPolynomial {
    std::size_t p = 1;
    std::vector<ComplexMatrix> coeffs;

    void validate() const;
    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    // P_(n)(z) = sum_{j>=n} A_j z^(j-n); the zero polynomial once n exceeds d.
    MatrixPolynomial shifted(std::size_t n) const;
};

ComplexMatrix eval_poly_at_point(const MatrixPolynomial& poly, complexd z);

// P(T) = sum_j A_j (x) T^j acting on the tensor product space.
ComplexMatrix eval_poly_at_operator(const MatrixPolynomial& poly, const ComplexMatrix& t);

// With E C = 0, powers of C + E split as (C+E)^n = sum_k C^(n-k) E^k, and
// P(C+E) = sum_{k=0}^{d} P_(k)(C) (I (x) E^k). Reports the defect of that
// identity together with |E C|.
struct SumIdentityReport {
    double lhs_norm = 0.0;
    double rhs_norm = 0.0;
    double defect = 0.0;
    double ec_product_norm = 0.0;
    bool precondition_ok = false;
};

SumIdentityReport verify_sum_identity(const MatrixPolynomial& poly, const ComplexMatrix& c,
                                      const ComplexMatrix& e,
                                      const ToleranceConfig& cfg = {});

struct ZeroProductReport {
    double product_norm = 0.0;         // |E C|
    bool zero_product = false;
    std::size_t nilpotency_order = 0;  // least q with E^q = 0, or 0 if none found
    double radius = 0.0;               // spectral radius of E
};

ZeroProductReport zero_product_check(const ComplexMatrix& c, const ComplexMatrix& e,
                                     const ToleranceConfig& cfg = {});

// Partial sums of sum_{n>=0} log(n+2) |E^n| with a rigorous geometric tail
// bound when some computed power norm root falls below one.
struct SummabilityReport {
    double partial = 0.0;
    double tail_bound = 0.0;  // infinity when undecided
    bool summable = false;
    bool divergent = false;  // every computed power has norm at least one
    double radius = 0.0;
    std::size_t terms = 0;
};

SummabilityReport rota_summability(const ComplexMatrix& e, std::size_t n_max,
                                   const ToleranceConfig& cfg = {});

// Mean of |sin((n+1/2)t) / sin(t/2)| over the circle, integrated piecewise
// between the kernel zeros.
double dirichlet_l1(std::size_t n);

// sup over |z| = 1 of |P(z)|, grid scan plus local refinement.
double sup_circle_norm(const MatrixPolynomial& poly, std::size_t grid = 0);

// |P_(n)|_inf <= (1 + L1(n-1)) |P|_inf, plus the exactness of the truncation
// identity z^n P_(n)(z) = P(z) - sum_{j<n} A_j z^j on the circle.
struct ShiftBoundReport {
    double shifted_sup = 0.0;
    double base_sup = 0.0;
    double kernel_l1 = 0.0;
    double bound = 0.0;
    bool holds = false;
    double identity_defect = 0.0;
};

ShiftBoundReport shift_bound_check(const MatrixPolynomial& poly, std::size_t n,
                                   const ToleranceConfig& cfg = {});

// Jordan block [[1,1],[0,1]]: the n-th power norm sits between n and n + 2.
struct JordanBoundsReport {
    std::vector<double> norms;
    bool bounds_hold = false;
};

JordanBoundsReport jordan_block_power_bounds(std::size_t n_max,
                                             const ToleranceConfig& cfg = {});

}  // namespace oplab
