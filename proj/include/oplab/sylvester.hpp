#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "oplab/config.hpp"
#include "oplab/matrix.hpp"
#include "oplab/window.hpp"

namespace oplab {

// Outcome of an attempt to produce Z with T Z - Z V = X.
struct SylvesterSolution {
    ComplexMatrix z;
    double residual = 0.0;                 // |T Z - Z V - X|
    double side_condition_residual = 0.0;  // |Z (I - V V*)|
    std::string method;
    bool solvable = true;
    std::string diagnostic;
    double condition_estimate = 0.0;
    std::vector<double> partial_norms;  // |Z_n| along a summation run
};

// Dense solve through the Kronecker system (I (x) T - V^t (x) I) vec Z = vec X.
// Falls back to a regularized least squares solve when elimination breaks down.
SylvesterSolution solve_sylvester_direct(const ComplexMatrix& t, const ComplexMatrix& v,
                                         const ComplexMatrix& x,
                                         const ToleranceConfig& cfg = {});

enum class SummationMode { plain, cesaro, symmetric_cesaro };

// Z_n = -sum_{j<=n} T^j X V*^(j+1), optionally Cesaro averaged. The symmetric
// mode requires T = V* and averages the two-sided sums
// sum_{j<=n} (V^(j+1) X V^j - V*^j X V*^(j+1)) / 2.
SylvesterSolution partial_sum_solution(const ComplexMatrix& t, const ComplexMatrix& v,
                                       const ComplexMatrix& x, std::size_t n_max,
                                       SummationMode mode,
                                       const ToleranceConfig& cfg = {});

enum class SumSide { right, left, symmetric };

// Boundedness of the summation criterion that governs solvability.
struct GrowthReport {
    std::vector<double> sums;  // n-th windowed sum norm, n = 0..n_max
    double sup = 0.0;
    GrowthClass growth = GrowthClass::inconclusive;
    bool bounded = false;
    double fit_slope = 0.0;
    double fit_rate = 0.0;
};

// right: |sum_{j<=n} T^j X V*^(j+1)|; left: |sum_{j<=n} T*^(j+1) X V^j|;
// symmetric: norms of the two-sided averaged sums (needs T = V*).
GrowthReport growth_condition(const ComplexMatrix& t, const ComplexMatrix& v,
                              const ComplexMatrix& x, std::size_t n_max, SumSide side,
                              const ToleranceConfig& cfg = {});

// Split X = A + F where F is annihilated by the structure (T F = 0 or F V = 0)
// and A admits an exact representation A = T D - D V with a side condition on D.
struct Decomposition {
    ComplexMatrix a;
    ComplexMatrix f;
    ComplexMatrix d;
    double split_residual = 0.0;           // |X - A - F|
    double annihilation_residual = 0.0;    // |T F| resp. |F V|
    double representation_residual = 0.0;  // |A - (T D - D V)|
    double side_residual = 0.0;            // |(I - T* T) D| resp. |D (I - V L)|
    bool zero_product_on_left = false;     // true: E R(A) = 0; false: R(A) E = 0
    double zero_product_residual = 0.0;
    double nilpotent_residual = 0.0;  // |E^2| for E = [[0, F], [0, 0]]
};

// T a coisometry: F = -(I - T* T) Z V, D = T* T Z, T F = 0.
Decomposition decompose_coisometry_case(const ComplexMatrix& t, const ComplexMatrix& v,
                                        const ComplexMatrix& x, const ComplexMatrix& z,
                                        const ToleranceConfig& cfg = {});

// V an isometry: F = T Z (I - V V*), D = Z V V*, F V = 0.
Decomposition decompose_isometry_case(const ComplexMatrix& t, const ComplexMatrix& v,
                                      const ComplexMatrix& x, const ComplexMatrix& z,
                                      const ToleranceConfig& cfg = {});

// V a weighted shift with left inverse L: F = T Z (I - V L), D = Z V L, F V = 0.
Decomposition decompose_weighted_case(const ComplexMatrix& t, const WeightedShift& s,
                                      const ComplexMatrix& x, const ComplexMatrix& z,
                                      const ToleranceConfig& cfg = {});

// Rebuild a full solution from the split data: Z = D - F L.
ComplexMatrix recompose_solution(const ComplexMatrix& d, const ComplexMatrix& f,
                                 const ComplexMatrix& l);

// Conjugation check: with L = [[I, Z], [0, I]], L R(X) L^{-1} should equal
// T (+) V when Z solves the equation. Refusal is reported, not thrown.
struct SimilarityCertificate {
    bool accepted = false;
    double conjugation_residual = 0.0;  // |L R L^{-1} - (T (+) V)|
    double solution_residual = 0.0;     // |T Z - Z V - X|
    double condition_number = 0.0;      // |L| |L^{-1}|
};

SimilarityCertificate certify_similarity(const BlockUpper& r, const ComplexMatrix& z,
                                         const ToleranceConfig& cfg = {});

}  // namespace oplab
