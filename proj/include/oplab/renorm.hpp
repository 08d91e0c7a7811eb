#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "oplab/config.hpp"
#include "oplab/matrix.hpp"
#include "oplab/solve.hpp"
#include "oplab/window.hpp"

namespace oplab {

// Apparatus for the equivalent Hilbert norm that turns [[T, X], [0, S]] into a
// contraction. Elements are pairs (k, h); h decomposes uniquely into its
// blocks, k into k = sum_n T^n kappa_n + sum_n X_n h_n / beta(n) with
// X_n = sum_{j<n} T^j X S^(n-j-1). The squared norm at truncation depth M is
//   |c|^2 + |h|^2 + <G_M^{-1} c, c>,
// where c = k - sum_n X_n h_n / beta(n) and G_M = sum_{n<=M} T^n T*^n.
struct RenormModel {
    ComplexMatrix t;
    WeightedShift shift;
    ComplexMatrix x;
    std::size_t max_depth = 0;

    std::vector<ComplexMatrix> xn;  // X_0 .. X_{N-1}
    ComplexMatrix w;                // row [X_n E_0 / beta(n)], maps h to the c-correction
    double coupling_constant = 0.0;   // |W|; the nearness constant of the model
    double recurrence_defect = 0.0;   // max |X_{n+1} - (T X_n + X S^n)|
    std::vector<ComplexMatrix> gram;  // G_0 .. G_max_depth
    std::vector<LuFactors> gram_factors;
};

RenormModel build_renorm_model(const ComplexMatrix& t, const WeightedShift& s,
                               const ComplexMatrix& x, std::size_t max_depth,
                               double power_bound_cap = 1e6,
                               const ToleranceConfig& cfg = {});

struct RenormValue {
    double value_sq = 0.0;
    double usual_sq = 0.0;  // |k|^2 + |h|^2
    double min_part = 0.0;  // <G_M^{-1} c, c>
    ComplexMatrix constraint_rhs;     // c
    ComplexMatrix minimizer;          // stacked kappa_0 .. kappa_M
    std::vector<double> depth_curve;  // value_sq per depth 0..M, nonincreasing
};

RenormValue renorm_value(const RenormModel& m, const ComplexMatrix& k,
                         const ComplexMatrix& h, std::size_t depth,
                         const ToleranceConfig& cfg = {});

// Sampled ratios of the new to the usual squared norm against the rigorous
// envelope [1/(2C^2+3), max(4, 4C^2+1)].
struct EnvelopeReport {
    double lower = 0.0;
    double upper = 0.0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    bool within = false;
    std::size_t samples = 0;
};

EnvelopeReport renorm_equivalence(const RenormModel& m, std::size_t depth,
                                  std::size_t samples, std::uint64_t seed,
                                  const ToleranceConfig& cfg = {});

// For contractions T and S and h supported away from the last block, the image
// under [[T, X], [0, S]] satisfies
//   value(image, M+1) <= |T c|^2 + |S h|^2 + <G_M^{-1} c, c> <= value(source, M).
struct ContractionCheck {
    double max_excess = 0.0;       // worst value(image) - intermediate bound
    double max_image_ratio = 0.0;  // worst value(image) / value(source)
    bool bounded_by_estimate = false;
    bool contractive = false;
    std::size_t samples = 0;
};

ContractionCheck renorm_contraction_check(const RenormModel& m, std::size_t depth,
                                          std::size_t samples, std::uint64_t seed,
                                          const ToleranceConfig& cfg = {});

// The depth-M norm is induced by an inner product, so the parallelogram law
// holds with equality.
struct ParallelogramReport {
    double max_defect = 0.0;  // relative defect of |u+v|^2 + |u-v|^2 = 2|u|^2 + 2|v|^2
    bool holds = false;
    std::size_t samples = 0;
};

ParallelogramReport renorm_parallelogram_check(const RenormModel& m, std::size_t depth,
                                               std::size_t samples, std::uint64_t seed,
                                               const ToleranceConfig& cfg = {});

}  // namespace oplab
