#pragma once

#include <cstddef>
#include <vector>

#include "oplab/config.hpp"
#include "oplab/matrix.hpp"
#include "oplab/window.hpp"

namespace oplab {

// Anticommutation-relation generators C_0..C_{m-1} on 2^m dimensions, realized
// with integer entries so the relations hold exactly:
//   C_j C_k + C_k C_j = 0,  C_j C_k* + C_k* C_j = delta_jk I.
struct CarAlgebra {
    std::size_t modes = 0;
    std::size_t dim = 0;
    std::vector<ComplexMatrix> generators;
};

CarAlgebra car_algebra(std::size_t modes);

struct CarCheck {
    double anticommutator_defect = 0.0;
    double mixed_defect = 0.0;
    bool holds = false;
};

CarCheck car_relations_check(const CarAlgebra& a, const ToleranceConfig& cfg = {});

// Block Hankel [alpha_{i+j} C_{i+j}] on N blocks of dimension 2^m, built from
// coefficients alpha_0..alpha_{K-1}. Demands m >= K + N so every referenced
// generator exists with room to spare.
struct HankelSpec {
    std::vector<complexd> alpha;
    std::size_t blocks = 0;  // N
    std::size_t modes = 0;   // m

    void validate() const;
};

ComplexMatrix hankel_gamma(const HankelSpec& spec);

// The shift of multiplicity 2^m on the same window.
WindowedOperator hankel_shift(const HankelSpec& spec);

struct IntertwiningReport {
    double defect = 0.0;  // |S* G - G S|, exact zero when K <= N
    bool holds = false;
};

IntertwiningReport intertwining_check(const HankelSpec& spec,
                                      const ToleranceConfig& cfg = {});

// Coupling block of the n-th power against n G S^(n-1); away from the window
// edge (blocks 0..N-n on both sides) the two agree for any coefficients.
struct PowerCouplingReport {
    double projected_defect = 0.0;
    double full_defect = 0.0;
    bool holds = false;
};

PowerCouplingReport gamma_power_identity_check(const HankelSpec& spec, std::size_t n,
                                               const ToleranceConfig& cfg = {});

double a_alpha(const std::vector<complexd>& alpha);  // sup_k (k+1)^2 sum_{i>=k} |a_i|^2
double b_alpha(const std::vector<complexd>& alpha);  // sum_k (k+1)^2 |a_k|^2

// [(j+1) alpha_{i+j} C_{i+j}]: the column-weighted Hankel controlling the
// nearness of the assembled operator to its diagonal part.
ComplexMatrix weighted_hankel(const HankelSpec& spec);

struct HankelBoundReport {
    double norm = 0.0;
    double bound = 0.0;  // B(alpha)^(1/2)
    bool holds = false;
};

HankelBoundReport weighted_hankel_bound_check(const HankelSpec& spec,
                                              const ToleranceConfig& cfg = {});

// [[S*, G], [0, S]] together with the per-summand ambient.
struct FoguelHankel {
    BlockUpper op;
    Ambient block_ambient;
};

FoguelHankel foguel_hankel(const HankelSpec& spec);

}  // namespace oplab
