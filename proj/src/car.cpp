#include "oplab/car.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "oplab/errors.hpp"
#include "oplab/norms.hpp"

namespace oplab {

CarAlgebra car_algebra(std::size_t modes) {
    if (modes == 0) throw PreconditionError("car: need at least one mode");
    if (modes > kCarModeCap) throw SizeCapError("car: mode count exceeds the cap");
    CarAlgebra a;
    a.modes = modes;
    a.dim = std::size_t{1} << modes;
    a.generators.reserve(modes);
    // C_j kills bit j and picks up the parity of the lower-index bits. Bit t of
    // a basis index is factor t counted from the most significant position.
    for (std::size_t j = 0; j < modes; ++j) {
        ComplexMatrix c(a.dim, a.dim);
        const std::size_t bit = std::size_t{1} << (modes - 1 - j);
        const std::size_t prefix_mask = j == 0 ? 0 : ~((bit << 1) - 1);
        for (std::size_t col = 0; col < a.dim; ++col) {
            if (!(col & bit)) continue;
            const std::size_t row = col & ~bit;
            const int parity = std::popcount(col & prefix_mask) & 1;
            c(row, col) = complexd(parity ? -1.0 : 1.0, 0.0);
        }
        a.generators.push_back(std::move(c));
    }
    return a;
}

CarCheck car_relations_check(const CarAlgebra& a, const ToleranceConfig& cfg) {
    cfg.validate();
    CarCheck rep;
    const ComplexMatrix eye = ComplexMatrix::identity(a.dim);
    for (std::size_t j = 0; j < a.modes; ++j)
        for (std::size_t k = j; k < a.modes; ++k) {
            const ComplexMatrix& cj = a.generators[j];
            const ComplexMatrix& ck = a.generators[k];
            rep.anticommutator_defect =
                std::max(rep.anticommutator_defect, (cj * ck + ck * cj).max_abs());
            ComplexMatrix mixed = cj * ck.adjoint() + ck.adjoint() * cj;
            if (j == k) mixed -= eye;
            rep.mixed_defect = std::max(rep.mixed_defect, mixed.max_abs());
        }
    rep.holds = rep.anticommutator_defect <= cfg.identity_tol &&
                rep.mixed_defect <= cfg.identity_tol;
    return rep;
}

void HankelSpec::validate() const {
    if (alpha.empty()) throw PreconditionError("hankel: need at least one coefficient");
    if (blocks == 0) throw PreconditionError("hankel: need at least one block");
    if (modes < alpha.size() + blocks)
        throw PreconditionError("hankel: modes must be at least K + N");
    if (modes > kCarModeCap) throw SizeCapError("hankel: mode count exceeds the cap");
}

ComplexMatrix hankel_gamma(const HankelSpec& spec) {
    spec.validate();
    const CarAlgebra a = car_algebra(spec.modes);
    const std::size_t d = a.dim, n = spec.blocks;
    ComplexMatrix g(n * d, n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t k = i + j;
            if (k >= spec.alpha.size()) continue;
            if (spec.alpha[k] == complexd(0.0, 0.0)) continue;
            ComplexMatrix blk = a.generators[k];
            blk *= spec.alpha[k];
            g.set_block(i * d, j * d, blk);
        }
    return g;
}

WindowedOperator hankel_shift(const HankelSpec& spec) {
    spec.validate();
    return truncated_shift(std::size_t{1} << spec.modes, spec.blocks);
}

IntertwiningReport intertwining_check(const HankelSpec& spec, const ToleranceConfig& cfg) {
    cfg.validate();
    const ComplexMatrix g = hankel_gamma(spec);
    const ComplexMatrix s = hankel_shift(spec).matrix;
    IntertwiningReport rep;
    rep.defect = operator_norm(s.adjoint() * g - g * s, cfg);
    rep.holds = rep.defect <= cfg.identity_tol;
    return rep;
}

PowerCouplingReport gamma_power_identity_check(const HankelSpec& spec, std::size_t n,
                                               const ToleranceConfig& cfg) {
    cfg.validate();
    if (n == 0 || n > spec.blocks)
        throw PreconditionError("hankel: power must lie in 1..blocks");
    const ComplexMatrix g = hankel_gamma(spec);
    const WindowedOperator sw = hankel_shift(spec);
    const ComplexMatrix& s = sw.matrix;

    const BlockUpper r{s.adjoint(), g, s};
    const ComplexMatrix lhs = coupling_sum(r, n);
    ComplexMatrix rhs = g * matrix_power(s, n - 1);
    rhs *= complexd(static_cast<double>(n), 0.0);

    PowerCouplingReport rep;
    const ComplexMatrix diff = lhs - rhs;
    rep.full_defect = operator_norm(diff, cfg);
    Ambient window = sw.ambient;
    window.guard = n;
    if (window.guard >= window.blocks) window.guard = window.blocks - 1;
    rep.projected_defect = operator_norm(project_to_window(diff, window), cfg);
    rep.holds = rep.projected_defect <= cfg.identity_tol;
    return rep;
}

double a_alpha(const std::vector<complexd>& alpha) {
    double sup = 0.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        double tail = 0.0;
        for (std::size_t i = k; i < alpha.size(); ++i) tail += std::norm(alpha[i]);
        const double kk = static_cast<double>(k) + 1.0;
        sup = std::max(sup, kk * kk * tail);
    }
    return sup;
}

double b_alpha(const std::vector<complexd>& alpha) {
    double sum = 0.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        const double kk = static_cast<double>(k) + 1.0;
        sum += kk * kk * std::norm(alpha[k]);
    }
    return sum;
}

ComplexMatrix weighted_hankel(const HankelSpec& spec) {
    spec.validate();
    const CarAlgebra a = car_algebra(spec.modes);
    const std::size_t d = a.dim, n = spec.blocks;
    ComplexMatrix w(n * d, n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t k = i + j;
            if (k >= spec.alpha.size()) continue;
            const complexd entry =
                spec.alpha[k] * complexd(static_cast<double>(j) + 1.0, 0.0);
            if (entry == complexd(0.0, 0.0)) continue;
            ComplexMatrix blk = a.generators[k];
            blk *= entry;
            w.set_block(i * d, j * d, blk);
        }
    return w;
}

HankelBoundReport weighted_hankel_bound_check(const HankelSpec& spec,
                                              const ToleranceConfig& cfg) {
    cfg.validate();
    HankelBoundReport rep;
    rep.norm = operator_norm(weighted_hankel(spec), cfg);
    rep.bound = std::sqrt(b_alpha(spec.alpha));
    rep.holds = rep.norm <= rep.bound + cfg.identity_tol * std::max(1.0, rep.bound);
    return rep;
}

FoguelHankel foguel_hankel(const HankelSpec& spec) {
    const WindowedOperator sw = hankel_shift(spec);
    FoguelHankel f;
    f.op = BlockUpper{sw.matrix.adjoint(), hankel_gamma(spec), sw.matrix};
    f.block_ambient = sw.ambient;
    return f;
}

}  // namespace oplab
