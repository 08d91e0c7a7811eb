#include "oplab/nearness.hpp"

#include <algorithm>
#include <cmath>

#include "oplab/errors.hpp"
#include "oplab/norms.hpp"

namespace oplab {

namespace {

void check_projection(const ComplexMatrix& p, const ToleranceConfig& cfg) {
    if (!p.square()) throw DimensionError("nearness: projection must be square");
    const double herm = (p - p.adjoint()).max_abs();
    const double idem = (p * p - p).max_abs();
    if (herm > cfg.identity_tol || idem > cfg.identity_tol)
        throw PreconditionError("nearness: subspace map must be an orthogonal projection");
}

}  // namespace

NearnessReport nearness_modulo(const ComplexMatrix& t, const ComplexMatrix& c,
                               const ComplexMatrix& subspace_proj,
                               const BetaSequence& beta, std::size_t n_max,
                               const ToleranceConfig& cfg) {
    cfg.validate();
    if (!t.square() || !c.square() || t.rows() != c.rows())
        throw DimensionError("nearness: operators must be square and matched");
    if (subspace_proj.rows() != t.rows())
        throw DimensionError("nearness: projection size mismatch");
    check_projection(subspace_proj, cfg);
    if (beta.levels() <= n_max)
        throw PreconditionError("nearness: beta sequence shorter than the window");

    const std::size_t m = t.rows();
    ComplexMatrix row(m, (n_max + 1) * m);
    ComplexMatrix gram(m, m);
    ComplexMatrix tp = ComplexMatrix::identity(m);
    ComplexMatrix cp = ComplexMatrix::identity(m);

    NearnessReport rep;
    rep.partial_values.reserve(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (n > 0) {
            tp = tp * t;
            cp = cp * c;
        }
        ComplexMatrix col = (tp - cp) * subspace_proj;
        col *= complexd(1.0 / beta.beta(n), 0.0);
        row.set_block(0, n * m, col);
        gram += col * col.adjoint();
        rep.partial_values.push_back(
            operator_norm(row.block(0, 0, m, (n + 1) * m), cfg));
    }
    rep.value = rep.partial_values.back();
    rep.gram_value = std::sqrt(operator_norm(gram, cfg));
    return rep;
}

NearnessReport nearness(const ComplexMatrix& t, const ComplexMatrix& c,
                        const BetaSequence& beta, std::size_t n_max,
                        const ToleranceConfig& cfg) {
    return nearness_modulo(t, c, ComplexMatrix::identity(t.rows()), beta, n_max, cfg);
}

}  // namespace oplab
