#include "oplab/window.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oplab/errors.hpp"
#include "oplab/norms.hpp"

namespace oplab {

void Ambient::validate() const {
    if (block_dim == 0) throw PreconditionError("ambient: block_dim must be positive");
    if (blocks == 0) throw PreconditionError("ambient: blocks must be positive");
    if (guard >= blocks) throw PreconditionError("ambient: guard must leave a window");
}

ComplexMatrix project_to_window(const ComplexMatrix& m, const Ambient& a) {
    a.validate();
    if (m.rows() != a.dim() || m.cols() != a.dim())
        throw DimensionError("project_to_window: matrix does not match ambient");
    const std::size_t keep = a.block_dim * (a.blocks - a.guard);
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < keep; ++i)
        for (std::size_t j = 0; j < keep; ++j) out(i, j) = m(i, j);
    return out;
}

BetaSequence BetaSequence::from_weights(std::vector<double> w) {
    BetaSequence b;
    b.products_.assign(1, 1.0);
    b.products_.reserve(w.size() + 1);
    for (double x : w) {
        if (!(x > 0.0) || !std::isfinite(x))
            throw PreconditionError("beta sequence: weights must be positive and finite");
        b.products_.push_back(b.products_.back() * x);
    }
    b.weights_ = std::move(w);
    return b;
}

BetaSequence BetaSequence::constant(std::size_t count, double w) {
    return from_weights(std::vector<double>(count, w));
}

BetaSequence BetaSequence::geometric(std::size_t count, double base) {
    std::vector<double> w(count, base);
    return from_weights(std::move(w));
}

double BetaSequence::beta(std::size_t n) const {
    if (n >= products_.size()) throw PreconditionError("beta sequence: index out of range");
    return products_[n];
}

double BetaSequence::omega(std::size_t n) const {
    if (n >= weights_.size()) throw PreconditionError("beta sequence: index out of range");
    return weights_[n];
}

double BetaSequence::window_ratio_sup(std::size_t n) const {
    if (n >= products_.size())
        throw PreconditionError("beta sequence: ratio shift exceeds window");
    double sup = 0.0;
    for (std::size_t k = 0; k + n < products_.size(); ++k)
        sup = std::max(sup, products_[k + n] / products_[k]);
    return sup;
}

WindowedOperator truncated_shift(std::size_t block_dim, std::size_t blocks) {
    Ambient a{AmbientKind::truncated_l2, block_dim, blocks, 1};
    a.validate();
    ComplexMatrix s(a.dim(), a.dim());
    for (std::size_t n = 0; n + 1 < blocks; ++n)
        for (std::size_t i = 0; i < block_dim; ++i)
            s((n + 1) * block_dim + i, n * block_dim + i) = complexd(1.0, 0.0);
    return {std::move(s), a};
}

WeightedShift weighted_shift(const BetaSequence& beta, std::size_t block_dim,
                             std::size_t blocks) {
    if (blocks == 0) throw PreconditionError("weighted_shift: blocks must be positive");
    if (beta.weights().size() + 1 < blocks)
        throw PreconditionError("weighted_shift: not enough weights for the window");
    Ambient a{AmbientKind::truncated_l2, block_dim, blocks, 1};
    a.validate();
    ComplexMatrix s(a.dim(), a.dim());
    for (std::size_t n = 0; n + 1 < blocks; ++n)
        for (std::size_t i = 0; i < block_dim; ++i)
            s((n + 1) * block_dim + i, n * block_dim + i) = complexd(beta.omega(n), 0.0);
    return {{std::move(s), a}, beta, block_dim, blocks};
}

ComplexMatrix left_inverse(const WeightedShift& s) {
    const std::size_t d = s.block_dim;
    ComplexMatrix l(s.op.ambient.dim(), s.op.ambient.dim());
    for (std::size_t n = 0; n + 1 < s.blocks; ++n)
        for (std::size_t i = 0; i < d; ++i)
            l(n * d + i, (n + 1) * d + i) = complexd(1.0 / s.beta.omega(n), 0.0);
    return l;
}

void BlockUpper::validate() const {
    if (!t.square() || !v.square())
        throw DimensionError("block operator: diagonal blocks must be square");
    if (x.rows() != t.rows() || x.cols() != v.cols())
        throw DimensionError("block operator: coupling block shape mismatch");
}

ComplexMatrix BlockUpper::assemble() const {
    validate();
    const std::size_t k = t.rows(), h = v.rows();
    ComplexMatrix m(k + h, k + h);
    m.set_block(0, 0, t);
    m.set_block(0, k, x);
    m.set_block(k, k, v);
    return m;
}

BlockUpper BlockUpper::split(const ComplexMatrix& m, std::size_t top_rows) {
    if (!m.square() || top_rows > m.rows())
        throw DimensionError("block operator: bad split");
    const std::size_t k = top_rows, h = m.rows() - top_rows;
    BlockUpper r{m.block(0, 0, k, k), m.block(0, k, k, h), m.block(k, k, h, h)};
    return r;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.square() || !b.square())
        throw DimensionError("direct_sum: blocks must be square");
    ComplexMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

ComplexMatrix coupling_sum(const BlockUpper& r, std::size_t n) {
    r.validate();
    // c_{m+1} = T c_m + X V^m
    ComplexMatrix c(r.x.rows(), r.x.cols());
    ComplexMatrix vpow = ComplexMatrix::identity(r.v.rows());
    for (std::size_t m = 0; m < n; ++m) {
        c = r.t * c + r.x * vpow;
        if (m + 1 < n) vpow = vpow * r.v;
    }
    return c;
}

const char* growth_name(GrowthClass g) {
    switch (g) {
        case GrowthClass::bounded: return "bounded";
        case GrowthClass::linear: return "linear";
        case GrowthClass::exponential: return "exponential";
        case GrowthClass::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

struct Fit {
    double slope = 0.0;
    double sse = 0.0;
};

Fit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t m = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    Fit f;
    if (denom == 0.0) return f;
    f.slope = (static_cast<double>(m) * sxy - sx * sy) / denom;
    const double icept = (sy - f.slope * sx) / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double r = ys[i] - (icept + f.slope * xs[i]);
        f.sse += r * r;
    }
    return f;
}

}  // namespace

GrowthClass classify_growth(const std::vector<double>& norms, double* slope_out,
                            double* rate_out) {
    if (slope_out) *slope_out = 0.0;
    if (rate_out) *rate_out = 0.0;
    if (norms.size() < 3) return GrowthClass::inconclusive;
    for (double y : norms)
        if (!std::isfinite(y)) return GrowthClass::exponential;

    // Skip the transient; norms[i] is the value at n = i + 1.
    const std::size_t start = norms.size() >= 6 ? 2 : 0;
    std::vector<double> ns, logns, logys;
    for (std::size_t i = start; i < norms.size(); ++i) {
        if (norms[i] <= 0.0) return GrowthClass::bounded;  // nilpotent tail
        ns.push_back(static_cast<double>(i + 1));
        logns.push_back(std::log(static_cast<double>(i + 1)));
        logys.push_back(std::log(norms[i]));
    }
    if (ns.size() < 3) return GrowthClass::inconclusive;

    const Fit pow_fit = least_squares(logns, logys);
    const Fit exp_fit = least_squares(ns, logys);
    if (slope_out) *slope_out = pow_fit.slope;
    if (rate_out) *rate_out = exp_fit.slope;
    if (exp_fit.sse < pow_fit.sse && exp_fit.slope > std::log(1.05))
        return GrowthClass::exponential;
    if (pow_fit.slope > 0.5) return GrowthClass::linear;
    return GrowthClass::bounded;
}

PowerProfile power_profile(const ComplexMatrix& t, std::size_t n_max,
                           const ToleranceConfig& cfg) {
    cfg.validate();
    if (!t.square()) throw DimensionError("power_profile: matrix must be square");
    if (n_max == 0) throw PreconditionError("power_profile: n_max must be positive");
    PowerProfile p;
    p.norms.reserve(n_max);
    ComplexMatrix pw = t;
    for (std::size_t n = 1; n <= n_max; ++n) {
        if (!pw.all_finite() || pw.max_abs() > 1e150) {
            p.overflow = true;
            break;
        }
        p.norms.push_back(operator_norm(pw, cfg));
        if (n < n_max) pw = pw * t;
    }
    p.growth = classify_growth(p.norms, &p.fit_slope, &p.fit_rate);
    if (p.overflow) p.growth = GrowthClass::exponential;
    return p;
}

StructureReport analyze_structure(const WindowedOperator& w, const ToleranceConfig& cfg) {
    cfg.validate();
    w.ambient.validate();
    if (w.matrix.rows() != w.ambient.dim() || w.matrix.cols() != w.ambient.dim())
        throw DimensionError("analyze_structure: matrix does not match ambient");
    StructureReport r;
    r.norm = operator_norm(w.matrix, cfg);
    const ComplexMatrix eye = ComplexMatrix::identity(w.matrix.rows());
    const ComplexMatrix gram = w.matrix.adjoint() * w.matrix - eye;
    const ComplexMatrix cogram = w.matrix * w.matrix.adjoint() - eye;
    r.isometry_defect = operator_norm(project_to_window(gram, w.ambient), cfg);
    r.coisometry_defect = operator_norm(project_to_window(cogram, w.ambient), cfg);
    r.isometry_on_window = r.isometry_defect <= cfg.identity_tol;
    r.coisometry_on_window = r.coisometry_defect <= cfg.identity_tol;
    r.unitary_on_window = r.isometry_on_window && r.coisometry_on_window;
    r.contraction = r.norm <= 1.0 + cfg.identity_tol;
    return r;
}

}  // namespace oplab
