#include "oplab/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "oplab/errors.hpp"
#include "oplab/norms.hpp"
#include "oplab/rng.hpp"

namespace oplab {

RenormModel build_renorm_model(const ComplexMatrix& t, const WeightedShift& s,
                               const ComplexMatrix& x, std::size_t max_depth,
                               double power_bound_cap, const ToleranceConfig& cfg) {
    cfg.validate();
    if (!t.square()) throw DimensionError("renorm: T must be square");
    const std::size_t kdim = t.rows();
    const std::size_t hdim = s.op.ambient.dim();
    if (x.rows() != kdim || x.cols() != hdim)
        throw DimensionError("renorm: X must map the shift space into the T space");
    if (max_depth == 0) throw PreconditionError("renorm: max_depth must be positive");
    if (!(power_bound_cap > 0.0))
        throw PreconditionError("renorm: power_bound_cap must be positive");

    RenormModel m;
    m.t = t;
    m.shift = s;
    m.x = x;
    m.max_depth = max_depth;

    const double tnorm = operator_norm(t, cfg);
    if (tnorm > 1.0 + cfg.identity_tol)
        throw PreconditionError("renorm: T must be a contraction");
    for (std::size_t n = 0; n < s.blocks; ++n)
        if (s.beta.window_ratio_sup(n) > power_bound_cap)
            throw PreconditionError("renorm: weight ratios exceed the power bound cap");

    const std::size_t nblocks = s.blocks;
    const std::size_t d = s.block_dim;
    const ComplexMatrix& sm = s.op.matrix;

    // X_n by its defining sum; the recurrence X_{n+1} = T X_n + X S^n is then
    // verified as a build-time invariant.
    m.xn.assign(nblocks, ComplexMatrix(kdim, hdim));
    {
        std::vector<ComplexMatrix> spow(nblocks), tpow(nblocks);
        spow[0] = ComplexMatrix::identity(hdim);
        tpow[0] = ComplexMatrix::identity(kdim);
        for (std::size_t j = 1; j < nblocks; ++j) {
            spow[j] = spow[j - 1] * sm;
            tpow[j] = tpow[j - 1] * t;
        }
        for (std::size_t n = 1; n < nblocks; ++n) {
            ComplexMatrix acc(kdim, hdim);
            for (std::size_t j = 0; j < n; ++j) acc += tpow[j] * x * spow[n - j - 1];
            m.xn[n] = std::move(acc);
        }
        for (std::size_t n = 0; n + 1 < nblocks; ++n) {
            const ComplexMatrix diff = m.xn[n + 1] - (t * m.xn[n] + x * spow[n]);
            m.recurrence_defect = std::max(m.recurrence_defect, diff.max_abs());
        }
    }

    // W: block column n holds X_n E_0 / beta(n), with E_0 the slot-0 embedding.
    m.w = ComplexMatrix(kdim, hdim);
    for (std::size_t n = 0; n < nblocks; ++n) {
        const ComplexMatrix head = m.xn[n].block(0, 0, kdim, d);
        ComplexMatrix scaled = head;
        scaled *= complexd(1.0 / s.beta.beta(n), 0.0);
        m.w.set_block(0, n * d, scaled);
    }
    m.coupling_constant = operator_norm(m.w, cfg);

    m.gram.reserve(max_depth + 1);
    m.gram_factors.reserve(max_depth + 1);
    ComplexMatrix g = ComplexMatrix::identity(kdim);
    ComplexMatrix tp = ComplexMatrix::identity(kdim);
    for (std::size_t depth = 0; depth <= max_depth; ++depth) {
        if (depth > 0) {
            tp = tp * t;
            g += tp * tp.adjoint();
        }
        m.gram.push_back(g);
        m.gram_factors.push_back(lu_factor(g));
    }
    return m;
}

namespace {

void check_pair(const RenormModel& m, const ComplexMatrix& k, const ComplexMatrix& h) {
    if (k.cols() != 1 || h.cols() != 1)
        throw DimensionError("renorm: k and h must be column vectors");
    if (k.rows() != m.t.rows() || h.rows() != m.shift.op.ambient.dim())
        throw DimensionError("renorm: vector sizes do not match the model");
}

}  // namespace

RenormValue renorm_value(const RenormModel& m, const ComplexMatrix& k,
                         const ComplexMatrix& h, std::size_t depth,
                         const ToleranceConfig& cfg) {
    cfg.validate();
    check_pair(m, k, h);
    if (depth >= m.gram_factors.size())
        throw PreconditionError("renorm: depth exceeds the model's max_depth");

    RenormValue out;
    out.constraint_rhs = k - m.w * h;
    const ComplexMatrix& c = out.constraint_rhs;
    out.usual_sq = norm2(k) * norm2(k) + norm2(h) * norm2(h);

    const double base = norm2(c) * norm2(c) + norm2(h) * norm2(h);
    out.depth_curve.reserve(depth + 1);
    for (std::size_t md = 0; md <= depth; ++md) {
        const ComplexMatrix y = lu_apply(m.gram_factors[md], c);
        const double part = std::max(inner(c, y).real(), 0.0);
        out.depth_curve.push_back(base + part);
        if (md == depth) {
            out.min_part = part;
            // kappa_n = T*^n y realizes the constrained minimum
            const std::size_t kd = m.t.rows();
            out.minimizer = ComplexMatrix((depth + 1) * kd, 1);
            ComplexMatrix cur = y;
            for (std::size_t n = 0; n <= depth; ++n) {
                if (n > 0) cur = m.t.adjoint() * cur;
                out.minimizer.set_block(n * kd, 0, cur);
            }
        }
    }
    out.value_sq = out.depth_curve.back();
    return out;
}

namespace {

ComplexMatrix random_pair_k(const RenormModel& m, Rng& rng) {
    return random_matrix(m.t.rows(), 1, rng);
}

// h supported on blocks 0..N-2 so the shifted image stays inside the window.
ComplexMatrix random_pair_h(const RenormModel& m, Rng& rng, bool interior) {
    ComplexMatrix h = random_matrix(m.shift.op.ambient.dim(), 1, rng);
    if (interior) {
        const std::size_t d = m.shift.block_dim;
        const std::size_t last = (m.shift.blocks - 1) * d;
        for (std::size_t i = 0; i < d; ++i) h(last + i, 0) = complexd(0.0, 0.0);
    }
    return h;
}

}  // namespace

EnvelopeReport renorm_equivalence(const RenormModel& m, std::size_t depth,
                                  std::size_t samples, std::uint64_t seed,
                                  const ToleranceConfig& cfg) {
    cfg.validate();
    if (samples == 0) throw PreconditionError("renorm: samples must be positive");
    const double c2 = m.coupling_constant * m.coupling_constant;
    EnvelopeReport rep;
    rep.lower = 1.0 / (2.0 * c2 + 3.0);
    rep.upper = std::max(4.0, 4.0 * c2 + 1.0);
    rep.samples = samples;
    Rng rng(seed);
    rep.min_ratio = std::numeric_limits<double>::infinity();
    rep.max_ratio = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const ComplexMatrix k = random_pair_k(m, rng);
        const ComplexMatrix h = random_pair_h(m, rng, false);
        const RenormValue v = renorm_value(m, k, h, depth, cfg);
        if (v.usual_sq == 0.0) continue;
        const double ratio = v.value_sq / v.usual_sq;
        rep.min_ratio = std::min(rep.min_ratio, ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    const double slack = cfg.identity_tol;
    rep.within = rep.min_ratio >= rep.lower - slack && rep.max_ratio <= rep.upper + slack;
    return rep;
}

ContractionCheck renorm_contraction_check(const RenormModel& m, std::size_t depth,
                                          std::size_t samples, std::uint64_t seed,
                                          const ToleranceConfig& cfg) {
    cfg.validate();
    if (samples == 0) throw PreconditionError("renorm: samples must be positive");
    if (depth + 1 >= m.gram_factors.size())
        throw PreconditionError("renorm: contraction check needs depth + 1 <= max_depth");
    double wmax = 0.0;
    for (double wgt : m.shift.beta.weights()) wmax = std::max(wmax, wgt);
    if (wmax > 1.0 + cfg.identity_tol)
        throw PreconditionError("renorm: contraction check needs contraction weights");

    ContractionCheck rep;
    rep.samples = samples;
    rep.bounded_by_estimate = true;
    rep.contractive = true;
    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        const ComplexMatrix k = random_pair_k(m, rng);
        const ComplexMatrix h = random_pair_h(m, rng, true);
        const RenormValue src = renorm_value(m, k, h, depth, cfg);

        const ComplexMatrix k2 = m.t * k + m.x * h;
        const ComplexMatrix h2 = m.shift.op.matrix * h;
        const RenormValue img = renorm_value(m, k2, h2, depth + 1, cfg);

        const ComplexMatrix tc = m.t * src.constraint_rhs;
        const double bound =
            norm2(tc) * norm2(tc) + norm2(h2) * norm2(h2) + src.min_part;
        const double scale = std::max(1.0, src.value_sq);
        rep.max_excess = std::max(rep.max_excess, img.value_sq - bound);
        if (img.value_sq > bound + cfg.identity_tol * scale)
            rep.bounded_by_estimate = false;
        if (src.value_sq > 0.0) {
            rep.max_image_ratio =
                std::max(rep.max_image_ratio, img.value_sq / src.value_sq);
            if (img.value_sq > src.value_sq * (1.0 + cfg.identity_tol))
                rep.contractive = false;
        }
    }
    return rep;
}

ParallelogramReport renorm_parallelogram_check(const RenormModel& m, std::size_t depth,
                                               std::size_t samples, std::uint64_t seed,
                                               const ToleranceConfig& cfg) {
    cfg.validate();
    if (samples == 0) throw PreconditionError("renorm: samples must be positive");
    ParallelogramReport rep;
    rep.samples = samples;
    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        const ComplexMatrix ku = random_pair_k(m, rng), hu = random_pair_h(m, rng, false);
        const ComplexMatrix kv = random_pair_k(m, rng), hv = random_pair_h(m, rng, false);
        const double plus = renorm_value(m, ku + kv, hu + hv, depth, cfg).value_sq;
        const double minus = renorm_value(m, ku - kv, hu - hv, depth, cfg).value_sq;
        const double u = renorm_value(m, ku, hu, depth, cfg).value_sq;
        const double v = renorm_value(m, kv, hv, depth, cfg).value_sq;
        const double scale = std::max(1.0, 2.0 * u + 2.0 * v);
        rep.max_defect =
            std::max(rep.max_defect, std::abs(plus + minus - 2.0 * u - 2.0 * v) / scale);
    }
    rep.holds = rep.max_defect <= 1e3 * cfg.norm_tol;
    return rep;
}

}  // namespace oplab
