#include "oplab/sylvester.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "oplab/errors.hpp"
#include "oplab/norms.hpp"
#include "oplab/solve.hpp"

namespace oplab {

namespace {

void check_equation_shapes(const ComplexMatrix& t, const ComplexMatrix& v,
                           const ComplexMatrix& x) {
    if (!t.square() || !v.square())
        throw DimensionError("sylvester: T and V must be square");
    if (x.rows() != t.rows() || x.cols() != v.rows())
        throw DimensionError("sylvester: X must be |T| by |V|");
}

double defect_norm(const ComplexMatrix& t, const ComplexMatrix& v,
                   const ComplexMatrix& x, const ComplexMatrix& z,
                   const ToleranceConfig& cfg) {
    return operator_norm(t * z - z * v - x, cfg);
}

double side_norm(const ComplexMatrix& v, const ComplexMatrix& z,
                 const ToleranceConfig& cfg) {
    const ComplexMatrix proj = ComplexMatrix::identity(v.rows()) - v * v.adjoint();
    return operator_norm(z * proj, cfg);
}

}  // namespace

SylvesterSolution solve_sylvester_direct(const ComplexMatrix& t, const ComplexMatrix& v,
                                         const ComplexMatrix& x,
                                         const ToleranceConfig& cfg) {
    cfg.validate();
    check_equation_shapes(t, v, x);
    const std::size_t k = t.rows(), h = v.rows();
    if (k * h > kKroneckerRowCap)
        throw SizeCapError("sylvester: Kronecker system exceeds the size cap");

    const ComplexMatrix m = kron(ComplexMatrix::identity(h), t) -
                            kron(v.transpose(), ComplexMatrix::identity(k));
    const ComplexMatrix rhs = vec(x);

    SylvesterSolution out;
    try {
        LinearSolve s = lu_solve(m, rhs, cfg);
        out.z = unvec(s.x, k, h);
        out.method = "direct";
        out.condition_estimate = s.condition_estimate;
        if (s.condition_estimate > 1.0 / cfg.solve_tol)
            out.diagnostic =
                "system is near singular; the spectra of T and V likely intersect";
    } catch (const SingularMatrixError&) {
        // Tikhonov-regularized normal equations.
        const double mu = cfg.solve_tol * std::max(operator_norm(m, cfg), 1.0);
        ComplexMatrix normal = m.adjoint() * m;
        for (std::size_t i = 0; i < normal.rows(); ++i)
            normal(i, i) += complexd(mu * mu, 0.0);
        LinearSolve s = lu_solve(normal, m.adjoint() * rhs, cfg);
        out.z = unvec(s.x, k, h);
        out.method = "least_squares";
        out.condition_estimate = s.condition_estimate;
        out.diagnostic =
            "singular system; returned the regularized least squares solution, "
            "the spectra of T and V intersect";
    }
    out.residual = defect_norm(t, v, x, out.z, cfg);
    out.side_condition_residual = side_norm(v, out.z, cfg);
    const double scale = std::max(1.0, x.frobenius_norm());
    out.solvable = out.residual <= std::sqrt(cfg.solve_tol) * scale;
    return out;
}

namespace {

std::vector<ComplexMatrix> symmetric_partials(const ComplexMatrix& v,
                                              const ComplexMatrix& x,
                                              std::size_t n_max) {
    const ComplexMatrix vs = v.adjoint();
    // term_j = (V^(j+1) X V^j - V*^j X V*^(j+1)) / 2
    ComplexMatrix fwd = v * x;          // V^(j+1) X V^j, j = 0
    ComplexMatrix bwd = x * vs;         // V*^j X V*^(j+1), j = 0
    std::vector<ComplexMatrix> sums;
    ComplexMatrix acc(x.rows(), x.cols());
    for (std::size_t j = 0; j <= n_max; ++j) {
        ComplexMatrix term = fwd - bwd;
        term *= complexd(0.5, 0.0);
        acc += term;
        sums.push_back(acc);
        if (j < n_max) {
            fwd = v * fwd * v;
            bwd = vs * bwd * vs;
        }
    }
    return sums;
}

std::vector<ComplexMatrix> right_partials(const ComplexMatrix& t, const ComplexMatrix& v,
                                          const ComplexMatrix& x, std::size_t n_max) {
    const ComplexMatrix vs = v.adjoint();
    ComplexMatrix term = x * vs;  // T^j X V*^(j+1), j = 0
    std::vector<ComplexMatrix> sums;
    ComplexMatrix acc(x.rows(), x.cols());
    for (std::size_t j = 0; j <= n_max; ++j) {
        acc += term;
        sums.push_back(acc);
        if (j < n_max) term = t * term * vs;
    }
    return sums;
}

}  // namespace

SylvesterSolution partial_sum_solution(const ComplexMatrix& t, const ComplexMatrix& v,
                                       const ComplexMatrix& x, std::size_t n_max,
                                       SummationMode mode, const ToleranceConfig& cfg) {
    cfg.validate();
    check_equation_shapes(t, v, x);
    SylvesterSolution out;

    std::vector<ComplexMatrix> sums;
    if (mode == SummationMode::symmetric_cesaro) {
        if (t.rows() != v.rows() ||
            operator_norm(t - v.adjoint(), cfg) > cfg.identity_tol)
            throw PreconditionError("partial_sum_solution: symmetric mode needs T = V*");
        sums = symmetric_partials(v, x, n_max);
        out.method = "partial_sum_symmetric";
    } else {
        sums = right_partials(t, v, x, n_max);
        for (ComplexMatrix& s : sums) s *= complexd(-1.0, 0.0);
        out.method = mode == SummationMode::cesaro ? "partial_sum_cesaro" : "partial_sum";
    }

    out.partial_norms.reserve(sums.size());
    for (const ComplexMatrix& s : sums) out.partial_norms.push_back(operator_norm(s, cfg));

    if (mode == SummationMode::plain) {
        out.z = sums.back();
    } else {
        ComplexMatrix avg(x.rows(), x.cols());
        for (const ComplexMatrix& s : sums) avg += s;
        avg *= complexd(1.0 / static_cast<double>(sums.size()), 0.0);
        out.z = std::move(avg);
    }

    double slope = 0.0, rate = 0.0;
    const GrowthClass g = classify_growth(out.partial_norms, &slope, &rate);
    if (g == GrowthClass::exponential || g == GrowthClass::linear) {
        out.solvable = false;
        out.diagnostic = std::string("partial sums diverge (") + growth_name(g) + ")";
    }
    out.residual = defect_norm(t, v, x, out.z, cfg);
    out.side_condition_residual = side_norm(v, out.z, cfg);
    return out;
}

GrowthReport growth_condition(const ComplexMatrix& t, const ComplexMatrix& v,
                              const ComplexMatrix& x, std::size_t n_max, SumSide side,
                              const ToleranceConfig& cfg) {
    cfg.validate();
    check_equation_shapes(t, v, x);
    GrowthReport rep;
    std::vector<ComplexMatrix> sums;
    switch (side) {
        case SumSide::right:
            sums = right_partials(t, v, x, n_max);
            break;
        case SumSide::left: {
            // sum_{j<=n} T*^(j+1) X V^j
            const ComplexMatrix ts = t.adjoint();
            ComplexMatrix term = ts * x;
            ComplexMatrix acc(x.rows(), x.cols());
            for (std::size_t j = 0; j <= n_max; ++j) {
                acc += term;
                sums.push_back(acc);
                if (j < n_max) term = ts * term * v;
            }
            break;
        }
        case SumSide::symmetric:
            if (t.rows() != v.rows() ||
                operator_norm(t - v.adjoint(), cfg) > cfg.identity_tol)
                throw PreconditionError("growth_condition: symmetric side needs T = V*");
            sums = symmetric_partials(v, x, n_max);
            break;
    }
    rep.sums.reserve(sums.size());
    for (const ComplexMatrix& s : sums) {
        const double n = operator_norm(s, cfg);
        rep.sums.push_back(n);
        rep.sup = std::max(rep.sup, n);
    }
    rep.growth = classify_growth(rep.sums, &rep.fit_slope, &rep.fit_rate);
    rep.bounded = rep.growth == GrowthClass::bounded;
    return rep;
}

namespace {

Decomposition finish_decomposition(const ComplexMatrix& t, const ComplexMatrix& v,
                                   const ComplexMatrix& x, Decomposition dec,
                                   bool annihilate_left, const ComplexMatrix& side_gap,
                                   bool gap_on_left, const ToleranceConfig& cfg) {
    dec.split_residual = operator_norm(x - dec.a - dec.f, cfg);
    dec.annihilation_residual = annihilate_left ? operator_norm(t * dec.f, cfg)
                                                : operator_norm(dec.f * v, cfg);
    dec.representation_residual = operator_norm(dec.a - (t * dec.d - dec.d * v), cfg);
    dec.side_residual = gap_on_left ? operator_norm(side_gap * dec.d, cfg)
                                    : operator_norm(dec.d * side_gap, cfg);

    // E = [[0, F], [0, 0]] inside the assembled block operator.
    BlockUpper ra{t, dec.a, v};
    BlockUpper ef{ComplexMatrix(t.rows(), t.cols()), dec.f,
                  ComplexMatrix(v.rows(), v.cols())};
    const ComplexMatrix e = ef.assemble();
    const ComplexMatrix r = ra.assemble();
    dec.zero_product_on_left = !annihilate_left;
    dec.zero_product_residual = dec.zero_product_on_left ? operator_norm(e * r, cfg)
                                                         : operator_norm(r * e, cfg);
    dec.nilpotent_residual = operator_norm(e * e, cfg);
    return dec;
}

}  // namespace

Decomposition decompose_coisometry_case(const ComplexMatrix& t, const ComplexMatrix& v,
                                        const ComplexMatrix& x, const ComplexMatrix& z,
                                        const ToleranceConfig& cfg) {
    cfg.validate();
    check_equation_shapes(t, v, x);
    if (z.rows() != x.rows() || z.cols() != x.cols())
        throw DimensionError("decompose: Z must match X");
    const ComplexMatrix gap = ComplexMatrix::identity(t.rows()) - t.adjoint() * t;
    Decomposition dec;
    dec.f = gap * z * v;
    dec.f *= complexd(-1.0, 0.0);
    dec.a = x - dec.f;
    dec.d = t.adjoint() * t * z;
    return finish_decomposition(t, v, x, std::move(dec), /*annihilate_left=*/true, gap,
                                /*gap_on_left=*/true, cfg);
}

Decomposition decompose_isometry_case(const ComplexMatrix& t, const ComplexMatrix& v,
                                      const ComplexMatrix& x, const ComplexMatrix& z,
                                      const ToleranceConfig& cfg) {
    cfg.validate();
    check_equation_shapes(t, v, x);
    if (z.rows() != x.rows() || z.cols() != x.cols())
        throw DimensionError("decompose: Z must match X");
    const ComplexMatrix gap = ComplexMatrix::identity(v.rows()) - v * v.adjoint();
    Decomposition dec;
    dec.f = t * z * gap;
    dec.a = x - dec.f;
    dec.d = z * v * v.adjoint();
    return finish_decomposition(t, v, x, std::move(dec), /*annihilate_left=*/false, gap,
                                /*gap_on_left=*/false, cfg);
}

Decomposition decompose_weighted_case(const ComplexMatrix& t, const WeightedShift& s,
                                      const ComplexMatrix& x, const ComplexMatrix& z,
                                      const ToleranceConfig& cfg) {
    cfg.validate();
    const ComplexMatrix& v = s.op.matrix;
    check_equation_shapes(t, v, x);
    if (z.rows() != x.rows() || z.cols() != x.cols())
        throw DimensionError("decompose: Z must match X");
    const ComplexMatrix l = left_inverse(s);
    const ComplexMatrix gap = ComplexMatrix::identity(v.rows()) - v * l;
    Decomposition dec;
    dec.f = t * z * gap;
    dec.a = x - dec.f;
    dec.d = z * v * l;
    return finish_decomposition(t, v, x, std::move(dec), /*annihilate_left=*/false, gap,
                                /*gap_on_left=*/false, cfg);
}

ComplexMatrix recompose_solution(const ComplexMatrix& d, const ComplexMatrix& f,
                                 const ComplexMatrix& l) {
    return d - f * l;
}

SimilarityCertificate certify_similarity(const BlockUpper& r, const ComplexMatrix& z,
                                         const ToleranceConfig& cfg) {
    cfg.validate();
    r.validate();
    if (z.rows() != r.x.rows() || z.cols() != r.x.cols())
        throw DimensionError("certify_similarity: Z must match the coupling block");

    const std::size_t k = r.t.rows(), h = r.v.rows();
    ComplexMatrix lmat = ComplexMatrix::identity(k + h);
    lmat.set_block(0, k, z);
    ComplexMatrix linv = ComplexMatrix::identity(k + h);
    {
        ComplexMatrix neg = z;
        neg *= complexd(-1.0, 0.0);
        linv.set_block(0, k, neg);
    }

    const ComplexMatrix rm = r.assemble();
    const ComplexMatrix conj = lmat * rm * linv;
    const ComplexMatrix target = direct_sum(r.t, r.v);

    SimilarityCertificate cert;
    cert.conjugation_residual = operator_norm(conj - target, cfg);
    cert.solution_residual = operator_norm(r.t * z - z * r.v - r.x, cfg);
    cert.condition_number = operator_norm(lmat, cfg) * operator_norm(linv, cfg);
    const double scale = std::max(1.0, operator_norm(rm, cfg));
    cert.accepted = cert.conjugation_residual <= cfg.identity_tol * scale;
    return cert;
}

}  // namespace oplab
