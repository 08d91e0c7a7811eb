#include "oplab/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "oplab/errors.hpp"
#include "oplab/norms.hpp"

namespace oplab {

void MatrixPolynomial::validate() const {
    if (p == 0) throw PreconditionError("polynomial: coefficient size must be positive");
    if (coeffs.empty()) throw PreconditionError("polynomial: needs at least one coefficient");
    for (const ComplexMatrix& a : coeffs)
        if (a.rows() != p || a.cols() != p)
            throw DimensionError("polynomial: coefficient shape mismatch");
}

MatrixPolynomial MatrixPolynomial::shifted(std::size_t n) const {
    validate();
    MatrixPolynomial out;
    out.p = p;
    if (n >= coeffs.size()) {
        out.coeffs.emplace_back(p, p);
        return out;
    }
    out.coeffs.assign(coeffs.begin() + static_cast<std::ptrdiff_t>(n), coeffs.end());
    return out;
}

ComplexMatrix eval_poly_at_point(const MatrixPolynomial& poly, complexd z) {
    poly.validate();
    // Horner on matrix coefficients.
    ComplexMatrix acc = poly.coeffs.back();
    for (std::size_t j = poly.coeffs.size() - 1; j-- > 0;) {
        acc *= z;
        acc += poly.coeffs[j];
    }
    return acc;
}

ComplexMatrix eval_poly_at_operator(const MatrixPolynomial& poly, const ComplexMatrix& t) {
    poly.validate();
    if (!t.square()) throw DimensionError("eval_poly_at_operator: T must be square");
    ComplexMatrix acc = kron(poly.coeffs[0], ComplexMatrix::identity(t.rows()));
    ComplexMatrix tpow = ComplexMatrix::identity(t.rows());
    for (std::size_t j = 1; j < poly.coeffs.size(); ++j) {
        tpow = tpow * t;
        acc += kron(poly.coeffs[j], tpow);
    }
    return acc;
}

SumIdentityReport verify_sum_identity(const MatrixPolynomial& poly, const ComplexMatrix& c,
                                      const ComplexMatrix& e, const ToleranceConfig& cfg) {
    cfg.validate();
    poly.validate();
    if (!c.square() || !e.square() || c.rows() != e.rows())
        throw DimensionError("verify_sum_identity: C and E must be square and matched");

    SumIdentityReport rep;
    rep.ec_product_norm = operator_norm(e * c, cfg);
    const double scale = std::max(1.0, operator_norm(c, cfg) * operator_norm(e, cfg));
    rep.precondition_ok = rep.ec_product_norm <= cfg.identity_tol * scale;

    const ComplexMatrix lhs = eval_poly_at_operator(poly, c + e);
    ComplexMatrix rhs(lhs.rows(), lhs.cols());
    const ComplexMatrix eye_p = ComplexMatrix::identity(poly.p);
    ComplexMatrix epow = ComplexMatrix::identity(e.rows());
    for (std::size_t k = 0; k <= poly.degree(); ++k) {
        if (k > 0) epow = epow * e;
        rhs += eval_poly_at_operator(poly.shifted(k), c) * kron(eye_p, epow);
    }
    rep.lhs_norm = operator_norm(lhs, cfg);
    rep.rhs_norm = operator_norm(rhs, cfg);
    rep.defect = operator_norm(lhs - rhs, cfg);
    return rep;
}

ZeroProductReport zero_product_check(const ComplexMatrix& c, const ComplexMatrix& e,
                                     const ToleranceConfig& cfg) {
    cfg.validate();
    if (!c.square() || !e.square() || c.rows() != e.rows())
        throw DimensionError("zero_product_check: C and E must be square and matched");
    ZeroProductReport rep;
    rep.product_norm = operator_norm(e * c, cfg);
    const double ne = operator_norm(e, cfg);
    const double nc = operator_norm(c, cfg);
    rep.zero_product = rep.product_norm <= cfg.identity_tol * std::max(1.0, ne * nc);
    rep.radius = spectral_radius(e, cfg).value;
    if (ne > 0.0) {
        // Power up a normalized copy; structural nilpotency shows up exactly.
        ComplexMatrix b = e;
        b *= complexd(1.0 / ne, 0.0);
        ComplexMatrix pw = b;
        for (std::size_t q = 1; q <= e.rows(); ++q) {
            if (pw.max_abs() <= 1e-13) {
                rep.nilpotency_order = q;
                break;
            }
            if (q < e.rows()) pw = pw * b;
        }
    } else {
        rep.nilpotency_order = 1;
    }
    return rep;
}

SummabilityReport rota_summability(const ComplexMatrix& e, std::size_t n_max,
                                   const ToleranceConfig& cfg) {
    cfg.validate();
    if (!e.square()) throw DimensionError("rota_summability: E must be square");
    if (n_max == 0) throw PreconditionError("rota_summability: n_max must be positive");

    SummabilityReport rep;
    rep.radius = spectral_radius(e, cfg).value;
    rep.terms = n_max + 1;

    std::vector<double> norms(n_max + 1, 0.0);
    norms[0] = 1.0;
    ComplexMatrix pw = ComplexMatrix::identity(e.rows());
    bool dead = false;  // hit an exactly vanishing power
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (n > 0) {
            if (!dead) {
                pw = pw * e;
                if (pw.max_abs() == 0.0) dead = true;
            }
            norms[n] = dead ? 0.0 : operator_norm(pw, cfg);
        }
        rep.partial += std::log(static_cast<double>(n) + 2.0) * norms[n];
    }

    if (dead) {
        rep.tail_bound = 0.0;
        rep.summable = true;
        return rep;
    }

    // Best root of a computed power norm; below one it certifies geometric decay
    // |E^n| <= M beta^(1-m) beta^n by submultiplicativity.
    double beta = std::numeric_limits<double>::infinity();
    std::size_t best_m = 1;
    for (std::size_t m = 1; m <= n_max; ++m) {
        const double root = std::pow(norms[m], 1.0 / static_cast<double>(m));
        if (root < beta) {
            beta = root;
            best_m = m;
        }
    }
    if (beta < 1.0) {
        double lead = 1.0;
        for (std::size_t r = 0; r < best_m; ++r) lead = std::max(lead, norms[r]);
        const double c = lead * std::pow(beta, 1.0 - static_cast<double>(best_m));
        // log(n+2) <= log(n_max+2) + (n - n_max) for n >= n_max
        const double g = beta / (1.0 - beta);
        rep.tail_bound = c * std::pow(beta, static_cast<double>(n_max)) *
                         (std::log(static_cast<double>(n_max) + 2.0) * g +
                          beta / ((1.0 - beta) * (1.0 - beta)));
        rep.summable = true;
    } else {
        rep.tail_bound = std::numeric_limits<double>::infinity();
        rep.divergent = true;
    }
    return rep;
}

namespace {

double dirichlet_abs(std::size_t n, double t) {
    const double s = std::sin(0.5 * t);
    if (std::abs(s) < 1e-8) {
        // cosine form 1 + 2 sum cos(kt), exact and stable near the kernel peak
        double v = 1.0;
        for (std::size_t k = 1; k <= n; ++k) v += 2.0 * std::cos(static_cast<double>(k) * t);
        return std::abs(v);
    }
    return std::abs(std::sin((static_cast<double>(n) + 0.5) * t) / s);
}

double simpson_rec(std::size_t n, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = dirichlet_abs(n, lm), frm = dirichlet_abs(n, rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(n, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(n, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double simpson(std::size_t n, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = dirichlet_abs(n, a), fm = dirichlet_abs(n, m),
                 fb = dirichlet_abs(n, b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(n, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double dirichlet_l1(std::size_t n) {
    constexpr double pi = std::numbers::pi;
    // Integrate between consecutive kernel zeros so each piece is smooth.
    std::vector<double> cuts{0.0};
    for (std::size_t k = 1; k <= n; ++k)
        cuts.push_back(2.0 * pi * static_cast<double>(k) /
                       (2.0 * static_cast<double>(n) + 1.0));
    cuts.push_back(pi);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += simpson(n, cuts[i], cuts[i + 1],
                         1e-10 / static_cast<double>(cuts.size()));
    return total / pi;
}

double sup_circle_norm(const MatrixPolynomial& poly, std::size_t grid) {
    poly.validate();
    constexpr double pi = std::numbers::pi;
    const std::size_t d = poly.degree();
    const std::size_t g = std::max<std::size_t>(grid, 32 * (d + 1));
    const ToleranceConfig cfg{};

    auto value_at = [&](double theta) {
        return operator_norm(eval_poly_at_point(poly, std::polar(1.0, theta)), cfg);
    };

    double best = 0.0, best_theta = 0.0;
    for (std::size_t j = 0; j < g; ++j) {
        const double theta = 2.0 * pi * static_cast<double>(j) / static_cast<double>(g);
        const double v = value_at(theta);
        if (v > best) {
            best = v;
            best_theta = theta;
        }
    }
    // Local ternary refinement around the grid argmax.
    double lo = best_theta - 2.0 * pi / static_cast<double>(g);
    double hi = best_theta + 2.0 * pi / static_cast<double>(g);
    for (int it = 0; it < 80; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (value_at(m1) < value_at(m2)) lo = m1; else hi = m2;
    }
    best = std::max(best, value_at(0.5 * (lo + hi)));
    return best;
}

ShiftBoundReport shift_bound_check(const MatrixPolynomial& poly, std::size_t n,
                                   const ToleranceConfig& cfg) {
    cfg.validate();
    poly.validate();
    if (n == 0) throw PreconditionError("shift_bound_check: n must be positive");

    ShiftBoundReport rep;
    rep.base_sup = sup_circle_norm(poly);
    rep.shifted_sup = sup_circle_norm(poly.shifted(n));
    rep.kernel_l1 = dirichlet_l1(n - 1);
    rep.bound = (1.0 + rep.kernel_l1) * rep.base_sup;
    rep.holds = rep.shifted_sup <= rep.bound + cfg.identity_tol * std::max(1.0, rep.bound);

    // z^n P_(n)(z) = P(z) - sum_{j<n} A_j z^j, checked on a sample of the circle
    constexpr double pi = std::numbers::pi;
    const MatrixPolynomial tail = poly.shifted(n);
    MatrixPolynomial head;
    head.p = poly.p;
    for (std::size_t j = 0; j < std::min(n, poly.coeffs.size()); ++j)
        head.coeffs.push_back(poly.coeffs[j]);
    if (head.coeffs.empty()) head.coeffs.emplace_back(poly.p, poly.p);
    const std::size_t samples = 4 * (poly.degree() + 1) + 3;
    for (std::size_t j = 0; j < samples; ++j) {
        const double theta = 2.0 * pi * static_cast<double>(j) / static_cast<double>(samples);
        const complexd z = std::polar(1.0, theta);
        ComplexMatrix lhs = eval_poly_at_point(tail, z);
        lhs *= std::pow(z, static_cast<double>(n));
        const ComplexMatrix rhs = eval_poly_at_point(poly, z) - eval_poly_at_point(head, z);
        rep.identity_defect = std::max(rep.identity_defect, (lhs - rhs).max_abs());
    }
    return rep;
}

JordanBoundsReport jordan_block_power_bounds(std::size_t n_max, const ToleranceConfig& cfg) {
    cfg.validate();
    if (n_max == 0) throw PreconditionError("jordan_block_power_bounds: n_max must be positive");
    const ComplexMatrix t = ComplexMatrix::from_rows({{complexd(1.0, 0.0), complexd(1.0, 0.0)},
                                                      {complexd(0.0, 0.0), complexd(1.0, 0.0)}});
    JordanBoundsReport rep;
    rep.bounds_hold = true;
    ComplexMatrix pw = ComplexMatrix::identity(2);
    for (std::size_t n = 1; n <= n_max; ++n) {
        pw = pw * t;
        const double v = operator_norm(pw, cfg);
        rep.norms.push_back(v);
        const double nn = static_cast<double>(n);
        if (v < nn - cfg.identity_tol || v > nn + 2.0 + cfg.identity_tol)
            rep.bounds_hold = false;
    }
    return rep;
}

}  // namespace oplab
