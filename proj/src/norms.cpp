#include "oplab/norms.hpp"

#include <algorithm>
#include <cmath>

#include "oplab/rng.hpp"

namespace oplab {
namespace {

// Gram matrices up to this order are formed explicitly; beyond it the
// iteration applies A and A* separately. Explicit Grams may also be squared
// repeatedly when power iteration stalls on a thin spectral gap, so this cap
// bounds the squaring work too.
constexpr std::size_t kExplicitGramCap = 600;
constexpr std::uint64_t kRestartSeed = 0xD1CE5EEDULL;

ComplexMatrix ones_vector(std::size_t n) {
    ComplexMatrix v(n, 1);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) v(i, 0) = s;
    return v;
}

ComplexMatrix random_unit(std::size_t n, Rng& rng) {
    ComplexMatrix v = random_matrix(n, 1, rng);
    const double nv = norm2(v);
    if (nv > 0.0) v *= complexd(1.0 / nv, 0.0);
    return v;
}

struct GramApply {
    const ComplexMatrix* gram = nullptr; // explicit B
    const ComplexMatrix* a = nullptr;    // implicit: B v = A*(A v) or A(A* v)
    const ComplexMatrix* a_adj = nullptr;
    bool rows_side = false; // true: B = A A*

    ComplexMatrix operator()(const ComplexMatrix& v) const {
        if (gram) return (*gram) * v;
        if (rows_side) return (*a) * ((*a_adj) * v);
        return (*a_adj) * ((*a) * v);
    }
};

// Rayleigh quotient of a Hermitian PSD apply; clamped at zero.
double rayleigh(const GramApply& apply, const ComplexMatrix& v) {
    const ComplexMatrix w = apply(v);
    const double denom = norm2(v);
    if (denom == 0.0) return 0.0;
    const double r = inner(w, v).real() / (denom * denom);
    return std::max(r, 0.0);
}

struct IterationOutcome {
    double best = 0.0;   // max Rayleigh value seen (lower bound on lambda_max)
    ComplexMatrix v;     // final iterate
    bool settled = false;
    bool stalled_thin_gap = false;
};

// Plain power iteration on B; v must be unit length. One Gram apply per step:
// the Rayleigh quotient at v falls out of the same product that advances the
// iterate. Stops once the five-step relative change is below tol; flags a thin
// gap when the per-step decay ratio stays close to 1 at that point.
IterationOutcome power_iterate(const GramApply& apply, ComplexMatrix v,
                               double tol, std::size_t max_iter) {
    IterationOutcome out;
    double rho = 0.0;
    double history[6] = {};
    double prev_step = 0.0, decay = 0.0;
    for (std::size_t it = 0; it < max_iter; ++it) {
        ComplexMatrix w = apply(v);
        const double r = std::max(inner(w, v).real(), 0.0);
        const double nw = norm2(w);
        const double step = std::max(r - rho, 0.0);
        if (prev_step > 0.0) decay = step / prev_step;
        prev_step = step;
        rho = std::max(rho, r);
        out.best = std::max(out.best, rho);
        if (nw == 0.0) { // v in the kernel; value 0 for this start
            out.v = std::move(v);
            out.settled = true;
            return out;
        }
        w *= complexd(1.0 / nw, 0.0);
        v = std::move(w);
        for (int i = 0; i < 5; ++i) history[i] = history[i + 1];
        history[5] = rho;
        const double five_step = rho - history[0];
        if (it >= 5 && five_step <= tol * std::max(rho, 1e-300)) {
            out.settled = true;
            out.stalled_thin_gap = decay > 0.998 && step > 0.0;
            out.v = std::move(v);
            return out;
        }
    }
    out.v = std::move(v);
    return out;
}

// Squaring escalation: drive the dominant eigenspace of B apart by repeatedly
// squaring the (normalized) Gram, then read the value off the original B.
double squaring_polish(const ComplexMatrix& gram, const GramApply& apply,
                       ComplexMatrix v, double best) {
    ComplexMatrix b = gram;
    double f = b.frobenius_norm();
    if (f == 0.0) return best;
    b *= complexd(1.0 / f, 0.0);
    double prev = best;
    for (int s = 0; s < 30; ++s) {
        ComplexMatrix sq = b * b;
        f = sq.frobenius_norm();
        if (f == 0.0 || !sq.all_finite()) break;
        sq *= complexd(1.0 / f, 0.0);
        b = std::move(sq);
        for (int it = 0; it < 8; ++it) {
            ComplexMatrix w = b * v;
            const double nw = norm2(w);
            if (nw == 0.0) return best;
            w *= complexd(1.0 / nw, 0.0);
            v = std::move(w);
        }
        const double rho = rayleigh(apply, v);
        best = std::max(best, rho);
        if (s > 2 && std::abs(rho - prev) <= 1e-15 * std::max(rho, 1e-300)) break;
        prev = rho;
    }
    return best;
}

double run_from_start(const GramApply& apply, const ComplexMatrix* gram,
                      ComplexMatrix start, const ToleranceConfig& cfg,
                      bool* failed) {
    const double tol = std::min(cfg.norm_tol, 1e-13);
    IterationOutcome out = power_iterate(apply, std::move(start), tol, cfg.norm_max_iter);
    double best = out.best;
    if ((!out.settled || out.stalled_thin_gap) && gram) {
        best = squaring_polish(*gram, apply, out.v, best);
    } else if (!out.settled) {
        *failed = true;
    }
    return best;
}

} // namespace

double operator_norm(const ComplexMatrix& a, const ToleranceConfig& cfg) {
    cfg.validate();
    if (a.empty()) throw PreconditionError("operator_norm: empty matrix");
    if (!a.all_finite())
        throw PreconditionError("operator_norm: matrix has non-finite entries");
    if (a.max_abs() == 0.0) return 0.0;

    const bool rows_side = a.rows() <= a.cols(); // iterate on the smaller Gram
    const std::size_t m = rows_side ? a.rows() : a.cols();

    ComplexMatrix adj = a.adjoint();
    ComplexMatrix gram_storage;
    GramApply apply;
    apply.a = &a;
    apply.a_adj = &adj;
    apply.rows_side = rows_side;
    const bool explicit_gram = m <= kExplicitGramCap;
    if (explicit_gram) {
        gram_storage = rows_side ? a * adj : adj * a;
        apply.gram = &gram_storage;
    }

    bool failed = false;
    double best = run_from_start(apply, explicit_gram ? &gram_storage : nullptr,
                                 ones_vector(m), cfg, &failed);
    Rng rng(kRestartSeed);
    best = std::max(best, run_from_start(apply, explicit_gram ? &gram_storage : nullptr,
                                         random_unit(m, rng), cfg, &failed));
    const double value = std::sqrt(std::max(best, 0.0));
    if (failed)
        throw NormConvergenceError("operator_norm: unconverged after iteration cap", value);
    return value;
}

SpectralRadiusEstimate spectral_radius(const ComplexMatrix& a, const ToleranceConfig& cfg) {
    cfg.validate();
    if (!a.square()) throw PreconditionError("spectral_radius: matrix must be square");
    SpectralRadiusEstimate est;
    if (!a.all_finite()) {
        est.lower_bound_only = true;
        est.value = 0.0;
        return est;
    }

    const double n0 = operator_norm(a, cfg);
    if (n0 == 0.0) return est; // zero matrix
    // Track log ||A^{2^k}|| so powers of large-norm matrices never overflow.
    ComplexMatrix cur = a;
    cur *= complexd(1.0 / n0, 0.0);
    double log_norm = std::log(n0); // log ||A^{2^k}|| for k = 0
    double r_prev = n0;
    est.value = n0;
    for (std::size_t k = 1; k <= 48; ++k) {
        ComplexMatrix sq = cur * cur;
        if (!sq.all_finite()) {
            est.lower_bound_only = true;
            est.value = r_prev;
            return est;
        }
        const double p = operator_norm(sq, cfg);
        if (p == 0.0) { // nilpotent on this window
            est.value = 0.0;
            est.squarings = k;
            return est;
        }
        sq *= complexd(1.0 / p, 0.0);
        cur = std::move(sq);
        log_norm = 2.0 * log_norm + std::log(p);
        const double r = std::exp(log_norm / std::ldexp(1.0, static_cast<int>(k)));
        est.value = r;
        est.squarings = k;
        if (std::abs(r - r_prev) <= cfg.norm_tol * std::max(r, 1e-300)) return est;
        r_prev = r;
    }
    return est;
}

} // namespace oplab
