// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Usage: acceptance_test --cli PATH --specs DIR --work DIR

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oplab/car.hpp"
#include "oplab/matrix.hpp"
#include "oplab/nearness.hpp"
#include "oplab/norms.hpp"
#include "oplab/perturbation.hpp"
#include "oplab/renorm.hpp"
#include "oplab/rng.hpp"
#include "oplab/solve.hpp"
#include "oplab/sylvester.hpp"
#include "oplab/window.hpp"
#include "test_support.hpp"

using namespace oplab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

// 1. 200 random pairs with spectra separated by construction: T lives in a
// disk around +0.5, V in a disk around -0.5.
Outcome sylvester_round_trip() {
    Rng rng(1001);
    double worst_solve = 0.0, worst_conj = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t m = 1 + rng.next_u64() % 10;
        const std::size_t n = 1 + rng.next_u64() % 10;
        ComplexMatrix t = oracle::random_shifted_contraction(rng, m, 0.5, 0.4);
        ComplexMatrix v = oracle::random_shifted_contraction(rng, n, -0.5, 0.4);
        ComplexMatrix x = oracle::random_dense(rng, m, n);
        SylvesterSolution sol = solve_sylvester_direct(t, v, x);
        if (!sol.solvable)
            return {false, "instance " + std::to_string(rep) + " reported unsolvable"};
        worst_solve = std::max(worst_solve, sol.residual);
        SimilarityCertificate cert = certify_similarity(BlockUpper{t, x, v}, sol.z);
        if (!cert.accepted)
            return {false, "certificate refused on instance " + std::to_string(rep)};
        worst_conj = std::max(worst_conj, cert.conjugation_residual);
    }
    const bool ok = worst_solve < 1e-9 && worst_conj < 1e-9;
    return {ok, fmt("max solve residual %.2e, max conjugation residual %.2e",
                    worst_solve, worst_conj)};
}

// 2. Partial sums against the closed telescoped form, then full recovery of
// the planted solution.
Outcome telescoping_recovery() {
    Rng rng(1002);
    const std::size_t nb = 16;
    WindowedOperator shift = truncated_shift(1, nb);
    shift.ambient.guard = 12;
    const ComplexMatrix& v = shift.matrix;
    const ComplexMatrix vadj = v.adjoint();

    double worst_identity = 0.0, worst_recovery = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        ComplexMatrix t = oracle::random_shifted_contraction(rng, nb, 0.5, 0.4);
        ComplexMatrix d = oracle::random_dense(rng, nb, nb);
        for (std::size_t i = 0; i < nb; ++i) d(i, 0) = 0.0;  // D (I - V V*) = 0
        ComplexMatrix x = t * d - d * v;

        ComplexMatrix lhs(nb, nb);
        ComplexMatrix tpow = ComplexMatrix::identity(nb);
        ComplexMatrix vadj_pow = vadj;
        for (std::size_t n = 0; n <= 10; ++n) {
            lhs += tpow * x * vadj_pow;
            const ComplexMatrix rhs = (tpow * t) * d * vadj_pow - d;
            worst_identity = std::max(worst_identity, oracle::max_abs_diff(lhs, rhs));
            tpow = tpow * t;
            vadj_pow = vadj_pow * vadj;
        }

        SylvesterSolution sol = partial_sum_solution(t, v, x, nb, SummationMode::plain);
        worst_recovery = std::max(worst_recovery, oracle::max_abs_diff(sol.z, d));
    }
    const bool ok = worst_identity < 1e-11 && worst_recovery < 1e-8;
    return {ok, fmt("identity defect %.2e, recovery error %.2e", worst_identity,
                    worst_recovery)};
}

// 3. Power boundedness of the assembled operator and the similarity
// certificate must come and go together.
Outcome boundedness_equivalence() {
    Rng rng(1003);
    int certified = 0;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t nv = 1 + rng.next_u64() % 8;
        const std::size_t mt = 1 + rng.next_u64() % 8;
        ComplexMatrix v = oracle::random_unitary(rng, nv);
        ComplexMatrix t = oracle::random_shifted_contraction(rng, mt, 0.5, 0.4);
        ComplexMatrix x = oracle::random_dense(rng, mt, nv, 0.5);
        BlockUpper r{t, x, v};
        SylvesterSolution sol = solve_sylvester_direct(t, v, x);
        SimilarityCertificate cert = certify_similarity(r, sol.z);
        PowerProfile prof = power_profile(r.assemble(), 64);
        const bool bounded = !prof.overflow && prof.growth == GrowthClass::bounded;
        if (bounded != cert.accepted)
            return {false, "instance " + std::to_string(rep) +
                               (bounded ? " bounded without certificate"
                                        : " certified without boundedness")};
        if (cert.accepted) ++certified;
    }
    const bool ok = certified == 50;
    return {ok, "both sides held on " + std::to_string(certified) + "/50 instances"};
}

// 4. The three structured splits, 100 random instances each.
Outcome structured_splits() {
    Rng rng(1004);
    double worst = 0.0;
    auto absorb = [&worst](const Decomposition& dec, bool expect_left) -> bool {
        worst = std::max({worst, dec.split_residual, dec.annihilation_residual,
                          dec.representation_residual, dec.side_residual,
                          dec.zero_product_residual, dec.nilpotent_residual});
        return dec.zero_product_on_left == expect_left;
    };

    for (int rep = 0; rep < 100; ++rep) {  // coisometry corner: phased adjoint shift
        const std::size_t nb = 3 + rng.next_u64() % 6;
        const std::size_t nv = 1 + rng.next_u64() % 6;
        ComplexMatrix t = truncated_shift(1, nb).matrix.adjoint();
        for (std::size_t i = 0; i < nb; ++i) {
            const double phi = 6.283185307179586 * rng.uniform();
            for (std::size_t j = 0; j < nb; ++j)
                t(i, j) *= complexd(std::cos(phi), std::sin(phi));
        }
        ComplexMatrix v = oracle::random_unitary(rng, nv);
        ComplexMatrix x = oracle::random_dense(rng, nb, nv);
        SylvesterSolution sol = solve_sylvester_direct(t, v, x);
        Decomposition dec = decompose_coisometry_case(t, v, x, sol.z);
        if (!absorb(dec, false))
            return {false, "coisometry split reported the wrong zero-product side"};
    }

    for (int rep = 0; rep < 100; ++rep) {  // isometry corner: truncated shift
        const std::size_t nb = 3 + rng.next_u64() % 6;
        const std::size_t mt = 1 + rng.next_u64() % 6;
        ComplexMatrix v = truncated_shift(1, nb).matrix;
        ComplexMatrix t = oracle::random_shifted_contraction(rng, mt, 0.5, 0.4);
        // draw the coupling from a well-scaled solution so the measured
        // residuals sit at the rounding floor rather than eps * |Z|
        ComplexMatrix z0 = oracle::random_dense(rng, mt, nb);
        ComplexMatrix x = t * z0 - z0 * v;
        SylvesterSolution sol = solve_sylvester_direct(t, v, x);
        Decomposition dec = decompose_isometry_case(t, v, x, sol.z);
        if (!absorb(dec, true))
            return {false, "isometry split reported the wrong zero-product side"};
    }

    for (int rep = 0; rep < 100; ++rep) {  // weighted shift corner
        const std::size_t nb = 3 + rng.next_u64() % 5;
        const std::size_t mt = 1 + rng.next_u64() % 6;
        std::vector<double> w;
        for (std::size_t i = 0; i + 1 < nb; ++i) w.push_back(0.5 + rng.uniform());
        WeightedShift s = weighted_shift(BetaSequence::from_weights(w), 1, nb);
        ComplexMatrix t = oracle::random_shifted_contraction(rng, mt, 0.5, 0.4);
        ComplexMatrix z0 = oracle::random_dense(rng, mt, nb);
        ComplexMatrix x = t * z0 - z0 * s.op.matrix;
        SylvesterSolution sol = solve_sylvester_direct(t, s.op.matrix, x);
        Decomposition dec = decompose_weighted_case(t, s, x, sol.z);
        if (!absorb(dec, true))
            return {false, "weighted split reported the wrong zero-product side"};
    }

    const bool ok = worst < 1e-11;
    return {ok, fmt("max residual over 300 splits %.2e", worst)};
}

// 5. The finite expansion of P(C + E) under E C = 0.
Outcome expansion_identity() {
    Rng rng(1005);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + rng.next_u64() % 7;
        const std::size_t split = 1 + rng.next_u64() % (n - 1);
        ComplexMatrix u = oracle::random_unitary(rng, n);
        ComplexMatrix cin(n, n), ein(n, n);
        for (std::size_t i = 0; i < split; ++i)
            for (std::size_t j = 0; j < n; ++j) cin(i, j) = 0.4 * rng.cgauss();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = split; j < n; ++j) ein(i, j) = 0.4 * rng.cgauss();
        ComplexMatrix c = u * cin * u.adjoint();
        ComplexMatrix e = u * ein * u.adjoint();

        const std::size_t p = 1 + rng.next_u64() % 3;
        const std::size_t degree = 1 + rng.next_u64() % 8;
        MatrixPolynomial poly;
        poly.p = p;
        for (std::size_t j = 0; j <= degree; ++j)
            poly.coeffs.push_back(
                oracle::random_dense(rng, p, p, 0.5 / double(j + 1)));

        SumIdentityReport rep5 = verify_sum_identity(poly, c, e);
        if (!rep5.precondition_ok)
            return {false, fmt("zero-product precondition drifted to %.2e",
                               rep5.ec_product_norm)};
        worst = std::max(worst, rep5.defect);
    }
    const bool ok = worst < 1e-10;
    return {ok, fmt("max expansion defect %.2e", worst)};
}

// 6. Powers of the elementary Jordan block stay inside [n, n + 2].
Outcome power_ladder() {
    JordanBoundsReport rep = jordan_block_power_bounds(64);
    if (rep.norms.size() != 64) return {false, "expected 64 power norms"};
    for (std::size_t n = 1; n <= 64; ++n) {
        const double nn = rep.norms[n - 1];
        if (!(double(n) <= nn + 1e-9 && nn <= double(n) + 2.0 + 1e-9))
            return {false, fmt("norm at n=%g escaped the band: %.6f", double(n), nn)};
    }
    return {rep.bounds_hold, "all 64 powers inside the band"};
}

// 7. Row-operator and Gram evaluations of the nearness value.
Outcome gram_row_agreement() {
    Rng rng(1007);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + rng.next_u64() % 7;
        const std::size_t n_max = 2 + rng.next_u64() % 11;
        ComplexMatrix t = oracle::random_dense(rng, n, n);
        ComplexMatrix c = oracle::random_dense(rng, n, n);
        const double tn = oracle::svd_norm(t), cn = oracle::svd_norm(c);
        if (tn > 0.0) t *= complexd(0.9 / tn, 0.0);
        if (cn > 0.0) c *= complexd(0.9 / cn, 0.0);

        NearnessReport flat = nearness(t, c, BetaSequence::constant(n_max), n_max);
        worst = std::max(worst, std::abs(flat.value - flat.gram_value));

        std::vector<double> w;
        for (std::size_t i = 0; i < n_max; ++i) w.push_back(0.5 + 1.5 * rng.uniform());
        NearnessReport wide = nearness(t, c, BetaSequence::from_weights(w), n_max);
        worst = std::max(worst, std::abs(wide.value - wide.gram_value));
    }
    const bool ok = worst < 1e-8;
    return {ok, fmt("max disagreement %.2e over 200 evaluations", worst)};
}

// 8. The two unit-distance examples.
Outcome unit_distance_examples() {
    Rng rng(1008);
    double worst = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t nb = 12;
        std::vector<double> w;
        for (std::size_t i = 0; i + 1 < nb; ++i) w.push_back(0.25 + 3.75 * rng.uniform());
        WeightedShift s = weighted_shift(BetaSequence::from_weights(w), 1, nb);
        ComplexMatrix zero(nb, nb);
        ComplexMatrix p0(nb, nb);
        p0(0, 0) = 1.0;
        NearnessReport r = nearness_modulo(s.op.matrix, zero, p0, s.beta, 10);
        worst = std::max(worst, std::abs(r.value - 1.0));
    }
    {
        const std::size_t nb = 12;
        WindowedOperator s = truncated_shift(1, nb);
        ComplexMatrix zero(nb, nb);
        ComplexMatrix p0(nb, nb);  // kernel of the adjoint on the window
        p0(0, 0) = 1.0;
        NearnessReport r =
            nearness_modulo(s.matrix, zero, p0, BetaSequence::constant(nb), 10);
        worst = std::max(worst, std::abs(r.value - 1.0));
    }
    const bool ok = worst < 1e-10;
    return {ok, fmt("max deviation from 1 is %.2e", worst)};
}

// 9. Closed-form renormed value against the constrained KKT oracle, the
// parallelogram law, and the contraction check on solved-coupling instances.
Outcome renorm_oracle() {
    Rng rng(1009);
    double worst_value = 0.0, worst_par = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t k = 1 + rng.next_u64() % 3;
        const std::size_t d = 1 + rng.next_u64() % 2;
        const std::size_t nb = 3 + rng.next_u64() % 3;
        const std::size_t depth = 1 + rng.next_u64() % 3;
        ComplexMatrix t = oracle::random_unitary(rng, k);
        t *= complexd(0.6 + 0.35 * rng.uniform(), 0.0);
        std::vector<double> w;
        for (std::size_t i = 0; i + 1 < nb; ++i) w.push_back(0.5 + 0.5 * rng.uniform());
        WeightedShift s = weighted_shift(BetaSequence::from_weights(w), d, nb);
        ComplexMatrix x = oracle::random_dense(rng, k, d * nb, 0.5);
        RenormModel m = build_renorm_model(t, s, x, depth + 1);

        ComplexMatrix kvec = oracle::random_dense(rng, k, 1);
        ComplexMatrix h = oracle::random_dense(rng, d * nb, 1);
        RenormValue val = renorm_value(m, kvec, h, depth);

        ComplexMatrix a(k, k * (depth + 1));
        ComplexMatrix tp = ComplexMatrix::identity(k);
        for (std::size_t j = 0; j <= depth; ++j) {
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t cidx = 0; cidx < k; ++cidx)
                    a(r, j * k + cidx) = tp(r, cidx);
            tp = oracle::mul_local(tp, t);
        }
        oracle::MinNormOracle ref = oracle::min_norm_kkt(a, val.constraint_rhs);
        const double c2 = norm2(val.constraint_rhs) * norm2(val.constraint_rhs);
        const double h2 = norm2(h) * norm2(h);
        const double expect = c2 + h2 + ref.value;
        worst_value = std::max(worst_value,
                               std::abs(val.value_sq - expect) / (1.0 + expect));

        ParallelogramReport par = renorm_parallelogram_check(m, depth, 5, 4200 + rep);
        worst_par = std::max(worst_par, par.max_defect);
    }

    std::size_t interior = 0;
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t k = 2 + rng.next_u64() % 2;
        const std::size_t nb = 4;
        ComplexMatrix t = oracle::random_unitary(rng, k);
        t *= complexd(0.9, 0.0);
        std::vector<double> w;
        for (std::size_t i = 0; i + 1 < nb; ++i) w.push_back(0.6 + 0.4 * rng.uniform());
        WeightedShift s = weighted_shift(BetaSequence::from_weights(w), 1, nb);
        ComplexMatrix z0 = oracle::random_dense(rng, k, nb, 0.8);
        ComplexMatrix x = t * z0 - z0 * s.op.matrix;  // solved coupling
        RenormModel m = build_renorm_model(t, s, x, 4);
        ContractionCheck con = renorm_contraction_check(m, 3, 20, 8800 + rep);
        if (!con.contractive || !con.bounded_by_estimate)
            return {false, fmt("contraction check failed, excess %.2e", con.max_excess)};
        interior += con.samples;
    }
    if (interior != 200)
        return {false, "expected 200 interior samples, saw " + std::to_string(interior)};

    const bool ok = worst_value < 1e-9 && worst_par < 1e-9;
    return {ok, fmt("max value gap %.2e, max parallelogram defect %.2e", worst_value,
                    worst_par)};
}

// 10. CAR relations, Hankel intertwining and power couplings, the weighted
// Hankel norm bound, and the nearness tie to it.
Outcome car_hankel_bounds() {
    for (std::size_t m = 1; m <= 6; ++m) {
        CarCheck chk = car_relations_check(car_algebra(m));
        if (chk.anticommutator_defect > 1e-14 || chk.mixed_defect > 1e-14)
            return {false, "anticommutation defect at " + std::to_string(m) + " modes"};
    }

    Rng rng(1010);
    double worst_defect = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t kk = 1 + rng.next_u64() % 3;
        const std::size_t nb = kk + rng.next_u64() % (6 - 2 * kk + 1) + 0;
        std::vector<complexd> alpha;
        for (std::size_t i = 0; i < kk; ++i) alpha.push_back(rng.cgauss());
        HankelSpec spec{alpha, std::max(nb, kk), kk + std::max(nb, kk)};
        IntertwiningReport inter = intertwining_check(spec);
        worst_defect = std::max(worst_defect, inter.defect);
        for (std::size_t n = 1; n <= std::min<std::size_t>(3, spec.blocks); ++n) {
            PowerCouplingReport pc = gamma_power_identity_check(spec, n);
            worst_defect = std::max(worst_defect, pc.projected_defect);
        }
    }
    if (worst_defect > 1e-12)
        return {false, fmt("intertwining or coupling defect %.2e", worst_defect)};

    double worst_excess = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t kk = 1 + rng.next_u64() % 3;
        const std::size_t maxn = 6 - kk;
        const std::size_t nb = 1 + rng.next_u64() % maxn;
        std::vector<complexd> alpha;
        for (std::size_t i = 0; i < kk; ++i) alpha.push_back(rng.cgauss());
        HankelSpec spec{alpha, nb, kk + nb};
        HankelBoundReport hb = weighted_hankel_bound_check(spec);
        worst_excess = std::max(worst_excess, hb.norm - hb.bound);
        if (hb.norm > hb.bound + 1e-8)
            return {false, fmt("weighted Hankel norm %.6f above bound %.6f", hb.norm,
                               hb.bound)};
    }

    double worst_near = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t kk = 1 + rng.next_u64() % 2;
        const std::size_t nb = kk + 1 + rng.next_u64() % (4 - kk);
        std::vector<complexd> alpha;
        for (std::size_t i = 0; i < kk; ++i) alpha.push_back(rng.cgauss());
        HankelSpec spec{alpha, nb, kk + nb};
        FoguelHankel f = foguel_hankel(spec);
        ComplexMatrix full = f.op.assemble();
        BlockUpper diag_r{f.op.t, ComplexMatrix(f.op.x.rows(), f.op.x.cols()), f.op.v};
        ComplexMatrix diag = diag_r.assemble();
        ComplexMatrix proj(full.rows(), full.cols());
        const std::size_t half = f.block_ambient.dim();
        for (std::size_t i = 0; i < f.block_ambient.block_dim; ++i)
            proj(half + i, half + i) = 1.0;
        NearnessReport near = nearness_modulo(full, diag, proj,
                                              BetaSequence::constant(nb + 1), nb);
        const double bound = std::sqrt(b_alpha(alpha));
        worst_near = std::max(worst_near, near.value - bound);
        if (near.value > bound + 1e-8)
            return {false, fmt("nearness %.6f above the coefficient bound %.6f",
                               near.value, bound)};
    }

    return {true, fmt("max bound excess %.2e, max nearness excess %.2e", worst_excess,
                      worst_near)};
}

// 11. Two CLI runs over the bundled suite must produce byte-identical trees.
std::map<std::string, std::string> snapshot_tree(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream body;
        body << in.rdbuf();
        files[fs::relative(entry.path(), dir).string()] = body.str();
    }
    return files;
}

Outcome deterministic_reports(const std::string& cli, const fs::path& specs,
                              const fs::path& work) {
    const fs::path suite = specs / "suite.json";
    const fs::path demo = specs / "demo.json";
    if (!fs::exists(suite) || !fs::exists(demo))
        return {false, "spec files missing under " + specs.string()};

    auto shell = [](const std::string& cmd) { return std::system(cmd.c_str()); };
    if (shell("'" + cli + "' validate --spec '" + suite.string() + "' > '" +
              (work / "validate.txt").string() + "' 2>&1") != 0)
        return {false, "validate rejected the suite spec"};
    if (shell("'" + cli + "' validate --spec '" + demo.string() + "' >> '" +
              (work / "validate.txt").string() + "' 2>&1") != 0)
        return {false, "validate rejected the demo spec"};

    const fs::path out1 = work / "run1", out2 = work / "run2";
    fs::remove_all(out1);
    fs::remove_all(out2);
    const std::string base = "'" + cli + "' run --spec '" + suite.string() +
                             "' --seed 7 --out '";
    if (shell(base + out1.string() + "' > '" + (work / "log1.txt").string() +
              "' 2>&1") != 0)
        return {false, "first run exited nonzero, see " +
                           (work / "log1.txt").string()};
    if (shell(base + out2.string() + "' > '" + (work / "log2.txt").string() +
              "' 2>&1") != 0)
        return {false, "second run exited nonzero, see " +
                           (work / "log2.txt").string()};

    auto first = snapshot_tree(out1);
    auto second = snapshot_tree(out2);
    if (first.empty()) return {false, "first run produced no files"};
    if (first.size() != second.size())
        return {false, "runs produced different file sets"};
    for (const auto& [rel, body] : first) {
        auto it = second.find(rel);
        if (it == second.end()) return {false, "missing from second run: " + rel};
        if (it->second != body) return {false, "byte difference in " + rel};
    }

    std::ifstream l1(work / "log1.txt"), l2(work / "log2.txt");
    std::ostringstream s1, s2;
    s1 << l1.rdbuf();
    s2 << l2.rdbuf();
    if (s1.str() != s2.str()) return {false, "run logs differ"};

    return {true, std::to_string(first.size()) + " report files byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = "./oplab";
    fs::path specs = "specs";
    fs::path work = "acceptance_work";
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string key = argv[i];
        if (key == "--cli") cli = argv[i + 1];
        else if (key == "--specs") specs = argv[i + 1];
        else if (key == "--work") work = argv[i + 1];
        else {
            std::cerr << "unknown flag " << key << "\n";
            return 2;
        }
    }
    std::error_code ec;
    fs::create_directories(work, ec);

    struct Entry {
        const char* slug;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> entries{
        {"sylvester-round-trip", sylvester_round_trip},
        {"telescoping-recovery", telescoping_recovery},
        {"boundedness-equivalence", boundedness_equivalence},
        {"structured-splits", structured_splits},
        {"expansion-identity", expansion_identity},
        {"power-ladder", power_ladder},
        {"gram-row-agreement", gram_row_agreement},
        {"unit-distance-examples", unit_distance_examples},
        {"renorm-oracle", renorm_oracle},
        {"car-hankel-bounds", car_hankel_bounds},
        {"deterministic-reports",
         [&] { return deterministic_reports(cli, specs, work); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        Outcome out;
        try {
            out = entries[i].run();
        } catch (const std::exception& ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        std::printf("criterion %02zu %s: %s (%s)\n", i + 1, entries[i].slug,
                    out.pass ? "PASS" : "FAIL", out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", entries.size() - failures,
                entries.size());
    return failures == 0 ? 0 : 1;
}
