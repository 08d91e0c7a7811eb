#include "oplab/jobs.hpp"

#include <algorithm>
#include <utility>

#include "oplab/car.hpp"
#include "oplab/errors.hpp"
#include "oplab/nearness.hpp"
#include "oplab/norms.hpp"
#include "oplab/perturbation.hpp"
#include "oplab/renorm.hpp"
#include "oplab/report.hpp"
#include "oplab/sylvester.hpp"
#include "oplab/window.hpp"

namespace oplab {

namespace {

using nlohmann::json;

ToleranceConfig make_cfg(const RunOptions& opt) {
    ToleranceConfig cfg;
    if (opt.tol > 0.0) {
        cfg.identity_tol = opt.tol;
        cfg.solve_tol = opt.tol;
    }
    cfg.validate();
    return cfg;
}

const ResolvedOperator& need(const std::map<std::string, ResolvedOperator>& ops,
                             const std::string& name, const std::string& job) {
    auto it = ops.find(name);
    if (it == ops.end())
        throw Error("job " + job + ": unresolved operator '" + name + "'");
    return it->second;
}

const OperatorDef& need_def(const ProblemSpec& spec, const std::string& name,
                            const std::string& job) {
    auto it = spec.operators.find(name);
    if (it == spec.operators.end())
        throw Error("job " + job + ": unknown operator '" + name + "'");
    return it->second;
}

WeightedShift shift_from_def(const OperatorDef& d, const std::string& job) {
    if (d.kind != "weighted_shift")
        throw Error("job " + job + ": expected a weighted_shift operator");
    return weighted_shift(BetaSequence::from_weights(d.weights), d.block_dim, d.blocks);
}

BetaSequence make_beta(const BetaDef& b, std::size_t count) {
    if (b.kind == "geometric") return BetaSequence::geometric(count, b.base);
    if (b.kind == "weights") return BetaSequence::from_weights(b.weights);
    return BetaSequence::constant(count, b.value);
}

std::string norm_csv(const std::vector<double>& values, const char* value_name,
                     std::size_t first_index = 0) {
    CsvWriter csv({"n", value_name});
    for (std::size_t i = 0; i < values.size(); ++i)
        csv.add_row({CsvWriter::num(first_index + i), CsvWriter::num(values[i])});
    return csv.str();
}

void attach_summary(JobResult& r) {
    r.files[r.name + ".json"] = r.summary.dump(2) + "\n";
}

json solution_summary(const SylvesterSolution& s) {
    json o;
    o["method"] = s.method;
    o["residual"] = s.residual;
    o["side_condition_residual"] = s.side_condition_residual;
    o["solvable"] = s.solvable;
    if (!s.diagnostic.empty()) o["diagnostic"] = s.diagnostic;
    if (s.condition_estimate > 0.0) o["condition_estimate"] = s.condition_estimate;
    o["solution_norm"] = s.z.frobenius_norm();
    return o;
}

SylvesterSolution solve_for_job(const JobDef& d, const ComplexMatrix& t,
                                const ComplexMatrix& v, const ComplexMatrix& x,
                                const std::string& requested,
                                const ToleranceConfig& cfg) {
    if (requested.empty() || requested == "direct")
        return solve_sylvester_direct(t, v, x, cfg);
    if (requested == "partial_sum")
        return partial_sum_solution(t, v, x, d.n_max, SummationMode::plain, cfg);
    if (requested == "cesaro")
        return partial_sum_solution(t, v, x, d.n_max, SummationMode::cesaro, cfg);
    if (requested == "symmetric")
        return partial_sum_solution(t, v, x, d.n_max, SummationMode::symmetric_cesaro, cfg);
    throw Error("job " + d.name + ": unknown method '" + requested + "'");
}

JobResult run_diagnose(const JobDef& d, const std::map<std::string, ResolvedOperator>& ops,
                       const ToleranceConfig& cfg) {
    JobResult r{d.name, {}, {}};
    const ResolvedOperator& op = need(ops, d.op, d.name);
    WindowedOperator w{op.matrix, op.ambient};
    StructureReport s = analyze_structure(w, cfg);
    PowerProfile p = power_profile(op.matrix, d.n_max, cfg);
    json o;
    o["analysis"] = "diagnose";
    o["operator"] = d.op;
    o["rows"] = op.matrix.rows();
    o["cols"] = op.matrix.cols();
    o["norm"] = s.norm;
    o["isometry_defect"] = s.isometry_defect;
    o["coisometry_defect"] = s.coisometry_defect;
    o["isometry_on_window"] = s.isometry_on_window;
    o["coisometry_on_window"] = s.coisometry_on_window;
    o["unitary_on_window"] = s.unitary_on_window;
    o["contraction"] = s.contraction;
    o["growth"] = growth_name(p.growth);
    o["fit_slope"] = p.fit_slope;
    o["fit_rate"] = p.fit_rate;
    o["overflow"] = p.overflow;
    o["n_max"] = d.n_max;
    r.summary = std::move(o);
    r.files[d.name + "_powers.csv"] = norm_csv(p.norms, "power_norm", 1);
    return r;
}

JobResult run_sylvester(const JobDef& d, const std::map<std::string, ResolvedOperator>& ops,
                        const ToleranceConfig& cfg) {
    JobResult r{d.name, {}, {}};
    const ComplexMatrix& t = need(ops, d.t, d.name).matrix;
    const ComplexMatrix& v = need(ops, d.v, d.name).matrix;
    const ComplexMatrix& x = need(ops, d.x, d.name).matrix;
    SylvesterSolution s = solve_for_job(d, t, v, x, d.method, cfg);
    json o = solution_summary(s);
    o["analysis"] = "sylvester";
    o["n_max"] = d.n_max;
    r.summary = std::move(o);
    if (!s.partial_norms.empty())
        r.files[d.name + "_partials.csv"] = norm_csv(s.partial_norms, "partial_norm");
    if (s.z.rows() * s.z.cols() <= kKroneckerRowCap) {
        CsvWriter csv({"i", "j", "re", "im"});
        for (std::size_t i = 0; i < s.z.rows(); ++i)
            for (std::size_t j = 0; j < s.z.cols(); ++j)
                csv.add_row({CsvWriter::num(i), CsvWriter::num(j),
                             CsvWriter::num(s.z(i, j).real()),
                             CsvWriter::num(s.z(i, j).imag())});
        r.files[d.name + "_solution.csv"] = csv.str();
    }
    return r;
}

JobResult run_growth(const JobDef& d, const std::map<std::string, ResolvedOperator>& ops,
                     const ToleranceConfig& cfg) {
    JobResult r{d.name, {}, {}};
    const ComplexMatrix& t = need(ops, d.t, d.name).matrix;
    const ComplexMatrix& v = need(ops, d.v, d.name).matrix;
    const ComplexMatrix& x = need(ops, d.x, d.name).matrix;
    SumSide side = SumSide::right;
    if (d.side == "left") side = SumSide::left;
    if (d.side == "symmetric") side = SumSide::symmetric;
    GrowthReport g = growth_condition(t, v, x, d.n_max, side, cfg);
    json o;
    o["analysis"] = "growth";
    o["side"] = d.side;
    o["sup"] = g.sup;
    o["growth"] = growth_name(g.growth);
    o["bounded"] = g.bounded;
    o["fit_slope"] = g.fit_slope;
    o["fit_rate"] = g.fit_rate;
    o["n_max"] = d.n_max;
    r.summary = std::move(o);
    r.files[d.name + "_sums.csv"] = norm_csv(g.sums, "sum_norm");
    return r;
}

JobResult run_decompose(const JobDef& d, const ProblemSpec& spec,
                        const std::map<std::string, ResolvedOperator>& ops,
                        const ToleranceConfig& cfg) {
    JobResult r{d.name, {}, {}};
    const ComplexMatrix& t = need(ops, d.t, d.name).matrix;
    const ComplexMatrix& v = need(ops, d.v, d.name).matrix;
    const ComplexMatrix& x = need(ops, d.x, d.name).matrix;
    SylvesterSolution s = solve_for_job(d, t, v, x, d.z_method, cfg);
    Decomposition dec;
    if (d.dcase == "coisometry") {
        dec = decompose_coisometry_case(t, v, x, s.z, cfg);
    } else if (d.dcase == "isometry") {
        dec = decompose_isometry_case(t, v, x, s.z, cfg);
    } else if (d.dcase == "weighted") {
        WeightedShift ws = shift_from_def(need_def(spec, d.v, d.name), d.name);
        dec = decompose_weighted_case(t, ws, x, s.z, cfg);
    } else {
        throw Error("job " + d.name + ": unknown case '" + d.dcase + "'");
    }
    json o;
    o["analysis"] = "decompose";
    o["case"] = d.dcase;
    o["solve"] = solution_summary(s);
    o["split_residual"] = dec.split_residual;
    o["annihilation_residual"] = dec.annihilation_residual;
    o["representation_residual"] = dec.representation_residual;
    o["side_residual"] = dec.side_residual;
    o["zero_product_on_left"] = dec.zero_product_on_left;
    o["zero_product_residual"] = dec.zero_product_residual;
    o["nilpotent_residual"] = dec.nilpotent_residual;
    r.summary = std::move(o);
    return r;
}

JobResult run_certify(const JobDef& d, const std::map<std::string, ResolvedOperator>& ops,
                      const ToleranceConfig& cfg) {
    JobResult r{d.name, {}, {}};
    const ComplexMatrix& t = need(ops, d.t, d.name).matrix;
    const ComplexMatrix& v = need(ops, d.v, d.name).matrix;
    const ComplexMatrix& x = need(ops, d.x, d.name).matrix;
    SylvesterSolution s = solve_for_job(d, t, v, x, d.z_method, cfg);
    SimilarityCertificate cert = certify_similarity(BlockUpper{t, x, v}, s.z, cfg);
    json o;
    o["analysis"] = "certify";
    o["solve"] = solution_summary(s);
    o["accepted"] = cert.accepted;
    o["conjugation_residual"] = cert.conjugation_residual;
    o["solution_residual"] = cert.solution_residual;
    o["condition_number"] = cert.condition_number;
    r.summary = std::move(o);
    return r;
}

JobResult run_nearness(const JobDef& d, const std::map<std::string, ResolvedOperator>& ops,
                       const ToleranceConfig& cfg) {
    JobResult r{d.name, {}, {}};
    const ComplexMatrix& t = need(ops, d.t, d.name).matrix;
    const ComplexMatrix& c = need(ops, d.c, d.name).matrix;
    if (t.rows() != c.rows() || t.cols() != c.cols())
        throw Error("job " + d.name + ": operators have different shapes");
    BetaSequence beta = make_beta(d.beta, d.n_max);
    ComplexMatrix proj = ComplexMatrix::identity(t.rows());
    if (!d.subspace.whole) {
        proj = ComplexMatrix(t.rows(), t.rows());
        for (std::size_t i = 0; i < d.subspace.count; ++i) {
            std::size_t k = d.subspace.start + i;
            if (k >= t.rows())
                throw Error("job " + d.name + ": subspace exceeds the space");
            proj(k, k) = 1.0;
        }
    }
    NearnessReport n = nearness_modulo(t, c, proj, beta, d.n_max, cfg);
    json o;
    o["analysis"] = "nearness";
    o["value"] = n.value;
    o["gram_value"] = n.gram_value;
    o["cross_check_gap"] = std::abs(n.value - n.gram_value);
    o["n_max"] = d.n_max;
    o["beta"] = d.beta.kind;
    r.summary = std::move(o);
    r.files[d.name + "_partials.csv"] = norm_csv(n.partial_values, "row_norm");
    return r;
}

JobResult run_renorm(const JobDef& d, const ProblemSpec& spec,
                     const std::map<std::string, ResolvedOperator>& ops,
                     const RunOptions& opt, const ToleranceConfig& cfg) {
    JobResult r{d.name, {}, {}};
    const ComplexMatrix& t = need(ops, d.t, d.name).matrix;
    const ComplexMatrix& x = need(ops, d.x, d.name).matrix;
    WeightedShift ws = shift_from_def(need_def(spec, d.v, d.name), d.name);
    RenormModel m = build_renorm_model(t, ws, x, d.depth + 1, 1e6, cfg);
    EnvelopeReport env = renorm_equivalence(m, d.depth, d.samples, opt.seed, cfg);
    ContractionCheck con =
        renorm_contraction_check(m, d.depth, d.samples, opt.seed + 1, cfg);
    ParallelogramReport par =
        renorm_parallelogram_check(m, d.depth, d.samples, opt.seed + 2, cfg);
    json o;
    o["analysis"] = "renorm";
    o["coupling_constant"] = m.coupling_constant;
    o["recurrence_defect"] = m.recurrence_defect;
    o["depth"] = d.depth;
    o["samples"] = d.samples;
    json e;
    e["lower"] = env.lower;
    e["upper"] = env.upper;
    e["min_ratio"] = env.min_ratio;
    e["max_ratio"] = env.max_ratio;
    e["within"] = env.within;
    o["envelope"] = std::move(e);
    json cj;
    cj["max_excess"] = con.max_excess;
    cj["max_image_ratio"] = con.max_image_ratio;
    cj["bounded_by_estimate"] = con.bounded_by_estimate;
    cj["contractive"] = con.contractive;
    o["contraction"] = std::move(cj);
    json pj;
    pj["max_defect"] = par.max_defect;
    pj["holds"] = par.holds;
    o["parallelogram"] = std::move(pj);
    r.summary = std::move(o);
    return r;
}

JobResult run_car(const JobDef& d, const ToleranceConfig& cfg) {
    JobResult r{d.name, {}, {}};
    HankelSpec hs{d.alpha, d.blocks, d.modes};
    hs.validate();
    CarCheck rel = car_relations_check(car_algebra(d.modes), cfg);
    IntertwiningReport tw = intertwining_check(hs, cfg);
    HankelBoundReport hb = weighted_hankel_bound_check(hs, cfg);
    json o;
    o["analysis"] = "car";
    o["modes"] = d.modes;
    o["blocks"] = d.blocks;
    o["anticommutator_defect"] = rel.anticommutator_defect;
    o["mixed_defect"] = rel.mixed_defect;
    o["relations_hold"] = rel.holds;
    o["intertwining_defect"] = tw.defect;
    o["intertwining_holds"] = tw.holds;
    o["a_alpha"] = a_alpha(d.alpha);
    o["b_alpha"] = b_alpha(d.alpha);
    o["weighted_hankel_norm"] = hb.norm;
    o["weighted_hankel_bound"] = hb.bound;
    o["bound_holds"] = hb.holds;
    std::size_t deepest = std::min(d.n_max, d.blocks);
    CsvWriter csv({"n", "projected_defect", "full_defect"});
    bool powers_hold = true;
    for (std::size_t n = 1; n <= deepest; ++n) {
        PowerCouplingReport pc = gamma_power_identity_check(hs, n, cfg);
        powers_hold = powers_hold && pc.holds;
        csv.add_row({CsvWriter::num(n), CsvWriter::num(pc.projected_defect),
                     CsvWriter::num(pc.full_defect)});
    }
    o["power_identity_holds"] = powers_hold;
    r.summary = std::move(o);
    r.files[d.name + "_powers.csv"] = csv.str();
    return r;
}

JobResult gallery_jordan(const std::string& name, const ToleranceConfig& cfg) {
    JobResult r{name, {}, {}};
    const std::size_t n_max = 64;
    JordanBoundsReport jb = jordan_block_power_bounds(n_max, cfg);
    json o;
    o["analysis"] = "gallery";
    o["entry"] = "jordan-bounds";
    o["n_max"] = n_max;
    o["bounds_hold"] = jb.bounds_hold;
    r.summary = std::move(o);
    CsvWriter csv({"n", "power_norm", "lower", "upper"});
    for (std::size_t n = 1; n <= jb.norms.size(); ++n)
        csv.add_row({CsvWriter::num(n), CsvWriter::num(jb.norms[n - 1]),
                     CsvWriter::num(static_cast<double>(n)),
                     CsvWriter::num(static_cast<double>(n + 2))});
    r.files[name + "_bounds.csv"] = csv.str();
    return r;
}

JobResult gallery_car_foguel(const std::string& name, const ToleranceConfig& cfg) {
    JobResult r{name, {}, {}};
    HankelSpec hs{{complexd(0.0, 0.0), complexd(1.0, 0.0)}, 2, 4};
    CarCheck rel = car_relations_check(car_algebra(hs.modes), cfg);
    IntertwiningReport tw = intertwining_check(hs, cfg);
    HankelBoundReport hb = weighted_hankel_bound_check(hs, cfg);
    PowerCouplingReport pc = gamma_power_identity_check(hs, 2, cfg);
    FoguelHankel fh = foguel_hankel(hs);
    StructureReport top = analyze_structure(
        {fh.op.t, Ambient{AmbientKind::truncated_l2, fh.block_ambient.block_dim,
                          fh.block_ambient.blocks, 1}},
        cfg);
    json o;
    o["analysis"] = "gallery";
    o["entry"] = "car-foguel";
    o["modes"] = hs.modes;
    o["blocks"] = hs.blocks;
    o["relations_hold"] = rel.holds;
    o["intertwining_defect"] = tw.defect;
    o["weighted_hankel_norm"] = hb.norm;
    o["weighted_hankel_bound"] = hb.bound;
    o["bound_holds"] = hb.holds;
    o["power_identity_holds"] = pc.holds;
    o["corner_coisometry_on_window"] = top.coisometry_on_window;
    r.summary = std::move(o);
    return r;
}

JobResult dispatch_gallery(const std::string& entry, const std::string& name,
                           const ToleranceConfig& cfg) {
    if (entry == "jordan-bounds") return gallery_jordan(name, cfg);
    if (entry == "car-foguel") return gallery_car_foguel(name, cfg);
    throw Error("gallery: unknown entry '" + entry + "'");
}

}  // namespace

std::vector<std::string> gallery_entries() { return {"car-foguel", "jordan-bounds"}; }

JobResult run_gallery_entry(const std::string& entry, const RunOptions& opt) {
    ToleranceConfig cfg = make_cfg(opt);
    JobResult r = dispatch_gallery(entry, entry, cfg);
    r.summary["name"] = entry;
    attach_summary(r);
    return r;
}

std::vector<JobResult> run_jobs(const ProblemSpec& spec, const RunOptions& opt) {
    ToleranceConfig cfg = make_cfg(opt);
    std::map<std::string, ResolvedOperator> ops = resolve_operators(spec);
    std::vector<JobResult> out;
    for (const JobDef& d : spec.jobs) {
        JobResult r;
        if (d.analysis == "diagnose") {
            r = run_diagnose(d, ops, cfg);
        } else if (d.analysis == "sylvester") {
            r = run_sylvester(d, ops, cfg);
        } else if (d.analysis == "growth") {
            r = run_growth(d, ops, cfg);
        } else if (d.analysis == "decompose") {
            r = run_decompose(d, spec, ops, cfg);
        } else if (d.analysis == "certify") {
            r = run_certify(d, ops, cfg);
        } else if (d.analysis == "nearness") {
            r = run_nearness(d, ops, cfg);
        } else if (d.analysis == "renorm") {
            r = run_renorm(d, spec, ops, opt, cfg);
        } else if (d.analysis == "car") {
            r = run_car(d, cfg);
        } else if (d.analysis == "gallery") {
            r = dispatch_gallery(d.entry, d.name, cfg);
        } else {
            throw Error("job " + d.name + ": unknown analysis '" + d.analysis + "'");
        }
        r.summary["name"] = d.name;
        attach_summary(r);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace oplab
