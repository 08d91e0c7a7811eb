#include "oplab/opspec.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "oplab/car.hpp"
#include "oplab/config.hpp"
#include "oplab/errors.hpp"

namespace oplab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error("spec " + path + ": " + what);
}

std::size_t get_size(const json& j, const std::string& key, const std::string& path,
                     std::size_t fallback, bool required = false) {
    if (!j.contains(key)) {
        if (required) fail(path, "missing field '" + key + "'");
        return fallback;
    }
    const json& v = j.at(key);
    if (v.is_number_unsigned()) return v.get<std::size_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0)
        return static_cast<std::size_t>(v.get<long long>());
    fail(path + "." + key, "expected a nonnegative integer");
    return fallback;
}

std::string get_string(const json& j, const std::string& key, const std::string& path,
                       const std::string& fallback, bool required = false) {
    if (!j.contains(key)) {
        if (required) fail(path, "missing field '" + key + "'");
        return fallback;
    }
    const json& v = j.at(key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

double get_double(const json& j, const std::string& key, const std::string& path,
                  double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

std::vector<double> get_reals(const json& j, const std::string& key,
                              const std::string& path) {
    std::vector<double> out;
    if (!j.contains(key)) return out;
    const json& v = j.at(key);
    if (!v.is_array()) fail(path + "." + key, "expected an array of numbers");
    for (const json& e : v) {
        if (!e.is_number()) fail(path + "." + key, "expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

complexd parse_entry(const json& e, const std::string& path) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        fail(path, "expected entries of the form [re, im]");
    return {e[0].get<double>(), e[1].get<double>()};
}

std::vector<complexd> get_entries(const json& j, const std::string& key,
                                  const std::string& path) {
    std::vector<complexd> out;
    if (!j.contains(key)) return out;
    const json& v = j.at(key);
    if (!v.is_array()) fail(path + "." + key, "expected an array of [re, im] pairs");
    for (const json& e : v) out.push_back(parse_entry(e, path + "." + key));
    return out;
}

json entries_to_json(const std::vector<complexd>& entries) {
    json out = json::array();
    for (const complexd& z : entries) out.push_back(json::array({z.real(), z.imag()}));
    return out;
}

OperatorDef parse_operator(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    OperatorDef d;
    d.kind = get_string(j, "kind", path, "", true);
    d.block_dim = get_size(j, "block_dim", path, 1);
    d.blocks = get_size(j, "blocks", path, 1);
    d.weights = get_reals(j, "weights", path);
    d.entries = get_entries(j, "entries", path);
    if (j.contains("alpha")) d.entries = get_entries(j, "alpha", path);
    d.rows = get_size(j, "rows", path, 0);
    d.cols = get_size(j, "cols", path, 0);
    d.modes = get_size(j, "modes", path, 0);
    d.part = get_string(j, "part", path, "");
    d.of = get_string(j, "of", path, "");
    d.t = get_string(j, "t", path, "");
    d.x = get_string(j, "x", path, "");
    d.v = get_string(j, "v", path, "");
    d.first = get_string(j, "first", path, "");
    d.second = get_string(j, "second", path, "");
    return d;
}

BetaDef parse_beta(const json& j, const std::string& path) {
    BetaDef b;
    if (!j.is_object()) fail(path, "expected an object");
    b.kind = get_string(j, "kind", path, "constant");
    b.value = get_double(j, "value", path, 1.0);
    b.base = get_double(j, "base", path, 1.0);
    b.weights = get_reals(j, "weights", path);
    return b;
}

JobDef parse_job(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    JobDef d;
    d.name = get_string(j, "name", path, "", true);
    d.analysis = get_string(j, "analysis", path, "", true);
    d.op = get_string(j, "operator", path, "");
    d.t = get_string(j, "t", path, "");
    d.v = get_string(j, "v", path, "");
    d.x = get_string(j, "x", path, "");
    d.c = get_string(j, "c", path, "");
    d.method = get_string(j, "method", path, "");
    d.side = get_string(j, "side", path, "");
    d.dcase = get_string(j, "case", path, "");
    d.z_method = get_string(j, "z_method", path, "");
    d.n_max = get_size(j, "n_max", path, 16);
    d.depth = get_size(j, "depth", path, 4);
    d.samples = get_size(j, "samples", path, 25);
    if (j.contains("beta")) d.beta = parse_beta(j.at("beta"), path + ".beta");
    if (j.contains("subspace")) {
        const json& s = j.at("subspace");
        if (!s.is_object()) fail(path + ".subspace", "expected an object");
        d.subspace.whole = false;
        d.subspace.start = get_size(s, "start", path + ".subspace", 0, true);
        d.subspace.count = get_size(s, "count", path + ".subspace", 0, true);
    }
    d.alpha = get_entries(j, "alpha", path);
    d.blocks = get_size(j, "blocks", path, 0);
    d.modes = get_size(j, "modes", path, 0);
    d.entry = get_string(j, "entry", path, "");
    return d;
}

}  // namespace

ProblemSpec parse_spec(const nlohmann::json& j) {
    if (!j.is_object()) fail("$", "expected a top-level object");
    ProblemSpec spec;
    spec.schema = get_string(j, "schema", "$", "", true);
    if (j.contains("operators")) {
        const json& ops = j.at("operators");
        if (!ops.is_object()) fail("$.operators", "expected an object");
        for (const auto& [name, body] : ops.items())
            spec.operators.emplace(name, parse_operator(body, "$.operators." + name));
    }
    if (j.contains("jobs")) {
        const json& jobs = j.at("jobs");
        if (!jobs.is_array()) fail("$.jobs", "expected an array");
        std::size_t idx = 0;
        for (const json& body : jobs) {
            spec.jobs.push_back(parse_job(body, "$.jobs[" + std::to_string(idx) + "]"));
            ++idx;
        }
    }
    return spec;
}

ProblemSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("spec: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("spec: parse failure in '" + path + "': " + e.what());
    }
    return parse_spec(j);
}

nlohmann::json emit_spec(const ProblemSpec& spec) {
    json out;
    out["schema"] = spec.schema;
    json ops = json::object();
    for (const auto& [name, d] : spec.operators) {
        json o;
        o["kind"] = d.kind;
        if (d.kind == "shift" || d.kind == "weighted_shift") {
            o["block_dim"] = d.block_dim;
            o["blocks"] = d.blocks;
        }
        if (d.kind == "weighted_shift") o["weights"] = d.weights;
        if (d.kind == "diagonal" || d.kind == "dense")
            o["entries"] = entries_to_json(d.entries);
        if (d.kind == "dense") {
            o["rows"] = d.rows;
            o["cols"] = d.cols;
        }
        if (d.kind == "car_hankel") {
            o["alpha"] = entries_to_json(d.entries);
            o["blocks"] = d.blocks;
            o["modes"] = d.modes;
            o["part"] = d.part;
        }
        if (d.kind == "adjoint") o["of"] = d.of;
        if (d.kind == "block_upper") {
            o["t"] = d.t;
            o["x"] = d.x;
            o["v"] = d.v;
        }
        if (d.kind == "direct_sum") {
            o["first"] = d.first;
            o["second"] = d.second;
        }
        ops[name] = std::move(o);
    }
    out["operators"] = std::move(ops);
    json jobs = json::array();
    for (const JobDef& d : spec.jobs) {
        json o;
        o["name"] = d.name;
        o["analysis"] = d.analysis;
        if (!d.op.empty()) o["operator"] = d.op;
        if (!d.t.empty()) o["t"] = d.t;
        if (!d.v.empty()) o["v"] = d.v;
        if (!d.x.empty()) o["x"] = d.x;
        if (!d.c.empty()) o["c"] = d.c;
        if (!d.method.empty()) o["method"] = d.method;
        if (!d.side.empty()) o["side"] = d.side;
        if (!d.dcase.empty()) o["case"] = d.dcase;
        if (!d.z_method.empty()) o["z_method"] = d.z_method;
        o["n_max"] = d.n_max;
        if (d.analysis == "renorm") {
            o["depth"] = d.depth;
            o["samples"] = d.samples;
        }
        if (d.analysis == "nearness") {
            json b;
            b["kind"] = d.beta.kind;
            if (d.beta.kind == "constant") b["value"] = d.beta.value;
            if (d.beta.kind == "geometric") b["base"] = d.beta.base;
            if (d.beta.kind == "weights") b["weights"] = d.beta.weights;
            o["beta"] = std::move(b);
            if (!d.subspace.whole) {
                json s;
                s["start"] = d.subspace.start;
                s["count"] = d.subspace.count;
                o["subspace"] = std::move(s);
            }
        }
        if (d.analysis == "car") {
            o["alpha"] = entries_to_json(d.alpha);
            o["blocks"] = d.blocks;
            o["modes"] = d.modes;
        }
        if (!d.entry.empty()) o["entry"] = d.entry;
        jobs.push_back(std::move(o));
    }
    out["jobs"] = std::move(jobs);
    return out;
}

namespace {

const std::set<std::string>& operator_kinds() {
    static const std::set<std::string> kinds{"shift",       "weighted_shift", "adjoint",
                                             "diagonal",    "dense",          "block_upper",
                                             "direct_sum",  "car_hankel"};
    return kinds;
}

const std::set<std::string>& analysis_kinds() {
    static const std::set<std::string> kinds{"diagnose", "sylvester", "growth",
                                             "decompose", "certify",  "nearness",
                                             "renorm",    "car",      "gallery"};
    return kinds;
}

void check_reference(const ProblemSpec& spec, const std::string& name,
                     const std::string& path, std::vector<Diagnostic>& out) {
    if (name.empty()) {
        out.push_back({"error", path, "missing operator reference"});
        return;
    }
    if (!spec.operators.count(name))
        out.push_back({"error", path, "unknown operator '" + name + "'"});
}

struct Shape {
    std::size_t rows = 0;
    std::size_t cols = 0;
    bool known = false;
};

// Shapes derivable from the spec alone, without building matrices. Unknown on
// invalid or cyclic definitions; those already carry their own diagnostics.
Shape static_shape(const ProblemSpec& spec, const std::string& name,
                   std::set<std::string>& visiting) {
    auto it = spec.operators.find(name);
    if (it == spec.operators.end() || visiting.count(name)) return {};
    const OperatorDef& d = it->second;
    visiting.insert(name);
    Shape s;
    if (d.kind == "shift" || d.kind == "weighted_shift") {
        std::size_t n = d.block_dim * d.blocks;
        s = {n, n, n > 0};
    } else if (d.kind == "diagonal") {
        s = {d.entries.size(), d.entries.size(), !d.entries.empty()};
    } else if (d.kind == "dense") {
        s = {d.rows, d.cols, d.rows > 0 && d.cols > 0};
    } else if (d.kind == "adjoint") {
        Shape base = static_shape(spec, d.of, visiting);
        s = {base.cols, base.rows, base.known};
    } else if (d.kind == "block_upper") {
        Shape t = static_shape(spec, d.t, visiting);
        Shape v = static_shape(spec, d.v, visiting);
        if (t.known && v.known) s = {t.rows + v.rows, t.cols + v.cols, true};
    } else if (d.kind == "direct_sum") {
        Shape a = static_shape(spec, d.first, visiting);
        Shape b = static_shape(spec, d.second, visiting);
        if (a.known && b.known) s = {a.rows + b.rows, a.cols + b.cols, true};
    } else if (d.kind == "car_hankel") {
        if (d.modes > 0 && d.modes <= kCarModeCap && d.blocks > 0) {
            std::size_t n = (std::size_t{1} << d.modes) * d.blocks;
            if (d.part == "foguel") n *= 2;
            s = {n, n, true};
        }
    }
    visiting.erase(name);
    return s;
}

Shape static_shape(const ProblemSpec& spec, const std::string& name) {
    std::set<std::string> visiting;
    return static_shape(spec, name, visiting);
}

std::string shape_str(const Shape& s) {
    return std::to_string(s.rows) + "x" + std::to_string(s.cols);
}

// The exact-window budget of a shift-like operator: how many powers can be
// taken before the cut edge enters every identity.
std::size_t window_blocks(const ProblemSpec& spec, const std::string& name) {
    auto it = spec.operators.find(name);
    if (it == spec.operators.end()) return 0;
    const OperatorDef& d = it->second;
    if (d.kind == "shift" || d.kind == "weighted_shift") return d.blocks;
    if (d.kind == "car_hankel") return d.blocks;
    if (d.kind == "adjoint") return window_blocks(spec, d.of);
    return 0;
}

void check_coupling_shapes(const ProblemSpec& spec, const JobDef& d,
                           const std::string& path, std::vector<Diagnostic>& out) {
    Shape t = static_shape(spec, d.t);
    Shape v = static_shape(spec, d.v);
    Shape x = static_shape(spec, d.x);
    if (t.known && t.rows != t.cols)
        out.push_back({"error", path + ".t", "not square: " + shape_str(t)});
    if (v.known && v.rows != v.cols)
        out.push_back({"error", path + ".v", "not square: " + shape_str(v)});
    if (t.known && x.known && t.rows != x.rows)
        out.push_back({"error", path,
                       "t and x do not stack: " + shape_str(t) + " vs " + shape_str(x)});
    if (v.known && x.known && v.rows != x.cols)
        out.push_back({"error", path,
                       "x and v do not chain: " + shape_str(x) + " vs " + shape_str(v)});
}

}  // namespace

std::vector<Diagnostic> validate_spec(const ProblemSpec& spec) {
    std::vector<Diagnostic> out;
    if (spec.schema != "oplab-spec/1")
        out.push_back({"error", "$.schema", "unsupported schema '" + spec.schema + "'"});

    for (const auto& [name, d] : spec.operators) {
        const std::string path = "$.operators." + name;
        if (!operator_kinds().count(d.kind)) {
            out.push_back({"error", path, "unknown kind '" + d.kind + "'"});
            continue;
        }
        if (d.kind == "shift" || d.kind == "weighted_shift") {
            if (d.block_dim == 0 || d.blocks == 0)
                out.push_back({"error", path, "block_dim and blocks must be positive"});
            if (d.block_dim * d.blocks > kKroneckerRowCap)
                out.push_back({"error", path, "operator dimension exceeds the size cap"});
        }
        if (d.kind == "weighted_shift" && d.weights.size() + 1 < d.blocks)
            out.push_back({"error", path, "needs at least blocks - 1 weights"});
        for (double w : d.weights)
            if (!(w > 0.0))
                out.push_back({"error", path + ".weights", "weights must be positive"});
        if (d.kind == "diagonal" && d.entries.empty())
            out.push_back({"error", path, "diagonal needs entries"});
        if (d.kind == "dense") {
            if (d.rows == 0 || d.cols == 0)
                out.push_back({"error", path, "dense needs rows and cols"});
            else if (d.entries.size() != d.rows * d.cols)
                out.push_back({"error", path, "dense needs rows * cols entries"});
            if (d.rows > kKroneckerRowCap || d.cols > kKroneckerRowCap)
                out.push_back({"error", path, "operator dimension exceeds the size cap"});
        }
        if (d.kind == "adjoint") check_reference(spec, d.of, path + ".of", out);
        if (d.kind == "block_upper") {
            check_reference(spec, d.t, path + ".t", out);
            check_reference(spec, d.x, path + ".x", out);
            check_reference(spec, d.v, path + ".v", out);
        }
        if (d.kind == "direct_sum") {
            check_reference(spec, d.first, path + ".first", out);
            check_reference(spec, d.second, path + ".second", out);
        }
        if (d.kind == "car_hankel") {
            if (d.part != "gamma" && d.part != "shift" && d.part != "foguel")
                out.push_back({"error", path + ".part",
                               "part must be gamma, shift, or foguel"});
            if (d.entries.empty() || d.blocks == 0)
                out.push_back({"error", path, "needs alpha and blocks"});
            else if (d.modes < d.entries.size() + d.blocks)
                out.push_back({"error", path, "modes must be at least K + N"});
            if (d.modes > kCarModeCap)
                out.push_back({"error", path, "modes exceed the cap"});
        }
    }

    // Reference cycles among adjoint / block_upper / direct_sum.
    {
        std::map<std::string, int> state;  // 0 fresh, 1 visiting, 2 done
        std::vector<std::string> stack;
        auto visit = [&](auto&& self, const std::string& name) -> bool {
            auto it = spec.operators.find(name);
            if (it == spec.operators.end()) return false;
            int& st = state[name];
            if (st == 1) {
                out.push_back({"error", "$.operators." + name,
                               "reference cycle through '" + name + "'"});
                return true;
            }
            if (st == 2) return false;
            st = 1;
            const OperatorDef& d = it->second;
            bool cyc = false;
            for (const std::string* ref : {&d.of, &d.t, &d.x, &d.v, &d.first, &d.second})
                if (!ref->empty() && self(self, *ref)) cyc = true;
            st = 2;
            return cyc;
        };
        for (const auto& [name, d] : spec.operators) visit(visit, name);
    }

    std::set<std::string> job_names;
    for (std::size_t i = 0; i < spec.jobs.size(); ++i) {
        const JobDef& d = spec.jobs[i];
        const std::string path = "$.jobs[" + std::to_string(i) + "]";
        if (!job_names.insert(d.name).second)
            out.push_back({"error", path, "duplicate job name '" + d.name + "'"});
        if (!analysis_kinds().count(d.analysis)) {
            out.push_back({"error", path, "unknown analysis '" + d.analysis + "'"});
            continue;
        }
        if (d.analysis == "diagnose") check_reference(spec, d.op, path + ".operator", out);
        if (d.analysis == "sylvester" || d.analysis == "growth" ||
            d.analysis == "decompose" || d.analysis == "certify") {
            check_reference(spec, d.t, path + ".t", out);
            check_reference(spec, d.v, path + ".v", out);
            check_reference(spec, d.x, path + ".x", out);
            check_coupling_shapes(spec, d, path, out);
            std::size_t blocks = window_blocks(spec, d.v);
            if ((d.analysis == "sylvester" || d.analysis == "growth") && blocks > 0 &&
                d.n_max >= blocks)
                out.push_back({"warning", path + ".n_max",
                               "summation depth reaches the cut edge; identities are "
                               "exact only below " +
                                   std::to_string(blocks) + " blocks"});
        }
        if (d.analysis == "sylvester" && !d.method.empty() && d.method != "direct" &&
            d.method != "partial_sum" && d.method != "cesaro" && d.method != "symmetric")
            out.push_back({"error", path + ".method", "unknown method '" + d.method + "'"});
        if (d.analysis == "growth" && d.side != "right" && d.side != "left" &&
            d.side != "symmetric")
            out.push_back({"error", path + ".side", "side must be right, left, or symmetric"});
        if (d.analysis == "decompose") {
            if (d.dcase != "isometry" && d.dcase != "coisometry" && d.dcase != "weighted")
                out.push_back({"error", path + ".case",
                               "case must be isometry, coisometry, or weighted"});
            if (d.dcase == "weighted") {
                auto it = spec.operators.find(d.v);
                if (it != spec.operators.end() && it->second.kind != "weighted_shift")
                    out.push_back(
                        {"error", path + ".v", "weighted case needs a weighted_shift"});
            }
        }
        if (d.analysis == "nearness") {
            check_reference(spec, d.t, path + ".t", out);
            check_reference(spec, d.c, path + ".c", out);
            if (d.beta.kind != "constant" && d.beta.kind != "geometric" &&
                d.beta.kind != "weights")
                out.push_back({"error", path + ".beta.kind",
                               "beta kind must be constant, geometric, or weights"});
            Shape t = static_shape(spec, d.t);
            Shape c = static_shape(spec, d.c);
            if (t.known && c.known && (t.rows != c.rows || t.cols != c.cols))
                out.push_back({"error", path,
                               "t and c have different shapes: " + shape_str(t) +
                                   " vs " + shape_str(c)});
        }
        if (d.analysis == "renorm") {
            check_reference(spec, d.t, path + ".t", out);
            check_reference(spec, d.v, path + ".v", out);
            check_reference(spec, d.x, path + ".x", out);
            auto it = spec.operators.find(d.v);
            if (it != spec.operators.end() && it->second.kind != "weighted_shift")
                out.push_back({"error", path + ".v", "renorm needs a weighted_shift"});
            if (d.depth == 0)
                out.push_back({"error", path + ".depth", "depth must be positive"});
            check_coupling_shapes(spec, d, path, out);
        }
        if (d.analysis == "car") {
            if (d.alpha.empty() || d.blocks == 0)
                out.push_back({"error", path, "car needs alpha and blocks"});
            else if (d.modes < d.alpha.size() + d.blocks)
                out.push_back({"error", path, "modes must be at least K + N"});
        }
        if (d.analysis == "gallery" && d.entry.empty())
            out.push_back({"error", path, "gallery needs an entry name"});
    }
    return out;
}

namespace {

struct Resolver {
    const ProblemSpec& spec;
    std::map<std::string, ResolvedOperator> done;
    std::set<std::string> visiting;

    const ResolvedOperator& get(const std::string& name) {
        auto hit = done.find(name);
        if (hit != done.end()) return hit->second;
        if (visiting.count(name))
            throw Error("spec: reference cycle through '" + name + "'");
        auto it = spec.operators.find(name);
        if (it == spec.operators.end())
            throw Error("spec: unknown operator '" + name + "'");
        visiting.insert(name);
        ResolvedOperator r = build(it->second);
        visiting.erase(name);
        return done.emplace(name, std::move(r)).first->second;
    }

    ResolvedOperator build(const OperatorDef& d) {
        ResolvedOperator r;
        if (d.kind == "shift") {
            WindowedOperator w = truncated_shift(d.block_dim, d.blocks);
            r.matrix = std::move(w.matrix);
            r.ambient = w.ambient;
        } else if (d.kind == "weighted_shift") {
            WeightedShift w = weighted_shift(BetaSequence::from_weights(d.weights),
                                             d.block_dim, d.blocks);
            r.matrix = std::move(w.op.matrix);
            r.ambient = w.op.ambient;
        } else if (d.kind == "adjoint") {
            const ResolvedOperator& base = get(d.of);
            r.matrix = base.matrix.adjoint();
            r.ambient = base.ambient;
        } else if (d.kind == "diagonal") {
            r.matrix = ComplexMatrix::diagonal(d.entries);
            r.ambient = Ambient{AmbientKind::finite, 1, d.entries.size(), 0};
        } else if (d.kind == "dense") {
            if (d.entries.size() != d.rows * d.cols)
                throw Error("spec: dense operator needs rows * cols entries");
            ComplexMatrix m(d.rows, d.cols);
            for (std::size_t i = 0; i < d.rows; ++i)
                for (std::size_t j = 0; j < d.cols; ++j)
                    m(i, j) = d.entries[i * d.cols + j];
            r.matrix = std::move(m);
            r.ambient = Ambient{AmbientKind::finite, 1, std::max(d.rows, d.cols), 0};
        } else if (d.kind == "block_upper") {
            BlockUpper b{get(d.t).matrix, get(d.x).matrix, get(d.v).matrix};
            r.matrix = b.assemble();
            r.ambient = Ambient{AmbientKind::finite, 1, r.matrix.rows(), 0};
            r.has_block_split = true;
            r.split = b.t.rows();
        } else if (d.kind == "direct_sum") {
            r.matrix = direct_sum(get(d.first).matrix, get(d.second).matrix);
            r.ambient = Ambient{AmbientKind::finite, 1, r.matrix.rows(), 0};
        } else if (d.kind == "car_hankel") {
            HankelSpec hs{d.entries, d.blocks, d.modes};
            if (d.part == "gamma") {
                r.matrix = hankel_gamma(hs);
                r.ambient = Ambient{AmbientKind::truncated_l2,
                                    std::size_t{1} << d.modes, d.blocks, 0};
            } else if (d.part == "shift") {
                WindowedOperator w = hankel_shift(hs);
                r.matrix = std::move(w.matrix);
                r.ambient = w.ambient;
            } else if (d.part == "foguel") {
                FoguelHankel f = foguel_hankel(hs);
                r.matrix = f.op.assemble();
                r.ambient = Ambient{AmbientKind::truncated_l2, f.block_ambient.block_dim,
                                    2 * f.block_ambient.blocks, 0};
                r.has_block_split = true;
                r.split = f.block_ambient.dim();
            } else {
                throw Error("spec: car_hankel part must be gamma, shift, or foguel");
            }
        } else {
            throw Error("spec: unknown operator kind '" + d.kind + "'");
        }
        if (r.matrix.rows() > kKroneckerRowCap || r.matrix.cols() > kKroneckerRowCap)
            throw SizeCapError("spec: operator dimension exceeds the size cap");
        return r;
    }
};

}  // namespace

std::map<std::string, ResolvedOperator> resolve_operators(const ProblemSpec& spec) {
    Resolver res{spec, {}, {}};
    for (const auto& [name, d] : spec.operators) res.get(name);
    return std::move(res.done);
}

}  // namespace oplab
