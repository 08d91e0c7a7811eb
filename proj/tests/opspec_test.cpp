#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oplab/errors.hpp"
#include "oplab/opspec.hpp"
#include "test_support.hpp"

using namespace oplab;
using nlohmann::json;

namespace {

bool has_diag(const std::vector<Diagnostic>& diags, const std::string& level,
              const std::string& path_part, const std::string& msg_part) {
    for (const Diagnostic& d : diags)
        if (d.level == level && d.path.find(path_part) != std::string::npos &&
            d.message.find(msg_part) != std::string::npos)
            return true;
    return false;
}

template <typename Fn>
std::string error_message(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

json full_example() {
    return json::parse(R"({
        "schema": "oplab-spec/1",
        "operators": {
            "s": {"kind": "shift", "block_dim": 1, "blocks": 4},
            "sw": {"kind": "weighted_shift", "block_dim": 1, "blocks": 3,
                   "weights": [2.0, 0.5]},
            "sadj": {"kind": "adjoint", "of": "s"},
            "d": {"kind": "diagonal", "entries": [[1, 0], [2, 0], [3, 0]]},
            "a": {"kind": "dense", "rows": 2, "cols": 2,
                  "entries": [[0.5, 0], [0, 0.1], [0, 0], [0.25, 0]]},
            "x": {"kind": "dense", "rows": 2, "cols": 4,
                  "entries": [[1, 0], [0, 0], [0, 1], [0, 0],
                               [0, 0], [1, 0], [0, 0], [0.5, 0]]},
            "r": {"kind": "block_upper", "t": "a", "x": "x", "v": "s"},
            "both": {"kind": "direct_sum", "first": "a", "second": "d"},
            "gam": {"kind": "car_hankel", "part": "gamma",
                    "alpha": [[0, 0], [1, 0]], "blocks": 2, "modes": 4}
        },
        "jobs": [
            {"name": "look", "analysis": "diagnose", "operator": "r", "n_max": 6},
            {"name": "solve", "analysis": "sylvester", "t": "a", "v": "s", "x": "x",
             "method": "direct", "n_max": 3},
            {"name": "drift", "analysis": "nearness", "t": "a", "c": "a",
             "beta": {"kind": "geometric", "base": 2.0}, "n_max": 3,
             "subspace": {"start": 0, "count": 1}},
            {"name": "fock", "analysis": "car", "alpha": [[0, 0], [1, 0]],
             "blocks": 2, "modes": 4, "n_max": 2},
            {"name": "walls", "analysis": "gallery", "entry": "jordan-bounds"}
        ]
    })");
}

}  // namespace

TEST_CASE("emission is a fixed point of parsing") {
    ProblemSpec spec = parse_spec(full_example());
    CHECK(spec.schema == "oplab-spec/1");
    CHECK(spec.operators.size() == 9);
    REQUIRE(spec.jobs.size() == 5);
    CHECK(spec.jobs[1].method == "direct");
    CHECK(spec.jobs[2].beta.kind == "geometric");
    CHECK(spec.jobs[2].beta.base == 2.0);
    CHECK_FALSE(spec.jobs[2].subspace.whole);
    CHECK(spec.jobs[2].subspace.count == 1);
    CHECK(spec.jobs[3].alpha.size() == 2);

    json first = emit_spec(spec);
    json second = emit_spec(parse_spec(first));
    CHECK(first == second);

    CHECK(validate_spec(spec).empty());
}

TEST_CASE("parse rejects malformed input with a path") {
    CHECK(error_message([] { (void)parse_spec(json::array()); }).find("top-level") !=
          std::string::npos);
    CHECK(error_message([] { (void)parse_spec(json::object()); })
              .find("missing field 'schema'") != std::string::npos);

    json bad = full_example();
    bad["operators"]["d"]["entries"] = json::array({1.0, 2.0});
    std::string msg = error_message([&] { (void)parse_spec(bad); });
    CHECK(msg.find("$.operators.d.entries") != std::string::npos);
    CHECK(msg.find("[re, im]") != std::string::npos);

    json badjob = full_example();
    badjob["jobs"][0].erase("name");
    CHECK(error_message([&] { (void)parse_spec(badjob); }).find("$.jobs[0]") !=
          std::string::npos);

    json badnum = full_example();
    badnum["operators"]["s"]["blocks"] = -3;
    CHECK(error_message([&] { (void)parse_spec(badnum); })
              .find("nonnegative integer") != std::string::npos);
}

TEST_CASE("file loading reports parse failures") {
    const std::string path = "opspec_test_bad.json";
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    std::string msg = error_message([&] { (void)load_spec_file(path); });
    CHECK(msg.find("parse failure") != std::string::npos);
    std::remove(path.c_str());
    CHECK(error_message([] { (void)load_spec_file("no_such_file.json"); })
              .find("cannot open") != std::string::npos);
}

TEST_CASE("validation flags schema, kinds, and field problems") {
    json j = full_example();
    j["schema"] = "other/9";
    j["operators"]["weird"] = {{"kind", "mystery"}};
    j["operators"]["thin"] = {{"kind", "weighted_shift"}, {"block_dim", 1},
                              {"blocks", 4}, {"weights", {2.0}}};
    j["operators"]["short"] = {{"kind", "dense"}, {"rows", 2}, {"cols", 2},
                               {"entries", {{1.0, 0.0}}}};
    j["operators"]["crowded"] = {{"kind", "car_hankel"}, {"part", "gamma"},
                                 {"alpha", {{1.0, 0.0}}}, {"blocks", 3}, {"modes", 3}};
    j["operators"]["odd"] = {{"kind", "car_hankel"}, {"part", "middle"},
                             {"alpha", {{1.0, 0.0}}}, {"blocks", 1}, {"modes", 2}};
    ProblemSpec spec = parse_spec(j);
    auto diags = validate_spec(spec);
    CHECK(has_diag(diags, "error", "$.schema", "unsupported schema"));
    CHECK(has_diag(diags, "error", "$.operators.weird", "unknown kind 'mystery'"));
    CHECK(has_diag(diags, "error", "$.operators.thin", "blocks - 1 weights"));
    CHECK(has_diag(diags, "error", "$.operators.short", "rows * cols entries"));
    CHECK(has_diag(diags, "error", "$.operators.crowded", "at least K + N"));
    CHECK(has_diag(diags, "error", "$.operators.odd.part", "gamma, shift, or foguel"));
}

TEST_CASE("validation flags reference and job problems") {
    json j = full_example();
    j["operators"]["loop_a"] = {{"kind", "adjoint"}, {"of", "loop_b"}};
    j["operators"]["loop_b"] = {{"kind", "adjoint"}, {"of", "loop_a"}};
    j["operators"]["dangling"] = {{"kind", "adjoint"}, {"of", "ghost"}};
    j["jobs"].push_back({{"name", "look"}, {"analysis", "diagnose"}, {"operator", "a"}});
    j["jobs"].push_back({{"name", "odd1"}, {"analysis", "alchemy"}});
    j["jobs"].push_back({{"name", "odd2"}, {"analysis", "sylvester"}, {"t", "a"},
                         {"v", "s"}, {"x", "x"}, {"method", "fastest"}});
    j["jobs"].push_back({{"name", "odd3"}, {"analysis", "growth"}, {"t", "a"},
                         {"v", "s"}, {"x", "x"}, {"side", "up"}});
    j["jobs"].push_back({{"name", "odd4"}, {"analysis", "decompose"}, {"t", "a"},
                         {"v", "s"}, {"x", "x"}, {"case", "weighted"}});
    j["jobs"].push_back({{"name", "odd5"}, {"analysis", "renorm"}, {"t", "a"},
                         {"v", "s"}, {"x", "x"}, {"depth", 0}});
    j["jobs"].push_back({{"name", "odd6"}, {"analysis", "gallery"}});
    ProblemSpec spec = parse_spec(j);
    auto diags = validate_spec(spec);
    CHECK(has_diag(diags, "error", "$.operators.loop_", "reference cycle"));
    CHECK(has_diag(diags, "error", "$.operators.dangling.of", "unknown operator 'ghost'"));
    CHECK(has_diag(diags, "error", "$.jobs[5]", "duplicate job name 'look'"));
    CHECK(has_diag(diags, "error", "$.jobs[6]", "unknown analysis 'alchemy'"));
    CHECK(has_diag(diags, "error", "$.jobs[7].method", "unknown method 'fastest'"));
    CHECK(has_diag(diags, "error", "$.jobs[8].side", "right, left, or symmetric"));
    CHECK(has_diag(diags, "error", "$.jobs[9].v", "needs a weighted_shift"));
    CHECK(has_diag(diags, "error", "$.jobs[10].depth", "must be positive"));
    CHECK(has_diag(diags, "error", "$.jobs[11]", "needs an entry name"));
}

TEST_CASE("validation reports both shapes on a mismatch") {
    json j = full_example();
    j["jobs"].push_back({{"name", "clash"}, {"analysis", "sylvester"},
                         {"t", "a"}, {"v", "s"}, {"x", "d"}});
    ProblemSpec spec = parse_spec(j);
    auto diags = validate_spec(spec);
    // x is 3x3 while t is 2x2 and v is 4x4; both sides must be spelled out
    CHECK(has_diag(diags, "error", "$.jobs[5]", "2x2 vs 3x3"));
    CHECK(has_diag(diags, "error", "$.jobs[5]", "3x3 vs 4x4"));
}

TEST_CASE("validation warns when the summation depth hits the cut edge") {
    json j = full_example();
    j["jobs"][1]["n_max"] = 7;  // v has 4 blocks
    ProblemSpec spec = parse_spec(j);
    auto diags = validate_spec(spec);
    CHECK(has_diag(diags, "warning", "$.jobs[1].n_max", "cut edge"));
    j["jobs"][1]["n_max"] = 3;
    CHECK(validate_spec(parse_spec(j)).empty());
}

TEST_CASE("operators resolve to the matrices the definitions describe") {
    ProblemSpec spec = parse_spec(full_example());
    auto ops = resolve_operators(spec);

    const ResolvedOperator& s = ops.at("s");
    CHECK(s.matrix.rows() == 4);
    CHECK(s.matrix(1, 0) == complexd(1.0));
    CHECK(s.matrix(0, 1) == complexd(0.0));
    CHECK(s.ambient.blocks == 4);
    CHECK(s.ambient.guard == 1);

    const ResolvedOperator& sw = ops.at("sw");
    CHECK(sw.matrix(1, 0) == complexd(2.0));
    CHECK(sw.matrix(2, 1) == complexd(0.5));

    const ResolvedOperator& sadj = ops.at("sadj");
    CHECK(oracle::max_abs_diff(sadj.matrix, s.matrix.adjoint()) == 0.0);
    CHECK(sadj.ambient.blocks == 4);  // window carried through

    const ResolvedOperator& d = ops.at("d");
    CHECK(d.matrix(2, 2) == complexd(3.0));

    const ResolvedOperator& a = ops.at("a");
    CHECK(a.matrix(0, 1) == complexd(0.0, 0.1));

    const ResolvedOperator& r = ops.at("r");
    CHECK(r.matrix.rows() == 6);
    CHECK(r.has_block_split);
    CHECK(r.split == 2);
    CHECK(r.matrix(0, 2) == complexd(1.0));   // x lands in the top-right corner
    CHECK(r.matrix(3, 2) == complexd(1.0));   // shift in the bottom-right corner

    const ResolvedOperator& both = ops.at("both");
    CHECK(both.matrix.rows() == 5);
    CHECK(both.matrix(2, 2) == complexd(1.0));

    const ResolvedOperator& gam = ops.at("gam");
    CHECK(gam.matrix.rows() == 32);
    CHECK(gam.ambient.block_dim == 16);
    CHECK(gam.ambient.kind == AmbientKind::truncated_l2);
}

TEST_CASE("resolution failures carry their cause") {
    json j = full_example();
    j["operators"]["loop_a"] = {{"kind", "adjoint"}, {"of", "loop_b"}};
    j["operators"]["loop_b"] = {{"kind", "adjoint"}, {"of", "loop_a"}};
    ProblemSpec cyc = parse_spec(j);
    CHECK(error_message([&] { (void)resolve_operators(cyc); })
              .find("reference cycle") != std::string::npos);

    json big = json::parse(R"({
        "schema": "oplab-spec/1",
        "operators": {"huge": {"kind": "shift", "block_dim": 64, "blocks": 65}},
        "jobs": []
    })");
    ProblemSpec cap = parse_spec(big);
    CHECK(has_diag(validate_spec(cap), "error", "$.operators.huge", "size cap"));
    CHECK_THROWS_AS((void)resolve_operators(cap), SizeCapError);
}
