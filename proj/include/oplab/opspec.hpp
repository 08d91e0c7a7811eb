#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "oplab/matrix.hpp"
#include "oplab/window.hpp"

namespace oplab {

// Operator description as it appears in a problem file. Exactly the fields
// relevant to `kind` are meaningful; the rest keep their defaults.
struct OperatorDef {
    std::string kind;  // shift | weighted_shift | adjoint | diagonal | dense |
                       // block_upper | direct_sum | car_hankel
    std::size_t block_dim = 1;
    std::size_t blocks = 1;
    std::vector<double> weights;
    std::vector<complexd> entries;  // diagonal or dense entries, or alpha
    std::size_t rows = 0, cols = 0;
    std::size_t modes = 0;
    std::string part;  // car_hankel: gamma | shift | foguel
    std::string of, t, x, v, first, second;
};

struct BetaDef {
    std::string kind = "constant";  // constant | geometric | weights
    double value = 1.0;
    double base = 1.0;
    std::vector<double> weights;
};

struct SubspaceDef {
    bool whole = true;
    std::size_t start = 0;
    std::size_t count = 0;
};

struct JobDef {
    std::string name;
    std::string analysis;  // diagnose | sylvester | growth | decompose | certify |
                           // nearness | renorm | car | gallery
    std::string op;
    std::string t, v, x, c;
    std::string method;    // sylvester: direct | partial_sum | cesaro | symmetric
    std::string side;      // growth: right | left | symmetric
    std::string dcase;     // decompose: isometry | coisometry | weighted
    std::string z_method;  // decompose/certify: direct | partial_sum
    std::size_t n_max = 16;
    std::size_t depth = 4;
    std::size_t samples = 25;
    BetaDef beta;
    SubspaceDef subspace;
    std::vector<complexd> alpha;  // car
    std::size_t blocks = 0, modes = 0;
    std::string entry;  // gallery
};

struct ProblemSpec {
    std::string schema;  // "oplab-spec/1"
    std::map<std::string, OperatorDef> operators;
    std::vector<JobDef> jobs;
};

// Structural parse; throws Error with a path-tagged message on malformed input.
ProblemSpec parse_spec(const nlohmann::json& j);
ProblemSpec load_spec_file(const std::string& path);

// Canonical emission; parse(emit(s)) reproduces s value for value.
nlohmann::json emit_spec(const ProblemSpec& spec);

struct Diagnostic {
    std::string level;  // "error" | "warning"
    std::string path;
    std::string message;
};

// Semantic checks: schema tag, kinds, references, cycles, shape consistency.
std::vector<Diagnostic> validate_spec(const ProblemSpec& spec);

struct ResolvedOperator {
    ComplexMatrix matrix;
    Ambient ambient;
    bool has_block_split = false;
    std::size_t split = 0;  // block_upper: rows of the top-left block
};

// Builds every operator; throws on unresolved references or cycles.
std::map<std::string, ResolvedOperator> resolve_operators(const ProblemSpec& spec);

}  // namespace oplab
