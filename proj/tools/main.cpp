#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oplab/errors.hpp"
#include "oplab/jobs.hpp"
#include "oplab/opspec.hpp"

namespace {

namespace fs = std::filesystem;

int write_results(const std::vector<oplab::JobResult>& results, const std::string& out_dir) {
    fs::create_directories(out_dir);
    for (const oplab::JobResult& r : results) {
        for (const auto& [name, content] : r.files) {
            fs::path target = fs::path(out_dir) / name;
            std::ofstream out(target, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write " << target.string() << "\n";
                return 3;
            }
            out << content;
        }
        std::cout << r.name << ": wrote " << r.files.size() << " file(s)\n";
    }
    return 0;
}

int cmd_validate(const std::string& spec_path) {
    oplab::ProblemSpec spec;
    try {
        spec = oplab::load_spec_file(spec_path);
    } catch (const oplab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::vector<oplab::Diagnostic> diags = oplab::validate_spec(spec);
    bool bad = false;
    for (const oplab::Diagnostic& d : diags) {
        (d.level == "error" ? std::cerr : std::cout)
            << d.level << " " << d.path << ": " << d.message << "\n";
        bad = bad || d.level == "error";
    }
    if (bad) return 2;
    std::cout << "ok: " << spec.operators.size() << " operator(s), " << spec.jobs.size()
              << " job(s)\n";
    return 0;
}

int cmd_run(const std::string& spec_path, const std::string& job_filter,
            const std::string& out_dir, std::uint64_t seed, double tol) {
    oplab::ProblemSpec spec;
    try {
        spec = oplab::load_spec_file(spec_path);
    } catch (const oplab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::vector<oplab::Diagnostic> diags = oplab::validate_spec(spec);
    bool bad = false;
    for (const oplab::Diagnostic& d : diags) {
        if (d.level != "error") continue;
        std::cerr << "error " << d.path << ": " << d.message << "\n";
        bad = true;
    }
    if (bad) return 2;
    if (!job_filter.empty()) {
        std::vector<oplab::JobDef> kept;
        for (const oplab::JobDef& j : spec.jobs)
            if (j.name == job_filter) kept.push_back(j);
        if (kept.empty()) {
            std::cerr << "error: no job named '" << job_filter << "'\n";
            return 2;
        }
        spec.jobs = std::move(kept);
    }
    oplab::RunOptions opt;
    opt.seed = seed;
    opt.tol = tol;
    std::vector<oplab::JobResult> results;
    try {
        results = oplab::run_jobs(spec, opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return write_results(results, out_dir);
}

int cmd_gallery(const std::string& entry, const std::string& out_dir, std::uint64_t seed) {
    oplab::RunOptions opt;
    opt.seed = seed;
    std::vector<oplab::JobResult> results;
    try {
        results.push_back(oplab::run_gallery_entry(entry, opt));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return write_results(results, out_dir);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator similarity and renorming toolbox"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string job_filter;
    std::string out_dir = "out";
    std::string entry;
    std::uint64_t seed = 1;
    double tol = 0.0;

    CLI::App* validate = app.add_subcommand("validate", "check a problem spec");
    validate->add_option("--spec", spec_path, "problem spec JSON file")->required();

    CLI::App* run = app.add_subcommand("run", "run the jobs in a problem spec");
    run->add_option("--spec", spec_path, "problem spec JSON file")->required();
    run->add_option("--job", job_filter, "run only the job with this name");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--seed", seed, "seed for sampled checks");
    run->add_option("--tol", tol, "override the solve and identity tolerances");

    CLI::App* gallery = app.add_subcommand("list-gallery", "list built-in worked examples");
    (void)gallery;

    CLI::App* show = app.add_subcommand("gallery", "run one built-in worked example");
    show->add_option("entry", entry, "gallery entry name")->required();
    show->add_option("--out", out_dir, "output directory");
    show->add_option("--seed", seed, "seed for sampled checks");

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return cmd_validate(spec_path);
    if (run->parsed()) return cmd_run(spec_path, job_filter, out_dir, seed, tol);
    if (gallery->parsed()) {
        for (const std::string& name : oplab::gallery_entries()) std::cout << name << "\n";
        return 0;
    }
    if (show->parsed()) return cmd_gallery(entry, out_dir, seed);
    return 0;
}
