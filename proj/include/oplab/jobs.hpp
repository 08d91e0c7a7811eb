#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "oplab/opspec.hpp"

namespace oplab {

struct RunOptions {
    std::uint64_t seed = 1;
    double tol = 0.0;  // 0 keeps the library defaults
};

// One job's outputs. `files` maps file names (including "<name>.json", the
// serialized summary) to their exact byte content; callers decide where to
// put them. Nothing here touches the filesystem.
struct JobResult {
    std::string name;
    nlohmann::json summary;
    std::map<std::string, std::string> files;
};

std::vector<JobResult> run_jobs(const ProblemSpec& spec, const RunOptions& opt);

std::vector<std::string> gallery_entries();
JobResult run_gallery_entry(const std::string& entry, const RunOptions& opt);

}  // namespace oplab
