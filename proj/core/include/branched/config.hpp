#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "branched/cover.hpp"
#include "branched/geometry.hpp"
#include "branched/grid.hpp"

namespace branched {

/// Malformed or structurally invalid configuration input. Semantic cover
/// violations (non-bijective permutations, disconnected covers, cells out
/// of range) are not config errors; they surface via validate_cover.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SplineConfig {
    std::string kind = "bspline";  // "bspline" or "fvs"
    int degree = 2;                // bspline only, 1 or 2
};

/// One pipeline run: grid, cover layout, spline family, embedding, output.
struct RunConfig {
    TorusGrid grid{4, 4};
    int sheets = 1;
    std::vector<CutCrossing> crossings;
    SplineConfig spline;
    EmbeddingConfig embedding;
    std::string output;

    BranchedCoverSpec cover_spec() const { return {grid, sheets, crossings}; }
};

/// Parses the JSON document; throws ConfigError on anything malformed.
RunConfig parse_run_config(const std::string& json_text);

/// Reads and parses a config file; throws ConfigError when unreadable.
RunConfig load_run_config(const std::string& path);

}  // namespace branched
