#pragma once

#include "hermsurf/flow.hpp"
#include "hermsurf/webster.hpp"

#include <map>
#include <string>
#include <vector>

namespace hermsurf {

/// A scene file is plain text: `key = value` lines, `#` comments and
/// optional `[section]` headers that prefix the keys below them
/// (`[tol]` + `chern = 1e-6` is the key `tol.chern`).
struct Scene {
    std::string name = "scene";
    std::string metric;  // catalogue name; empty means the subject's own metric
    std::string g11, g12, g22;  // expression metric, used when g11 is set
    std::string immersion = "slanted-flat-torus";
    ImmersionParams params;
    int grid = 128;
    WebsterConfig webster;
    bool run_flow = false;
    FlowConfig flow;
    bool emit_plots = false;
    bool dump_fields = false;
    std::string output_dir = ".";
};

/// Flat key-value view of a scene file with section prefixes applied.
std::map<std::string, std::string> parse_key_values(const std::string& text);
Scene parse_scene(const std::string& text);
Scene load_scene(const std::string& path);
/// Throws ConfigError unless tolerances are positive and the grid is a power
/// of two in [32, 512].
void validate(const Scene& scene);

struct SceneResult {
    int exit_code = 0;
    std::string report_path;
    std::vector<std::string> dumps;
    std::vector<std::string> images;
    WebsterReport report;
    bool flow_ran = false;
    FlowState flow;
};

/// pullback → jets → angle → webster, with the flow first when requested.
/// Writes `<output_dir>/<name>.report`; exit code 0 iff every gate passes.
SceneResult run_scene(const Scene& scene);

/// Serializes the effective configuration and the report.
std::string format_report(const Scene& scene, const WebsterReport& report, const SceneResult& result);

}  // namespace hermsurf
