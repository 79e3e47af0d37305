#pragma once

#include <string>

#include "abf/beamform.hpp"
#include "abf/graph.hpp"
#include "abf/scene.hpp"
#include "json.hpp"

namespace abfcli {

/// Parsed scenario: scene, graph recipe, solver and simulation knobs.
/// Angles are degrees in the file and radians in the Scene.
struct ScenarioConfig {
    abf::Scene scene;
    std::string graph_mode = "complete";  // complete|empty|path|threshold|explicit
    double gamma = 0.0;
    std::vector<std::pair<int, int>> edges;
    abf::SolveOptions solver;
    double noise_std = 0.0;
    double threshold = 0.0;
    std::uint64_t seed = 0;
    int samples = 100000;
};

/// Throws std::invalid_argument on schema violations (including unknown
/// fields, which are rejected).
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);

/// Canonical re-serialization; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const ScenarioConfig& config);

/// Graph implied by the config (threshold mode computes the confusion
/// table analytically, falling back to Monte-Carlo for unequal
/// covariances).
abf::AmbiguityGraph config_graph(const ScenarioConfig& config);

}  // namespace abfcli
