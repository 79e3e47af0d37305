#include "config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "abf/gating.hpp"

namespace abfcli {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument("config: unknown field '" + it.key() +
                                        "' in " + where);
}

}  // namespace

ScenarioConfig parse_config(const json& j) {
    reject_unknown(j, {"array", "targets", "graph", "solver", "simulation"}, "root");
    ScenarioConfig c;

    const json& arr = j.at("array");
    reject_unknown(arr, {"type", "n_antennas"}, "array");
    if (arr.value("type", "ula") != "ula")
        throw std::invalid_argument("config: array.type must be \"ula\"");
    c.scene.array.n_antennas = arr.at("n_antennas").get<int>();

    for (const json& t : j.at("targets")) {
        reject_unknown(t,
                       {"azimuth_deg", "tau_mean", "omega_mean", "tau_std",
                        "omega_std", "rcs_re", "rcs_im"},
                       "targets[]");
        abf::Target tgt;
        tgt.azimuth = abf::deg_to_rad(t.at("azimuth_deg").get<double>());
        tgt.tau_mean = t.at("tau_mean").get<double>();
        tgt.omega_mean = t.at("omega_mean").get<double>();
        tgt.tau_std = t.at("tau_std").get<double>();
        tgt.omega_std = t.at("omega_std").get<double>();
        tgt.rcs = abf::Complex(t.value("rcs_re", 1.0), t.value("rcs_im", 0.0));
        c.scene.targets.push_back(tgt);
    }

    if (j.contains("graph")) {
        const json& g = j.at("graph");
        reject_unknown(g, {"mode", "gamma", "edges"}, "graph");
        c.graph_mode = g.value("mode", "complete");
        const std::set<std::string> modes = {"complete", "empty", "path",
                                             "threshold", "explicit"};
        if (!modes.count(c.graph_mode))
            throw std::invalid_argument("config: bad graph.mode '" + c.graph_mode + "'");
        c.gamma = g.value("gamma", 0.0);
        if (g.contains("edges"))
            for (const json& e : g.at("edges")) {
                if (!e.is_array() || e.size() != 2)
                    throw std::invalid_argument("config: graph.edges entries are pairs");
                c.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
    }

    if (j.contains("solver")) {
        const json& s = j.at("solver");
        reject_unknown(s, {"delta", "gap_tol", "feasibility_tol"}, "solver");
        c.solver.interference_bound = s.value("delta", 0.0);
        c.solver.gap_tol = s.value("gap_tol", 1e-9);
        c.solver.feasibility_tol = s.value("feasibility_tol", 1e-7);
    }

    if (j.contains("simulation")) {
        const json& s = j.at("simulation");
        reject_unknown(s, {"noise_std", "threshold", "seed", "samples"}, "simulation");
        c.noise_std = s.value("noise_std", 0.0);
        c.threshold = s.value("threshold", 0.0);
        c.seed = s.value("seed", std::uint64_t{0});
        c.samples = s.value("samples", 100000);
    }

    abf::validate(c.scene);
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    return parse_config(j);
}

json to_json(const ScenarioConfig& c) {
    json j;
    j["array"] = {{"type", "ula"}, {"n_antennas", c.scene.array.n_antennas}};
    j["targets"] = json::array();
    for (const abf::Target& t : c.scene.targets)
        j["targets"].push_back({{"azimuth_deg", abf::rad_to_deg(t.azimuth)},
                                {"tau_mean", t.tau_mean},
                                {"omega_mean", t.omega_mean},
                                {"tau_std", t.tau_std},
                                {"omega_std", t.omega_std},
                                {"rcs_re", t.rcs.real()},
                                {"rcs_im", t.rcs.imag()}});
    json edges = json::array();
    for (auto [a, b] : c.edges) edges.push_back({a, b});
    j["graph"] = {{"mode", c.graph_mode}, {"gamma", c.gamma}, {"edges", edges}};
    j["solver"] = {{"delta", c.solver.interference_bound},
                   {"gap_tol", c.solver.gap_tol},
                   {"feasibility_tol", c.solver.feasibility_tol}};
    j["simulation"] = {{"noise_std", c.noise_std},
                       {"threshold", c.threshold},
                       {"seed", c.seed},
                       {"samples", c.samples}};
    return j;
}

abf::AmbiguityGraph config_graph(const ScenarioConfig& c) {
    const int nk = c.scene.n_targets();
    if (c.graph_mode == "complete")
        return abf::standard_graph(nk, abf::GraphKind::Complete);
    if (c.graph_mode == "empty")
        return abf::standard_graph(nk, abf::GraphKind::Empty);
    if (c.graph_mode == "path")
        return abf::standard_graph(nk, abf::GraphKind::Path);
    if (c.graph_mode == "explicit") {
        abf::AmbiguityGraph g(nk);
        for (auto [a, b] : c.edges) g.set_edge(a, b);
        return g;
    }
    // threshold
    abf::ConfusionOptions copts;
    copts.seed = c.seed;
    copts.n_samples = c.samples;
    abf::ConfusionTable table;
    try {
        table = abf::confusion_table(c.scene, copts);
    } catch (const std::invalid_argument&) {
        copts.method = abf::ConfusionMethod::MonteCarlo;
        table = abf::confusion_table(c.scene, copts);
    }
    return abf::threshold_graph(c.gamma, table);
}

}  // namespace abfcli
