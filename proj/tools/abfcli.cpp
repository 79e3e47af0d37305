#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "abf/tradeoff.hpp"
#include "abf/waveform.hpp"
#include "config.hpp"
#include "emit.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitInfeasible = 4;

int fail(const std::string& kind, const std::string& message, int code) {
    json err = {{"error", message}, {"kind", kind}};
    std::cerr << err.dump() << "\n";
    return code;
}

json residual_report(const abf::BeamformResult& res, const abf::Scene& scene,
                     const abf::AmbiguityGraph& graph) {
    const Eigen::MatrixXcd& r = res.matrix.entries;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r);
    double max_cross = 0.0;
    for (int k = 0; k < graph.n_vertices(); ++k)
        for (int j = k + 1; j < graph.n_vertices(); ++j)
            if (graph.has_edge(k, j)) {
                const auto ak = abf::steering(scene.array, scene.targets[k].azimuth);
                const auto aj = abf::steering(scene.array, scene.targets[j].azimuth);
                max_cross = std::max(max_cross, std::abs((ak.adjoint() * r * aj)(0)));
            }
    return {{"trace_error", std::abs(r.trace().real() - 1.0)},
            {"min_eigenvalue", eig.eigenvalues().minCoeff()},
            {"max_edge_cross_term", max_cross},
            {"hermitian_error", (r - r.adjoint().eval()).norm()}};
}

const char* status_name(abf::BeamformStatus s) {
    switch (s) {
        case abf::BeamformStatus::Optimal: return "optimal";
        case abf::BeamformStatus::Infeasible: return "infeasible";
        default: return "numerical-failure";
    }
}

int status_code(abf::BeamformStatus s) {
    if (s == abf::BeamformStatus::Optimal) return kExitOk;
    return s == abf::BeamformStatus::Infeasible ? kExitInfeasible : kExitSolver;
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ambiguity-aware MIMO radar beamforming and association toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    std::uint64_t seed = 0;
    int samples = 100000;
    double gamma = -1.0, delta = -1.0;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* opt = cmd->add_option("--config", config_path, "scenario JSON");
        if (needs_config) opt->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed, "RNG seed override");
        cmd->add_option("--samples", samples, "Monte-Carlo sample count");
        cmd->add_option("--gamma", gamma, "threshold override");
        cmd->add_option("--delta", delta, "interference bound override");
    };

    auto* cmd_beamform = app.add_subcommand("beamform", "solve the beamforming SDP");
    add_common(cmd_beamform, true);

    auto* cmd_pattern = app.add_subcommand("pattern", "beam patterns on a 1 degree grid");
    add_common(cmd_pattern, true);

    auto* cmd_powergain =
        app.add_subcommand("powergain", "path/complete power-gain ratio vs N");
    add_common(cmd_powergain, false);
    int n_min = 3, n_max = 8;
    cmd_powergain->add_option("--n-min", n_min, "smallest N");
    cmd_powergain->add_option("--n-max", n_max, "largest N");

    auto* cmd_ident = app.add_subcommand("identifiability", "largest identifiable K");
    add_common(cmd_ident, false);
    std::string family = "complete";
    int ident_n = 3, k_max = 0;
    cmd_ident->add_option("--family", family, "complete or path");
    cmd_ident->add_option("--n", ident_n, "number of antennas")->required();
    cmd_ident->add_option("--k-max", k_max, "scan limit (default 2N+2)");

    auto* cmd_tradeoff = app.add_subcommand("tradeoff", "gamma sweep of (P, C) points");
    add_common(cmd_tradeoff, true);
    bool exhaustive_flag = false, long_run = false;
    cmd_tradeoff->add_flag("--exhaustive", exhaustive_flag, "enumerate all graphs");
    cmd_tradeoff->add_flag("--long-run", long_run, "unlock K=6 enumeration");

    auto* cmd_waveform = app.add_subcommand("waveform", "generate and verify waveforms");
    add_common(cmd_waveform, false);
    int wf_n = 2;
    double wf_b = 1000.0, wf_t = 1.0, sidelobe = 0.1;
    cmd_waveform->add_option("--n", wf_n, "number of waveforms");
    cmd_waveform->add_option("--bandwidth", wf_b, "bandwidth in Hz");
    cmd_waveform->add_option("--duration", wf_t, "duration in seconds");
    cmd_waveform->add_option("--sidelobe", sidelobe, "sidelobe level delta");

    auto* cmd_simulate =
        app.add_subcommand("simulate", "matched filter, detect, associate");
    add_common(cmd_simulate, true);
    bool non_ideal = false;
    double sim_b = 1000.0, sim_t = 1.0;
    cmd_simulate->add_flag("--non-ideal", non_ideal, "use actual waveform ambiguity");
    cmd_simulate->add_option("--bandwidth", sim_b, "waveform bandwidth (non-ideal)");
    cmd_simulate->add_option("--duration", sim_t, "waveform duration (non-ideal)");

    CLI11_PARSE(app, argc, argv);

    try {
        fs::create_directories(out_dir);
    } catch (const std::exception& e) {
        return fail("config", e.what(), kExitConfig);
    }

    abfcli::ScenarioConfig cfg;
    const bool has_config = !config_path.empty();
    if (has_config) {
        try {
            cfg = abfcli::load_config(config_path);
        } catch (const std::exception& e) {
            return fail("config", e.what(), kExitConfig);
        }
        if (seed != 0) cfg.seed = seed;
        if (samples != 100000) cfg.samples = samples;
        if (gamma >= 0.0) cfg.gamma = gamma;
        if (delta >= 0.0) cfg.solver.interference_bound = delta;
    }

    try {
        if (*cmd_beamform || *cmd_pattern) {
            const abf::AmbiguityGraph graph = abfcli::config_graph(cfg);
            const abf::BeamformResult res = abf::solve(cfg.scene, graph, cfg.solver);
            json report = {{"status", status_name(res.status)},
                           {"objective", res.objective},
                           {"objective_db", res.objective > 0.0
                                                ? abf::to_db(res.objective)
                                                : -std::numeric_limits<double>::infinity()},
                           {"gap", res.gap},
                           {"graph", graph.to_edge_string()},
                           {"config", abfcli::to_json(cfg)}};
            if (res.status == abf::BeamformStatus::Optimal) {
                report["residuals"] = residual_report(res, cfg.scene, graph);
                json rows = json::array();
                for (int i = 0; i < res.matrix.entries.rows(); ++i) {
                    json row = json::array();
                    for (int j = 0; j < res.matrix.entries.cols(); ++j)
                        row.push_back({res.matrix.entries(i, j).real(),
                                       res.matrix.entries(i, j).imag()});
                    rows.push_back(row);
                }
                report["R"] = rows;
            }
            std::cout << report.dump(2) << "\n";
            std::ofstream(fs::path(out_dir) / "beamform.json") << report.dump(2) << "\n";
            if (res.status != abf::BeamformStatus::Optimal)
                return status_code(res.status);

            if (*cmd_pattern) {
                std::vector<double> grid;
                for (int d = -90; d <= 90; ++d) grid.push_back(abf::deg_to_rad(d));
                std::vector<std::vector<std::string>> rows;
                std::vector<abfcli::Series> series;
                const char* colors[] = {"#1f6fb2", "#c23b22", "#3a9d4f", "#8a5cb8",
                                        "#c9861f", "#4db6ac"};
                for (int k = 0; k < cfg.scene.n_targets(); ++k) {
                    const auto mags = abf::beam_pattern(res.matrix, cfg.scene, k, grid);
                    abfcli::Series s;
                    s.color = colors[k % 6];
                    for (size_t i = 0; i < grid.size(); ++i) {
                        rows.push_back({abfcli::fmt(abf::rad_to_deg(grid[i])),
                                        std::to_string(k), abfcli::fmt(mags[i])});
                        s.x.push_back(abf::rad_to_deg(grid[i]));
                        s.y.push_back(mags[i]);
                    }
                    series.push_back(std::move(s));
                }
                abfcli::write_csv((fs::path(out_dir) / "pattern.csv").string(),
                                  {"theta_deg", "target_index", "magnitude"}, rows);
                abfcli::write_svg((fs::path(out_dir) / "pattern.svg").string(), series,
                                  "azimuth (deg)", "|a_k^H R a(theta)|");
            }
            return kExitOk;
        }

        if (*cmd_powergain) {
            std::vector<std::vector<std::string>> rows;
            abfcli::Series ratio;
            for (int n = n_min; n <= n_max; ++n) {
                const abf::Scene sc = abf::uniform_scene(n, n);
                const auto rc = abf::solve(sc, abf::standard_graph(n, abf::GraphKind::Complete));
                const auto rp = abf::solve(sc, abf::standard_graph(n, abf::GraphKind::Path));
                if (rc.status != abf::BeamformStatus::Optimal ||
                    rp.status != abf::BeamformStatus::Optimal)
                    return fail("solver", "powergain solve failed", kExitSolver);
                const double cdb = abf::to_db(rc.objective);
                const double pdb = abf::to_db(rp.objective);
                rows.push_back({std::to_string(n), abfcli::fmt(cdb), abfcli::fmt(pdb),
                                abfcli::fmt(pdb - cdb)});
                ratio.x.push_back(n);
                ratio.y.push_back(pdb - cdb);
            }
            abfcli::write_csv((fs::path(out_dir) / "powergain.csv").string(),
                              {"n", "complete_db", "path_db", "ratio_db"}, rows);
            abfcli::write_svg((fs::path(out_dir) / "powergain.svg").string(), {ratio},
                              "N", "path - complete (dB)");
            return kExitOk;
        }

        if (*cmd_ident) {
            abf::GraphKind kind;
            if (family == "complete")
                kind = abf::GraphKind::Complete;
            else if (family == "path")
                kind = abf::GraphKind::Path;
            else
                return fail("config", "family must be complete or path", kExitConfig);
            const int limit = k_max > 0 ? k_max : 2 * ident_n + 2;
            const auto report = abf::identifiability(ident_n, kind, limit);
            std::printf("K* = %d\n", report.k_star);
            abfcli::write_csv((fs::path(out_dir) / "identifiability.csv").string(),
                              {"N", "family", "K_star"},
                              {{std::to_string(ident_n), family,
                                std::to_string(report.k_star)}});
            return kExitOk;
        }

        if (*cmd_tradeoff) {
            abf::TradeoffOptions topts;
            topts.n_samples = cfg.samples;
            topts.seed = cfg.seed;
            topts.solve = cfg.solver;
            topts.long_run = long_run;

            auto emit_points = [&](const std::vector<abf::TradeoffPoint>& pts,
                                   const std::string& name) {
                std::vector<std::vector<std::string>> rows;
                for (const auto& p : pts) {
                    const bool ok = p.status == abf::BeamformStatus::Optimal;
                    rows.push_back(
                        {p.gamma ? abfcli::fmt(*p.gamma) : "",
                         quote(p.graph.to_edge_string()),
                         ok ? abfcli::fmt(p.power_gain) : "",
                         ok && p.power_gain > 0.0 ? abfcli::fmt(abf::to_db(p.power_gain)) : "",
                         abfcli::fmt(p.assoc_prob), abfcli::fmt(p.assoc_stderr),
                         p.pareto ? "1" : "0"});
                }
                abfcli::write_csv((fs::path(out_dir) / name).string(),
                                  {"gamma", "graph_edges", "P_linear", "P_db", "C",
                                   "C_stderr", "pareto_flag"},
                                  rows);
            };

            const auto swept = abf::sweep(cfg.scene, topts);
            emit_points(swept, "tradeoff.csv");
            emit_points(abf::upper_envelope(swept), "envelope.csv");

            std::vector<abfcli::Series> series;
            abfcli::Series s_sweep;
            s_sweep.scatter = true;
            for (const auto& p : swept)
                if (p.status == abf::BeamformStatus::Optimal) {
                    s_sweep.x.push_back(p.power_gain);
                    s_sweep.y.push_back(p.assoc_prob);
                }
            if (exhaustive_flag) {
                const auto cloud = abf::exhaustive(cfg.scene, topts);
                emit_points(cloud, "exhaustive.csv");
                abfcli::Series s_cloud;
                s_cloud.scatter = true;
                s_cloud.color = "#bbbbbb";
                for (const auto& p : cloud)
                    if (p.status == abf::BeamformStatus::Optimal) {
                        s_cloud.x.push_back(p.power_gain);
                        s_cloud.y.push_back(p.assoc_prob);
                    }
                series.push_back(std::move(s_cloud));
            }
            series.push_back(std::move(s_sweep));
            abfcli::write_svg((fs::path(out_dir) / "tradeoff.svg").string(), series,
                              "P(G)", "C(G)");
            return kExitOk;
        }

        if (*cmd_waveform) {
            const auto set = abf::generate(wf_n, wf_b, wf_t, seed);
            const auto rep = abf::verify_theorem1(set, sidelobe);
            json report = {
                {"n", wf_n},
                {"bandwidth", wf_b},
                {"duration", wf_t},
                {"seed", seed},
                {"delta", sidelobe},
                {"delta_db_amplitude", 20.0 * std::log10(sidelobe)},
                {"delta_db_power", 10.0 * std::log10(sidelobe)},
                {"condbt", abf::condbt_check(sidelobe, wf_b, wf_t, wf_n)},
                {"grid",
                 {{"j_stride", rep.j_stride},
                  {"m_stride", rep.m_stride},
                  {"n_tau_points", rep.n_tau_points},
                  {"n_omega_points", rep.n_omega_points}}},
                {"max_auto", rep.max_auto},
                {"max_cross", rep.max_cross},
                {"property1", rep.property1},
                {"property2", rep.property2},
                {"property3", rep.property3},
                {"pass", rep.pass()}};
            std::cout << report.dump(2) << "\n";
            std::ofstream(fs::path(out_dir) / "waveform.json") << report.dump(2) << "\n";
            return kExitOk;
        }

        if (*cmd_simulate) {
            const abf::AmbiguityGraph graph = abfcli::config_graph(cfg);
            const abf::BeamformResult res = abf::solve(cfg.scene, graph, cfg.solver);
            if (res.status != abf::BeamformStatus::Optimal)
                return fail("solver", std::string("beamforming ") + status_name(res.status),
                            status_code(res.status));
            abf::DelayDopplerGrid grid;
            for (const abf::Target& t : cfg.scene.targets) {
                grid.tau.push_back(t.tau_mean);
                grid.omega.push_back(t.omega_mean);
            }
            abf::PolyphaseWaveformSet set;
            if (non_ideal)
                set = abf::generate(cfg.scene.n_antennas(), sim_b, sim_t, cfg.seed);
            const auto outputs = abf::matched_filter_sim(
                cfg.scene, res.matrix, non_ideal ? &set : nullptr, cfg.noise_std, grid,
                !non_ideal, cfg.seed);
            const auto detections = abf::detect(outputs, cfg.threshold);
            const auto outcome = abf::associate(detections, cfg.scene, graph, cfg.threshold);

            std::vector<std::vector<std::string>> rows;
            for (size_t k = 0; k < outcome.tracks.size(); ++k) {
                const auto& t = outcome.tracks[k];
                const char* st = t.status == abf::TrackStatus::Assigned  ? "assigned"
                                 : t.status == abf::TrackStatus::ErrorNone ? "error-none"
                                                                           : "error-multiple";
                rows.push_back({std::to_string(k), st,
                                t.detection ? abfcli::fmt(t.detection->tau) : "",
                                t.detection ? abfcli::fmt(t.detection->omega) : "",
                                t.detection ? abfcli::fmt(t.detection->magnitude) : ""});
            }
            abfcli::write_csv((fs::path(out_dir) / "associate.csv").string(),
                              {"track", "status", "tau", "omega", "magnitude"}, rows);
            std::printf("%zu detections, %s\n", detections.size(),
                        outcome.all_assigned() ? "all tracks assigned"
                                               : "association errors present");
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        return fail("config", e.what(), kExitConfig);
    } catch (const std::exception& e) {
        return fail("solver", e.what(), kExitSolver);
    }
    return kExitOk;
}
