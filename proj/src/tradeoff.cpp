#include "abf/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "abf/rng.hpp"

namespace abf {

CEstimate estimate_C(const Scene& scene, const AmbiguityGraph& graph,
                     int n_samples, std::uint64_t seed) {
    validate(scene);
    if (graph.n_vertices() != scene.n_targets())
        throw std::invalid_argument("estimate_C: graph size does not match scene");
    if (n_samples < 1000)
        throw std::invalid_argument("estimate_C: need n_samples >= 1000");
    const int nk = scene.n_targets();
    auto rng = make_rng(seed, graph.edge_mask());
    std::normal_distribution<double> gauss(0.0, 1.0);
    long hits = 0;
    for (int i = 0; i < n_samples; ++i) {
        bool ok = true;
        for (int k = 0; k < nk; ++k) {
            const Target& tgt = scene.targets[k];
            const double tau = tgt.tau_mean + tgt.tau_std * gauss(rng);
            const double omega = tgt.omega_mean + tgt.omega_std * gauss(rng);
            if (!in_aa_gate(tau, omega, k, graph, scene)) {
                ok = false;
                break;
            }
        }
        if (ok) ++hits;
    }
    const double c = static_cast<double>(hits) / n_samples;
    const double se = std::sqrt(std::max(c * (1.0 - c), 1e-12) / n_samples);
    return {c, se};
}

double bound_C(const Scene& scene, const AmbiguityGraph& graph,
               const ConfusionTable& table) {
    const int nk = scene.n_targets();
    if (table.size() != nk || graph.n_vertices() != nk)
        throw std::invalid_argument("bound_C: size mismatch");
    double worst = 0.0;
    for (int k = 0; k < nk; ++k)
        for (int j : graph.non_neighbors(k))
            worst = std::max(worst, 1.0 - table.p(k, j));
    const double bound = 1.0 - static_cast<double>(nk) * nk * worst;
    return std::clamp(bound, -static_cast<double>(nk) * nk + 1.0, 1.0);
}

namespace {

TradeoffPoint make_point(const Scene& scene, const AmbiguityGraph& graph,
                         const TradeoffOptions& opts) {
    TradeoffPoint pt;
    pt.graph = graph;
    const BeamformResult res = solve(scene, graph, opts.solve);
    pt.status = res.status;
    pt.power_gain = (res.status == BeamformStatus::Optimal) ? res.objective : 0.0;
    const CEstimate c = estimate_C(scene, graph, opts.n_samples, opts.seed);
    pt.assoc_prob = c.value;
    pt.assoc_stderr = c.stderr_;
    return pt;
}

double effective_power(const TradeoffPoint& p) {
    return p.status == BeamformStatus::Optimal
               ? p.power_gain
               : -std::numeric_limits<double>::infinity();
}

bool dominates(const TradeoffPoint& a, const TradeoffPoint& b) {
    const double pa = effective_power(a), pb = effective_power(b);
    return pa >= pb && a.assoc_prob >= b.assoc_prob &&
           (pa > pb || a.assoc_prob > b.assoc_prob);
}

}  // namespace

std::vector<TradeoffPoint> sweep(const Scene& scene, const TradeoffOptions& opts) {
    validate(scene);
    const int nk = scene.n_targets();
    if (nk * (nk - 1) / 2 > 25)
        throw std::invalid_argument("sweep: too many target pairs");
    const ConfusionTable table = confusion_table(scene, opts.confusion);

    std::vector<double> gammas = {0.0};
    for (double g : gamma_breakpoints(table)) gammas.push_back(g);

    std::vector<TradeoffPoint> points;
    std::set<std::uint64_t> seen;
    for (double gamma : gammas) {
        const AmbiguityGraph graph = threshold_graph(gamma, table);
        if (!seen.insert(graph.edge_mask()).second) continue;
        TradeoffPoint pt = make_point(scene, graph, opts);
        pt.gamma = gamma;
        points.push_back(std::move(pt));
    }
    mark_pareto(points);
    return points;
}

std::vector<TradeoffPoint> exhaustive(const Scene& scene, const TradeoffOptions& opts) {
    validate(scene);
    const int nk = scene.n_targets();
    const int k_cap = opts.long_run ? 6 : 5;
    if (nk > k_cap)
        throw std::invalid_argument(
            "exhaustive: too many targets (pass long_run for K = 6)");
    std::vector<TradeoffPoint> points;
    GraphEnumerator en(nk);
    AmbiguityGraph graph;
    while (en.next(graph)) points.push_back(make_point(scene, graph, opts));
    mark_pareto(points);
    return points;
}

void mark_pareto(std::vector<TradeoffPoint>& points) {
    for (size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < points.size() && !dominated; ++j)
            if (j != i && dominates(points[j], points[i])) dominated = true;
        points[i].pareto = !dominated;
    }
}

std::vector<TradeoffPoint> pareto_filter(const std::vector<TradeoffPoint>& points) {
    std::vector<TradeoffPoint> copy = points;
    mark_pareto(copy);
    std::vector<TradeoffPoint> out;
    for (const TradeoffPoint& p : copy)
        if (p.pareto) out.push_back(p);
    return out;
}

std::vector<TradeoffPoint> upper_envelope(const std::vector<TradeoffPoint>& points) {
    std::vector<TradeoffPoint> front = pareto_filter(points);
    std::sort(front.begin(), front.end(), [](const auto& a, const auto& b) {
        return effective_power(a) < effective_power(b);
    });
    // Andrew-style upper hull of (P, C), keeping only concave corners.
    std::vector<TradeoffPoint> hull;
    for (const TradeoffPoint& p : front) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            const double cross =
                (effective_power(b) - effective_power(a)) * (p.assoc_prob - a.assoc_prob) -
                (effective_power(p) - effective_power(a)) * (b.assoc_prob - a.assoc_prob);
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    return hull;
}

}  // namespace abf
