#include "abf/gating.hpp"

#include <cmath>
#include <stdexcept>

#include "abf/rng.hpp"

namespace abf {

bool intersects(const RectGate& a, const RectGate& b) {
    return a.tau_lo <= b.tau_hi && b.tau_lo <= a.tau_hi &&
           a.omega_lo <= b.omega_hi && b.omega_lo <= a.omega_hi;
}

RectGate rect_gate(const Target& target, double n_sigma) {
    if (n_sigma < 0.0)
        throw std::invalid_argument("rect_gate: n_sigma must be >= 0");
    RectGate g;
    g.tau_lo = target.tau_mean - n_sigma * target.tau_std;
    g.tau_hi = target.tau_mean + n_sigma * target.tau_std;
    g.omega_lo = target.omega_mean - n_sigma * target.omega_std;
    g.omega_hi = target.omega_mean + n_sigma * target.omega_std;
    return g;
}

double log_prior_density(const Target& t, double tau, double omega) {
    const double dt = (tau - t.tau_mean) / t.tau_std;
    const double dw = (omega - t.omega_mean) / t.omega_std;
    return -0.5 * (dt * dt + dw * dw) - std::log(2.0 * M_PI * t.tau_std * t.omega_std);
}

bool in_pairwise_set(double tau, double omega, int k, int kprime, const Scene& scene) {
    if (k == kprime)
        throw std::invalid_argument("in_pairwise_set: k and k' must differ");
    return log_prior_density(scene.targets[k], tau, omega) >
           log_prior_density(scene.targets[kprime], tau, omega);
}

bool in_aa_gate(double tau, double omega, int k, const AmbiguityGraph& graph,
                const Scene& scene) {
    const double own = log_prior_density(scene.targets[k], tau, omega);
    for (int j : graph.non_neighbors(k))
        if (own <= log_prior_density(scene.targets[j], tau, omega)) return false;
    return true;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / M_SQRT2); }

namespace {

ConfusionEstimate confusion_analytic(const Target& a, const Target& b) {
    const double rel_tau = std::abs(a.tau_std - b.tau_std) /
                           std::max(a.tau_std, b.tau_std);
    const double rel_omega = std::abs(a.omega_std - b.omega_std) /
                             std::max(a.omega_std, b.omega_std);
    if (rel_tau > 1e-12 || rel_omega > 1e-12)
        throw std::invalid_argument(
            "confusion_prob: analytic path needs equal covariances; use Monte-Carlo");
    const double dt = (a.tau_mean - b.tau_mean) / a.tau_std;
    const double dw = (a.omega_mean - b.omega_mean) / a.omega_std;
    const double d = std::hypot(dt, dw);
    return {normal_cdf(d / 2.0), 0.0};
}

ConfusionEstimate confusion_mc(int k, int kprime, const Scene& scene,
                               const ConfusionOptions& opts) {
    const Target& own = scene.targets[k];
    auto rng = make_rng(opts.seed, static_cast<std::uint64_t>(k),
                        static_cast<std::uint64_t>(kprime));
    std::normal_distribution<double> gauss(0.0, 1.0);
    long hits = 0;
    for (int i = 0; i < opts.n_samples; ++i) {
        const double tau = own.tau_mean + own.tau_std * gauss(rng);
        const double omega = own.omega_mean + own.omega_std * gauss(rng);
        if (in_pairwise_set(tau, omega, k, kprime, scene)) ++hits;
    }
    const double p = static_cast<double>(hits) / opts.n_samples;
    const double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / opts.n_samples);
    return {p, se};
}

}  // namespace

ConfusionEstimate confusion_prob(int k, int kprime, const Scene& scene,
                                 const ConfusionOptions& opts) {
    if (k == kprime)
        throw std::invalid_argument("confusion_prob: k and k' must differ");
    if (opts.method == ConfusionMethod::Analytic)
        return confusion_analytic(scene.targets[k], scene.targets[kprime]);
    return confusion_mc(k, kprime, scene, opts);
}

ConfusionTable confusion_table(const Scene& scene, const ConfusionOptions& opts) {
    const int n = scene.n_targets();
    ConfusionTable table;
    table.p = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            if (k != j) table.p(k, j) = confusion_prob(k, j, scene, opts).value;
    return table;
}

}  // namespace abf
