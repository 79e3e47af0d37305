#pragma once

#include <cstdint>

#include "abf/graph.hpp"
#include "abf/scene.hpp"

namespace abf {

/// Axis-aligned rectangle in the (delay, Doppler) plane.
struct RectGate {
    double tau_lo = 0.0, tau_hi = 0.0;
    double omega_lo = 0.0, omega_hi = 0.0;
};

bool intersects(const RectGate& a, const RectGate& b);

/// Rectangle at the prior mean +- n_sigma standard deviations per axis.
RectGate rect_gate(const Target& target, double n_sigma);

/// Log of the Gaussian prior density of target k at (tau, omega).
double log_prior_density(const Target& target, double tau, double omega);

/// Membership in S_{k,k'} = { f_k > f_{k'} }, strict inequality;
/// densities compared in log space. Ties are non-membership.
bool in_pairwise_set(double tau, double omega, int k, int kprime, const Scene& scene);

/// Ambiguity-aware nearest-neighbor gate S_k: f_k strictly exceeds every
/// non-neighbor's density. Vacuously true when k has no non-neighbors
/// (complete graph).
bool in_aa_gate(double tau, double omega, int k, const AmbiguityGraph& graph,
                const Scene& scene);

enum class ConfusionMethod { Analytic, MonteCarlo };

struct ConfusionEstimate {
    double value = 0.0;
    double stderr_ = 0.0;  // zero for the analytic path
};

struct ConfusionOptions {
    ConfusionMethod method = ConfusionMethod::Analytic;
    int n_samples = 100000;
    std::uint64_t seed = 0;
};

/// P((tau_k, omega_k) in S_{k,k'}) under target k's prior. The analytic
/// path requires both priors to share one covariance (the decision
/// boundary is then a half-plane and the value is Phi(d/2) with d the
/// Mahalanobis distance between the means); otherwise it throws
/// std::invalid_argument. The Monte-Carlo path works for any pair and
/// reports a binomial standard error.
ConfusionEstimate confusion_prob(int k, int kprime, const Scene& scene,
                                 const ConfusionOptions& opts = {});

/// Full K x K table of confusion probabilities (diagonal left at zero).
ConfusionTable confusion_table(const Scene& scene, const ConfusionOptions& opts = {});

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace abf
