#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "abf/beamform.hpp"
#include "abf/gating.hpp"
#include "abf/graph.hpp"
#include "abf/scene.hpp"

namespace abf {

/// One point of the detection-association trade-off: the worst-case
/// transmit power gain P(G) against the probability C(G) that every
/// target's true parameters fall in its own ambiguity-aware gate.
struct TradeoffPoint {
    AmbiguityGraph graph;
    BeamformStatus status = BeamformStatus::NumericalFailure;
    double power_gain = 0.0;  // valid when status == Optimal
    double assoc_prob = 0.0;
    double assoc_stderr = 0.0;
    std::optional<double> gamma;  // threshold that produced the graph
    bool pareto = false;
};

struct CEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
};

/// Monte-Carlo estimate of C(G) with binomial standard error. Each trial
/// samples all targets from their priors and succeeds iff every target
/// lands in its own gate.
CEstimate estimate_C(const Scene& scene, const AmbiguityGraph& graph,
                     int n_samples = 100000, std::uint64_t seed = 0);

/// Union bound 1 - K^2 max over k and non-neighbors k' of
/// P((tau_k, omega_k) not in S_{k,k'}), clipped to [-K^2 + 1, 1].
/// Equals 1 for the complete graph.
double bound_C(const Scene& scene, const AmbiguityGraph& graph,
               const ConfusionTable& table);

struct TradeoffOptions {
    int n_samples = 100000;
    std::uint64_t seed = 0;
    ConfusionOptions confusion;   // for the threshold-graph table (sweep)
    SolveOptions solve;
    bool long_run = false;        // unlocks K = 6 exhaustive enumeration
};

/// Threshold-graph sweep: one point per distinct graph over gamma in
/// {0} plus the confusion-table breakpoints. Pareto flags are set within
/// the returned list.
std::vector<TradeoffPoint> sweep(const Scene& scene, const TradeoffOptions& opts = {});

/// One point per labeled graph on K vertices (2^(K(K-1)/2) solves).
/// Guarded to K <= 5 unless opts.long_run (then K <= 6).
std::vector<TradeoffPoint> exhaustive(const Scene& scene,
                                      const TradeoffOptions& opts = {});

/// Sets the pareto flag on each point: true iff no other point has both
/// coordinates >= with at least one strict. Infeasible points compare
/// with power -inf.
void mark_pareto(std::vector<TradeoffPoint>& points);

/// The non-dominated subset (ties kept).
std::vector<TradeoffPoint> pareto_filter(const std::vector<TradeoffPoint>& points);

/// Subset of points forming the upper concave envelope of C over P
/// (the time-sharing boundary), sorted by increasing P.
std::vector<TradeoffPoint> upper_envelope(const std::vector<TradeoffPoint>& points);

}  // namespace abf
