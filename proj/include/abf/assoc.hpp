#pragma once

#include <optional>
#include <vector>

#include "abf/gating.hpp"
#include "abf/graph.hpp"
#include "abf/scene.hpp"

namespace abf {

/// One above-threshold matched-filter peak. The azimuth is implied by the
/// filter bank index, which is known a priori.
struct Detection {
    double tau = 0.0;
    double omega = 0.0;
    int filter_index = 0;
    double magnitude = 0.0;
};

enum class TrackStatus { Assigned, ErrorNone, ErrorMultiple };

struct TrackOutcome {
    TrackStatus status = TrackStatus::ErrorNone;
    std::optional<Detection> detection;  // set iff status == Assigned
};

struct AssociationOutcome {
    std::vector<TrackOutcome> tracks;

    bool all_assigned() const {
        for (const TrackOutcome& t : tracks)
            if (t.status != TrackStatus::Assigned) return false;
        return !tracks.empty();
    }
};

/// Ambiguity-aware nearest-neighbor association. A detection is a candidate
/// for track k when it came from filter k, its magnitude is strictly above
/// the threshold, and it lies in the ambiguity-aware gate S_k. Exactly one
/// candidate assigns; zero or several are association errors.
AssociationOutcome associate(const std::vector<Detection>& detections,
                             const Scene& scene, const AmbiguityGraph& graph,
                             double threshold);

}  // namespace abf
