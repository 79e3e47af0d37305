#include "abf/assoc.hpp"

#include <stdexcept>

namespace abf {

AssociationOutcome associate(const std::vector<Detection>& detections,
                             const Scene& scene, const AmbiguityGraph& graph,
                             double threshold) {
    validate(scene);
    const int nk = scene.n_targets();
    if (graph.n_vertices() != nk)
        throw std::invalid_argument("associate: graph size does not match scene");
    for (const Detection& d : detections)
        if (d.filter_index < 0 || d.filter_index >= nk)
            throw std::invalid_argument("associate: detection with invalid filter index");

    AssociationOutcome out;
    out.tracks.resize(nk);
    for (int k = 0; k < nk; ++k) {
        int n_candidates = 0;
        const Detection* candidate = nullptr;
        for (const Detection& d : detections) {
            if (d.filter_index != k) continue;
            if (!(d.magnitude > threshold)) continue;
            if (!in_aa_gate(d.tau, d.omega, k, graph, scene)) continue;
            ++n_candidates;
            candidate = &d;
        }
        if (n_candidates == 1) {
            out.tracks[k].status = TrackStatus::Assigned;
            out.tracks[k].detection = *candidate;
        } else {
            out.tracks[k].status = (n_candidates == 0) ? TrackStatus::ErrorNone
                                                       : TrackStatus::ErrorMultiple;
        }
    }
    return out;
}

}  // namespace abf
