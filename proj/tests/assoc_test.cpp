#include <chrono>
#include <random>

#include "abf/assoc.hpp"
#include "doctest.h"
#include "util.hpp"

using namespace abf;

namespace {

Scene separated_scene(int k) {
    std::mt19937_64 rng(41);
    return testutil::random_scene(rng, std::max(2, k), k, 4.0);
}

}  // namespace

TEST_CASE("detections at the prior means all assign under the empty graph") {
    const Scene scene = separated_scene(4);
    const AmbiguityGraph empty = standard_graph(4, GraphKind::Empty);
    std::vector<Detection> dets;
    for (int k = 0; k < 4; ++k)
        dets.push_back({scene.targets[k].tau_mean, scene.targets[k].omega_mean, k, 1.0});
    const auto out = associate(dets, scene, empty, 0.0);
    CHECK(out.all_assigned());
    for (int k = 0; k < 4; ++k) {
        REQUIRE(out.tracks[k].status == TrackStatus::Assigned);
        CHECK(out.tracks[k].detection->tau ==
              doctest::Approx(scene.targets[k].tau_mean));
    }
}

TEST_CASE("no above-threshold detection leaves the track unassigned") {
    const Scene scene = separated_scene(2);
    const AmbiguityGraph empty = standard_graph(2, GraphKind::Empty);
    std::vector<Detection> dets = {
        {scene.targets[0].tau_mean, scene.targets[0].omega_mean, 0, 1.0}};
    const auto out = associate(dets, scene, empty, 0.0);
    CHECK(out.tracks[0].status == TrackStatus::Assigned);
    CHECK(out.tracks[1].status == TrackStatus::ErrorNone);
}

TEST_CASE("detections exactly at the threshold are rejected") {
    const Scene scene = separated_scene(1);
    const AmbiguityGraph g(1);
    std::vector<Detection> dets = {
        {scene.targets[0].tau_mean, scene.targets[0].omega_mean, 0, 0.5}};
    CHECK(associate(dets, scene, g, 0.5).tracks[0].status == TrackStatus::ErrorNone);
    CHECK(associate(dets, scene, g, 0.49).tracks[0].status == TrackStatus::Assigned);
}

TEST_CASE("midpoint of two equal non-adjacent priors belongs to neither gate") {
    Scene scene;
    scene.array.n_antennas = 2;
    Target a, b;
    a.azimuth = deg_to_rad(-30.0);
    b.azimuth = deg_to_rad(30.0);
    b.tau_mean = 2.0;
    scene.targets = {a, b};
    const AmbiguityGraph empty = standard_graph(2, GraphKind::Empty);
    std::vector<Detection> dets = {{1.0, 0.0, 0, 1.0}, {1.0, 0.0, 1, 1.0}};
    const auto out = associate(dets, scene, empty, 0.0);
    CHECK(out.tracks[0].status == TrackStatus::ErrorNone);
    CHECK(out.tracks[1].status == TrackStatus::ErrorNone);
}

TEST_CASE("complete graph assigns one detection per filter regardless of position") {
    const Scene scene = separated_scene(3);
    const AmbiguityGraph complete = standard_graph(3, GraphKind::Complete);
    std::vector<Detection> dets = {
        {123.0, -55.0, 0, 1.0}, {-7.0, 99.0, 1, 1.0}, {0.0, 0.0, 2, 1.0}};
    CHECK(associate(dets, scene, complete, 0.0).all_assigned());
}

TEST_CASE("several candidates yield a multiplicity error") {
    const Scene scene = separated_scene(2);
    const AmbiguityGraph empty = standard_graph(2, GraphKind::Empty);
    std::vector<Detection> dets = {
        {scene.targets[0].tau_mean, scene.targets[0].omega_mean, 0, 1.0},
        {scene.targets[0].tau_mean + 0.01, scene.targets[0].omega_mean, 0, 1.0}};
    CHECK(associate(dets, scene, empty, 0.0).tracks[0].status ==
          TrackStatus::ErrorMultiple);
}

TEST_CASE("association is deterministic") {
    const Scene scene = separated_scene(4);
    AmbiguityGraph g(4);
    g.set_edge(1, 2);
    std::vector<Detection> dets;
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-2.0, 14.0);
    for (int i = 0; i < 30; ++i)
        dets.push_back({u(rng), u(rng), static_cast<int>(rng() % 4), u(rng) + 2.0});
    const auto a = associate(dets, scene, g, 1.0);
    const auto b = associate(dets, scene, g, 1.0);
    REQUIRE(a.tracks.size() == b.tracks.size());
    for (size_t k = 0; k < a.tracks.size(); ++k)
        CHECK(a.tracks[k].status == b.tracks[k].status);
}

TEST_CASE("runtime scales no worse than cubically in K") {
    auto run_time = [](int k) {
        const Scene scene = separated_scene(k);
        const AmbiguityGraph empty = standard_graph(k, GraphKind::Empty);
        std::vector<Detection> dets;
        std::mt19937_64 rng(47);
        std::uniform_real_distribution<double> u(0.0, 4.0 * k);
        for (int f = 0; f < k; ++f)
            for (int i = 0; i < k; ++i) dets.push_back({u(rng), u(rng), f, 1.0});
        const auto t0 = std::chrono::steady_clock::now();
        for (int rep = 0; rep < 20; ++rep) associate(dets, scene, empty, 0.0);
        const auto t1 = std::chrono::steady_clock::now();
        return std::chrono::duration<double>(t1 - t0).count() / 20.0;
    };
    const double t8 = std::max(run_time(8), 1e-6);
    const double t32 = run_time(32);
    // quadrupling K: cubic predicts 64x; allow generous constant-factor slack
    CHECK(t32 / t8 < 250.0);
}
