#include <random>

#include "abf/waveform.hpp"
#include "doctest.h"
#include "util.hpp"

using namespace abf;

TEST_CASE("generation basics") {
    const auto set = generate(3, 100.0, 1.0, 7);
    CHECK(set.n_waveforms() == 3);
    CHECK(set.n_chips() == 100);
    for (int n = 0; n < 3; ++n)
        for (int l = 0; l < 100; ++l)
            CHECK(std::abs(std::abs(set.chips(n, l)) - 1.0) < 1e-12);

    const auto again = generate(3, 100.0, 1.0, 7);
    CHECK((set.chips - again.chips).norm() == 0.0);
    const auto other = generate(3, 100.0, 1.0, 8);
    CHECK((set.chips - other.chips).norm() > 0.0);

    CHECK_THROWS_AS(generate(2, 100.5, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate(0, 100.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("unit peak at the origin for every waveform and seed") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto set = generate(2, 200.0, 0.5, seed);
        for (int n = 0; n < 2; ++n)
            CHECK(std::abs(ambiguity(set, n, n, 0.0, 0.0) - Complex(1.0, 0.0)) < 1e-12);
    }
}

TEST_CASE("ambiguity values match brute-force quadrature") {
    const double b = 50.0, t = 1.0;
    const auto set = generate(2, b, t, 3);
    std::mt19937_64 rng(51);
    const double h = 1.0 / (b * 1000.0);  // oracle bin width
    std::uniform_int_distribution<long> jdist(-50000, 50000);
    std::uniform_real_distribution<double> wdist(-M_PI * b / 4.0, M_PI * b / 4.0);
    for (int i = 0; i < 100; ++i) {
        const double dt = jdist(rng) * h;  // on the oracle lattice, either sign
        const double dw = wdist(rng);
        const int n = static_cast<int>(rng() % 2), np = static_cast<int>(rng() % 2);
        const Complex exact = ambiguity(set, n, np, dt, dw);
        const Complex brute = testutil::quadrature_ambiguity(set, n, np, dt, dw);
        CHECK(std::abs(exact - brute) < 1e-6);
    }
}

TEST_CASE("ambiguity magnitude is bounded by one and vanishes beyond the support") {
    const auto set = generate(2, 100.0, 1.0, 9);
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> tdist(-1.5, 1.5), wdist(-300.0, 300.0);
    for (int i = 0; i < 200; ++i) {
        const double v =
            std::abs(ambiguity(set, static_cast<int>(rng() % 2),
                               static_cast<int>(rng() % 2), tdist(rng), wdist(rng)));
        CHECK(v <= 1.0 + 1e-9);
    }
    CHECK(std::abs(ambiguity(set, 0, 1, 1.0, 17.0)) == 0.0);
    CHECK(std::abs(ambiguity(set, 0, 0, 2.3, 0.0)) == 0.0);
}

TEST_CASE("sidelobe verification at desk scale") {
    const auto set = generate(2, 1000.0, 1.0, 1);
    const auto rep = verify_theorem1(set, 0.1);
    CHECK(rep.property1);
    CHECK(rep.max_auto <= 0.1);
    CHECK(rep.max_cross <= 0.1);
    CHECK(rep.pass());
    CHECK(rep.j_stride == rep.m_stride);
    CHECK(rep.n_tau_points * rep.n_omega_points > 10000);

    VerifyOptions strict;
    strict.allow_subsampling = false;
    CHECK_THROWS_AS(verify_theorem1(set, 0.1, strict), std::invalid_argument);
}

TEST_CASE("autocorrelation sidelobes at larger time-bandwidth product") {
    // BT = 1e4, delta = 0.2: a typical seed clears the bound comfortably
    const auto set = generate(1, 10000.0, 1.0, 2);
    const auto rep = verify_theorem1(set, 0.2);
    CHECK(rep.property1);
    CHECK(rep.property2);
}

TEST_CASE("time-bandwidth condition boundary") {
    CHECK(condbt_check(std::pow(10.0, -23.0 / 10.0), 1e9, 1.0, 16));
    CHECK_FALSE(condbt_check(std::pow(10.0, -24.0 / 10.0), 1e9, 1.0, 16));
    CHECK(condbt_check(0.1, 1e7, 1.0, 1));
    CHECK_THROWS_AS(condbt_check(0.0, 1e9, 1.0, 1), std::invalid_argument);
}

TEST_CASE("ideal matched filter hits the analytic peak") {
    Scene scene;
    scene.array.n_antennas = 3;
    Target t;
    t.azimuth = deg_to_rad(20.0);
    t.rcs = Complex(0.8, -0.3);
    scene.targets = {t};
    BeamformingMatrix r;
    const auto a = steering(scene.array, t.azimuth);
    r.entries = a * a.adjoint() / 3.0;

    DelayDopplerGrid grid{{t.tau_mean}, {t.omega_mean}};
    const auto out = matched_filter_sim(scene, r, nullptr, 0.0, grid, true);
    const double gain = (a.adjoint() * r.entries * a)(0).real();
    CHECK(std::abs(out.outputs[0](0, 0)) ==
          doctest::Approx(std::abs(t.rcs) * 3.0 * gain).epsilon(1e-9));
}

TEST_CASE("zero-forcing beamformer silences edge partners") {
    const Scene scene = uniform_scene(3, 3);
    const auto res = solve(scene, standard_graph(3, GraphKind::Complete));
    REQUIRE(res.status == BeamformStatus::Optimal);
    DelayDopplerGrid grid;
    for (const Target& t : scene.targets) {
        grid.tau.push_back(t.tau_mean);
        grid.omega.push_back(t.omega_mean);
    }
    const auto out = matched_filter_sim(scene, res.matrix, nullptr, 0.0, grid, true);
    // filter 1 at target 0's true cell: cross-gain is zero-forced
    CHECK(std::abs(out.outputs[1](0, 0)) <= 3.0 * 1e-7);
}

TEST_CASE("noise-only outputs are Rayleigh distributed") {
    Scene scene;
    scene.array.n_antennas = 2;
    Target t;
    t.azimuth = 0.0;
    t.rcs = Complex(0.0, 0.0);
    scene.targets = {t};
    BeamformingMatrix r;
    r.entries = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
    DelayDopplerGrid grid;
    for (int i = 0; i < 100; ++i) grid.tau.push_back(i * 0.01);
    for (int i = 0; i < 100; ++i) grid.omega.push_back(i * 0.1);
    const double sigma = 0.7;
    const auto out = matched_filter_sim(scene, r, nullptr, sigma, grid, true, 5);
    double sum = 0.0, sumsq = 0.0;
    const int n = 100 * 100;
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j) {
            const double m = std::abs(out.outputs[0](i, j));
            sum += m;
            sumsq += m * m;
        }
    const double mean = sum / n;
    const double sd = std::sqrt(sumsq / n - mean * mean);
    const double expected = sigma * std::sqrt(M_PI / 2.0);
    CHECK(std::abs(mean - expected) < 3.0 * sd / std::sqrt(n));
}

TEST_CASE("ideal and synthesized simulations agree at the target cells") {
    const Scene scene = uniform_scene(2, 2);
    const auto res = solve(scene, standard_graph(2, GraphKind::Empty));
    REQUIRE(res.status == BeamformStatus::Optimal);
    DelayDopplerGrid grid;
    for (const Target& t : scene.targets) {
        grid.tau.push_back(t.tau_mean);
        grid.omega.push_back(t.omega_mean);
    }
    const auto ideal = matched_filter_sim(scene, res.matrix, nullptr, 0.0, grid, true);
    const auto set = generate(2, 10000.0, 1.0, 11);
    const auto actual =
        matched_filter_sim(scene, res.matrix, &set, 0.0, grid, false);
    for (int k = 0; k < 2; ++k) {
        const double pi = std::abs(ideal.outputs[k](k, k));
        const double pa = std::abs(actual.outputs[k](k, k));
        CHECK(std::abs(pa - pi) <= 0.1 * pi);
    }
}

TEST_CASE("detection thresholding") {
    FilterOutputs out;
    out.grid = {{0.0, 1.0}, {0.0}};
    out.outputs = {Eigen::MatrixXcd::Zero(2, 1)};
    out.outputs[0](0, 0) = Complex(0.5, 0.0);
    CHECK(detect(out, std::numeric_limits<double>::infinity()).empty());
    const auto dets = detect(out, 0.0);
    REQUIRE(dets.size() == 1);
    CHECK(dets[0].tau == 0.0);
    CHECK(dets[0].filter_index == 0);
    CHECK(dets[0].magnitude == doctest::Approx(0.5));
    CHECK(detect(out, 0.5).empty());  // strictly above
    CHECK_THROWS_AS(detect(out, -1.0), std::invalid_argument);
}

TEST_CASE("end-to-end noiseless pipeline assigns every track") {
    const Scene scene = uniform_scene(3, 3);
    const auto res = solve(scene, standard_graph(3, GraphKind::Complete));
    REQUIRE(res.status == BeamformStatus::Optimal);
    DelayDopplerGrid grid;
    for (const Target& t : scene.targets) {
        grid.tau.push_back(t.tau_mean);
        grid.omega.push_back(t.omega_mean);
    }
    const auto out = matched_filter_sim(scene, res.matrix, nullptr, 0.0, grid, true);
    const auto dets = detect(out, 1e-6);
    const auto assoc = associate(dets, scene, standard_graph(3, GraphKind::Complete),
                                 1e-6);
    CHECK(assoc.all_assigned());
}
