#pragma once

#include <random>
#include <vector>

#include "abf/scene.hpp"
#include "abf/waveform.hpp"

namespace testutil {

/// Scene with distinct random azimuths and prior means spread on a grid
/// so that each target's own density dominates at its own mean.
inline abf::Scene random_scene(std::mt19937_64& rng, int n_antennas, int n_targets,
                               double mean_spacing = 2.0, double std_dev = 0.25) {
    abf::Scene scene;
    scene.array.n_antennas = n_antennas;
    std::uniform_real_distribution<double> az(-80.0, 80.0);
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    std::vector<double> azimuths;
    while (static_cast<int>(azimuths.size()) < n_targets) {
        const double a = az(rng);
        bool ok = true;
        for (double b : azimuths)
            if (std::abs(a - b) < 2.0) ok = false;
        if (ok) azimuths.push_back(a);
    }
    for (int k = 0; k < n_targets; ++k) {
        abf::Target t;
        t.azimuth = abf::deg_to_rad(azimuths[k]);
        t.tau_mean = k * mean_spacing + jitter(rng);
        t.omega_mean = k * mean_spacing + jitter(rng);
        t.tau_std = std_dev;
        t.omega_std = std_dev;
        scene.targets.push_back(t);
    }
    return scene;
}

/// Brute-force midpoint quadrature of the ambiguity integral with
/// bins_per_chip uniform bins per chip. Accurate to well below 1e-6 when
/// delta_tau is a multiple of the bin width (bins then align with the
/// chip discontinuities).
inline abf::Complex quadrature_ambiguity(const abf::PolyphaseWaveformSet& set, int n,
                                         int nprime, double delta_tau,
                                         double delta_omega,
                                         int bins_per_chip = 1000) {
    const double b = set.bandwidth;
    const double t_max = set.duration;
    const double h = 1.0 / (b * bins_per_chip);
    const double lo = std::max(delta_tau, 0.0);
    const double hi = t_max + std::min(delta_tau, 0.0);
    const long j_lo = std::llround(lo / h);
    const long j_hi = std::llround(hi / h);
    const int n_chips = set.n_chips();
    const double inv_sqrt_t = 1.0 / std::sqrt(t_max);

    abf::Complex acc(0.0, 0.0);
    for (long j = j_lo; j < j_hi; ++j) {
        const double t = (j + 0.5) * h;
        const int i1 = static_cast<int>(std::floor(t * b));
        const int i2 = static_cast<int>(std::floor((t - delta_tau) * b));
        if (i1 < 0 || i1 >= n_chips || i2 < 0 || i2 >= n_chips) continue;
        acc += set.chips(n, i1) * std::conj(set.chips(nprime, i2)) *
               std::exp(abf::Complex(0.0, -delta_omega * t));
    }
    return acc * h * inv_sqrt_t * inv_sqrt_t;
}

}  // namespace testutil
