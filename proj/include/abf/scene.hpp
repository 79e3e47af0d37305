#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace abf {

using Complex = std::complex<double>;

/// Transmit antenna array. Only uniform linear arrays at half-wavelength
/// spacing are supported for now; the enum leaves room for other geometries.
struct AntennaArray {
    int n_antennas = 1;
    enum class Geometry { UlaHalfWavelength } geometry = Geometry::UlaHalfWavelength;
};

/// One tracked target: known azimuth, Gaussian prior on (delay, Doppler),
/// complex radar cross-section (path loss folded in).
struct Target {
    double azimuth = 0.0;     // radians, in (-pi/2, pi/2)
    double tau_mean = 0.0;    // seconds
    double omega_mean = 0.0;  // rad/s
    double tau_std = 1.0;
    double omega_std = 1.0;
    Complex rcs{1.0, 0.0};
};

struct Scene {
    AntennaArray array;
    std::vector<Target> targets;

    int n_antennas() const { return array.n_antennas; }
    int n_targets() const { return static_cast<int>(targets.size()); }
};

/// Throws std::invalid_argument on violated invariants (N >= 1, K >= 1,
/// positive stds, azimuths in range and pairwise distinct).
void validate(const Scene& scene);

/// ULA transmit gains a_n(theta) = exp(j (n-1) pi sin(theta)).
Eigen::VectorXcd steering(const AntennaArray& array, double azimuth);

/// N x K matrix whose columns are the steering vectors of all targets.
Eigen::MatrixXcd steering_matrix(const Scene& scene);

/// Numerical rank of the steering matrix; singular values below
/// 1e-9 * sigma_max count as zero.
int steering_matrix_rank(const Scene& scene);

/// Prior parameters used when synthesizing uniform scenes. Target k gets
/// tau_mean = tau_mean0 + k * tau_spacing (same pattern for omega).
struct PriorParams {
    double tau_mean0 = 0.0;
    double tau_spacing = 1.0;
    double omega_mean0 = 0.0;
    double omega_spacing = 1.0;
    double tau_std = 0.25;
    double omega_std = 0.25;
    Complex rcs{1.0, 0.0};
};

/// Scene with K targets uniformly spaced in azimuth:
/// theta_k = ((2k-1)/K - 1) * 90 degrees, k = 1..K.
Scene uniform_scene(int n_antennas, int n_targets, const PriorParams& prior = {});

inline double deg_to_rad(double deg) { return deg * M_PI / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / M_PI; }

}  // namespace abf
