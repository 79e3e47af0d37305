#include "abf/scene.hpp"

#include <cmath>
#include <stdexcept>

namespace abf {

void validate(const Scene& scene) {
    if (scene.array.n_antennas < 1)
        throw std::invalid_argument("scene: need at least one antenna");
    if (scene.targets.empty())
        throw std::invalid_argument("scene: need at least one target");
    for (const Target& t : scene.targets) {
        if (!(t.tau_std > 0.0) || !(t.omega_std > 0.0))
            throw std::invalid_argument("scene: prior std-devs must be positive");
        if (!(t.azimuth > -M_PI / 2 && t.azimuth < M_PI / 2))
            throw std::invalid_argument("scene: azimuth outside (-pi/2, pi/2)");
    }
    for (size_t i = 0; i < scene.targets.size(); ++i)
        for (size_t j = i + 1; j < scene.targets.size(); ++j)
            if (scene.targets[i].azimuth == scene.targets[j].azimuth)
                throw std::invalid_argument("scene: azimuths must be pairwise distinct");
}

Eigen::VectorXcd steering(const AntennaArray& array, double azimuth) {
    const int n = array.n_antennas;
    Eigen::VectorXcd a(n);
    const double phase_step = M_PI * std::sin(azimuth);
    for (int i = 0; i < n; ++i)
        a(i) = std::polar(1.0, i * phase_step);
    return a;
}

Eigen::MatrixXcd steering_matrix(const Scene& scene) {
    Eigen::MatrixXcd mat(scene.n_antennas(), scene.n_targets());
    for (int k = 0; k < scene.n_targets(); ++k)
        mat.col(k) = steering(scene.array, scene.targets[k].azimuth);
    return mat;
}

int steering_matrix_rank(const Scene& scene) {
    const Eigen::MatrixXcd mat = steering_matrix(scene);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat);
    const Eigen::VectorXd sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    const double thresh = 1e-9 * sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh) ++rank;
    return rank;
}

Scene uniform_scene(int n_antennas, int n_targets, const PriorParams& prior) {
    if (n_antennas < 1 || n_targets < 1)
        throw std::invalid_argument("uniform_scene: n_antennas and n_targets must be >= 1");
    Scene scene;
    scene.array.n_antennas = n_antennas;
    scene.targets.resize(n_targets);
    for (int k = 0; k < n_targets; ++k) {
        Target& t = scene.targets[k];
        t.azimuth = ((2.0 * (k + 1) - 1.0) / n_targets - 1.0) * M_PI / 2;
        t.tau_mean = prior.tau_mean0 + k * prior.tau_spacing;
        t.omega_mean = prior.omega_mean0 + k * prior.omega_spacing;
        t.tau_std = prior.tau_std;
        t.omega_std = prior.omega_std;
        t.rcs = prior.rcs;
    }
    return scene;
}

}  // namespace abf
