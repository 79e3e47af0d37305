#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "abf/assoc.hpp"
#include "abf/beamform.hpp"
#include "abf/scene.hpp"

namespace abf {

/// Random polyphase code set: N waveforms, each piecewise constant over
/// BT chips of length 1/B, chip values on the unit circle. The implied
/// signal is s_n(t) = (1/sqrt(T)) sum_l chips(n,l) 1_[0,1/B)(t - l/B),
/// which has unit energy by construction.
struct PolyphaseWaveformSet {
    Eigen::MatrixXcd chips;  // N x BT
    double bandwidth = 0.0;  // Hz
    double duration = 0.0;   // seconds
    std::uint64_t seed = 0;

    int n_waveforms() const { return static_cast<int>(chips.rows()); }
    int n_chips() const { return static_cast<int>(chips.cols()); }
};

/// Chips i.i.d. uniform on the complex unit circle from the seeded stream.
/// Throws std::invalid_argument unless bandwidth * duration is a positive
/// integer (within 1e-9).
PolyphaseWaveformSet generate(int n, double bandwidth, double duration,
                              std::uint64_t seed);

/// Exact cross-ambiguity chi_{n,n'}(delta_tau, delta_omega) of the
/// piecewise-constant signals, via the closed-form chip integrals (no
/// quadrature). Negative delays use the symmetry
/// chi_{n,n'}(-dt, dw) = exp(j dw dt) conj(chi_{n',n}(dt, -dw)).
Complex ambiguity(const PolyphaseWaveformSet& set, int n, int nprime,
                  double delta_tau, double delta_omega);

struct VerifyOptions {
    /// Cap on sample points per ordered waveform pair; the nominal grid
    /// delta_tau = J delta/(8B), delta_omega = M delta/T is subsampled
    /// with uniform strides to stay under it.
    long max_points_per_pair = 20000;
    /// Refuse to subsample: throws if the nominal grid exceeds the cap.
    bool allow_subsampling = true;
};

struct AmbiguityReport {
    double delta = 0.0;
    int j_stride = 1, m_stride = 1;  // grid subsampling strides
    long n_tau_points = 0, n_omega_points = 0;
    double max_auto = 0.0;   // |chi_{n,n}| over the sidelobe region
    double max_cross = 0.0;  // |chi_{n,n'}|, n != n', over the whole grid
    bool property1 = false;  // chi_{n,n}(0,0) = 1 for all n
    bool property2 = false;  // max_auto <= delta
    bool property3 = false;  // max_cross <= delta

    bool pass() const { return property1 && property2 && property3; }
};

/// Evaluates |chi| on the delay-Doppler sample grid (|delta_omega| up to
/// pi B, delays in [0, T); negative delays are covered by symmetry) and
/// checks the three near-ideal-ambiguity properties at sidelobe level
/// delta. The sidelobe region for the auto terms is delta_tau >= 1/B or
/// 26/(delta T) <= |delta_omega| <= pi B.
AmbiguityReport verify_theorem1(const PolyphaseWaveformSet& set, double delta,
                                const VerifyOptions& opts = {});

/// Feasibility of the sidelobe level for the randomized construction:
/// true iff 2^-8 delta^2 BT - 2 ln(BT) > ln(2^9 N^2 / delta^3).
bool condbt_check(double delta, double bandwidth, double duration, int n);

struct DelayDopplerGrid {
    std::vector<double> tau;    // seconds
    std::vector<double> omega;  // rad/s
};

/// Complex matched-filter outputs; outputs[k](i, j) is filter k evaluated
/// at (tau[i], omega[j]).
struct FilterOutputs {
    DelayDopplerGrid grid;
    std::vector<Eigen::MatrixXcd> outputs;
};

/// Matched-filter bank over the grid, one filter per target azimuth.
/// ideal=true assumes an impulsive ambiguity function, so a target
/// contributes only at its exact (tau, omega) cell; ideal=false synthesizes
/// the response through W = factor(R) and the actual waveform ambiguity.
/// Noise is i.i.d. circular complex Gaussian, std noise_std per real
/// component of each output. waveforms may be null when ideal=true.
FilterOutputs matched_filter_sim(const Scene& scene, const BeamformingMatrix& R,
                                 const PolyphaseWaveformSet* waveforms,
                                 double noise_std, const DelayDopplerGrid& grid,
                                 bool ideal, std::uint64_t seed = 0);

/// One Detection per (grid point, filter) with magnitude strictly above
/// the threshold.
std::vector<Detection> detect(const FilterOutputs& outputs, double threshold);

}  // namespace abf
