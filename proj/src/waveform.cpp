#include "abf/waveform.hpp"

#include <cmath>
#include <stdexcept>

#include "abf/rng.hpp"

namespace abf {

namespace {

bool integral(double x) { return std::abs(x - std::round(x)) <= 1e-9 * std::max(1.0, std::abs(x)); }

/// Integral of exp(-j w t) over [u, v].
Complex phase_integral(double u, double v, double w) {
    if (w == 0.0) return Complex(v - u, 0.0);
    const Complex jw(0.0, w);
    return (std::exp(-jw * u) - std::exp(-jw * v)) / jw;
}

}  // namespace

PolyphaseWaveformSet generate(int n, double bandwidth, double duration,
                              std::uint64_t seed) {
    if (n < 1 || bandwidth <= 0.0 || duration <= 0.0)
        throw std::invalid_argument("generate: need n >= 1 and positive B, T");
    const double bt = bandwidth * duration;
    if (!integral(bt) || std::round(bt) < 1.0)
        throw std::invalid_argument("generate: B*T must be a positive integer");
    const int n_chips = static_cast<int>(std::round(bt));

    PolyphaseWaveformSet set;
    set.bandwidth = bandwidth;
    set.duration = duration;
    set.seed = seed;
    set.chips.resize(n, n_chips);
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n_chips; ++l)
            set.chips(i, l) = std::exp(Complex(0.0, phase(rng)));
    return set;
}

Complex ambiguity(const PolyphaseWaveformSet& set, int n, int nprime,
                  double delta_tau, double delta_omega) {
    if (delta_tau < 0.0) {
        // chi_{n,n'}(-dt, dw) = exp(j dw dt) conj(chi_{n',n}(dt, -dw)), dt > 0
        const Complex c = ambiguity(set, nprime, n, -delta_tau, -delta_omega);
        return std::exp(Complex(0.0, -delta_omega * delta_tau)) * std::conj(c);
    }
    const double b = set.bandwidth;
    const double t = set.duration;
    const int n_chips = set.n_chips();
    const double x = delta_tau * b;
    const int big_l = static_cast<int>(std::floor(x));
    if (big_l >= n_chips) return Complex(0.0, 0.0);  // no support overlap
    const double eps = x - big_l;

    // a and b integrals at chip offset l factor as exp(-j dw l/B) times a
    // fixed integral over the chip-local window.
    const Complex ia = phase_integral(eps / b, 1.0 / b, delta_omega);
    const Complex ib = phase_integral(0.0, eps / b, delta_omega);
    const Complex step = std::exp(Complex(0.0, -delta_omega / b));
    Complex ph = std::exp(Complex(0.0, -delta_omega * big_l / b));

    Complex acc(0.0, 0.0);
    for (int l = big_l; l < n_chips; ++l) {
        Complex term = std::conj(set.chips(nprime, l - big_l)) * ia;
        if (l - big_l - 1 >= 0)
            term += std::conj(set.chips(nprime, l - big_l - 1)) * ib;
        acc += set.chips(n, l) * ph * term;
        ph *= step;
    }
    return acc / t;
}

AmbiguityReport verify_theorem1(const PolyphaseWaveformSet& set, double delta,
                                const VerifyOptions& opts) {
    if (delta <= 0.0)
        throw std::invalid_argument("verify_theorem1: delta must be positive");
    const double b = set.bandwidth;
    const double t = set.duration;
    const int nw = set.n_waveforms();

    AmbiguityReport report;
    report.delta = delta;

    report.property1 = true;
    for (int n = 0; n < nw; ++n)
        if (std::abs(ambiguity(set, n, n, 0.0, 0.0) - Complex(1.0, 0.0)) > 1e-9)
            report.property1 = false;

    // Nominal grid delta_tau = J delta/(8B) for J >= 0 (negative delays
    // covered by symmetry), delta_omega = M delta/T with |M delta/T| <= pi B.
    const long j_max = static_cast<long>(std::ceil(8.0 * b * t / delta)) - 1;
    const long m_max = static_cast<long>(std::floor(M_PI * b * t / delta));
    const double total = (static_cast<double>(j_max) + 1.0) *
                         (2.0 * static_cast<double>(m_max) + 1.0);
    long stride = 1;
    if (total > static_cast<double>(opts.max_points_per_pair)) {
        if (!opts.allow_subsampling)
            throw std::invalid_argument(
                "verify_theorem1: sample grid exceeds the cap; increase delta, "
                "reduce BT, or allow subsampling");
        stride = static_cast<long>(
            std::ceil(std::sqrt(total / opts.max_points_per_pair)));
    }
    report.j_stride = report.m_stride = static_cast<int>(stride);

    std::vector<double> taus, omegas;
    for (long j = 0; j <= j_max; j += stride) taus.push_back(j * delta / (8.0 * b));
    for (long m = -m_max; m <= m_max; m += stride) omegas.push_back(m * delta / t);
    report.n_tau_points = static_cast<long>(taus.size());
    report.n_omega_points = static_cast<long>(omegas.size());

    const double omega_lo = 26.0 / (delta * t);
    const double tau_lo = 1.0 / b;
    double max_auto = 0.0, max_cross = 0.0;
    for (int n = 0; n < nw; ++n)
        for (int np = 0; np < nw; ++np)
            for (double dt : taus) {
                const bool tau_side = dt >= tau_lo * (1.0 - 1e-12);
                for (double dw : omegas) {
                    if (n == np && !tau_side &&
                        std::abs(dw) < omega_lo * (1.0 - 1e-12))
                        continue;  // auto mainlobe region is exempt
                    const double v = std::abs(ambiguity(set, n, np, dt, dw));
                    (n == np ? max_auto : max_cross) = std::max(
                        n == np ? max_auto : max_cross, v);
                }
            }
    report.max_auto = max_auto;
    report.max_cross = max_cross;
    report.property2 = max_auto <= delta;
    report.property3 = max_cross <= delta;
    return report;
}

bool condbt_check(double delta, double bandwidth, double duration, int n) {
    if (delta <= 0.0 || bandwidth <= 0.0 || duration <= 0.0 || n < 1)
        throw std::invalid_argument("condbt_check: all arguments must be positive");
    const double bt = bandwidth * duration;
    return delta * delta * bt / 256.0 - 2.0 * std::log(bt) >
           std::log(512.0 * n * n / (delta * delta * delta));
}

FilterOutputs matched_filter_sim(const Scene& scene, const BeamformingMatrix& R,
                                 const PolyphaseWaveformSet* waveforms,
                                 double noise_std, const DelayDopplerGrid& grid,
                                 bool ideal, std::uint64_t seed) {
    validate(scene);
    if (!ideal && waveforms == nullptr)
        throw std::invalid_argument("matched_filter_sim: non-ideal mode needs waveforms");
    const int nk = scene.n_targets();
    const int na = scene.n_antennas();
    const int n_tau = static_cast<int>(grid.tau.size());
    const int n_omega = static_cast<int>(grid.omega.size());

    std::vector<Eigen::VectorXcd> steer_vecs(nk);
    for (int k = 0; k < nk; ++k)
        steer_vecs[k] = steering(scene.array, scene.targets[k].azimuth);

    Eigen::MatrixXcd w;
    std::vector<Eigen::VectorXcd> wa(nk);  // W^dagger a(theta_k)
    if (!ideal) {
        w = factor(R);
        for (int k = 0; k < nk; ++k) wa[k] = w.adjoint() * steer_vecs[k];
    }

    FilterOutputs out;
    out.grid = grid;
    out.outputs.assign(nk, Eigen::MatrixXcd::Zero(n_tau, n_omega));
    for (int k = 0; k < nk; ++k) {
        auto rng = make_rng(seed, static_cast<std::uint64_t>(k));
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int i = 0; i < n_tau; ++i)
            for (int j = 0; j < n_omega; ++j) {
                Complex r(0.0, 0.0);
                for (int m = 0; m < nk; ++m) {
                    const Target& tgt = scene.targets[m];
                    const double dt = grid.tau[i] - tgt.tau_mean;
                    const double dw = grid.omega[j] - tgt.omega_mean;
                    const Complex bb = (steer_vecs[k].adjoint() * steer_vecs[m])(0);
                    const Complex doppler =
                        std::exp(Complex(0.0, -dw * tgt.tau_mean));
                    if (ideal) {
                        if (std::abs(dt) > 1e-9 * std::max(1.0, std::abs(tgt.tau_mean)) ||
                            std::abs(dw) > 1e-9 * std::max(1.0, std::abs(tgt.omega_mean)))
                            continue;
                        r += tgt.rcs * doppler * bb *
                             (steer_vecs[m].adjoint() * R.entries * steer_vecs[k])(0);
                    } else {
                        Eigen::MatrixXcd chi(na, na);
                        for (int p = 0; p < na; ++p)
                            for (int q = 0; q < na; ++q)
                                chi(p, q) = ambiguity(*waveforms, p, q, dt, dw);
                        r += tgt.rcs * doppler * bb * (wa[m].adjoint() * chi * wa[k])(0);
                    }
                }
                if (noise_std > 0.0)
                    r += Complex(noise_std * gauss(rng), noise_std * gauss(rng));
                out.outputs[k](i, j) = r;
            }
    }
    return out;
}

std::vector<Detection> detect(const FilterOutputs& outputs, double threshold) {
    if (threshold < 0.0)
        throw std::invalid_argument("detect: threshold must be >= 0");
    std::vector<Detection> dets;
    for (size_t k = 0; k < outputs.outputs.size(); ++k)
        for (int i = 0; i < outputs.outputs[k].rows(); ++i)
            for (int j = 0; j < outputs.outputs[k].cols(); ++j) {
                const double mag = std::abs(outputs.outputs[k](i, j));
                if (mag > threshold)
                    dets.push_back({outputs.grid.tau[i], outputs.grid.omega[j],
                                    static_cast<int>(k), mag});
            }
    return dets;
}

}  // namespace abf
