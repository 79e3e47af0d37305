#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "abf/graph.hpp"
#include "abf/scene.hpp"

namespace abf {

/// Transmit covariance R = W W^dagger: Hermitian, PSD, unit trace.
struct BeamformingMatrix {
    Eigen::MatrixXcd entries;
    double power = 0.0;  // min over targets of a_k^dagger R a_k
};

enum class BeamformStatus { Optimal, Infeasible, NumericalFailure };

struct BeamformResult {
    BeamformingMatrix matrix;
    BeamformStatus status = BeamformStatus::NumericalFailure;
    double objective = 0.0;  // P(G), worst-case transmit power gain
    double gap = 0.0;        // duality-gap bound from the solver
};

struct SolveOptions {
    /// Allowed cross-term magnitude |a_k^dagger R a_k'| on edges;
    /// 0 imposes exact zero-forcing as linear equalities.
    double interference_bound = 0.0;
    double gap_tol = 1e-9;
    double feasibility_tol = 1e-7;
};

/// Per-target zero-forcing subspaces of the reformulated problem:
/// U_k spans the complement of the neighbors' steering vectors,
/// V_k the complement of the target's own steering vector.
struct SubspaceDecomposition {
    std::vector<Eigen::MatrixXcd> U;
    std::vector<Eigen::MatrixXcd> V;
    std::vector<Eigen::MatrixXcd> F;  // optional coefficient blocks
    std::vector<Eigen::MatrixXcd> G;
};

struct IdentifiabilityReport {
    int k_star = 0;
    std::vector<double> objectives;            // objective per K = 1..k_max
    std::vector<BeamformStatus> statuses;
};

/// Orthonormal basis of the orthogonal complement of span(vectors) in C^n.
/// Returns an n x (n - rank) matrix; zero-width when the vectors span C^n.
Eigen::MatrixXcd complement_basis(const std::vector<Eigen::VectorXcd>& vectors, int n);

/// Maximize the worst-case transmit power gain subject to edge
/// cross-term constraints, unit trace, and R >= 0.
BeamformResult solve(const Scene& scene, const AmbiguityGraph& graph,
                     const SolveOptions& opts = {});

/// |a_k^dagger R a(theta)| over an azimuth grid.
std::vector<double> beam_pattern(const BeamformingMatrix& R, const Scene& scene,
                                 int k, const std::vector<double>& azimuth_grid);

/// Complete-graph closed form for K = N: R = f * sum_k u_k u_k^dagger with
/// u_k spanning the complement of the other targets' steering vectors and
/// equal weights f chosen for unit trace. Throws on rank-deficient scenes.
BeamformResult friedlander_solution(const Scene& scene);

/// Path-graph construction for even K <= 2N-2:
/// R = (U1 U1^dagger + U2 U2^dagger) / (2N - K) with U1, U2 spanning the
/// complements of the odd- and even-indexed steering vectors.
BeamformResult two_coloring_solution(const Scene& scene);

SubspaceDecomposition subspace_decomposition(const Scene& scene,
                                             const AmbiguityGraph& graph);

/// W with W W^dagger = R (eigendecomposition, small negative eigenvalues
/// clipped at -1e-8).
Eigen::MatrixXcd factor(const BeamformingMatrix& R);

/// Largest K <= k_max for which the beamforming problem on the uniform
/// scene with the given graph family admits a solution (SDP feasible).
IdentifiabilityReport identifiability(int n_antennas, GraphKind family, int k_max,
                                      const SolveOptions& opts = {});

/// Core solve on raw steering vectors; used by facial reduction and tests.
BeamformResult solve_vectors(const std::vector<Eigen::VectorXcd>& steer,
                             const AmbiguityGraph& graph, const SolveOptions& opts,
                             int depth = 0);

inline double to_db(double gain) { return 10.0 * std::log10(gain); }

}  // namespace abf
