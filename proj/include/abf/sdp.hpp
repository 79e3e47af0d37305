#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

namespace abf::sdp {

/// Affine Hermitian-matrix-valued function of a real variable vector:
/// F(z) = constant + sum_j z_j coeff[j]. Scalar constraints are 1x1 blocks.
struct LmiBlock {
    Eigen::MatrixXcd constant;
    std::vector<Eigen::MatrixXcd> coeff;

    Eigen::MatrixXcd eval(const Eigen::VectorXd& z) const;
};

/// maximize objective . z  subject to  F_b(z) >= 0 for every block b.
struct Problem {
    Eigen::VectorXd objective;
    std::vector<LmiBlock> blocks;

    int n_vars() const { return static_cast<int>(objective.size()); }
    /// Total barrier parameter (sum of block dimensions).
    int barrier_order() const;
};

enum class SolveStatus { Optimal, Infeasible, NumericalFailure };

struct Solution {
    SolveStatus status = SolveStatus::NumericalFailure;
    Eigen::VectorXd z;
    double objective = 0.0;
    /// Certified duality-gap bound at the final centered point.
    double gap = std::numeric_limits<double>::infinity();
    int newton_steps = 0;
};

struct Options {
    double gap_tol = 1e-9;
    double mu_shrink = 0.15;
    double centering_tol = 0.25;  // squared Newton decrement threshold
    int max_newton = 2000;
    /// Early exit once the objective provably exceeds this value
    /// (used by feasibility phases that only need a sign).
    double stop_objective_above = std::numeric_limits<double>::infinity();
};

/// Path-following log-det barrier method. z0 must be strictly feasible
/// (all blocks positive definite at z0); throws std::invalid_argument if
/// it is not. The feasible set is assumed bounded in objective value.
Solution maximize(const Problem& problem, const Eigen::VectorXd& z0,
                  const Options& opts = {});

}  // namespace abf::sdp
