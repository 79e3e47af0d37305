#include "abf/sdp.hpp"

#include <cmath>
#include <stdexcept>

namespace abf::sdp {

Eigen::MatrixXcd LmiBlock::eval(const Eigen::VectorXd& z) const {
    Eigen::MatrixXcd f = constant;
    for (int j = 0; j < z.size(); ++j)
        if (coeff[j].size() > 0) f += z(j) * coeff[j];
    return f;
}

int Problem::barrier_order() const {
    int nu = 0;
    for (const LmiBlock& b : blocks) nu += static_cast<int>(b.constant.rows());
    return nu;
}

namespace {

struct BlockState {
    Eigen::MatrixXcd value;
    Eigen::LLT<Eigen::MatrixXcd> llt;
    bool pd = false;
    double logdet = 0.0;
};

bool refresh(const Problem& p, const Eigen::VectorXd& z, std::vector<BlockState>& st) {
    st.resize(p.blocks.size());
    for (size_t b = 0; b < p.blocks.size(); ++b) {
        st[b].value = p.blocks[b].eval(z);
        st[b].llt.compute(st[b].value);
        st[b].pd = st[b].llt.info() == Eigen::Success;
        if (st[b].pd) {
            double ld = 0.0;
            const auto& l = st[b].llt.matrixLLT();
            for (int i = 0; i < l.rows(); ++i) {
                const double di = l(i, i).real();
                if (!(di > 0.0)) { st[b].pd = false; break; }
                ld += 2.0 * std::log(di);
            }
            st[b].logdet = ld;
        }
        if (!st[b].pd) return false;
    }
    return true;
}

double barrier(const std::vector<BlockState>& st) {
    double phi = 0.0;
    for (const BlockState& s : st) phi -= s.logdet;
    return phi;
}

}  // namespace

Solution maximize(const Problem& p, const Eigen::VectorXd& z0, const Options& opts) {
    const int d = p.n_vars();
    const int nu = p.barrier_order();
    Solution sol;
    sol.z = z0;

    std::vector<BlockState> st;
    if (!refresh(p, sol.z, st))
        throw std::invalid_argument("sdp::maximize: starting point is not strictly feasible");

    double mu = 1.0;
    const double mu_min = opts.gap_tol / std::max(1, nu);
    int newton = 0;
    bool centered = false;

    std::vector<std::vector<Eigen::MatrixXcd>> scratch(p.blocks.size());

    while (newton < opts.max_newton) {
        // gradient and Hessian of psi = -c.z/mu + phi(z)
        Eigen::VectorXd grad = -p.objective / mu;
        Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(d, d);
        for (size_t b = 0; b < p.blocks.size(); ++b) {
            auto& pj = scratch[b];
            pj.assign(d, Eigen::MatrixXcd());
            for (int j = 0; j < d; ++j) {
                const Eigen::MatrixXcd& c = p.blocks[b].coeff[j];
                if (c.size() == 0) continue;
                pj[j] = st[b].llt.solve(c);
                grad(j) -= pj[j].trace().real();
            }
            for (int j = 0; j < d; ++j) {
                if (pj[j].size() == 0) continue;
                for (int k = j; k < d; ++k) {
                    if (pj[k].size() == 0) continue;
                    const double h =
                        (pj[j].array() * pj[k].transpose().array()).sum().real();
                    hess(j, k) += h;
                    if (k != j) hess(k, j) += h;
                }
            }
        }

        Eigen::VectorXd step;
        double lambda2 = 0.0;
        double ridge = 0.0;
        for (int attempt = 0; attempt < 8; ++attempt) {
            Eigen::MatrixXd h = hess;
            if (ridge > 0.0) h.diagonal().array() += ridge;
            Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
            step = ldlt.solve(-grad);
            lambda2 = -grad.dot(step);
            if (ldlt.info() == Eigen::Success && lambda2 >= 0.0 && step.allFinite()) break;
            ridge = (ridge == 0.0) ? 1e-12 * hess.diagonal().maxCoeff() : ridge * 100.0;
        }
        if (!step.allFinite()) { sol.status = SolveStatus::NumericalFailure; break; }

        centered = lambda2 <= opts.centering_tol;
        if (centered) {
            sol.gap = nu * mu;
            sol.objective = p.objective.dot(sol.z);
            if (mu <= mu_min * (1.0 + 1e-12)) { sol.status = SolveStatus::Optimal; break; }
            mu = std::max(mu * opts.mu_shrink, mu_min);
            continue;
        }

        // damped Newton step with backtracking on psi
        const double psi0 = -p.objective.dot(sol.z) / mu + barrier(st);
        const double slope = grad.dot(step);
        double alpha = 1.0;
        bool moved = false;
        std::vector<BlockState> trial;
        for (int ls = 0; ls < 60; ++ls) {
            const Eigen::VectorXd zt = sol.z + alpha * step;
            if (refresh(p, zt, trial)) {
                const double psit = -p.objective.dot(zt) / mu + barrier(trial);
                if (psit <= psi0 + 0.01 * alpha * slope) {
                    sol.z = zt;
                    st = std::move(trial);
                    moved = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        ++newton;
        if (!moved) {
            // stalled line search: either converged to limits of double
            // precision or genuinely stuck
            sol.gap = nu * mu;
            sol.objective = p.objective.dot(sol.z);
            sol.status = (sol.gap <= 1e-6) ? SolveStatus::Optimal
                                           : SolveStatus::NumericalFailure;
            sol.newton_steps = newton;
            return sol;
        }
        sol.objective = p.objective.dot(sol.z);
        if (sol.objective > opts.stop_objective_above) {
            sol.gap = nu * mu;
            sol.status = SolveStatus::Optimal;
            break;
        }
    }

    if (newton >= opts.max_newton) {
        sol.gap = nu * mu;
        sol.objective = p.objective.dot(sol.z);
        sol.status = (sol.gap <= 1e-6) ? SolveStatus::Optimal
                                       : SolveStatus::NumericalFailure;
    }
    sol.newton_steps = newton;
    return sol;
}

}  // namespace abf::sdp
