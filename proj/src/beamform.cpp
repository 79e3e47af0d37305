#include "abf/beamform.hpp"

#include <cmath>
#include <stdexcept>

#include "abf/sdp.hpp"

namespace abf {

namespace {

/// Real coordinates of the Hermitian matrices on C^{n x n}:
/// n diagonal entries, then (re, im) per upper-triangle entry.
std::vector<Eigen::MatrixXcd> hermitian_basis(int n) {
    std::vector<Eigen::MatrixXcd> basis;
    basis.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
        e(i, i) = 1.0;
        basis.push_back(e);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Eigen::MatrixXcd re = Eigen::MatrixXcd::Zero(n, n);
            re(i, j) = 1.0;
            re(j, i) = 1.0;
            basis.push_back(re);
            Eigen::MatrixXcd im = Eigen::MatrixXcd::Zero(n, n);
            im(i, j) = Complex(0.0, 1.0);
            im(j, i) = Complex(0.0, -1.0);
            basis.push_back(im);
        }
    return basis;
}

Eigen::MatrixXcd combine(const std::vector<Eigen::MatrixXcd>& basis,
                         const Eigen::VectorXd& coords) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(basis[0].rows(), basis[0].cols());
    for (size_t c = 0; c < basis.size(); ++c) out += coords(c) * basis[c];
    return out;
}

double min_gain(const std::vector<Eigen::VectorXcd>& steer, const Eigen::MatrixXcd& r) {
    double g = std::numeric_limits<double>::infinity();
    for (const auto& a : steer) g = std::min(g, (a.adjoint() * r * a)(0).real());
    return g;
}

struct EdgeList {
    std::vector<std::pair<int, int>> edges;
};

EdgeList edges_of(const AmbiguityGraph& graph) {
    EdgeList e;
    for (int k = 0; k < graph.n_vertices(); ++k)
        for (int j = k + 1; j < graph.n_vertices(); ++j)
            if (graph.has_edge(k, j)) e.edges.emplace_back(k, j);
    return e;
}

BeamformResult finish(const std::vector<Eigen::VectorXcd>& steer,
                      const Eigen::MatrixXcd& r, BeamformStatus status, double gap) {
    BeamformResult res;
    res.matrix.entries = 0.5 * (r + r.adjoint().eval());
    res.matrix.power = min_gain(steer, res.matrix.entries);
    res.objective = res.matrix.power;
    res.status = status;
    res.gap = gap;
    return res;
}

}  // namespace

Eigen::MatrixXcd complement_basis(const std::vector<Eigen::VectorXcd>& vectors, int n) {
    if (vectors.empty()) return Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd m(n, vectors.size());
    for (size_t i = 0; i < vectors.size(); ++i) m.col(i) = vectors[i];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU);
    const Eigen::VectorXd sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-12 * std::max(1.0, sv(0))) ++rank;
    return svd.matrixU().rightCols(n - rank);
}

BeamformResult solve_vectors(const std::vector<Eigen::VectorXcd>& steer,
                             const AmbiguityGraph& graph, const SolveOptions& opts,
                             int depth) {
    const int n = static_cast<int>(steer[0].size());
    const int nk = static_cast<int>(steer.size());
    const double delta = opts.interference_bound;
    const EdgeList el = edges_of(graph);
    const auto basis = hermitian_basis(n);
    const int d = static_cast<int>(basis.size());

    BeamformResult res;
    if (depth > n + 2) {
        res.status = BeamformStatus::NumericalFailure;
        return res;
    }

    // Equality constraints on the coordinate vector: trace = 1, and for
    // delta = 0 the edge cross-terms (real and imaginary parts) vanish.
    std::vector<Eigen::VectorXd> rows;
    std::vector<double> rhs;
    {
        Eigen::VectorXd tr_row = Eigen::VectorXd::Zero(d);
        for (int c = 0; c < d; ++c) tr_row(c) = basis[c].trace().real();
        rows.push_back(tr_row);
        rhs.push_back(1.0);
    }
    if (delta == 0.0) {
        for (auto [k, j] : el.edges) {
            Eigen::VectorXd re_row(d), im_row(d);
            for (int c = 0; c < d; ++c) {
                const Complex v = (steer[k].adjoint() * basis[c] * steer[j])(0);
                re_row(c) = v.real();
                im_row(c) = v.imag();
            }
            rows.push_back(re_row);
            rhs.push_back(0.0);
            rows.push_back(im_row);
            rhs.push_back(0.0);
        }
    }
    Eigen::MatrixXd a_eq(rows.size(), d);
    Eigen::VectorXd b_eq(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        a_eq.row(i) = rows[i];
        b_eq(i) = rhs[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a_eq, Eigen::ComputeThinU | Eigen::ComputeFullV);
    const Eigen::VectorXd x0 = svd.solve(b_eq);
    if ((a_eq * x0 - b_eq).norm() > 1e-8) {
        res.status = BeamformStatus::Infeasible;
        return res;
    }
    const Eigen::VectorXd sv = svd.singularValues();
    int eq_rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-10 * std::max(1.0, sv(0))) ++eq_rank;
    const Eigen::MatrixXd null_basis = svd.matrixV().rightCols(d - eq_rank);
    const int dn = static_cast<int>(null_basis.cols());

    const Eigen::MatrixXcd r0 = combine(basis, x0);
    std::vector<Eigen::MatrixXcd> dirs(dn);
    for (int j = 0; j < dn; ++j) dirs[j] = combine(basis, null_basis.col(j));

    auto cross_const = [&](int k, int j) { return (steer[k].adjoint() * r0 * steer[j])(0); };
    auto cross_dir = [&](int k, int j, int c) {
        return (steer[k].adjoint() * dirs[c] * steer[j])(0);
    };

    // ---- phase I: maximize s with R(z) - sI >= 0 (and edge blocks for
    // delta > 0), deciding strict feasibility ----
    double s_star;
    Eigen::VectorXd z_int = Eigen::VectorXd::Zero(dn);
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r0);
        double s0 = eig.eigenvalues().minCoeff();
        sdp::Problem p1;
        p1.objective = Eigen::VectorXd::Zero(dn + 1);
        p1.objective(dn) = 1.0;
        sdp::LmiBlock rb;
        rb.constant = r0;
        rb.coeff.assign(dn + 1, Eigen::MatrixXcd());
        for (int j = 0; j < dn; ++j) rb.coeff[j] = dirs[j];
        rb.coeff[dn] = -Eigen::MatrixXcd::Identity(n, n);
        p1.blocks.push_back(std::move(rb));
        if (delta > 0.0) {
            for (auto [k, j] : el.edges) {
                sdp::LmiBlock eb;
                eb.constant = Eigen::MatrixXcd(2, 2);
                const Complex c0 = cross_const(k, j);
                eb.constant << delta, c0, std::conj(c0), delta;
                eb.coeff.assign(dn + 1, Eigen::MatrixXcd());
                for (int c = 0; c < dn; ++c) {
                    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
                    const Complex v = cross_dir(k, j, c);
                    m(0, 1) = v;
                    m(1, 0) = std::conj(v);
                    eb.coeff[c] = m;
                }
                eb.coeff[dn] = -Eigen::MatrixXcd::Identity(2, 2);
                p1.blocks.push_back(std::move(eb));
                s0 = std::min(s0, delta - std::abs(c0));
            }
        }
        Eigen::VectorXd start = Eigen::VectorXd::Zero(dn + 1);
        start(dn) = s0 - 1.0;
        sdp::Options o1;
        o1.gap_tol = 1e-10;
        o1.stop_objective_above = 0.05;
        const sdp::Solution s1 = sdp::maximize(p1, start, o1);
        if (s1.status == sdp::SolveStatus::NumericalFailure) {
            res.status = BeamformStatus::NumericalFailure;
            return res;
        }
        s_star = s1.objective;
        z_int = s1.z.head(dn);
    }

    const double interior_tol = 1e-6;
    if (s_star < -interior_tol) {
        res.status = BeamformStatus::Infeasible;
        return res;
    }
    // The feasible set touches (or nearly touches) the PSD boundary
    // everywhere: restrict to the face spanned by the max-rank feasible
    // point and re-solve there.
    auto reduce_to_face = [&]() -> BeamformResult {
        BeamformResult out;
        const Eigen::MatrixXcd r_star = r0 + [&] {
            Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
            for (int j = 0; j < dn; ++j) acc += z_int(j) * dirs[j];
            return acc;
        }();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r_star);
        std::vector<int> keep;
        for (int i = 0; i < n; ++i)
            if (eig.eigenvalues()(i) > 1e-5) keep.push_back(i);
        const int r = static_cast<int>(keep.size());
        if (r == 0 || r == n) {
            out.status = (r == 0) ? BeamformStatus::Infeasible
                                  : BeamformStatus::NumericalFailure;
            return out;
        }
        Eigen::MatrixXcd q(n, r);
        for (int i = 0; i < r; ++i) q.col(i) = eig.eigenvectors().col(keep[i]);
        std::vector<Eigen::VectorXcd> reduced(nk);
        for (int k = 0; k < nk; ++k) reduced[k] = q.adjoint() * steer[k];
        BeamformResult sub = solve_vectors(reduced, graph, opts, depth + 1);
        if (sub.status == BeamformStatus::Infeasible ||
            sub.status == BeamformStatus::NumericalFailure) {
            out.status = sub.status;
            return out;
        }
        const Eigen::MatrixXcd r_full = q * sub.matrix.entries * q.adjoint();
        return finish(steer, r_full, sub.status, sub.gap);
    };
    // A strictly positive s_star, however small, certifies an interior
    // point, so phase II gets the first shot; facial reduction is the
    // fallback for thin-interior problems where the barrier breaks down.
    if (s_star <= 0.0) return reduce_to_face();

    // ---- phase II: maximize t with gains above t ----
    sdp::Problem p2;
    p2.objective = Eigen::VectorXd::Zero(dn + 1);
    p2.objective(dn) = 1.0;
    {
        sdp::LmiBlock rb;
        rb.constant = r0;
        rb.coeff.assign(dn + 1, Eigen::MatrixXcd());
        for (int j = 0; j < dn; ++j) rb.coeff[j] = dirs[j];
        p2.blocks.push_back(std::move(rb));
        for (int k = 0; k < nk; ++k) {
            sdp::LmiBlock gb;
            gb.constant = Eigen::MatrixXcd::Constant(1, 1, (steer[k].adjoint() * r0 * steer[k])(0).real());
            gb.coeff.assign(dn + 1, Eigen::MatrixXcd());
            for (int c = 0; c < dn; ++c)
                gb.coeff[c] = Eigen::MatrixXcd::Constant(1, 1, cross_dir(k, k, c).real());
            gb.coeff[dn] = Eigen::MatrixXcd::Constant(1, 1, -1.0);
            p2.blocks.push_back(std::move(gb));
        }
        if (delta > 0.0) {
            for (auto [k, j] : el.edges) {
                sdp::LmiBlock eb;
                eb.constant = Eigen::MatrixXcd(2, 2);
                const Complex c0 = cross_const(k, j);
                eb.constant << delta, c0, std::conj(c0), delta;
                eb.coeff.assign(dn + 1, Eigen::MatrixXcd());
                for (int c = 0; c < dn; ++c) {
                    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
                    const Complex v = cross_dir(k, j, c);
                    m(0, 1) = v;
                    m(1, 0) = std::conj(v);
                    eb.coeff[c] = m;
                }
                p2.blocks.push_back(std::move(eb));
            }
        }
    }
    Eigen::VectorXd start2(dn + 1);
    start2.head(dn) = z_int;
    {
        Eigen::MatrixXcd r_int = r0;
        for (int j = 0; j < dn; ++j) r_int += z_int(j) * dirs[j];
        start2(dn) = min_gain(steer, r_int) - 1.0;
    }
    sdp::Options o2;
    o2.gap_tol = opts.gap_tol;
    sdp::Solution s2;
    bool started = true;
    try {
        s2 = sdp::maximize(p2, start2, o2);
    } catch (const std::invalid_argument&) {
        started = false;  // interior point too close to the boundary
    }
    if (started && s2.status == sdp::SolveStatus::Optimal && s2.gap <= 1e-6) {
        Eigen::MatrixXcd r_opt = r0;
        for (int j = 0; j < dn; ++j) r_opt += s2.z(j) * dirs[j];
        return finish(steer, r_opt, BeamformStatus::Optimal, s2.gap);
    }
    if (s_star <= interior_tol) return reduce_to_face();
    res.status = BeamformStatus::NumericalFailure;
    return res;
}

BeamformResult solve(const Scene& scene, const AmbiguityGraph& graph,
                     const SolveOptions& opts) {
    validate(scene);
    if (graph.n_vertices() != scene.n_targets())
        throw std::invalid_argument("solve: graph size does not match scene");
    std::vector<Eigen::VectorXcd> steer_vecs(scene.n_targets());
    for (int k = 0; k < scene.n_targets(); ++k)
        steer_vecs[k] = steering(scene.array, scene.targets[k].azimuth);
    return solve_vectors(steer_vecs, graph, opts);
}

std::vector<double> beam_pattern(const BeamformingMatrix& R, const Scene& scene,
                                 int k, const std::vector<double>& azimuth_grid) {
    if (azimuth_grid.empty())
        throw std::invalid_argument("beam_pattern: empty grid");
    const Eigen::VectorXcd ak = steering(scene.array, scene.targets[k].azimuth);
    std::vector<double> out;
    out.reserve(azimuth_grid.size());
    for (double th : azimuth_grid) {
        const Eigen::VectorXcd a = steering(scene.array, th);
        out.push_back(std::abs((ak.adjoint() * R.entries * a)(0)));
    }
    return out;
}

BeamformResult friedlander_solution(const Scene& scene) {
    validate(scene);
    const int n = scene.n_antennas();
    const int nk = scene.n_targets();
    if (nk != n)
        throw std::invalid_argument("friedlander_solution: requires K = N");
    if (steering_matrix_rank(scene) < n)
        throw std::invalid_argument("friedlander_solution: steering matrix rank-deficient");
    std::vector<Eigen::VectorXcd> steer_vecs(nk);
    for (int k = 0; k < nk; ++k)
        steer_vecs[k] = steering(scene.array, scene.targets[k].azimuth);
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < nk; ++k) {
        std::vector<Eigen::VectorXcd> others;
        for (int j = 0; j < nk; ++j)
            if (j != k) others.push_back(steer_vecs[j]);
        const Eigen::MatrixXcd u = complement_basis(others, n);
        if (u.cols() != 1)
            throw std::invalid_argument("friedlander_solution: steering matrix rank-deficient");
        r += u * u.adjoint();
    }
    r /= static_cast<double>(nk);  // equal weights, unit trace
    return finish(steer_vecs, r, BeamformStatus::Optimal, 0.0);
}

BeamformResult two_coloring_solution(const Scene& scene) {
    validate(scene);
    const int n = scene.n_antennas();
    const int nk = scene.n_targets();
    if (nk % 2 != 0 || nk > 2 * n - 2)
        throw std::invalid_argument(
            "two_coloring_solution: requires even K with N - K/2 >= 1");
    std::vector<Eigen::VectorXcd> steer_vecs(nk), color1, color2;
    for (int k = 0; k < nk; ++k) {
        steer_vecs[k] = steering(scene.array, scene.targets[k].azimuth);
        (k % 2 == 0 ? color1 : color2).push_back(steer_vecs[k]);
    }
    const Eigen::MatrixXcd u1 = complement_basis(color1, n);
    const Eigen::MatrixXcd u2 = complement_basis(color2, n);
    if (u1.cols() != n - nk / 2 || u2.cols() != n - nk / 2)
        throw std::invalid_argument("two_coloring_solution: steering subsets rank-deficient");
    const Eigen::MatrixXcd r =
        (u1 * u1.adjoint() + u2 * u2.adjoint()) / static_cast<double>(2 * n - nk);
    return finish(steer_vecs, r, BeamformStatus::Optimal, 0.0);
}

SubspaceDecomposition subspace_decomposition(const Scene& scene,
                                             const AmbiguityGraph& graph) {
    validate(scene);
    const int n = scene.n_antennas();
    SubspaceDecomposition sd;
    for (int k = 0; k < scene.n_targets(); ++k) {
        std::vector<Eigen::VectorXcd> nbrs;
        for (int j : graph.neighbors(k))
            nbrs.push_back(steering(scene.array, scene.targets[j].azimuth));
        sd.U.push_back(complement_basis(nbrs, n));
        sd.V.push_back(complement_basis({steering(scene.array, scene.targets[k].azimuth)}, n));
    }
    return sd;
}

Eigen::MatrixXcd factor(const BeamformingMatrix& R) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(R.entries);
    Eigen::VectorXd vals = eig.eigenvalues();
    for (int i = 0; i < vals.size(); ++i) vals(i) = std::max(vals(i), 0.0);
    return eig.eigenvectors() * vals.cwiseSqrt().asDiagonal() *
           eig.eigenvectors().adjoint();
}

IdentifiabilityReport identifiability(int n_antennas, GraphKind family, int k_max,
                                      const SolveOptions& opts) {
    if (k_max < 1)
        throw std::invalid_argument("identifiability: k_max must be >= 1");
    IdentifiabilityReport report;
    for (int k = 1; k <= k_max; ++k) {
        const Scene scene = uniform_scene(n_antennas, k);
        const AmbiguityGraph graph = standard_graph(k, family);
        const BeamformResult res = solve(scene, graph, opts);
        report.objectives.push_back(res.objective);
        report.statuses.push_back(res.status);
        if (res.status == BeamformStatus::Infeasible) break;
        report.k_star = k;
    }
    return report;
}

}  // namespace abf
