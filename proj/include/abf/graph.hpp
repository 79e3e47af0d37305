#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace abf {

struct RectGate;  // gating.hpp

/// Undirected loop-free graph on target indices 0..K-1. An edge marks a
/// pair the priors cannot disambiguate, so the beamformer must separate it.
/// Stored as a bitset over the upper triangle (row-major, k < k'), which
/// gives a canonical encoding for hashing and enumeration.
class AmbiguityGraph {
public:
    AmbiguityGraph() = default;
    explicit AmbiguityGraph(int n_vertices);

    int n_vertices() const { return n_vertices_; }
    bool has_edge(int k, int kprime) const;
    void set_edge(int k, int kprime, bool present = true);
    int n_edges() const;

    /// Targets adjacent to k.
    std::vector<int> neighbors(int k) const;
    /// Targets k' != k with no edge to k (the competitors in gate tests).
    std::vector<int> non_neighbors(int k) const;

    /// Upper-triangle bitmask; only valid for K(K-1)/2 <= 64.
    std::uint64_t edge_mask() const;
    static AmbiguityGraph from_edge_mask(int n_vertices, std::uint64_t mask);

    /// True if this graph's edge set is contained in other's.
    bool subgraph_of(const AmbiguityGraph& other) const;

    /// Sorted edge list "0-1,1-2" (0-based), empty string for no edges.
    std::string to_edge_string() const;

    bool operator==(const AmbiguityGraph& other) const {
        return n_vertices_ == other.n_vertices_ && bits_ == other.bits_;
    }

private:
    int pair_index(int k, int kprime) const;
    int n_vertices_ = 0;
    std::vector<bool> bits_;
};

enum class GraphKind { Complete, Empty, Path };

AmbiguityGraph standard_graph(int n_vertices, GraphKind kind);

/// Edge (k,k') iff the closed rectangles intersect.
AmbiguityGraph from_gates(const std::vector<RectGate>& gates);

/// Confusion probabilities p[k][k'] = P((tau_k, omega_k) in S_{k,k'});
/// diagonal is unused.
struct ConfusionTable {
    Eigen::MatrixXd p;
    int size() const { return static_cast<int>(p.rows()); }
};

/// Edge (k,k') iff p[k][k'] <= gamma or p[k'][k] <= gamma. The per-target
/// rule is asymmetric; the undirected graph takes the union of directions.
AmbiguityGraph threshold_graph(double gamma, const ConfusionTable& table);

/// Sorted distinct off-diagonal confusion values. Sweeping gamma through
/// these plus 0 visits every distinct threshold graph.
std::vector<double> gamma_breakpoints(const ConfusionTable& table);

/// Iterates all 2^(K(K-1)/2) labeled graphs on K vertices.
/// Guarded to K(K-1)/2 <= 25 edges.
class GraphEnumerator {
public:
    explicit GraphEnumerator(int n_vertices);
    bool next(AmbiguityGraph& out);
    std::uint64_t count() const { return count_; }

private:
    int n_vertices_;
    std::uint64_t count_;
    std::uint64_t cursor_ = 0;
};

}  // namespace abf
