#include "abf/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "abf/gating.hpp"

namespace abf {

AmbiguityGraph::AmbiguityGraph(int n_vertices) : n_vertices_(n_vertices) {
    if (n_vertices < 1)
        throw std::invalid_argument("AmbiguityGraph: need at least one vertex");
    bits_.assign(static_cast<size_t>(n_vertices) * (n_vertices - 1) / 2, false);
}

int AmbiguityGraph::pair_index(int k, int kprime) const {
    if (k == kprime || k < 0 || kprime < 0 || k >= n_vertices_ || kprime >= n_vertices_)
        throw std::out_of_range("AmbiguityGraph: bad vertex pair");
    if (k > kprime) std::swap(k, kprime);
    // row-major upper triangle
    return k * n_vertices_ - k * (k + 1) / 2 + (kprime - k - 1);
}

bool AmbiguityGraph::has_edge(int k, int kprime) const {
    return bits_[pair_index(k, kprime)];
}

void AmbiguityGraph::set_edge(int k, int kprime, bool present) {
    bits_[pair_index(k, kprime)] = present;
}

int AmbiguityGraph::n_edges() const {
    return static_cast<int>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<int> AmbiguityGraph::neighbors(int k) const {
    std::vector<int> out;
    for (int j = 0; j < n_vertices_; ++j)
        if (j != k && has_edge(k, j)) out.push_back(j);
    return out;
}

std::vector<int> AmbiguityGraph::non_neighbors(int k) const {
    std::vector<int> out;
    for (int j = 0; j < n_vertices_; ++j)
        if (j != k && !has_edge(k, j)) out.push_back(j);
    return out;
}

std::uint64_t AmbiguityGraph::edge_mask() const {
    if (bits_.size() > 64)
        throw std::length_error("AmbiguityGraph: too many pairs for 64-bit mask");
    std::uint64_t mask = 0;
    for (size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) mask |= std::uint64_t{1} << i;
    return mask;
}

AmbiguityGraph AmbiguityGraph::from_edge_mask(int n_vertices, std::uint64_t mask) {
    AmbiguityGraph g(n_vertices);
    for (size_t i = 0; i < g.bits_.size(); ++i)
        g.bits_[i] = (mask >> i) & 1;
    return g;
}

bool AmbiguityGraph::subgraph_of(const AmbiguityGraph& other) const {
    if (n_vertices_ != other.n_vertices_) return false;
    for (size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] && !other.bits_[i]) return false;
    return true;
}

std::string AmbiguityGraph::to_edge_string() const {
    std::string out;
    for (int k = 0; k < n_vertices_; ++k)
        for (int j = k + 1; j < n_vertices_; ++j)
            if (has_edge(k, j)) {
                if (!out.empty()) out += ',';
                out += std::to_string(k) + "-" + std::to_string(j);
            }
    return out;
}

AmbiguityGraph standard_graph(int n_vertices, GraphKind kind) {
    AmbiguityGraph g(n_vertices);
    switch (kind) {
        case GraphKind::Empty:
            break;
        case GraphKind::Complete:
            for (int k = 0; k < n_vertices; ++k)
                for (int j = k + 1; j < n_vertices; ++j) g.set_edge(k, j);
            break;
        case GraphKind::Path:
            for (int k = 0; k + 1 < n_vertices; ++k) g.set_edge(k, k + 1);
            break;
    }
    return g;
}

AmbiguityGraph from_gates(const std::vector<RectGate>& gates) {
    const int n = static_cast<int>(gates.size());
    AmbiguityGraph g(n);
    for (int k = 0; k < n; ++k)
        for (int j = k + 1; j < n; ++j)
            if (intersects(gates[k], gates[j])) g.set_edge(k, j);
    return g;
}

AmbiguityGraph threshold_graph(double gamma, const ConfusionTable& table) {
    const int n = table.size();
    AmbiguityGraph g(n);
    for (int k = 0; k < n; ++k)
        for (int j = k + 1; j < n; ++j)
            if (table.p(k, j) <= gamma || table.p(j, k) <= gamma) g.set_edge(k, j);
    return g;
}

std::vector<double> gamma_breakpoints(const ConfusionTable& table) {
    std::vector<double> vals;
    const int n = table.size();
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            if (k != j) vals.push_back(table.p(k, j));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

GraphEnumerator::GraphEnumerator(int n_vertices) : n_vertices_(n_vertices) {
    const int pairs = n_vertices * (n_vertices - 1) / 2;
    if (pairs > 25)
        throw std::invalid_argument("GraphEnumerator: more than 25 vertex pairs");
    count_ = std::uint64_t{1} << pairs;
}

bool GraphEnumerator::next(AmbiguityGraph& out) {
    if (cursor_ >= count_) return false;
    out = AmbiguityGraph::from_edge_mask(n_vertices_, cursor_);
    ++cursor_;
    return true;
}

}  // namespace abf
