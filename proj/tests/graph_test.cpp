#include <random>
#include <set>

#include "abf/gating.hpp"
#include "abf/graph.hpp"
#include "doctest.h"

using namespace abf;

TEST_CASE("standard graphs") {
    CHECK(standard_graph(3, GraphKind::Complete).n_edges() == 3);
    CHECK(standard_graph(5, GraphKind::Empty).n_edges() == 0);
    CHECK(standard_graph(1, GraphKind::Path).n_edges() == 0);
    CHECK(standard_graph(1, GraphKind::Complete).n_edges() == 0);

    const AmbiguityGraph p4 = standard_graph(4, GraphKind::Path);
    CHECK(p4.n_edges() == 3);
    CHECK(p4.has_edge(0, 1));
    CHECK(p4.has_edge(1, 2));
    CHECK(p4.has_edge(2, 3));
    CHECK_FALSE(p4.has_edge(0, 2));
    CHECK(p4.to_edge_string() == "0-1,1-2,2-3");
}

TEST_CASE("graph from rectangular gates") {
    SUBCASE("overlapping chain gives a path") {
        std::vector<RectGate> gates;
        for (int k = 0; k < 4; ++k)
            gates.push_back({k * 1.0, k * 1.0 + 1.5, 0.0, 1.0});
        const AmbiguityGraph g = from_gates(gates);
        CHECK(g == standard_graph(4, GraphKind::Path));
    }
    SUBCASE("disjoint rectangles give the empty graph") {
        std::vector<RectGate> gates;
        for (int k = 0; k < 4; ++k)
            gates.push_back({k * 10.0, k * 10.0 + 1.0, 0.0, 1.0});
        CHECK(from_gates(gates) == standard_graph(4, GraphKind::Empty));
    }
    SUBCASE("identical rectangles give the complete graph") {
        std::vector<RectGate> gates(4, RectGate{0.0, 1.0, 0.0, 1.0});
        CHECK(from_gates(gates) == standard_graph(4, GraphKind::Complete));
    }
}

TEST_CASE("threshold graphs") {
    ConfusionTable t;
    t.p = Eigen::MatrixXd::Zero(3, 3);
    t.p(0, 1) = t.p(1, 0) = 0.6;
    t.p(0, 2) = t.p(2, 0) = 0.9;
    t.p(1, 2) = t.p(2, 1) = 0.8;

    CHECK(threshold_graph(1.0, t) == standard_graph(3, GraphKind::Complete));
    CHECK(threshold_graph(0.0, t) == standard_graph(3, GraphKind::Empty));

    // gamma between the two smallest values: only the low pair is an edge
    const AmbiguityGraph g = threshold_graph(0.7, t);
    CHECK(g.n_edges() == 1);
    CHECK(g.has_edge(0, 1));

    // OR symmetrization: one direction below the threshold is enough
    ConfusionTable asym = t;
    asym.p(2, 1) = 0.1;
    CHECK(threshold_graph(0.2, asym).has_edge(1, 2));
}

TEST_CASE("threshold graph is monotone in gamma") {
    ConfusionTable t;
    t.p = Eigen::MatrixXd::Zero(4, 4);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) t.p(i, j) = u(rng);
    AmbiguityGraph prev = threshold_graph(0.0, t);
    for (double gamma : gamma_breakpoints(t)) {
        const AmbiguityGraph g = threshold_graph(gamma, t);
        CHECK(prev.subgraph_of(g));
        prev = g;
    }
    CHECK(prev == standard_graph(4, GraphKind::Complete));
}

TEST_CASE("gamma breakpoints") {
    ConfusionTable equal;
    equal.p = Eigen::MatrixXd::Constant(3, 3, 0.7);
    CHECK(gamma_breakpoints(equal).size() == 1);

    ConfusionTable t;
    t.p = Eigen::MatrixXd::Zero(3, 3);
    t.p(0, 1) = t.p(1, 0) = 0.6;
    t.p(0, 2) = t.p(2, 0) = 0.9;
    t.p(1, 2) = t.p(2, 1) = 0.8;
    const auto bp = gamma_breakpoints(t);
    REQUIRE(bp.size() == 3);
    CHECK(bp[0] == doctest::Approx(0.6));
    CHECK(bp[2] == doctest::Approx(0.9));
    std::set<std::uint64_t> masks;
    masks.insert(threshold_graph(0.0, t).edge_mask());
    for (double g : bp) masks.insert(threshold_graph(g, t).edge_mask());
    CHECK(masks.size() == 4);  // empty plus one per breakpoint

    ConfusionTable pair;
    pair.p = Eigen::MatrixXd::Constant(2, 2, 0.5);
    CHECK(gamma_breakpoints(pair).size() == 1);
}

TEST_CASE("graph enumeration") {
    SUBCASE("exact counts and no duplicates up to K=5") {
        const std::uint64_t expected[] = {0, 1, 2, 8, 64, 1024};
        for (int k = 1; k <= 5; ++k) {
            GraphEnumerator en(k);
            CHECK(en.count() == expected[k]);
            std::set<std::uint64_t> seen;
            AmbiguityGraph g;
            std::uint64_t n = 0;
            while (en.next(g)) {
                ++n;
                CHECK(seen.insert(g.edge_mask()).second);
                CHECK(g.n_vertices() == k);
            }
            CHECK(n == expected[k]);
        }
    }
    SUBCASE("guard rejects too many pairs") {
        CHECK_THROWS_AS(GraphEnumerator(8), std::invalid_argument);
    }
}

TEST_CASE("graph encoding round trip and subgraph test") {
    AmbiguityGraph g(4);
    g.set_edge(0, 1);
    g.set_edge(2, 3);
    CHECK(g.to_edge_string() == "0-1,2-3");
    CHECK(AmbiguityGraph::from_edge_mask(4, g.edge_mask()) == g);
    CHECK(g.subgraph_of(standard_graph(4, GraphKind::Complete)));
    CHECK_FALSE(standard_graph(4, GraphKind::Complete).subgraph_of(g));
    CHECK(standard_graph(4, GraphKind::Empty).subgraph_of(g));
    CHECK(g.neighbors(0) == std::vector<int>{1});
    CHECK(g.non_neighbors(0) == std::vector<int>{2, 3});
}
