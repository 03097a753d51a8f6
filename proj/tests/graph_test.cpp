#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "tricolor/graph.hpp"

using namespace tricolor;

TEST_CASE("dimacs parsing") {
    std::istringstream k2("c tiny\np edge 2 1\ne 1 2\n");
    Graph g = parse_dimacs(k2);
    CHECK(g.order() == 2);
    CHECK(g.size() == 1);
    CHECK(g.adjacent(1, 2));

    std::istringstream k4("p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
    Graph g4 = parse_dimacs(k4);
    CHECK(g4.size() == 6);
    CHECK(g4.max_degree() == 3);

    SUBCASE("duplicate edge lines collapse") {
        std::istringstream dup("p edge 3 3\ne 1 2\ne 2 1\ne 1 3\n");
        CHECK(parse_dimacs(dup).size() == 2);
    }
    SUBCASE("index out of range reports the line") {
        std::istringstream bad("p edge 2 1\ne 1 3\n");
        CHECK_THROWS_WITH_AS(parse_dimacs(bad), doctest::Contains("line 2"), InputError);
    }
    SUBCASE("self loop rejected") {
        std::istringstream bad("p edge 2 1\ne 2 2\n");
        CHECK_THROWS_AS(parse_dimacs(bad), InputError);
    }
    SUBCASE("degree bound enforced with line number") {
        std::istringstream bad("p edge 6 5\ne 1 2\ne 1 3\ne 1 4\ne 1 5\ne 1 6\n");
        CHECK_THROWS_WITH_AS(parse_dimacs(bad), doctest::Contains("line 6"), InputError);
    }
    SUBCASE("malformed header") {
        std::istringstream bad("p edges\ne 1 2\n");
        CHECK_THROWS_AS(parse_dimacs(bad), InputError);
    }
}

TEST_CASE("generators") {
    CHECK(complete_graph(4).size() == 6);
    CHECK(cycle_graph(5).size() == 5);
    CHECK(cycle_graph(5).max_degree() == 2);
    CHECK(path_graph(4).size() == 3);
    CHECK_THROWS_AS(complete_graph(6), InputError);

    Graph r1 = random_graph(10, 0.3, 42);
    Graph r2 = random_graph(10, 0.3, 42);
    CHECK(r1.edges() == r2.edges());
    CHECK(r1.max_degree() <= 4);

    SUBCASE("dimacs round trip") {
        Graph c5 = cycle_graph(5);
        std::istringstream in(c5.to_dimacs());
        CHECK(parse_dimacs(in).edges() == c5.edges());
    }
}

TEST_CASE("oracle counts") {
    // chromatic polynomial k(k-1)(k-2) at k=3
    OracleResult k3 = oracle_3color(complete_graph(3));
    CHECK(k3.colorable);
    CHECK(k3.count == 6);
    CHECK(k3.witness.has_value());
    CHECK(k3.witness->proper(complete_graph(3)));

    // cycle formula (k-1)^n + (-1)^n (k-1) at k=3, n=5
    CHECK(oracle_3color(cycle_graph(5)).count == 30);

    OracleResult k4 = oracle_3color(complete_graph(4));
    CHECK_FALSE(k4.colorable);
    CHECK(k4.count == 0);
    CHECK_FALSE(k4.witness.has_value());

    CHECK(oracle_3color(path_graph(1)).count == 3);
    CHECK(oracle_3color(Graph(3, {})).count == 27);  // empty edge set is legal

    CHECK_THROWS_AS(oracle_3color(Graph(25, {})), InputError);
}

TEST_CASE("oracle count is invariant under relabeling") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 4 + static_cast<int>(gen() % 5);
        Graph g = random_graph(n, 0.4, gen());
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), gen);
        std::vector<std::pair<int, int>> edges;
        for (auto [i, j] : g.edges())
            edges.emplace_back(perm[static_cast<std::size_t>(i - 1)],
                               perm[static_cast<std::size_t>(j - 1)]);
        Graph h(n, edges);
        CHECK(oracle_3color(g).count == oracle_3color(h).count);
    }
}

TEST_CASE("edge deletion never decreases the count") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 15; ++trial) {
        Graph g = random_graph(5 + static_cast<int>(gen() % 3), 0.5, gen());
        if (g.size() == 0) continue;
        long long base = oracle_3color(g).count;
        for (auto [i, j] : g.edges())
            CHECK(base <= oracle_3color(g.without_edge(i, j)).count);
    }
}

TEST_CASE("d-graph detection") {
    CHECK(is_d_graph(complete_graph(4)));
    CHECK_FALSE(is_d_graph(complete_graph(3)));
    CHECK_FALSE(is_d_graph(cycle_graph(5)));
    // K5 is not 3-colorable but deleting one edge leaves K4 inside
    CHECK_FALSE(is_d_graph(complete_graph(5)));

    SUBCASE("d-graph implies zero count and positive counts after deletion") {
        Graph k4 = complete_graph(4);
        CHECK(oracle_3color(k4).count == 0);
        for (auto [i, j] : k4.edges()) CHECK(oracle_3color(k4.without_edge(i, j)).count > 0);
    }
}

TEST_CASE("enumeration") {
    CHECK(enumerate_graphs(2).size() == 1);
    auto upto3 = enumerate_graphs(3);
    CHECK(upto3.size() == 5);  // K2, three paths, K3

    auto upto4 = enumerate_graphs(4);
    bool has_k4 = false;
    for (const auto& g : upto4)
        if (g.order() == 4 && g.size() == 6) has_k4 = true;
    CHECK(has_k4);

    for (const auto& g : upto4) {
        CHECK(g.connected());
        CHECK(g.max_degree() <= 4);
    }

    CHECK_THROWS_AS(enumerate_graph_keys(8), InputError);

    SUBCASE("mask round trip") {
        for (const auto& key : enumerate_graph_keys(4)) {
            Graph g = graph_from_mask(key.n, key.mask);
            CHECK(g.edge_bitmask() == key.mask);
        }
    }
    SUBCASE("dedup keeps one representative per class") {
        auto keys = enumerate_graph_keys(4, true);
        // connected graphs on <= 4 vertices up to isomorphism: 1 + 2 + 6
        CHECK(keys.size() == 9);
    }
}

TEST_CASE("coloring properness") {
    Graph p3 = path_graph(3);
    CHECK(Coloring{{0, 1, 0}}.proper(p3));
    CHECK_FALSE(Coloring{{0, 0, 1}}.proper(p3));
    CHECK(Coloring{{0, 0, 1}}.monochromatic_edge_count(p3) == 1);
}
