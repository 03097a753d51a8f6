#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tricolor {

/// Thrown on malformed input: bad DIMACS data, contract violations in
/// generator arguments, vertices out of range, degree bound violations.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Simple undirected graph with 1-based vertices, no self-loops, no
/// duplicate edges, and every vertex degree at most 4. The degree bound
/// is enforced at construction; all encodings downstream rely on it.
class Graph {
public:
    Graph(int n, std::vector<std::pair<int, int>> edge_list);

    int order() const { return n_; }
    int size() const { return static_cast<int>(edges_.size()); }

    bool adjacent(int i, int j) const;
    int degree(int i) const { return degree_[static_cast<std::size_t>(i - 1)]; }
    int max_degree() const;

    /// Edges as (i, j) pairs with i < j, sorted lexicographically.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    std::vector<std::pair<int, int>> non_adjacent_pairs() const;

    Graph without_edge(int i, int j) const;
    bool connected() const;

    /// Lexicographic pair-bitmask over all i<j pairs; requires n <= 11.
    std::uint64_t edge_bitmask() const;

    std::string to_dimacs() const;

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> degree_;
    std::vector<std::uint32_t> adj_rows_;  // n <= 24 always holds here
};

/// DIMACS COLOR format: "c" comments, one "p edge n m" header, "e i j"
/// edge lines with 1-based endpoints. Duplicate edge lines collapse.
/// Errors carry the offending line number.
Graph parse_dimacs(std::istream& in);
Graph parse_dimacs_file(const std::string& path);

Graph complete_graph(int k);   // k <= 5, else the degree bound fails
Graph cycle_graph(int k);
Graph path_graph(int k);
/// Pair-by-pair coin flips in lexicographic order; an edge that would
/// push either endpoint past degree 4 is skipped. Deterministic in seed.
Graph random_graph(int n, double edge_prob, std::uint64_t seed);

/// Vertex -> {0,1,2} assignment. May be improper; properness is a query.
struct Coloring {
    std::vector<int> assignment;

    int size() const { return static_cast<int>(assignment.size()); }
    bool proper(const Graph& g) const;
    int monochromatic_edge_count(const Graph& g) const;
};

struct OracleResult {
    bool colorable = false;
    long long count = 0;  // proper maps V -> {0,1,2}, color symmetry not quotiented
    std::optional<Coloring> witness;
};

/// Exact backtracking enumeration of all proper 3-colorings.
/// Refuses n > 24; harness defaults keep n <= 12.
OracleResult oracle_3color(const Graph& g);

/// Short-circuit existence check (same search, stops at first coloring).
bool three_colorable(const Graph& g);

/// All proper 3-colorings in lexicographic assignment order (n <= 12).
std::vector<Coloring> all_proper_colorings(const Graph& g);

/// Not 3-colorable, max degree <= 4 (guaranteed by Graph), and deleting
/// any single edge makes it 3-colorable.
bool is_d_graph(const Graph& g);

struct GraphKey {
    int n = 0;
    std::uint64_t mask = 0;
};

Graph graph_from_mask(int n, std::uint64_t mask);

/// Keys of every labeled connected max-degree-4 graph on 2..n_max
/// vertices, in deterministic (n ascending, mask ascending) order.
/// With dedup, only the lexicographically least mask of each isomorphism
/// class is kept. Requires n_max <= 7.
std::vector<GraphKey> enumerate_graph_keys(int n_max, bool dedup = false);

std::vector<Graph> enumerate_graphs(int n_max, bool dedup = false);

int pair_index(int n, int i, int j);

}  // namespace tricolor
