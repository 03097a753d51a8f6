#include "tricolor/graph.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace tricolor {

namespace {

constexpr int kMaxDegree = 4;
constexpr int kOracleMaxVertices = 24;

std::pair<int, int> ordered(int i, int j) {
    return i < j ? std::make_pair(i, j) : std::make_pair(j, i);
}

}  // namespace

Graph::Graph(int n, std::vector<std::pair<int, int>> edge_list) : n_(n) {
    if (n < 1) throw InputError("graph order must be at least 1, got " + std::to_string(n));
    for (auto& [i, j] : edge_list) {
        if (i < 1 || i > n || j < 1 || j > n)
            throw InputError("edge (" + std::to_string(i) + "," + std::to_string(j) +
                             ") out of range for n=" + std::to_string(n));
        if (i == j) throw InputError("self-loop at vertex " + std::to_string(i));
        std::tie(i, j) = ordered(i, j);
    }
    std::sort(edge_list.begin(), edge_list.end());
    edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());
    edges_ = std::move(edge_list);

    degree_.assign(static_cast<std::size_t>(n), 0);
    adj_rows_.assign(static_cast<std::size_t>(n), 0u);
    for (auto [i, j] : edges_) {
        ++degree_[static_cast<std::size_t>(i - 1)];
        ++degree_[static_cast<std::size_t>(j - 1)];
        adj_rows_[static_cast<std::size_t>(i - 1)] |= 1u << (j - 1);
        adj_rows_[static_cast<std::size_t>(j - 1)] |= 1u << (i - 1);
    }
    for (int v = 1; v <= n; ++v)
        if (degree(v) > kMaxDegree)
            throw InputError("vertex " + std::to_string(v) + " has degree " +
                             std::to_string(degree(v)) + " > 4");
}

bool Graph::adjacent(int i, int j) const {
    if (i == j) return false;
    return (adj_rows_[static_cast<std::size_t>(i - 1)] >> (j - 1)) & 1u;
}

int Graph::max_degree() const {
    return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
}

std::vector<std::pair<int, int>> Graph::non_adjacent_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= n_; ++i)
        for (int j = i + 1; j <= n_; ++j)
            if (!adjacent(i, j)) out.emplace_back(i, j);
    return out;
}

Graph Graph::without_edge(int i, int j) const {
    auto e = ordered(i, j);
    std::vector<std::pair<int, int>> rest;
    rest.reserve(edges_.size());
    bool found = false;
    for (auto& edge : edges_) {
        if (edge == e) {
            found = true;
            continue;
        }
        rest.push_back(edge);
    }
    if (!found)
        throw InputError("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                         ") not present");
    return Graph(n_, std::move(rest));
}

bool Graph::connected() const {
    if (n_ == 1) return true;
    std::uint32_t seen = 1u, frontier = 1u;
    while (frontier != 0u) {
        std::uint32_t next = 0u;
        for (int v = 0; v < n_; ++v)
            if ((frontier >> v) & 1u) next |= adj_rows_[static_cast<std::size_t>(v)];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == (n_ >= 32 ? ~0u : ((1u << n_) - 1u));
}

std::uint64_t Graph::edge_bitmask() const {
    if (n_ > 11) throw InputError("edge bitmask only defined for n <= 11");
    std::uint64_t mask = 0;
    for (auto [i, j] : edges_) mask |= std::uint64_t{1} << pair_index(n_, i, j);
    return mask;
}

std::string Graph::to_dimacs() const {
    std::ostringstream os;
    os << "p edge " << n_ << ' ' << edges_.size() << '\n';
    for (auto [i, j] : edges_) os << "e " << i << ' ' << j << '\n';
    return os.str();
}

Graph parse_dimacs(std::istream& in) {
    int n = -1;
    long long m_declared = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> degree;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& what) {
        throw InputError("line " + std::to_string(line_no) + ": " + what);
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;  // blank line
        if (tag == "c") continue;
        if (tag == "p") {
            if (n >= 0) fail("duplicate problem line");
            std::string fmt;
            if (!(ls >> fmt >> n >> m_declared) || (fmt != "edge" && fmt != "edges" && fmt != "col"))
                fail("malformed problem line, expected 'p edge n m'");
            if (n < 1) fail("vertex count must be positive");
            degree.assign(static_cast<std::size_t>(n), 0);
            continue;
        }
        if (tag == "e") {
            if (n < 0) fail("edge line before problem line");
            int i = 0, j = 0;
            if (!(ls >> i >> j)) fail("malformed edge line");
            if (i < 1 || i > n || j < 1 || j > n)
                fail("vertex index out of range (n=" + std::to_string(n) + ")");
            if (i == j) fail("self-loop at vertex " + std::to_string(i));
            auto e = ordered(i, j);
            if (std::find(edges.begin(), edges.end(), e) != edges.end()) continue;
            edges.push_back(e);
            for (int v : {e.first, e.second}) {
                if (++degree[static_cast<std::size_t>(v - 1)] > kMaxDegree)
                    fail("vertex " + std::to_string(v) + " exceeds degree 4");
            }
            continue;
        }
        fail("unrecognized line type '" + tag + "'");
    }
    if (n < 0) throw InputError("missing 'p edge n m' line");
    return Graph(n, std::move(edges));
}

Graph parse_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return parse_dimacs(in);
}

Graph complete_graph(int k) {
    if (k < 1) throw InputError("complete graph needs k >= 1");
    if (k > kMaxDegree + 1)
        throw InputError("complete graph on " + std::to_string(k) +
                         " vertices has degree " + std::to_string(k - 1) + " > 4");
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) edges.emplace_back(i, j);
    return Graph(k, std::move(edges));
}

Graph cycle_graph(int k) {
    if (k < 3) throw InputError("cycle graph needs k >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < k; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(1, k);
    return Graph(k, std::move(edges));
}

Graph path_graph(int k) {
    if (k < 1) throw InputError("path graph needs k >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < k; ++i) edges.emplace_back(i, i + 1);
    return Graph(k, std::move(edges));
}

Graph random_graph(int n, double edge_prob, std::uint64_t seed) {
    if (n < 1) throw InputError("random graph needs n >= 1");
    if (edge_prob < 0.0 || edge_prob > 1.0) throw InputError("edge probability must be in [0,1]");
    std::mt19937_64 gen(seed);
    auto u01 = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            bool want = u01() < edge_prob;  // draw unconditionally to keep the stream aligned
            if (!want) continue;
            if (degree[static_cast<std::size_t>(i - 1)] >= kMaxDegree ||
                degree[static_cast<std::size_t>(j - 1)] >= kMaxDegree)
                continue;
            edges.emplace_back(i, j);
            ++degree[static_cast<std::size_t>(i - 1)];
            ++degree[static_cast<std::size_t>(j - 1)];
        }
    }
    return Graph(n, std::move(edges));
}

bool Coloring::proper(const Graph& g) const {
    return monochromatic_edge_count(g) == 0;
}

int Coloring::monochromatic_edge_count(const Graph& g) const {
    if (size() != g.order()) throw InputError("coloring length does not match graph order");
    int bad = 0;
    for (auto [i, j] : g.edges())
        if (assignment[static_cast<std::size_t>(i - 1)] == assignment[static_cast<std::size_t>(j - 1)]) ++bad;
    return bad;
}

namespace {

// Backtracking over vertices in label order; neighbors restricted to
// already-colored (smaller-index) vertices.
struct ColoringSearch {
    const Graph& g;
    std::vector<std::vector<int>> back_neighbors;
    std::vector<int> color;
    long long count = 0;
    long long stop_after;  // stop once count reaches this (LLONG_MAX = enumerate all)
    std::vector<Coloring>* sink = nullptr;
    std::optional<Coloring> first;

    explicit ColoringSearch(const Graph& graph, long long stop)
        : g(graph), stop_after(stop) {
        int n = g.order();
        back_neighbors.resize(static_cast<std::size_t>(n));
        for (auto [i, j] : g.edges())
            back_neighbors[static_cast<std::size_t>(j - 1)].push_back(i - 1);
        color.assign(static_cast<std::size_t>(n), -1);
    }

    bool run(int v) {  // returns true when the count limit is hit
        if (v == g.order()) {
            ++count;
            if (!first) first = Coloring{color};
            if (sink) sink->push_back(Coloring{color});
            return count >= stop_after;
        }
        for (int c = 0; c < 3; ++c) {
            bool ok = true;
            for (int u : back_neighbors[static_cast<std::size_t>(v)])
                if (color[static_cast<std::size_t>(u)] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            color[static_cast<std::size_t>(v)] = c;
            if (run(v + 1)) return true;
            color[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    }
};

void check_oracle_size(const Graph& g) {
    if (g.order() > kOracleMaxVertices)
        throw InputError("oracle refuses n > " + std::to_string(kOracleMaxVertices) +
                         " (got n=" + std::to_string(g.order()) + ")");
}

}  // namespace

OracleResult oracle_3color(const Graph& g) {
    check_oracle_size(g);
    ColoringSearch search(g, std::numeric_limits<long long>::max());
    search.run(0);
    OracleResult res;
    res.count = search.count;
    res.colorable = search.count > 0;
    if (res.colorable) res.witness = std::move(search.first);
    return res;
}

bool three_colorable(const Graph& g) {
    check_oracle_size(g);
    ColoringSearch search(g, 1);
    search.run(0);
    return search.count > 0;
}

std::vector<Coloring> all_proper_colorings(const Graph& g) {
    check_oracle_size(g);
    std::vector<Coloring> out;
    ColoringSearch search(g, std::numeric_limits<long long>::max());
    search.sink = &out;
    search.run(0);
    return out;
}

bool is_d_graph(const Graph& g) {
    if (three_colorable(g)) return false;
    for (auto [i, j] : g.edges())
        if (!three_colorable(g.without_edge(i, j))) return false;
    return true;
}

int pair_index(int n, int i, int j) {
    // lexicographic over pairs (i, j), i < j, zero-based
    return (i - 1) * n - (i * (i - 1)) / 2 + (j - i - 1);
}

Graph graph_from_mask(int n, std::uint64_t mask) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if ((mask >> pair_index(n, i, j)) & 1u) edges.emplace_back(i, j);
    return Graph(n, edges);
}

namespace {

// Degree and connectivity checks straight on the bitmask; cheaper than
// materializing a Graph for every candidate subset.
bool mask_ok(int n, std::uint64_t mask) {
    std::array<int, 8> deg{};
    std::array<std::uint32_t, 8> adj{};
    int idx = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++idx) {
            if ((mask >> idx) & 1u) {
                if (++deg[static_cast<std::size_t>(i)] > kMaxDegree) return false;
                if (++deg[static_cast<std::size_t>(j)] > kMaxDegree) return false;
                adj[static_cast<std::size_t>(i)] |= 1u << j;
                adj[static_cast<std::size_t>(j)] |= 1u << i;
            }
        }
    }
    std::uint32_t seen = 1u, frontier = 1u;
    while (frontier != 0u) {
        std::uint32_t next = 0u;
        for (int v = 0; v < n; ++v)
            if ((frontier >> v) & 1u) next |= adj[static_cast<std::size_t>(v)];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == (1u << n) - 1u;
}

std::uint64_t permute_mask(int n, std::uint64_t mask, const std::vector<int>& perm) {
    std::uint64_t out = 0;
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++idx)
            if ((mask >> idx) & 1u) {
                int pi = perm[static_cast<std::size_t>(i)], pj = perm[static_cast<std::size_t>(j)];
                out |= std::uint64_t{1} << pair_index(n, std::min(pi, pj) + 1, std::max(pi, pj) + 1);
            }
    return out;
}

}  // namespace

std::vector<GraphKey> enumerate_graph_keys(int n_max, bool dedup) {
    if (n_max < 2 || n_max > 7)
        throw InputError("enumeration supports 2 <= n_max <= 7, got " + std::to_string(n_max));
    std::vector<GraphKey> keys;
    for (int n = 2; n <= n_max; ++n) {
        int pairs = n * (n - 1) / 2;
        std::vector<std::vector<int>> perms;
        if (dedup) {
            std::vector<int> p(static_cast<std::size_t>(n));
            std::iota(p.begin(), p.end(), 0);
            do perms.push_back(p);
            while (std::next_permutation(p.begin(), p.end()));
        }
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << pairs); ++mask) {
            if (!mask_ok(n, mask)) continue;
            if (dedup) {
                bool canonical = true;
                for (const auto& p : perms)
                    if (permute_mask(n, mask, p) < mask) {
                        canonical = false;
                        break;
                    }
                if (!canonical) continue;
            }
            keys.push_back(GraphKey{n, mask});
        }
    }
    return keys;
}

std::vector<Graph> enumerate_graphs(int n_max, bool dedup) {
    std::vector<Graph> out;
    for (const auto& key : enumerate_graph_keys(n_max, dedup))
        out.push_back(graph_from_mask(key.n, key.mask));
    return out;
}

}  // namespace tricolor
