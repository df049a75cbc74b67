#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hamcover {

using Vertex = std::uint32_t;

/// Unordered vertex pair, always stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    [[nodiscard]] std::uint64_t key() const { return (std::uint64_t{u} << 32) | v; }
    [[nodiscard]] Vertex other(Vertex w) const { return w == u ? v : u; }
    [[nodiscard]] bool touches(Vertex w) const { return w == u || w == v; }

    friend bool operator==(const Edge &, const Edge &) = default;
    friend auto operator<=>(const Edge &, const Edge &) = default;
};

struct EdgeHash {
    std::size_t operator()(const Edge &e) const noexcept { return std::hash<std::uint64_t>{}(e.key()); }
};

/// Thrown for malformed input (bad vertex ids, self-loops, unparsable files).
class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense membership set over 0..n-1.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t n) : bits_((n + 63) / 64, 0), n_(n) {}
    VertexSet(std::size_t n, std::initializer_list<Vertex> members);
    static VertexSet full(std::size_t n);
    static VertexSet from(std::size_t n, std::span<const Vertex> members);

    [[nodiscard]] std::size_t universe() const { return n_; }
    [[nodiscard]] bool contains(Vertex v) const { return v < n_ && ((bits_[v >> 6] >> (v & 63)) & 1u); }
    void insert(Vertex v) { bits_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void erase(Vertex v) { bits_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] bool empty() const { return size() == 0; }
    /// Members in increasing order.
    [[nodiscard]] std::vector<Vertex> members() const;

    friend bool operator==(const VertexSet &, const VertexSet &) = default;

private:
    std::vector<std::uint64_t> bits_;
    std::size_t n_ = 0;
};

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Neighbors are kept as sorted vectors for iteration and, for n up to
/// kMatrixLimit, as bitset rows for O(1) adjacency tests.
class Graph {
public:
    static constexpr std::size_t kMatrixLimit = 8192;

    Graph() = default;

    /// Builds from an edge list. Duplicate pairs are merged; self-loops and
    /// out-of-range endpoints throw GraphError.
    static Graph build(std::size_t n, std::span<const Edge> edges);
    static Graph build(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

    static Graph complete(std::size_t n);
    static Graph cycle(std::size_t n);
    static Graph path(std::size_t n);
    static Graph petersen();

    [[nodiscard]] std::size_t order() const { return adj_.size(); }
    [[nodiscard]] std::size_t size() const { return m_; }
    [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
    [[nodiscard]] std::size_t degree(Vertex v) const { return adj_[v].size(); }
    [[nodiscard]] bool adjacent(Vertex a, Vertex b) const;
    [[nodiscard]] bool has_edge(const Edge &e) const { return adjacent(e.u, e.v); }

    [[nodiscard]] std::size_t max_degree() const;
    [[nodiscard]] std::size_t min_degree() const;

    /// All edges with u < v, in lexicographic order.
    [[nodiscard]] std::vector<Edge> edges() const;

    /// Copy of this graph with the given edges deleted (absent edges are ignored).
    [[nodiscard]] Graph without_edges(std::span<const Edge> removed) const;

    friend bool operator==(const Graph &a, const Graph &b) { return a.adj_ == b.adj_; }

private:
    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::size_t m_ = 0;
};

/// N(A): vertices outside A with at least one neighbor in A.
VertexSet neighborhood_of_set(const Graph &g, const VertexSet &a);

/// Size of N(A) for a set given as a vertex list; `scratch` must have g.order()
/// entries, all zero on entry, and is left zeroed on exit.
std::size_t neighborhood_size(const Graph &g, std::span<const Vertex> a, std::vector<std::uint8_t> &scratch);

inline constexpr std::size_t kUnreachable = static_cast<std::size_t>(-1);

/// Hop distances from `source`; kUnreachable for other components.
std::vector<std::size_t> bfs_distances(const Graph &g, Vertex source);

bool is_connected(const Graph &g);

/// Exact diameter by BFS from every vertex; nullopt when disconnected.
/// The empty and single-vertex graphs have diameter 0.
std::optional<std::size_t> diameter(const Graph &g);

struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_parent;  // sub vertex -> parent vertex
    std::vector<std::optional<Vertex>> to_sub;  // parent vertex -> sub vertex
};

InducedSubgraph induced_subgraph(const Graph &g, const VertexSet &keep);

/// Edge-list text format: "n m" header then one "u v" per line.
Graph read_edge_list(std::istream &in);
Graph read_edge_list_file(const std::string &path);
void write_edge_list(std::ostream &out, const Graph &g);
void write_edge_list_file(const std::string &path, const Graph &g);

}  // namespace hamcover
