#pragma once

#include <unordered_set>
#include <vector>

#include "hamcover/graph.hpp"

namespace hamcover {

using EdgeSet = std::unordered_set<Edge, EdgeHash>;

/// Ordered sequence of distinct vertices. Non-trivial when it has at least one edge.
struct Path {
    std::vector<Vertex> vertices;

    Path() = default;
    Path(std::initializer_list<Vertex> vs) : vertices(vs) {}
    explicit Path(std::vector<Vertex> vs) : vertices(std::move(vs)) {}

    [[nodiscard]] std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    [[nodiscard]] bool trivial() const { return vertices.size() < 2; }
    [[nodiscard]] Vertex front() const { return vertices.front(); }
    [[nodiscard]] Vertex back() const { return vertices.back(); }
    [[nodiscard]] std::vector<Edge> edges() const;

    friend bool operator==(const Path &, const Path &) = default;
};

/// Cyclic ordering of all vertices of a graph.
struct HamiltonCycle {
    std::vector<Vertex> vertices;

    [[nodiscard]] std::vector<Edge> edges() const;
    [[nodiscard]] bool contains(const Edge &e) const;

    friend bool operator==(const HamiltonCycle &, const HamiltonCycle &) = default;
};

/// Distinct vertices, all in range, consecutive pairs adjacent in `g`.
bool is_valid_path(const Graph &g, const Path &p);

/// Spans every vertex of `g` exactly once with all cyclic pairs adjacent.
bool is_hamilton_cycle(const Graph &g, const HamiltonCycle &c);

/// Rotates the cycle so it starts at its smallest vertex, with the smaller
/// neighbor second; two cycles with the same edge set normalize identically.
HamiltonCycle normalize_cycle(HamiltonCycle c);

}  // namespace hamcover
