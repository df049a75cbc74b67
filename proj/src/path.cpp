#include "hamcover/path.hpp"

#include <algorithm>

namespace hamcover {

std::vector<Edge> Path::edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        out.emplace_back(vertices[i], vertices[i + 1]);
    }
    return out;
}

std::vector<Edge> HamiltonCycle::edges() const {
    std::vector<Edge> out;
    const std::size_t n = vertices.size();
    if (n < 3) {
        return out;
    }
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(vertices[i], vertices[(i + 1) % n]);
    }
    return out;
}

bool HamiltonCycle::contains(const Edge &e) const {
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n && n >= 3; ++i) {
        if (Edge(vertices[i], vertices[(i + 1) % n]) == e) {
            return true;
        }
    }
    return false;
}

bool is_valid_path(const Graph &g, const Path &p) {
    std::vector<char> seen(g.order(), 0);
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        Vertex v = p.vertices[i];
        if (v >= g.order() || seen[v]) {
            return false;
        }
        seen[v] = 1;
        if (i > 0 && !g.adjacent(p.vertices[i - 1], v)) {
            return false;
        }
    }
    return true;
}

bool is_hamilton_cycle(const Graph &g, const HamiltonCycle &c) {
    const std::size_t n = g.order();
    if (n < 3 || c.vertices.size() != n) {
        return false;
    }
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        Vertex v = c.vertices[i];
        if (v >= n || seen[v]) {
            return false;
        }
        seen[v] = 1;
        if (!g.adjacent(v, c.vertices[(i + 1) % n])) {
            return false;
        }
    }
    return true;
}

HamiltonCycle normalize_cycle(HamiltonCycle c) {
    auto &vs = c.vertices;
    if (vs.size() < 3) {
        return c;
    }
    auto lowest = std::min_element(vs.begin(), vs.end());
    std::rotate(vs.begin(), lowest, vs.end());
    if (vs.back() < vs[1]) {
        std::reverse(vs.begin() + 1, vs.end());
    }
    return c;
}

}  // namespace hamcover
