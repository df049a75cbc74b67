#include "hamcover/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace hamcover {

namespace {

std::vector<std::uint32_t> adjacency_masks(const Graph &g) {
    std::vector<std::uint32_t> adj(g.order(), 0);
    for (Vertex v = 0; v < g.order(); ++v) {
        for (Vertex w : g.neighbors(v)) {
            adj[v] |= 1u << w;
        }
    }
    return adj;
}

std::vector<Vertex> mask_members(std::uint32_t mask) {
    std::vector<Vertex> out;
    while (mask != 0) {
        out.push_back(static_cast<Vertex>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

// Calls visit(mask) for every k-subset of {0..n-1} in lexicographic order of
// the sorted member lists; stops early when visit returns true.
template <class Visit>
bool for_each_subset(std::size_t n, std::size_t k, Visit &&visit) {
    if (k > n) {
        return false;
    }
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        idx[i] = i;
    }
    while (true) {
        std::uint32_t mask = 0;
        for (auto i : idx) {
            mask |= 1u << i;
        }
        if (visit(mask)) {
            return true;
        }
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos - 1) {
            --pos;
        }
        if (pos == 0) {
            return false;
        }
        ++idx[pos - 1];
        for (std::size_t i = pos; i < k; ++i) {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

}  // namespace

HamiltonVerdict held_karp_hamiltonian(const Graph &g) {
    HamiltonVerdict out;
    const std::size_t n = g.order();
    if (n > kHeldKarpLimit) {
        return out;
    }
    out.decided = true;
    if (n < 3) {
        return out;
    }
    const auto adj = adjacency_masks(g);
    const std::uint32_t full = (1u << n) - 1;
    // reach[mask]: endpoints v such that some path starts at 0, visits exactly mask, ends at v.
    std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
    reach[1] = 1;
    for (std::uint32_t mask = 1; mask <= full; mask += 2) {
        std::uint32_t ends = reach[mask];
        while (ends != 0) {
            const auto v = static_cast<std::uint32_t>(std::countr_zero(ends));
            ends &= ends - 1;
            std::uint32_t next = adj[v] & ~mask;
            while (next != 0) {
                const auto w = static_cast<std::uint32_t>(std::countr_zero(next));
                next &= next - 1;
                reach[mask | (1u << w)] |= 1u << w;
            }
        }
    }
    const std::uint32_t closing = reach[full] & adj[0];
    if (closing == 0) {
        return out;
    }
    out.hamiltonian = true;
    std::vector<Vertex> order;
    std::uint32_t mask = full;
    auto v = static_cast<std::uint32_t>(std::countr_zero(closing));
    while (v != 0) {
        order.push_back(v);
        const std::uint32_t prev_mask = mask & ~(1u << v);
        const std::uint32_t prev = reach[prev_mask] & adj[v];
        mask = prev_mask;
        v = static_cast<std::uint32_t>(std::countr_zero(prev));
    }
    order.push_back(0);
    std::reverse(order.begin(), order.end());
    out.witness = normalize_cycle(HamiltonCycle{order});
    return out;
}

ExhaustiveExpansion exhaustive_expansion_check(const Graph &g, double s, double g_bound, double l) {
    ExhaustiveExpansion out;
    const std::size_t n = g.order();
    if (n > kExhaustiveLimit) {
        return out;
    }
    out.decided = true;
    const auto adj = adjacency_masks(g);
    auto nbhd = [&](std::uint32_t a) {
        std::uint32_t acc = 0;
        for (std::uint32_t rest = a; rest != 0; rest &= rest - 1) {
            acc |= adj[static_cast<std::size_t>(std::countr_zero(rest))];
        }
        return acc & ~a;
    };

    const auto max_size = static_cast<std::size_t>(std::min(std::floor(std::max(g_bound, 0.0)), double(n)));
    for (std::size_t k = 1; k <= max_size && out.small_holds; ++k) {
        for_each_subset(n, k, [&](std::uint32_t a) {
            const auto boundary = static_cast<double>(std::popcount(nbhd(a)));
            if (boundary < s * static_cast<double>(k)) {
                out.small_holds = false;
                out.small_witness = mask_members(a);
                return true;
            }
            return false;
        });
    }

    const auto t = static_cast<std::size_t>(std::max(1.0, std::ceil(l)));
    if (2 * t <= n) {
        const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1;
        for_each_subset(n, t, [&](std::uint32_t a) {
            std::uint32_t free = all & ~a & ~nbhd(a);
            if (static_cast<std::size_t>(std::popcount(free)) < t) {
                return false;
            }
            std::uint32_t b = 0;
            for (std::size_t i = 0; i < t; ++i) {
                const std::uint32_t low = free & (~free + 1);
                b |= low;
                free &= ~low;
            }
            out.large_holds = false;
            out.large_witness = {mask_members(a), mask_members(b)};
            return true;
        });
    }
    return out;
}

CoverValidation validate_cover(const Graph &g, std::span<const HamiltonCycle> cycles) {
    CoverValidation out;
    out.edges = g.edges();
    out.coverage.assign(out.edges.size(), 0);
    std::unordered_map<Edge, std::size_t, EdgeHash> index;
    index.reserve(out.edges.size());
    for (std::size_t i = 0; i < out.edges.size(); ++i) {
        index.emplace(out.edges[i], i);
    }
    bool cycles_ok = true;
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        if (!is_hamilton_cycle(g, cycles[c])) {
            cycles_ok = false;
            out.problems.push_back("cycle " + std::to_string(c) + " is not a Hamilton cycle of the graph");
            continue;
        }
        for (const Edge &e : cycles[c].edges()) {
            ++out.coverage[index.at(e)];
        }
    }
    out.min_coverage = out.coverage.empty() ? 0 : *std::min_element(out.coverage.begin(), out.coverage.end());
    out.uncovered = static_cast<std::size_t>(std::count(out.coverage.begin(), out.coverage.end(), 0));
    if (out.uncovered > 0) {
        out.problems.push_back(std::to_string(out.uncovered) + " edges are not covered by any cycle");
    }
    if (cycles.empty() && g.order() > 0) {
        out.problems.push_back("no cycles given");
    }
    out.ok = cycles_ok && out.uncovered == 0 && !(cycles.empty() && g.order() > 0);
    return out;
}

FamilyValidation validate_family(const Graph &g, std::span<const Path> paths) {
    std::vector<long long> owner(g.order(), -1);
    for (std::size_t p = 0; p < paths.size(); ++p) {
        const auto &vs = paths[p].vertices;
        if (vs.size() < 2) {
            return {false, "path " + std::to_string(p) + " is trivial"};
        }
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const Vertex v = vs[i];
            if (v >= g.order()) {
                return {false, "path " + std::to_string(p) + " uses vertex " + std::to_string(v) + " outside the graph"};
            }
            if (owner[v] != -1) {
                return {false, "vertex " + std::to_string(v) + " shared by paths " + std::to_string(owner[v]) + " and " +
                                   std::to_string(p)};
            }
            owner[v] = static_cast<long long>(p);
            if (i > 0 && !g.adjacent(vs[i - 1], v)) {
                return {false, "path " + std::to_string(p) + " uses non-edge (" + std::to_string(vs[i - 1]) + "," +
                                   std::to_string(v) + ")"};
            }
        }
    }
    return {};
}

FamilyValidation validate_matching(const Graph &g, std::span<const Edge> matching) {
    std::vector<Path> paths;
    paths.reserve(matching.size());
    for (const Edge &e : matching) {
        paths.push_back(Path{e.u, e.v});
    }
    return validate_family(g, paths);
}

}  // namespace hamcover
