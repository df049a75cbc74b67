#pragma once

// Brute-force ground truth for tiny graphs, plus certificate validators.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hamcover/graph.hpp"
#include "hamcover/path.hpp"

namespace hamcover {

struct HamiltonVerdict {
    bool decided = false;  // false when the graph is too large for the oracle
    bool hamiltonian = false;
    std::optional<HamiltonCycle> witness;
};

inline constexpr std::size_t kHeldKarpLimit = 20;

/// Subset DP over paths anchored at vertex 0. Refuses (undecided) above kHeldKarpLimit vertices.
HamiltonVerdict held_karp_hamiltonian(const Graph &g);

inline constexpr std::size_t kExhaustiveLimit = 16;

struct ExhaustiveExpansion {
    bool decided = false;
    bool small_holds = true;
    std::vector<Vertex> small_witness;  // lexicographically first smallest violating A
    bool large_holds = true;
    std::pair<std::vector<Vertex>, std::vector<Vertex>> large_witness;  // edgeless disjoint pair
};

/// Exact S(s,g) over every |A| <= floor(g) and exact L(l) over every pair of
/// disjoint ceil(l)-sets. Refuses above kExhaustiveLimit vertices.
ExhaustiveExpansion exhaustive_expansion_check(const Graph &g, double s, double g_bound, double l);

struct CoverValidation {
    bool ok = false;
    std::vector<std::string> problems;
    std::vector<Edge> edges;                 // g.edges()
    std::vector<std::size_t> coverage;       // parallel to edges
    std::size_t uncovered = 0;
    std::size_t min_coverage = 0;
};

/// Every cycle must be a Hamilton cycle of g; ok iff additionally every edge is covered.
CoverValidation validate_cover(const Graph &g, std::span<const HamiltonCycle> cycles);

struct FamilyValidation {
    bool ok = true;
    std::string violation;  // first problem found, empty when ok
};

/// Non-trivial, vertex-disjoint paths whose edges all exist in g.
FamilyValidation validate_family(const Graph &g, std::span<const Path> paths);
/// Matching: edges of g with pairwise distinct endpoints.
FamilyValidation validate_matching(const Graph &g, std::span<const Edge> matching);

}  // namespace hamcover
