#pragma once

// Sampled falsification of the small/large expansion properties, the
// expander diameter bound, and degree peeling of non-expanding vertices.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hamcover/graph.hpp"
#include "hamcover/random_gen.hpp"

namespace hamcover {

enum class ExpansionProperty { Small, Large };
enum class Verdict { Holds, Violated, Inconclusive };

const char *to_string(ExpansionProperty p);
const char *to_string(Verdict v);

struct ExpansionReport {
    ExpansionProperty property = ExpansionProperty::Small;
    double s = 0.0;
    double g = 0.0;
    double l = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<Vertex> witness;  // S: the set A; L: the first set of the pair
    std::vector<Vertex> witness_b;  // L only: the second set
    std::size_t trials = 0;
    std::string note;
};

/// Singletons are checked exactly, then `trials` candidate sets of size at
/// most floor(g): uniform random sets, greedy low-boundary growth, BFS balls
/// and unions of low-degree vertices. "Holds" is only reported when it is
/// proven (floor(g) <= 1, or min degree >= (s+1) floor(g) - 1).
ExpansionReport small_expansion_witness_search(const Graph &graph, double s, double g, std::size_t trials,
                                               RngSeed seed);

/// Samples disjoint ceil(l)-set pairs, drawing the second set from the
/// non-neighbors of the first. Reports "holds" when ceil(l) > n/2 (no pair
/// exists) or when every vertex has fewer than ceil(l) non-neighbors.
ExpansionReport large_expansion_witness_search(const Graph &graph, double l, std::size_t trials, RngSeed seed);

/// True when the witness in `report` really violates the property.
bool witness_rechecks(const Graph &graph, const ExpansionReport &report);

struct DiameterCheck {
    std::optional<std::size_t> diameter;  // nullopt when disconnected
    double bound = 0.0;                   // 2 ln n / ln s + 3
    bool ok = false;
    std::string note;
};

DiameterCheck diameter_bound_check(const Graph &graph, double s);

struct PeelResult {
    VertexSet removed;  // Z
    VertexSet kept;     // U = V \ (D u Z)
    double size_bound = 0.0;  // 2|D| / s
    bool within_bound = false;
    bool d_small_enough = false;  // |D| <= g s / 4, the regime where the bound is guaranteed
};

/// Repeatedly removes vertices of G[V \ (D u Z)] with fewer than s/2
/// neighbors inside the remainder, until none is left.
PeelResult peel_non_expanding(const Graph &graph, const VertexSet &d, double s, double g);

}  // namespace hamcover
