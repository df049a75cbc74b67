#pragma once

// Posa rotation-extension with protected edges.
//
// Paths are stored as plain vertex sequences; a rotation rewrites the reversed
// suffix in O(q). The "fixed" endpoint of a RotationState is always
// path.front() and rotations act on path.back().

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "hamcover/graph.hpp"
#include "hamcover/path.hpp"

namespace hamcover {

class RotationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Hard set F (never broken) and soft set F' (broken only when unavoidable).
/// F is always a subset of F'; broken_soft counts committed breaks of F' edges.
class RotationConstraints {
public:
    RotationConstraints() = default;
    RotationConstraints(EdgeSet hard, EdgeSet soft);

    [[nodiscard]] const EdgeSet &hard() const { return hard_; }
    [[nodiscard]] const EdgeSet &soft() const { return soft_; }
    [[nodiscard]] bool forbids(const Edge &e) const { return hard_.contains(e); }
    [[nodiscard]] bool is_soft(const Edge &e) const { return soft_.contains(e); }
    [[nodiscard]] std::size_t broken_soft() const { return broken_soft_; }
    void record_soft_break() { ++broken_soft_; }

    /// Partner of v in the hard set when that set is a matching, else nullopt.
    [[nodiscard]] std::optional<Vertex> hard_partner(Vertex v) const;
    /// Lowest soft partner of v not flagged in `used` (pass empty to ignore).
    [[nodiscard]] std::optional<Vertex> soft_partner(Vertex v, const std::vector<char> &used) const;

private:
    EdgeSet hard_;
    EdgeSet soft_;
    std::unordered_map<Vertex, Vertex> hard_partner_;
    std::unordered_map<Vertex, std::vector<Vertex>> soft_adj_;
    std::size_t broken_soft_ = 0;
};

struct RotationStep {
    Vertex pivot = 0;
    Edge broken;
};

struct RotationState {
    Path path;
    std::size_t rotation_count = 0;
    std::vector<RotationStep> history;

    /// Orients `p` so that `fixed` is its first vertex; throws if `fixed` is not an endpoint.
    static RotationState start(Path p, Vertex fixed);
    [[nodiscard]] Vertex fixed_endpoint() const { return path.front(); }
};

/// One rotation of state.path around `pivot` with the front held fixed.
/// Throws RotationError when the pivot is not adjacent to the rotating end,
/// lies out of range, or the broken edge is in F.
RotationState rotate(const Graph &g, RotationState state, Vertex pivot, RotationConstraints &constraints);

/// Replays a pivot sequence from `start` without touching any counters.
Path replay_rotations(const Graph &g, const RotationState &start, const std::vector<RotationStep> &steps,
                      const RotationConstraints &constraints);

/// ceil(3 ln n / ln s) when s >= 21, otherwise n (depth effectively unbounded).
std::size_t default_rotation_depth(std::size_t n, double s);

struct EndpointSet {
    std::vector<Vertex> endpoints;  // discovery order, the original endpoint first
    std::unordered_map<Vertex, std::vector<RotationStep>> witness;
    std::optional<Vertex> extendable;  // an endpoint with a neighbor outside V(P0)
    std::size_t depth_reached = 0;
};

struct EndpointSearchOptions {
    /// Stop after the first BFS layer at which |endpoints| >= fraction * n; <= 0 disables.
    double stop_fraction = 1.0 / 3.0;
    bool stop_on_extendable = true;
};

/// Breadth-first rotation tree with `fixed` held, deduplicated by endpoint.
EndpointSet endpoint_set(const Graph &g, const Path &p0, Vertex fixed, const RotationConstraints &constraints,
                         std::size_t max_depth, const EndpointSearchOptions &options = {});

struct ExtendAt {
    Path path;  // path.back() is the extendable endpoint
    Vertex endpoint = 0;
    Vertex outside = 0;
    std::size_t rotations = 0;
    std::size_t soft_broken = 0;
};

struct Chord {
    Path path;  // path.front() and path.back() are adjacent
    std::size_t rotations = 0;
    std::size_t soft_broken = 0;
};

struct Stuck {
    std::size_t first_level_endpoints = 0;
    std::size_t second_level_endpoints = 0;
    bool truncated = false;  // hit the node cap before exhausting the search
};

using ExtensionOutcome = std::variant<ExtendAt, Chord, Stuck>;

struct RotationLimits {
    std::size_t max_depth = static_cast<std::size_t>(-1);
    std::size_t max_nodes = 0;  // 0 selects max(4096, 64 n)
};

/// Two-level rotation search that never breaks F. Soft edges are avoided
/// entirely on a first pass; a second pass allows breaking them. The chosen
/// path's soft breaks are added to constraints.broken_soft.
ExtensionOutcome rotate_until_extendable(const Graph &g, const Path &p0, RotationConstraints &constraints,
                                         const RotationLimits &limits = {});

/// Opens the cycle `cycle` (a path whose ends are adjacent) at `w` and appends
/// the outside vertex `a`. The removed cycle edge is never in F and avoids F'
/// when possible. Returns a path ending at `a`.
Path absorb_external_vertex(const Graph &g, const Path &cycle, Vertex w, Vertex a, RotationConstraints &constraints);

struct HamiltonOptions {
    std::optional<Path> seed_path;
    std::size_t start_offset = 0;  // skips this many candidate start vertices
    std::size_t max_restarts = 0;  // 0 = n
    RotationLimits limits;
};

struct HamiltonResult {
    std::optional<HamiltonCycle> cycle;
    std::size_t iterations = 0;
    std::size_t restarts = 0;
    std::size_t longest_path = 0;
    std::size_t broken_soft = 0;
    std::string failure;  // empty on success

    [[nodiscard]] bool ok() const { return cycle.has_value(); }
};

/// Greedy longest path from `start`: always step to the unvisited neighbor
/// with fewest unvisited neighbors (lowest index on ties), extend the other
/// end once stuck. F partners are appended immediately so F edges stay on the path.
Path greedy_path(const Graph &g, Vertex start, const RotationConstraints &constraints);

/// Rotation-extension Hamilton cycle search. F must be a matching inside g.
/// Every returned cycle contains all of F; failure is a value, not an exception.
HamiltonResult find_hamilton_cycle(const Graph &g, RotationConstraints &constraints, std::size_t budget,
                                   const HamiltonOptions &options = {});

}  // namespace hamcover
