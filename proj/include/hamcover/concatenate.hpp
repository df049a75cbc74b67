#pragma once

// (d,k)-extensions of path families: deleting short paths and joining two
// paths through a short connector outside the family, with exact accounting
// against the family the extension started from.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hamcover/graph.hpp"
#include "hamcover/path.hpp"

namespace hamcover {

class BudgetViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct ExtensionBudget {
    std::size_t d = 0;
    std::size_t k = 1;
    std::size_t mu = 0;      // |origin| - |current|
    std::size_t lost = 0;    // origin edges no longer present
    std::size_t gained = 0;  // present edges not in the origin

    [[nodiscard]] bool lost_ok() const { return lost <= 2 * (k - 1) * mu; }
    [[nodiscard]] bool gained_ok() const { return gained <= (d + 2) * mu; }
    [[nodiscard]] bool satisfied() const { return k >= 1 && lost_ok() && gained_ok(); }
};

class PathFamily {
public:
    PathFamily() = default;
    /// Throws invalid_argument on trivial or overlapping paths.
    explicit PathFamily(std::vector<Path> paths);
    static PathFamily from_matching(std::span<const Edge> matching);

    [[nodiscard]] const std::vector<Path> &paths() const { return paths_; }
    [[nodiscard]] std::size_t size() const { return paths_.size(); }
    [[nodiscard]] bool empty() const { return paths_.empty(); }
    [[nodiscard]] const EdgeSet &origin_edges() const { return origin_edges_; }
    [[nodiscard]] std::size_t origin_size() const { return origin_size_; }

    [[nodiscard]] EdgeSet edges() const;
    [[nodiscard]] std::size_t vertex_count() const;
    [[nodiscard]] VertexSet vertices(std::size_t n) const;

    /// Accounting of the current paths against the origin, with the given d and k.
    [[nodiscard]] ExtensionBudget budget(std::size_t d, std::size_t k) const;
    /// Makes the current paths the new origin.
    void rebase();

    void remove(std::size_t index);
    void replace(std::size_t index, Path p);

private:
    std::vector<Path> paths_;
    EdgeSet origin_edges_;
    std::size_t origin_size_ = 0;
};

/// The vertices at path distance at most k-1 from either endpoint.
VertexSet k_end(const Path &p, std::size_t k, std::size_t n);
std::vector<Vertex> k_end(const Path &p, std::size_t k);

struct ReduceOptions {
    /// Edges whose loss is avoided whenever an alternative move exists.
    const EdgeSet *protect = nullptr;
    /// Also join two paths whose k-ends are adjacent when no outside connector exists.
    bool direct_joins = false;
    /// Called after every applied move with the family and its budget.
    std::function<void(const PathFamily &, const ExtensionBudget &)> on_move;
};

struct ReduceStats {
    std::size_t deletions = 0;
    std::size_t merges = 0;
    std::size_t direct_merges = 0;
    std::size_t protected_lost = 0;
};

/// Applies rule 1 (drop paths shorter than 2k-1) and rule 2 (join two paths
/// whose k-ends x, y are linked by x-a-...-b-y with the a..b part of length
/// <= d in G - V(family)) until neither applies.
/// The result is a (d,k)-extension of the input; the input's paths become its
/// origin. Throws BudgetViolation if a move would break the accounting.
PathFamily reduce_family(const Graph &g, PathFamily family, std::size_t d, std::size_t k,
                         const ReduceOptions &options = {}, ReduceStats *stats = nullptr);

struct MergeStats {
    std::size_t d = 0;
    std::size_t rounds = 0;
    std::vector<std::size_t> k_schedule;
    std::size_t k_cap_binds = 0;
    std::size_t merges = 0;
    std::size_t dissolved_paths = 0;
    std::size_t final_family_size = 0;
    std::size_t path_length = 0;
};

struct MergeResult {
    Path path;
    EdgeSet lost_matching_edges;
    MergeStats stats;
};

/// d = ceil(6/alpha); k = 1, then ceil(n^((i-1) alpha/2)) capped at
/// floor((shortest length + 1)/2). Runs until one path remains or a round
/// changes nothing; the largest path is kept and the matching edges of the
/// others are reported lost. Direct joins are enabled.
MergeResult merge_into_single_path(const Graph &g, std::span<const Edge> matching, double alpha);

}  // namespace hamcover
