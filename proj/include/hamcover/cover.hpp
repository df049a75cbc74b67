#pragma once

// Hamilton packing, residual edge coloring and matching covers: the full
// pipeline that covers every edge of a graph by Hamilton cycles.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hamcover/concatenate.hpp"
#include "hamcover/expander_check.hpp"
#include "hamcover/graph.hpp"
#include "hamcover/path.hpp"
#include "hamcover/posa.hpp"

namespace hamcover {

using Matching = std::vector<Edge>;

struct SearchBudget {
    std::size_t iterations_per_vertex = 40;  // find_hamilton_cycle budget = this * n
    std::size_t fixed = 0;                   // when non-zero, the budget regardless of n
    std::size_t max_restarts = 0;            // 0 = the engine default (n)

    [[nodiscard]] std::size_t iterations(std::size_t n) const {
        return fixed != 0 ? fixed : iterations_per_vertex * std::max<std::size_t>(n, 1);
    }
};

struct CoverLosses {
    std::size_t merge_lost = 0;       // matching edges dropped while concatenating
    std::size_t soft_broken = 0;      // soft edges broken during rotations
    std::size_t once_uncovered = 0;   // matching edges missed by a single cycle
    std::size_t hard_retries = 0;     // retries that pinned the residual as unbreakable
};

struct MatchingCoverOnce {
    std::optional<HamiltonCycle> cycle;
    Matching uncovered;
    bool protected_case = false;  // F = F' = M
    MergeStats merge;
    CoverLosses losses;
    std::string failure;

    [[nodiscard]] bool ok() const { return cycle.has_value(); }
};

struct MatchingCoverOptions {
    SearchBudget budget;
    /// Further matching edges the cycle should keep when it can (soft only).
    std::span<const Edge> glue;
    /// Pin M as unbreakable regardless of its size.
    bool force_protect = false;
    std::size_t start_offset = 0;
};

/// One Hamilton cycle seeded with the concatenated path of M. M is kept
/// unbreakable when |M| < alpha^3 n^(alpha/2) / 136, otherwise the edges of M
/// on the seed path are only kept softly.
MatchingCoverOnce cover_matching_once(const Graph &g, std::span<const Edge> m, double alpha,
                                      const MatchingCoverOptions &options = {});

struct MatchingCover {
    std::vector<HamiltonCycle> cycles;
    Matching uncovered;  // non-empty only on failure
    std::size_t chunk_size = 0;
    CoverLosses losses;
    std::string failure;

    [[nodiscard]] bool ok() const { return failure.empty(); }
};

/// max(1, floor(alpha^3 n / 9200)).
std::size_t matching_chunk_size(std::size_t n, double alpha);

/// Covers every edge of M: chunks of matching_chunk_size, each repeatedly
/// handed to cover_matching_once (with the rest of M as glue) until covered.
MatchingCover cover_matching(const Graph &g, std::span<const Edge> m, double alpha, const SearchBudget &budget = {});

/// First-fit over edges in lexicographic order; at most 2 max_degree - 1 classes.
std::vector<Matching> greedy_edge_coloring(const Graph &h);

struct Packing {
    std::vector<HamiltonCycle> cycles;
    Graph residual;
    std::size_t target = 0;
    std::size_t shortfall = 0;
    std::string stop_reason;
};

/// Greedily removes Hamilton cycles of the residual graph until `target`
/// cycles are found, the residual has minimum degree below 2, or three
/// searches in a row fail.
Packing extract_packing(const Graph &g, std::size_t target, const SearchBudget &budget = {});

struct CoverCertificate {
    std::vector<HamiltonCycle> cycles;
    std::vector<std::size_t> coverage;  // aligned with graph.edges()
    std::size_t h = 0;
    std::size_t cover_size = 0;
};

struct CoverStats {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t delta_max = 0;
    std::size_t delta_min = 0;
    std::size_t packing_target = 0;
    std::size_t h = 0;
    std::size_t residual_edges = 0;
    std::size_t color_classes = 0;
    std::size_t pruned_edges = 0;  // residual edges already covered when their class came up
    std::size_t cover_size = 0;
    CoverLosses losses;
    std::map<std::string, double> phase_ms;
};

struct CoverOutcome {
    std::optional<CoverCertificate> certificate;
    CoverStats stats;
    std::string failed_phase;  // "precondition", "packing", "covering" or "validation"
    std::string failure;

    [[nodiscard]] bool ok() const { return certificate.has_value(); }
};

struct CoverOptions {
    std::optional<std::size_t> packing_target;  // default floor(min_degree / 2)
    SearchBudget budget;
};

/// Packing, greedy coloring of the rest, matching covers per color class.
/// The certificate is validated before it is returned.
CoverOutcome cover_graph(const Graph &g, double alpha, const CoverOptions &options = {});

struct SampledChecks {
    ExpanderParams params;
    Verdict small = Verdict::Inconclusive;
    Verdict large = Verdict::Inconclusive;
    DiameterCheck diameter;
};

struct ExperimentReport {
    std::size_t n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    double alpha = 0.0;
    std::optional<SampledChecks> checks;
    CoverStats stats;
    double ratio = 0.0;  // cover_size / (n p / 2)
    bool valid = false;
    bool lower_bound_ok = false;
    std::string failed_phase;
    std::string failure;
    std::vector<std::string> notes;
};

struct ExperimentOptions {
    std::size_t check_trials = 32;
    std::size_t jobs = 0;  // 0 = hardware concurrency
    CoverOptions cover;
};

/// One report per seed, in seed order. Seeds run concurrently.
std::vector<ExperimentReport> run_gnp_experiment(std::size_t n, double p, std::span<const std::uint64_t> seeds,
                                                 double alpha, const ExperimentOptions &options = {});

}  // namespace hamcover
