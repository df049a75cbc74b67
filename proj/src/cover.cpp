#include "hamcover/cover.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hamcover/random_gen.hpp"
#include "hamcover/verify.hpp"

namespace hamcover {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void add_losses(CoverLosses &into, const CoverLosses &from) {
    into.merge_lost += from.merge_lost;
    into.soft_broken += from.soft_broken;
    into.once_uncovered += from.once_uncovered;
    into.hard_retries += from.hard_retries;
}

HamiltonOptions engine_options(const SearchBudget &budget, std::size_t start_offset) {
    HamiltonOptions o;
    o.start_offset = start_offset;
    o.max_restarts = budget.max_restarts;
    return o;
}

}  // namespace

MatchingCoverOnce cover_matching_once(const Graph &g, std::span<const Edge> m, double alpha,
                                      const MatchingCoverOptions &options) {
    if (auto v = validate_matching(g, m); !v.ok) {
        throw std::invalid_argument("cover_matching_once: " + v.violation);
    }
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw std::invalid_argument("alpha must lie in (0, 1]");
    }
    const std::size_t n = g.order();
    MatchingCoverOnce out;
    EdgeSet hard;
    EdgeSet soft(options.glue.begin(), options.glue.end());
    HamiltonOptions hopts = engine_options(options.budget, options.start_offset);

    if (!m.empty()) {
        auto merged = merge_into_single_path(g, m, alpha);
        out.merge = merged.stats;
        out.losses.merge_lost = merged.lost_matching_edges.size();
        const double threshold = std::pow(alpha, 3) * std::pow(static_cast<double>(n), alpha / 2.0) / 136.0;
        out.protected_case = options.force_protect || static_cast<double>(m.size()) < threshold;
        if (out.protected_case) {
            hard.insert(m.begin(), m.end());
            soft.insert(m.begin(), m.end());
        } else {
            for (const auto &e : merged.path.edges()) {
                if (std::find(m.begin(), m.end(), e) != m.end()) {
                    soft.insert(e);
                }
            }
        }
        // A trimmed end can leave a protected edge half on the path; start fresh then.
        bool seed_ok = true;
        std::vector<char> on(n, 0);
        for (Vertex v : merged.path.vertices) {
            on[v] = 1;
        }
        const auto path_edges = merged.path.edges();
        for (const auto &e : hard) {
            if ((on[e.u] || on[e.v]) && std::find(path_edges.begin(), path_edges.end(), e) == path_edges.end()) {
                seed_ok = false;
            }
        }
        if (seed_ok) {
            hopts.seed_path = merged.path;
        }
    }

    RotationConstraints constraints(std::move(hard), std::move(soft));
    auto result = find_hamilton_cycle(g, constraints, options.budget.iterations(n), hopts);
    out.losses.soft_broken = result.broken_soft;
    if (!result.ok()) {
        out.failure = result.failure;
        out.uncovered.assign(m.begin(), m.end());
        return out;
    }
    for (const auto &e : m) {
        if (!result.cycle->contains(e)) {
            out.uncovered.push_back(e);
        }
    }
    out.losses.once_uncovered = out.uncovered.size();
    out.cycle = std::move(result.cycle);
    return out;
}

std::size_t matching_chunk_size(std::size_t n, double alpha) {
    const double raw = std::floor(std::pow(alpha, 3) * static_cast<double>(n) / 9200.0);
    return raw < 1.0 ? 1 : static_cast<std::size_t>(raw);
}

MatchingCover cover_matching(const Graph &g, std::span<const Edge> m, double alpha, const SearchBudget &budget) {
    if (auto v = validate_matching(g, m); !v.ok) {
        throw std::invalid_argument("cover_matching: " + v.violation);
    }
    MatchingCover out;
    out.chunk_size = matching_chunk_size(g.order(), alpha);
    Matching all(m.begin(), m.end());
    std::sort(all.begin(), all.end());
    EdgeSet remaining(all.begin(), all.end());

    for (std::size_t begin = 0; begin < all.size(); begin += out.chunk_size) {
        const std::size_t end = std::min(all.size(), begin + out.chunk_size);
        std::size_t attempts = 0;
        while (true) {
            Matching residual;
            for (std::size_t i = begin; i < end; ++i) {
                if (remaining.contains(all[i])) {
                    residual.push_back(all[i]);
                }
            }
            if (residual.empty()) {
                break;
            }
            Matching glue;
            for (const auto &e : all) {
                if (remaining.contains(e) && std::find(residual.begin(), residual.end(), e) == residual.end()) {
                    glue.push_back(e);
                }
            }
            MatchingCoverOptions opts;
            opts.budget = budget;
            opts.glue = glue;
            opts.start_offset = attempts;
            // Without progress on the soft attempt, the residual is pinned as unbreakable.
            opts.force_protect = attempts % 2 == 1;
            out.losses.hard_retries += opts.force_protect ? 1 : 0;
            auto once = cover_matching_once(g, residual, alpha, opts);
            add_losses(out.losses, once.losses);
            if (!once.ok()) {
                if (++attempts >= 4) {
                    out.failure = "no Hamilton cycle found for a chunk of " + std::to_string(residual.size()) +
                                  " matching edges: " + once.failure;
                    for (const auto &e : all) {
                        if (remaining.contains(e)) {
                            out.uncovered.push_back(e);
                        }
                    }
                    return out;
                }
                continue;
            }
            const std::size_t before = remaining.size();
            for (const auto &e : once.cycle->edges()) {
                remaining.erase(e);
            }
            const bool progressed = once.uncovered.size() < residual.size();
            out.cycles.push_back(std::move(*once.cycle));
            if (remaining.size() == before || !progressed) {
                ++attempts;
            } else {
                attempts = 0;
            }
        }
    }
    return out;
}

std::vector<Matching> greedy_edge_coloring(const Graph &h) {
    const std::size_t n = h.order();
    std::vector<std::vector<char>> used(n);
    std::vector<Matching> classes;
    for (const auto &e : h.edges()) {
        auto &cu = used[e.u];
        auto &cv = used[e.v];
        std::size_t c = 0;
        while ((c < cu.size() && cu[c]) || (c < cv.size() && cv[c])) {
            ++c;
        }
        for (auto *slot : {&cu, &cv}) {
            if (slot->size() <= c) {
                slot->resize(c + 1, 0);
            }
            (*slot)[c] = 1;
        }
        if (classes.size() <= c) {
            classes.resize(c + 1);
        }
        classes[c].push_back(e);
    }
    return classes;
}

Packing extract_packing(const Graph &g, std::size_t target, const SearchBudget &budget) {
    Packing out;
    out.residual = g;
    out.target = target;
    std::size_t failures = 0;
    std::size_t offset = 0;
    while (out.cycles.size() < target) {
        if (out.residual.order() < 3 || out.residual.min_degree() < 2) {
            out.stop_reason = "residual minimum degree below 2";
            break;
        }
        RotationConstraints none;
        auto r = find_hamilton_cycle(out.residual, none, budget.iterations(g.order()), engine_options(budget, offset));
        if (!r.ok()) {
            ++offset;
            if (++failures >= 3) {
                out.stop_reason = "three consecutive searches failed: " + r.failure;
                break;
            }
            continue;
        }
        failures = 0;
        const auto es = r.cycle->edges();
        out.residual = out.residual.without_edges(es);
        out.cycles.push_back(std::move(*r.cycle));
    }
    if (out.stop_reason.empty()) {
        out.stop_reason = "target reached";
    }
    out.shortfall = target - out.cycles.size();
    return out;
}

CoverOutcome cover_graph(const Graph &g, double alpha, const CoverOptions &options) {
    CoverOutcome out;
    auto &st = out.stats;
    st.n = g.order();
    st.m = g.size();
    st.delta_max = g.max_degree();
    st.delta_min = g.min_degree();
    auto fail = [&](std::string phase, std::string why) {
        out.failed_phase = std::move(phase);
        out.failure = std::move(why);
        return out;
    };
    if (st.n < 3) {
        return fail("precondition", "graph has fewer than 3 vertices");
    }
    if (!is_connected(g)) {
        return fail("precondition", "graph is disconnected");
    }
    if (st.delta_min < 2) {
        return fail("precondition", "minimum degree is " + std::to_string(st.delta_min) + " < 2");
    }

    auto t0 = Clock::now();
    st.packing_target = options.packing_target.value_or(st.delta_min / 2);
    Packing packing = extract_packing(g, st.packing_target, options.budget);
    st.h = packing.cycles.size();
    st.residual_edges = packing.residual.size();
    st.phase_ms["packing"] = ms_since(t0);

    t0 = Clock::now();
    auto classes = greedy_edge_coloring(packing.residual);
    st.color_classes = classes.size();
    st.phase_ms["coloring"] = ms_since(t0);

    t0 = Clock::now();
    std::vector<HamiltonCycle> covering;
    EdgeSet covered;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        Matching pending;
        for (const auto &e : classes[c]) {
            if (!covered.contains(e)) {
                pending.push_back(e);
            }
        }
        st.pruned_edges += classes[c].size() - pending.size();
        if (pending.empty()) {
            continue;
        }
        auto mc = cover_matching(g, pending, alpha, options.budget);
        add_losses(st.losses, mc.losses);
        for (auto &cyc : mc.cycles) {
            for (const auto &e : cyc.edges()) {
                covered.insert(e);
            }
            covering.push_back(std::move(cyc));
        }
        if (!mc.ok()) {
            st.phase_ms["covering"] = ms_since(t0);
            return fail("covering", "color class " + std::to_string(c) + " of " + std::to_string(classes.size()) +
                                        ": " + mc.failure);
        }
    }
    st.phase_ms["covering"] = ms_since(t0);

    t0 = Clock::now();
    CoverCertificate cert;
    cert.h = packing.cycles.size();
    cert.cycles = std::move(packing.cycles);
    for (auto &cyc : covering) {
        cert.cycles.push_back(std::move(cyc));
    }
    cert.cover_size = cert.cycles.size();
    st.cover_size = cert.cover_size;
    auto validation = validate_cover(g, cert.cycles);
    st.phase_ms["validation"] = ms_since(t0);
    if (!validation.ok) {
        return fail("validation", validation.problems.empty() ? "cover incomplete" : validation.problems.front());
    }
    if (2 * cert.cover_size < st.delta_max) {
        throw std::logic_error("valid cover smaller than half the maximum degree");
    }
    cert.coverage = std::move(validation.coverage);
    out.certificate = std::move(cert);
    return out;
}

std::vector<ExperimentReport> run_gnp_experiment(std::size_t n, double p, std::span<const std::uint64_t> seeds,
                                                 double alpha, const ExperimentOptions &options) {
    std::vector<ExperimentReport> reports(seeds.size());
    auto run_one = [&](std::size_t idx) {
        ExperimentReport &r = reports[idx];
        r.n = n;
        r.p = p;
        r.seed = seeds[idx];
        r.alpha = alpha;
        if (static_cast<double>(n) * p < 20.0) {
            r.notes.push_back("np < 20: sampled graphs may well not be Hamiltonian");
        }
        try {
            auto t0 = Clock::now();
            const Graph g = sample_gnp(n, p, {seeds[idx], 0});
            const double sample_ms = ms_since(t0);
            double check_ms = 0.0;
            if (static_cast<double>(n) * p > 1.0) {
                t0 = Clock::now();
                SampledChecks checks;
                checks.params = expander_params_for_gnp(n, p);
                checks.small = small_expansion_witness_search(g, checks.params.s, checks.params.g,
                                                              options.check_trials, {seeds[idx], 1})
                                   .verdict;
                checks.large =
                    large_expansion_witness_search(g, checks.params.l, options.check_trials, {seeds[idx], 2}).verdict;
                checks.diameter = diameter_bound_check(g, checks.params.s);
                r.checks = checks;
                check_ms = ms_since(t0);
            }
            auto outcome = cover_graph(g, alpha, options.cover);
            r.stats = outcome.stats;
            r.stats.phase_ms["sample"] = sample_ms;
            r.stats.phase_ms["checks"] = check_ms;
            r.valid = outcome.ok();
            r.failed_phase = outcome.failed_phase;
            r.failure = outcome.failure;
            if (outcome.ok()) {
                r.ratio = static_cast<double>(r.stats.cover_size) / (static_cast<double>(n) * p / 2.0);
                r.lower_bound_ok = 2 * r.stats.cover_size >= r.stats.delta_max;
            }
        } catch (const std::exception &e) {
            r.valid = false;
            r.failed_phase = r.failed_phase.empty() ? "exception" : r.failed_phase;
            r.failure = e.what();
        }
    };

    std::size_t jobs = options.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.jobs;
    jobs = std::min(jobs, std::max<std::size_t>(seeds.size(), 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
            run_one(i);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < jobs; ++t) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    return reports;
}

}  // namespace hamcover
