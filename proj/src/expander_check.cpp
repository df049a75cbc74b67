#include "hamcover/expander_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hamcover {

const char *to_string(ExpansionProperty p) {
    return p == ExpansionProperty::Small ? "S" : "L";
}

const char *to_string(Verdict v) {
    switch (v) {
    case Verdict::Holds:
        return "holds";
    case Verdict::Violated:
        return "violated";
    case Verdict::Inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

namespace {

// Incrementally maintained set A with |N(A)|.
class GrowingSet {
public:
    explicit GrowingSet(const Graph &g) : g_(g), in_set_(g.order(), 0), hits_(g.order(), 0) {}

    // |N(A + v)| - |N(A)|
    [[nodiscard]] long long delta(Vertex v) const {
        long long d = hits_[v] > 0 ? -1 : 0;
        for (Vertex w : g_.neighbors(v)) {
            if (!in_set_[w] && hits_[w] == 0) {
                ++d;
            }
        }
        return d;
    }

    void add(Vertex v) {
        if (hits_[v] > 0) {
            --boundary_;
        }
        in_set_[v] = 1;
        members_.push_back(v);
        for (Vertex w : g_.neighbors(v)) {
            if (hits_[w]++ == 0 && !in_set_[w]) {
                ++boundary_;
            }
        }
    }

    void clear() {
        for (Vertex v : members_) {
            in_set_[v] = 0;
            for (Vertex w : g_.neighbors(v)) {
                hits_[w] = 0;
            }
        }
        members_.clear();
        boundary_ = 0;
    }

    [[nodiscard]] bool contains(Vertex v) const { return in_set_[v] != 0; }
    [[nodiscard]] bool on_boundary(Vertex v) const { return !in_set_[v] && hits_[v] > 0; }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] std::size_t boundary() const { return boundary_; }
    [[nodiscard]] const std::vector<Vertex> &members() const { return members_; }

private:
    const Graph &g_;
    std::vector<char> in_set_;
    std::vector<std::uint32_t> hits_;
    std::vector<Vertex> members_;
    std::size_t boundary_ = 0;
};

std::vector<Vertex> sorted(std::vector<Vertex> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

ExpansionReport small_expansion_witness_search(const Graph &graph, double s, double g, std::size_t trials,
                                               RngSeed seed) {
    ExpansionReport report;
    report.property = ExpansionProperty::Small;
    report.s = s;
    report.g = g;
    report.trials = trials;
    const std::size_t n = graph.order();
    const std::size_t max_size = std::min<std::size_t>(n, static_cast<std::size_t>(std::floor(std::max(g, 0.0))));

    for (Vertex v = 0; v < n && max_size >= 1; ++v) {
        if (static_cast<double>(graph.degree(v)) < s) {
            report.verdict = Verdict::Violated;
            report.witness = {v};
            report.note = "vertex degree below expansion factor";
            return report;
        }
    }
    if (max_size <= 1) {
        report.verdict = Verdict::Holds;
        report.note = "all sets of size <= 1 checked exactly";
        return report;
    }
    if (static_cast<double>(graph.min_degree()) >= (s + 1.0) * static_cast<double>(max_size) - 1.0) {
        report.verdict = Verdict::Holds;
        report.note = "min degree certificate: |N(A)| >= delta - |A| + 1 >= s|A|";
        return report;
    }

    GrowingSet set(graph);
    auto violated = [&]() {
        return set.size() >= 1 && static_cast<double>(set.boundary()) < s * static_cast<double>(set.size());
    };
    auto found = [&](const char *how) {
        report.verdict = Verdict::Violated;
        report.witness = sorted(set.members());
        report.note = how;
        return report;
    };

    std::vector<Vertex> by_degree(n);
    std::iota(by_degree.begin(), by_degree.end(), Vertex{0});
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](Vertex a, Vertex b) { return graph.degree(a) < graph.degree(b); });

    // Unions of the lowest-degree vertices.
    for (std::size_t k = 0; k < max_size; ++k) {
        set.add(by_degree[k]);
        if (violated()) {
            return found("union of low-degree vertices");
        }
    }
    set.clear();

    // BFS balls around the lowest-degree vertices, every prefix of BFS order.
    const std::size_t balls = std::min<std::size_t>(n, 8);
    for (std::size_t b = 0; b < balls; ++b) {
        std::vector<Vertex> order{by_degree[b]};
        std::vector<char> seen(n, 0);
        seen[by_degree[b]] = 1;
        for (std::size_t head = 0; head < order.size() && order.size() < max_size; ++head) {
            for (Vertex w : graph.neighbors(order[head])) {
                if (!seen[w] && order.size() < max_size) {
                    seen[w] = 1;
                    order.push_back(w);
                }
            }
        }
        for (Vertex v : order) {
            set.add(v);
            if (violated()) {
                return found("BFS ball around a low-degree vertex");
            }
        }
        set.clear();
    }

    Rng rng(seed);
    std::vector<Vertex> pool(n);
    std::iota(pool.begin(), pool.end(), Vertex{0});
    for (std::size_t t = 0; t < trials; ++t) {
        if (t % 2 == 0) {
            // Uniform random set of uniform random size in [2, max_size].
            const std::size_t size = 2 + rng.below(max_size - 1);
            for (std::size_t i = 0; i < size; ++i) {
                std::swap(pool[i], pool[i + rng.below(n - i)]);
                set.add(pool[i]);
            }
            if (violated()) {
                return found("random set");
            }
        } else {
            // Greedy growth: add the boundary vertex that enlarges N(A) least.
            set.add(static_cast<Vertex>(rng.below(n)));
            while (set.size() < max_size) {
                std::optional<Vertex> best;
                long long best_delta = 0;
                std::vector<Vertex> frontier;
                for (Vertex v : set.members()) {
                    for (Vertex w : graph.neighbors(v)) {
                        if (set.on_boundary(w)) {
                            frontier.push_back(w);
                        }
                    }
                }
                if (frontier.empty()) {
                    break;
                }
                // Sample a bounded number of candidates to keep each step cheap.
                const std::size_t samples = std::min<std::size_t>(frontier.size(), 24);
                for (std::size_t i = 0; i < samples; ++i) {
                    const Vertex w = frontier[rng.below(frontier.size())];
                    const long long d = set.delta(w);
                    if (!best || d < best_delta || (d == best_delta && w < *best)) {
                        best = w;
                        best_delta = d;
                    }
                }
                set.add(*best);
                if (violated()) {
                    return found("greedy low-boundary growth");
                }
            }
        }
        set.clear();
    }
    report.verdict = Verdict::Inconclusive;
    report.note = "no violating set found";
    return report;
}

ExpansionReport large_expansion_witness_search(const Graph &graph, double l, std::size_t trials, RngSeed seed) {
    ExpansionReport report;
    report.property = ExpansionProperty::Large;
    report.l = l;
    report.trials = trials;
    const std::size_t n = graph.order();
    const auto t = static_cast<std::size_t>(std::max(1.0, std::ceil(l)));
    if (2 * t > n) {
        report.verdict = Verdict::Holds;
        report.note = "no two disjoint sets of size ceil(l) exist";
        return report;
    }
    std::size_t max_non_neighbors = 0;
    for (Vertex v = 0; v < n; ++v) {
        max_non_neighbors = std::max(max_non_neighbors, n - 1 - graph.degree(v));
    }
    if (max_non_neighbors < t) {
        report.verdict = Verdict::Holds;
        report.note = "every vertex has fewer than ceil(l) non-neighbors";
        return report;
    }

    Rng rng(seed);
    std::vector<Vertex> pool(n);
    std::iota(pool.begin(), pool.end(), Vertex{0});
    GrowingSet set(graph);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        if (trial % 2 == 0) {
            for (std::size_t i = 0; i < t; ++i) {
                std::swap(pool[i], pool[i + rng.below(n - i)]);
                set.add(pool[i]);
            }
        } else {
            // Grow A around a random vertex keeping N(A) small.
            set.add(static_cast<Vertex>(rng.below(n)));
            while (set.size() < t) {
                std::optional<Vertex> best;
                long long best_delta = 0;
                for (std::size_t k = 0; k < 24; ++k) {
                    const auto w = static_cast<Vertex>(rng.below(n));
                    if (set.contains(w)) {
                        continue;
                    }
                    const long long d = set.delta(w);
                    if (!best || d < best_delta) {
                        best = w;
                        best_delta = d;
                    }
                }
                if (!best) {
                    for (Vertex w = 0; w < n && !best; ++w) {
                        if (!set.contains(w)) {
                            best = w;
                        }
                    }
                }
                set.add(*best);
            }
        }
        std::vector<Vertex> b;
        for (Vertex w = 0; w < n && b.size() < t; ++w) {
            if (!set.contains(w) && !set.on_boundary(w)) {
                b.push_back(w);
            }
        }
        if (b.size() == t) {
            report.verdict = Verdict::Violated;
            report.witness = sorted(set.members());
            report.witness_b = b;
            report.note = "no edge between the two sets";
            return report;
        }
        set.clear();
    }
    report.verdict = Verdict::Inconclusive;
    report.note = "no edgeless pair found";
    return report;
}

bool witness_rechecks(const Graph &graph, const ExpansionReport &report) {
    if (report.verdict != Verdict::Violated) {
        return false;
    }
    for (Vertex v : report.witness) {
        if (v >= graph.order()) {
            return false;
        }
    }
    if (report.property == ExpansionProperty::Small) {
        auto a = VertexSet::from(graph.order(), report.witness);
        if (a.size() != report.witness.size() || static_cast<double>(a.size()) > std::floor(report.g) + 1e-9) {
            return false;
        }
        return static_cast<double>(neighborhood_of_set(graph, a).size()) < report.s * static_cast<double>(a.size());
    }
    const auto t = static_cast<std::size_t>(std::max(1.0, std::ceil(report.l)));
    auto a = VertexSet::from(graph.order(), report.witness);
    auto b = VertexSet::from(graph.order(), report.witness_b);
    if (a.size() < t || b.size() < t) {
        return false;
    }
    for (Vertex v : report.witness) {
        if (b.contains(v)) {
            return false;
        }
        for (Vertex w : graph.neighbors(v)) {
            if (b.contains(w)) {
                return false;
            }
        }
    }
    return true;
}

DiameterCheck diameter_bound_check(const Graph &graph, double s) {
    DiameterCheck out;
    const double n = static_cast<double>(std::max<std::size_t>(graph.order(), 1));
    out.bound = 2.0 * std::log(n) / std::log(s) + 3.0;
    out.diameter = diameter(graph);
    if (!out.diameter) {
        out.note = "infinite diameter: graph is disconnected";
        return out;
    }
    out.ok = static_cast<double>(*out.diameter) <= out.bound;
    return out;
}

PeelResult peel_non_expanding(const Graph &graph, const VertexSet &d, double s, double g) {
    const std::size_t n = graph.order();
    PeelResult out;
    out.removed = VertexSet(n);
    out.kept = VertexSet(n);
    std::vector<char> alive(n, 0);
    std::vector<std::size_t> inner_degree(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        alive[v] = d.contains(v) ? 0 : 1;
    }
    for (Vertex v = 0; v < n; ++v) {
        if (alive[v]) {
            for (Vertex w : graph.neighbors(v)) {
                inner_degree[v] += alive[w] ? 1 : 0;
            }
        }
    }
    const double threshold = s / 2.0;
    std::vector<Vertex> queue;
    std::vector<char> queued(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        if (alive[v] && static_cast<double>(inner_degree[v]) < threshold) {
            queue.push_back(v);
            queued[v] = 1;
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex v = queue[head];
        alive[v] = 0;
        out.removed.insert(v);
        for (Vertex w : graph.neighbors(v)) {
            if (alive[w]) {
                --inner_degree[w];
                if (!queued[w] && static_cast<double>(inner_degree[w]) < threshold) {
                    queue.push_back(w);
                    queued[w] = 1;
                }
            }
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (alive[v]) {
            out.kept.insert(v);
        }
    }
    const double d_size = static_cast<double>(d.size());
    out.size_bound = 2.0 * d_size / s;
    out.within_bound = static_cast<double>(out.removed.size()) <= out.size_bound;
    out.d_small_enough = d_size <= g * s / 4.0;
    return out;
}

}  // namespace hamcover
