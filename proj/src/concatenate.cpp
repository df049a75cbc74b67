#include "hamcover/concatenate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

namespace hamcover {

PathFamily::PathFamily(std::vector<Path> paths) : paths_(std::move(paths)) {
    std::unordered_set<Vertex> seen;
    for (const auto &p : paths_) {
        if (p.trivial()) {
            throw std::invalid_argument("path family contains a trivial path");
        }
        for (Vertex v : p.vertices) {
            if (!seen.insert(v).second) {
                throw std::invalid_argument("paths share vertex " + std::to_string(v));
            }
        }
    }
    rebase();
}

PathFamily PathFamily::from_matching(std::span<const Edge> matching) {
    std::vector<Path> paths;
    paths.reserve(matching.size());
    for (const auto &e : matching) {
        paths.push_back(Path{e.u, e.v});
    }
    return PathFamily(std::move(paths));
}

EdgeSet PathFamily::edges() const {
    EdgeSet out;
    for (const auto &p : paths_) {
        for (const auto &e : p.edges()) {
            out.insert(e);
        }
    }
    return out;
}

std::size_t PathFamily::vertex_count() const {
    std::size_t total = 0;
    for (const auto &p : paths_) {
        total += p.vertices.size();
    }
    return total;
}

VertexSet PathFamily::vertices(std::size_t n) const {
    VertexSet out(n);
    for (const auto &p : paths_) {
        for (Vertex v : p.vertices) {
            out.insert(v);
        }
    }
    return out;
}

ExtensionBudget PathFamily::budget(std::size_t d, std::size_t k) const {
    ExtensionBudget b;
    b.d = d;
    b.k = k;
    b.mu = origin_size_ >= paths_.size() ? origin_size_ - paths_.size() : 0;
    const EdgeSet now = edges();
    for (const auto &e : origin_edges_) {
        b.lost += now.contains(e) ? 0 : 1;
    }
    for (const auto &e : now) {
        b.gained += origin_edges_.contains(e) ? 0 : 1;
    }
    return b;
}

void PathFamily::rebase() {
    origin_edges_ = edges();
    origin_size_ = paths_.size();
}

void PathFamily::remove(std::size_t index) {
    paths_.erase(paths_.begin() + static_cast<std::ptrdiff_t>(index));
}

void PathFamily::replace(std::size_t index, Path p) { paths_.at(index) = std::move(p); }

std::vector<Vertex> k_end(const Path &p, std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("k_end needs k >= 1");
    }
    const std::size_t q = p.vertices.size();
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < q; ++i) {
        if (i + 1 <= k || q - i <= k) {
            out.push_back(p.vertices[i]);
        }
    }
    return out;
}

VertexSet k_end(const Path &p, std::size_t k, std::size_t n) { return VertexSet::from(n, k_end(p, k)); }

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Layout {
    std::vector<std::size_t> owner;  // path index or kNone
    std::vector<std::size_t> pos;
};

Layout layout_of(const PathFamily &f, std::size_t n) {
    Layout l{std::vector<std::size_t>(n, kNone), std::vector<std::size_t>(n, 0)};
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto &vs = f.paths()[i].vertices;
        for (std::size_t j = 0; j < vs.size(); ++j) {
            l.owner[vs[j]] = i;
            l.pos[vs[j]] = j;
        }
    }
    return l;
}

// Cut of a path at x keeping the longer side; `head` is the kept part ordered to end at x.
struct Cut {
    std::size_t trimmed = 0;
    std::size_t protected_trimmed = 0;
    bool from_front = false;  // x within k-1 of the front
};

std::optional<Cut> cut_at(const Path &p, std::size_t pos, std::size_t k, const EdgeSet *protect) {
    const std::size_t len = p.length();
    Cut c;
    if (pos + 1 <= k) {
        c.from_front = true;
        c.trimmed = pos;
    } else if (len - pos + 1 <= k) {
        c.trimmed = len - pos;
    } else {
        return std::nullopt;
    }
    if (protect != nullptr) {
        const std::size_t lo = c.from_front ? 0 : pos;
        const std::size_t hi = c.from_front ? pos : len;
        for (std::size_t i = lo; i < hi; ++i) {
            c.protected_trimmed += protect->contains(Edge(p.vertices[i], p.vertices[i + 1])) ? 1 : 0;
        }
    }
    return c;
}

// Kept part ending at x.
std::vector<Vertex> head_ending_at(const Path &p, std::size_t pos, const Cut &c) {
    std::vector<Vertex> out;
    if (c.from_front) {
        out.assign(p.vertices.begin() + static_cast<std::ptrdiff_t>(pos), p.vertices.end());
        std::reverse(out.begin(), out.end());
    } else {
        out.assign(p.vertices.begin(), p.vertices.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
    }
    return out;
}

struct Candidate {
    std::size_t protected_cost = kNone;
    std::size_t gained = kNone;
    std::size_t trimmed = kNone;
    std::size_t i = kNone;
    std::size_t j = kNone;
    std::size_t turns = 0;  // 0 when the join runs from the back of path i to the front of path j
    Vertex x = 0;
    Vertex y = 0;
    std::vector<Vertex> connector;  // a .. b, empty for a direct edge

    [[nodiscard]] auto key() const { return std::tie(protected_cost, gained, trimmed, i, j, turns, x, y); }
    [[nodiscard]] bool valid() const { return i != kNone; }
};

struct EndInfo {
    std::vector<std::size_t> cost;  // protected_trimmed per vertex, kNone outside k-ends
    std::vector<std::size_t> trimmed;
    std::vector<char> from_front;
};

EndInfo end_info(const PathFamily &f, const Layout &l, std::size_t k, const EdgeSet *protect, std::size_t n) {
    EndInfo e{std::vector<std::size_t>(n, kNone), std::vector<std::size_t>(n, kNone), std::vector<char>(n, 0)};
    for (const auto &p : f.paths()) {
        for (Vertex v : k_end(p, k)) {
            if (auto c = cut_at(p, l.pos[v], k, protect)) {
                e.cost[v] = c->protected_trimmed;
                e.trimmed[v] = c->trimmed;
                e.from_front[v] = c->from_front ? 1 : 0;
            }
        }
    }
    return e;
}

using PairKey = std::pair<std::size_t, std::size_t>;
using PairBest = std::map<PairKey, Candidate>;

void offer(PairBest &best, const EndInfo &ends, Candidate c) {
    if (c.i > c.j) {
        std::swap(c.i, c.j);
        std::swap(c.x, c.y);
        std::reverse(c.connector.begin(), c.connector.end());
    }
    c.turns = (ends.from_front[c.x] ? 1 : 0) + (ends.from_front[c.y] ? 0 : 1);
    auto [it, inserted] = best.try_emplace(PairKey{c.i, c.j}, c);
    if (!inserted && c.key() < it->second.key()) {
        it->second = std::move(c);
    }
}

// A pair of paths is joinable when an outside connector links their k-ends
// (or, with direct_joins, when an edge does); the join uses a direct edge
// between the k-ends whenever that is cheaper.
Candidate best_merge(const Graph &g, const PathFamily &f, std::size_t d, std::size_t k, const EdgeSet *protect,
                     bool direct_joins) {
    const std::size_t n = g.order();
    const Layout l = layout_of(f, n);
    const EndInfo ends = end_info(f, l, k, protect, n);
    PairBest via_outside;
    PairBest direct;

    std::vector<std::size_t> dist(n);
    std::vector<Vertex> parent(n);
    std::vector<Vertex> root(n);
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::fill(dist.begin(), dist.end(), kNone);
        std::deque<Vertex> queue;
        // Sources: outside neighbors a of the k-end, each tagged with its cheapest x.
        std::vector<Vertex> ends_i = k_end(f.paths()[i], k);
        std::sort(ends_i.begin(), ends_i.end());
        std::vector<std::pair<Vertex, Vertex>> sources;
        for (Vertex x : ends_i) {
            if (ends.cost[x] == kNone) {
                continue;
            }
            for (Vertex a : g.neighbors(x)) {
                if (l.owner[a] == kNone) {
                    sources.emplace_back(a, x);
                } else if (l.owner[a] > i && ends.cost[a] != kNone) {
                    offer(direct, ends, Candidate{ends.cost[x] + ends.cost[a], 1, ends.trimmed[x] + ends.trimmed[a], i,
                                            l.owner[a], 0, x, a, {}});
                }
            }
        }
        std::sort(sources.begin(), sources.end(), [&](const auto &s, const auto &t) {
            return std::tie(s.first, ends.cost[s.second], ends.trimmed[s.second], s.second) <
                   std::tie(t.first, ends.cost[t.second], ends.trimmed[t.second], t.second);
        });
        for (const auto &[a, x] : sources) {
            if (dist[a] == kNone) {
                dist[a] = 0;
                parent[a] = a;
                root[a] = x;
                queue.push_back(a);
            }
        }
        while (!queue.empty()) {
            const Vertex b = queue.front();
            queue.pop_front();
            for (Vertex y : g.neighbors(b)) {
                if (l.owner[y] != kNone && l.owner[y] != i && ends.cost[y] != kNone) {
                    std::vector<Vertex> conn;
                    for (Vertex v = b;; v = parent[v]) {
                        conn.push_back(v);
                        if (parent[v] == v) {
                            break;
                        }
                    }
                    std::reverse(conn.begin(), conn.end());
                    const Vertex x = root[b];
                    offer(via_outside, ends, Candidate{ends.cost[x] + ends.cost[y], dist[b] + 2,
                                                 ends.trimmed[x] + ends.trimmed[y], i, l.owner[y], 0, x, y,
                                                 std::move(conn)});
                }
            }
            if (dist[b] >= d) {
                continue;
            }
            for (Vertex w : g.neighbors(b)) {
                if (l.owner[w] == kNone && dist[w] == kNone) {
                    dist[w] = dist[b] + 1;
                    parent[w] = b;
                    root[w] = root[b];
                    queue.push_back(w);
                }
            }
        }
    }

    if (direct_joins) {
        for (auto &[pair, c] : direct) {
            via_outside.try_emplace(pair, c);
        }
    }
    Candidate best;
    for (auto &[pair, c] : via_outside) {
        Candidate *pick = &c;
        if (auto it = direct.find(pair); it != direct.end() && it->second.key() < c.key()) {
            pick = &it->second;
        }
        if (!best.valid() || pick->key() < best.key()) {
            best = *pick;
        }
    }
    return best;
}

void check_budget(const PathFamily &f, std::size_t d, std::size_t k, const ReduceOptions &options) {
    const ExtensionBudget b = f.budget(d, k);
    if (!b.satisfied()) {
        std::ostringstream msg;
        msg << "extension budget violated: mu=" << b.mu << " lost=" << b.lost << " gained=" << b.gained << " (d=" << d
            << ", k=" << k << ")";
        throw BudgetViolation(msg.str());
    }
    if (options.on_move) {
        options.on_move(f, b);
    }
}

}  // namespace

PathFamily reduce_family(const Graph &g, PathFamily family, std::size_t d, std::size_t k, const ReduceOptions &options,
                         ReduceStats *stats) {
    if (k == 0) {
        throw std::invalid_argument("reduce_family needs k >= 1");
    }
    family.rebase();
    ReduceStats local;
    ReduceStats &st = stats != nullptr ? *stats : local;
    const std::size_t n = g.order();
    for (const auto &p : family.paths()) {
        if (!is_valid_path(g, p)) {
            throw std::invalid_argument("family path is not a path of the graph");
        }
    }

    while (true) {
        bool deleted = false;
        for (std::size_t i = 0; i < family.size(); ++i) {
            if (family.paths()[i].length() + 1 < 2 * k) {
                family.remove(i);
                ++st.deletions;
                check_budget(family, d, k, options);
                deleted = true;
                break;
            }
        }
        if (deleted) {
            continue;
        }
        if (family.size() < 2) {
            break;
        }
        Candidate c = best_merge(g, family, d, k, options.protect, options.direct_joins);
        if (!c.valid()) {
            break;
        }
        const Path &pi = family.paths()[c.i];
        const Path &pj = family.paths()[c.j];
        const Layout l = layout_of(family, n);
        const auto cut_x = *cut_at(pi, l.pos[c.x], k, nullptr);
        const auto cut_y = *cut_at(pj, l.pos[c.y], k, nullptr);
        std::vector<Vertex> merged = head_ending_at(pi, l.pos[c.x], cut_x);
        merged.insert(merged.end(), c.connector.begin(), c.connector.end());
        std::vector<Vertex> tail = head_ending_at(pj, l.pos[c.y], cut_y);
        merged.insert(merged.end(), tail.rbegin(), tail.rend());
        st.protected_lost += c.protected_cost;
        ++st.merges;
        st.direct_merges += c.connector.empty() ? 1 : 0;
        family.replace(c.i, Path(std::move(merged)));
        family.remove(c.j);
        check_budget(family, d, k, options);
    }
    return family;
}

MergeResult merge_into_single_path(const Graph &g, std::span<const Edge> matching, double alpha) {
    if (matching.empty()) {
        throw std::invalid_argument("merge_into_single_path needs a non-empty matching");
    }
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw std::invalid_argument("alpha must lie in (0, 1]");
    }
    for (const auto &e : matching) {
        if (!g.has_edge(e)) {
            throw std::invalid_argument("matching edge is not in the graph");
        }
    }
    const std::size_t n = g.order();
    const EdgeSet protect(matching.begin(), matching.end());
    MergeResult result;
    result.stats.d = static_cast<std::size_t>(std::ceil(6.0 / alpha));
    PathFamily family = PathFamily::from_matching(matching);

    ReduceOptions options;
    options.protect = &protect;
    options.direct_joins = true;
    std::size_t previous_k = 0;
    for (std::size_t i = 1; i <= std::max<std::size_t>(n, 1) && family.size() > 1; ++i) {
        std::size_t k = 1;
        if (i >= 2) {
            const double scheduled = std::ceil(std::pow(static_cast<double>(n), (i - 1) * alpha / 2.0));
            std::size_t shortest = family.paths().front().length();
            for (const auto &p : family.paths()) {
                shortest = std::min(shortest, p.length());
            }
            const std::size_t cap = std::max<std::size_t>(1, (shortest + 1) / 2);
            k = scheduled > static_cast<double>(cap) ? cap : static_cast<std::size_t>(scheduled);
            result.stats.k_cap_binds += scheduled > static_cast<double>(cap) ? 1 : 0;
        }
        ReduceStats rs;
        const std::size_t before = family.size();
        family = reduce_family(g, std::move(family), result.stats.d, k, options, &rs);
        result.stats.k_schedule.push_back(k);
        result.stats.merges += rs.merges;
        ++result.stats.rounds;
        if (family.size() == before && k == previous_k) {
            break;
        }
        previous_k = k;
    }

    result.stats.final_family_size = family.size();
    if (family.empty()) {
        for (const auto &e : matching) {
            result.lost_matching_edges.insert(e);
        }
        return result;
    }
    std::size_t keep = 0;
    std::size_t keep_covered = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
        std::size_t covered = 0;
        for (const auto &e : family.paths()[i].edges()) {
            covered += protect.contains(e) ? 1 : 0;
        }
        const auto &cur = family.paths()[i];
        const auto &kept = family.paths()[keep];
        if (i == 0 || cur.vertices.size() > kept.vertices.size() ||
            (cur.vertices.size() == kept.vertices.size() && covered > keep_covered)) {
            keep = i;
            keep_covered = covered;
        }
    }
    result.path = family.paths()[keep];
    result.stats.dissolved_paths = family.size() - 1;
    result.stats.path_length = result.path.length();
    EdgeSet on_path;
    for (const auto &e : result.path.edges()) {
        on_path.insert(e);
    }
    for (const auto &e : matching) {
        if (!on_path.contains(e)) {
            result.lost_matching_edges.insert(e);
        }
    }
    return result;
}

}  // namespace hamcover
