#include "hamcover/posa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hamcover {

RotationConstraints::RotationConstraints(EdgeSet hard, EdgeSet soft) : hard_(std::move(hard)), soft_(std::move(soft)) {
    for (const Edge &e : hard_) {
        soft_.insert(e);
    }
    bool matching = true;
    for (const Edge &e : hard_) {
        matching = matching && hard_partner_.emplace(e.u, e.v).second;
        matching = matching && hard_partner_.emplace(e.v, e.u).second;
    }
    if (!matching) {
        hard_partner_.clear();
    }
    for (const Edge &e : soft_) {
        soft_adj_[e.u].push_back(e.v);
        soft_adj_[e.v].push_back(e.u);
    }
    for (auto &[v, nbrs] : soft_adj_) {
        std::sort(nbrs.begin(), nbrs.end());
    }
}

std::optional<Vertex> RotationConstraints::hard_partner(Vertex v) const {
    auto it = hard_partner_.find(v);
    if (it == hard_partner_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<Vertex> RotationConstraints::soft_partner(Vertex v, const std::vector<char> &used) const {
    auto it = soft_adj_.find(v);
    if (it == soft_adj_.end()) {
        return std::nullopt;
    }
    for (Vertex w : it->second) {
        if (used.empty() || !used[w]) {
            return w;
        }
    }
    return std::nullopt;
}

RotationState RotationState::start(Path p, Vertex fixed) {
    if (p.vertices.empty()) {
        throw RotationError("cannot rotate an empty path");
    }
    if (p.back() == fixed && p.front() != fixed) {
        std::reverse(p.vertices.begin(), p.vertices.end());
    }
    if (p.front() != fixed) {
        throw RotationError("vertex " + std::to_string(fixed) + " is not an endpoint of the path");
    }
    RotationState s;
    s.path = std::move(p);
    return s;
}

RotationState rotate(const Graph &g, RotationState state, Vertex pivot, RotationConstraints &constraints) {
    auto &vs = state.path.vertices;
    const std::size_t q = vs.size();
    auto it = std::find(vs.begin(), vs.end(), pivot);
    if (it == vs.end()) {
        throw RotationError("pivot " + std::to_string(pivot) + " is not on the path");
    }
    const auto i = static_cast<std::size_t>(it - vs.begin());
    if (q < 3 || i + 2 >= q) {
        throw RotationError("pivot " + std::to_string(pivot) + " at position " + std::to_string(i) +
                            " is out of range for a path on " + std::to_string(q) + " vertices");
    }
    if (!g.adjacent(vs.back(), pivot)) {
        throw RotationError("pivot " + std::to_string(pivot) + " is not adjacent to the endpoint " +
                            std::to_string(vs.back()));
    }
    const Edge broken(vs[i], vs[i + 1]);
    if (constraints.forbids(broken)) {
        throw RotationError("broken edge forbidden: (" + std::to_string(broken.u) + "," + std::to_string(broken.v) +
                            ")");
    }
    if (constraints.is_soft(broken)) {
        constraints.record_soft_break();
    }
    std::reverse(vs.begin() + static_cast<std::ptrdiff_t>(i + 1), vs.end());
    ++state.rotation_count;
    state.history.push_back({pivot, broken});
    return state;
}

Path replay_rotations(const Graph &g, const RotationState &start, const std::vector<RotationStep> &steps,
                      const RotationConstraints &constraints) {
    RotationConstraints scratch = constraints;
    RotationState s = start;
    for (const auto &step : steps) {
        s = rotate(g, std::move(s), step.pivot, scratch);
        if (s.history.back().broken != step.broken) {
            throw RotationError("replayed rotation broke a different edge than recorded");
        }
    }
    return s.path;
}

std::size_t default_rotation_depth(std::size_t n, double s) {
    if (s >= 21.0 && n >= 2) {
        return static_cast<std::size_t>(std::ceil(3.0 * std::log(static_cast<double>(n)) / std::log(s)));
    }
    return n;
}

namespace {

struct TreeNode {
    std::vector<Vertex> path;
    std::size_t parent = 0;
    RotationStep step;
    std::size_t depth = 0;
    std::size_t soft = 0;
};

enum class Visit { Continue, Stop };

struct ExploreResult {
    std::vector<TreeNode> tree;
    bool stopped = false;
    bool truncated = false;
};

// Breadth-first rotation tree of `root` with root.front() fixed, one node per
// endpoint. on_node sees every node including the root; before_expand runs
// before a node's children are generated and may end the search.
template <class OnNode, class BeforeExpand>
ExploreResult explore(const Graph &g, std::vector<Vertex> root, const RotationConstraints &c, bool allow_soft,
                      std::size_t max_depth, std::size_t &nodes_left, OnNode &&on_node, BeforeExpand &&before_expand) {
    ExploreResult out;
    const std::size_t n = g.order();
    std::vector<char> in_path(n, 0);
    for (Vertex v : root) {
        in_path[v] = 1;
    }
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> pos(n, 0);
    seen[root.back()] = 1;
    out.tree.push_back({std::move(root), 0, {}, 0, 0});
    if (on_node(out.tree.back()) == Visit::Stop) {
        out.stopped = true;
        return out;
    }
    for (std::size_t head = 0; head < out.tree.size(); ++head) {
        if (before_expand(out.tree[head].depth) == Visit::Stop) {
            out.stopped = true;
            return out;
        }
        if (out.tree[head].depth >= max_depth) {
            continue;
        }
        const std::vector<Vertex> current = out.tree[head].path;
        const std::size_t depth = out.tree[head].depth;
        const std::size_t soft = out.tree[head].soft;
        const std::size_t q = current.size();
        if (q < 3) {
            continue;
        }
        for (std::size_t j = 0; j < q; ++j) {
            pos[current[j]] = j;
        }
        const Vertex end = current.back();
        for (Vertex v : g.neighbors(end)) {
            if (!in_path[v]) {
                continue;
            }
            const std::size_t i = pos[v];
            if (i + 2 >= q) {
                continue;
            }
            const Vertex next = current[i + 1];
            if (seen[next]) {
                continue;
            }
            const Edge broken(v, next);
            if (c.forbids(broken)) {
                continue;
            }
            const bool is_soft = c.is_soft(broken);
            if (is_soft && !allow_soft) {
                continue;
            }
            if (nodes_left == 0) {
                out.truncated = true;
                return out;
            }
            --nodes_left;
            std::vector<Vertex> rotated = current;
            std::reverse(rotated.begin() + static_cast<std::ptrdiff_t>(i + 1), rotated.end());
            seen[next] = 1;
            out.tree.push_back({std::move(rotated), head, {v, broken}, depth + 1, soft + (is_soft ? 1 : 0)});
            if (on_node(out.tree.back()) == Visit::Stop) {
                out.stopped = true;
                return out;
            }
        }
    }
    return out;
}

std::vector<RotationStep> history_of(const std::vector<TreeNode> &tree, std::size_t index) {
    std::vector<RotationStep> steps;
    while (index != 0) {
        steps.push_back(tree[index].step);
        index = tree[index].parent;
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
}

// Outside neighbor of v: its free soft partner if any, else the lowest free neighbor.
std::optional<Vertex> outside_neighbor(const Graph &g, Vertex v, const std::vector<char> &in_path,
                                       const RotationConstraints &c) {
    if (auto p = c.hard_partner(v); p && !in_path[*p]) {
        return p;
    }
    if (auto p = c.soft_partner(v, in_path); p && g.adjacent(v, *p)) {
        return p;
    }
    for (Vertex w : g.neighbors(v)) {
        if (!in_path[w]) {
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace

EndpointSet endpoint_set(const Graph &g, const Path &p0, Vertex fixed, const RotationConstraints &constraints,
                         std::size_t max_depth, const EndpointSearchOptions &options) {
    RotationState start = RotationState::start(p0, fixed);
    std::vector<char> in_path(g.order(), 0);
    for (Vertex v : start.path.vertices) {
        in_path[v] = 1;
    }
    EndpointSet out;
    const double threshold = options.stop_fraction * static_cast<double>(g.order());
    std::size_t nodes_left = static_cast<std::size_t>(-1);
    auto result = explore(
        g, start.path.vertices, constraints, true, max_depth, nodes_left,
        [&](const TreeNode &node) {
            const Vertex end = node.path.back();
            out.endpoints.push_back(end);
            out.depth_reached = std::max(out.depth_reached, node.depth);
            if (!out.extendable) {
                for (Vertex w : g.neighbors(end)) {
                    if (!in_path[w]) {
                        out.extendable = end;
                        break;
                    }
                }
                if (out.extendable && options.stop_on_extendable) {
                    return Visit::Stop;
                }
            }
            return Visit::Continue;
        },
        [&](std::size_t) {
            if (options.stop_fraction > 0.0 && static_cast<double>(out.endpoints.size()) >= threshold) {
                return Visit::Stop;
            }
            return Visit::Continue;
        });
    for (std::size_t i = 0; i < result.tree.size(); ++i) {
        out.witness.emplace(result.tree[i].path.back(), history_of(result.tree, i));
    }
    return out;
}

ExtensionOutcome rotate_until_extendable(const Graph &g, const Path &p0, RotationConstraints &constraints,
                                         const RotationLimits &limits) {
    const std::size_t n = g.order();
    if (p0.vertices.empty()) {
        return Stuck{};
    }
    std::vector<char> in_path(n, 0);
    for (Vertex v : p0.vertices) {
        in_path[v] = 1;
    }
    // Depth 0: either end may already be extendable.
    if (auto a = outside_neighbor(g, p0.back(), in_path, constraints)) {
        return ExtendAt{p0, p0.back(), *a, 0, 0};
    }
    if (auto a = outside_neighbor(g, p0.front(), in_path, constraints)) {
        Path rev = p0;
        std::reverse(rev.vertices.begin(), rev.vertices.end());
        return ExtendAt{rev, rev.back(), *a, 0, 0};
    }
    if (p0.vertices.size() < 3) {
        return Stuck{};
    }

    const std::size_t cap = limits.max_nodes != 0 ? limits.max_nodes : std::max<std::size_t>(4096, 64 * n);
    bool soft_on_path = false;
    for (const Edge &e : p0.edges()) {
        soft_on_path = soft_on_path || (constraints.is_soft(e) && !constraints.forbids(e));
    }
    std::vector<bool> passes = soft_on_path ? std::vector<bool>{false, true} : std::vector<bool>{true};

    Stuck stuck;
    for (bool allow_soft : passes) {
        std::size_t nodes_left = cap;
        std::optional<ExtensionOutcome> found;

        auto level1 = explore(
            g, p0.vertices, constraints, allow_soft, limits.max_depth, nodes_left,
            [&](const TreeNode &node) {
                if (auto a = outside_neighbor(g, node.path.back(), in_path, constraints)) {
                    found = ExtendAt{Path(node.path), node.path.back(), *a, node.depth, node.soft};
                    return Visit::Stop;
                }
                return Visit::Continue;
            },
            [](std::size_t) { return Visit::Continue; });
        if (!found) {
            for (const auto &node : level1.tree) {
                if (g.adjacent(node.path.front(), node.path.back())) {
                    found = Chord{Path(node.path), node.depth, node.soft};
                    break;
                }
            }
        }
        stuck.first_level_endpoints = std::max(stuck.first_level_endpoints, level1.tree.size());
        bool truncated = level1.truncated;

        for (std::size_t k = 0; !found && !truncated && k < level1.tree.size(); ++k) {
            const auto &base = level1.tree[k];
            std::vector<Vertex> root(base.path.rbegin(), base.path.rend());
            auto level2 = explore(
                g, std::move(root), constraints, allow_soft, limits.max_depth, nodes_left,
                [&](const TreeNode &node) {
                    if (node.depth == 0) {
                        return Visit::Continue;
                    }
                    const std::size_t rotations = base.depth + node.depth;
                    const std::size_t soft = base.soft + node.soft;
                    if (auto a = outside_neighbor(g, node.path.back(), in_path, constraints)) {
                        found = ExtendAt{Path(node.path), node.path.back(), *a, rotations, soft};
                        return Visit::Stop;
                    }
                    if (g.adjacent(node.path.front(), node.path.back())) {
                        found = Chord{Path(node.path), rotations, soft};
                        return Visit::Stop;
                    }
                    return Visit::Continue;
                },
                [](std::size_t) { return Visit::Continue; });
            stuck.second_level_endpoints += level2.tree.size() - 1;
            truncated = level2.truncated;
        }
        stuck.truncated = stuck.truncated || truncated;

        if (found) {
            std::visit(
                [&](auto &outcome) {
                    if constexpr (!std::is_same_v<std::decay_t<decltype(outcome)>, Stuck>) {
                        for (std::size_t i = 0; i < outcome.soft_broken; ++i) {
                            constraints.record_soft_break();
                        }
                    }
                },
                *found);
            return *found;
        }
    }
    return stuck;
}

Path absorb_external_vertex(const Graph &g, const Path &cycle, Vertex w, Vertex a, RotationConstraints &constraints) {
    const auto &vs = cycle.vertices;
    const std::size_t q = vs.size();
    if (q < 3 || !g.adjacent(vs.front(), vs.back())) {
        throw RotationError("absorb needs a closed cycle on at least 3 vertices");
    }
    auto it = std::find(vs.begin(), vs.end(), w);
    if (it == vs.end()) {
        throw RotationError("vertex " + std::to_string(w) + " is not on the cycle");
    }
    if (std::find(vs.begin(), vs.end(), a) != vs.end()) {
        throw RotationError("vertex " + std::to_string(a) + " is already on the cycle");
    }
    if (!g.adjacent(w, a)) {
        throw RotationError("vertex " + std::to_string(a) + " is not adjacent to " + std::to_string(w));
    }
    const auto i = static_cast<std::size_t>(it - vs.begin());
    const Vertex next = vs[(i + 1) % q];
    const Vertex prev = vs[(i + q - 1) % q];
    const Edge forward(w, next);
    const Edge backward(prev, w);

    // Removing (w, next) leaves next ... prev w; removing (prev, w) leaves prev ... next w.
    auto choose_forward = [&]() -> std::optional<bool> {
        const bool f_ok = !constraints.forbids(forward);
        const bool b_ok = !constraints.forbids(backward);
        if (!f_ok && !b_ok) {
            return std::nullopt;
        }
        if (f_ok && !constraints.is_soft(forward)) {
            return true;
        }
        if (b_ok && !constraints.is_soft(backward)) {
            return false;
        }
        return f_ok;
    }();
    if (!choose_forward) {
        throw RotationError("both cycle edges at vertex " + std::to_string(w) + " are in the forbidden set");
    }
    const Edge removed = *choose_forward ? forward : backward;
    if (constraints.is_soft(removed)) {
        constraints.record_soft_break();
    }
    Path out;
    out.vertices.reserve(q + 1);
    if (*choose_forward) {
        for (std::size_t k = 1; k <= q; ++k) {
            out.vertices.push_back(vs[(i + k) % q]);
        }
    } else {
        for (std::size_t k = 1; k <= q; ++k) {
            out.vertices.push_back(vs[(i + q - k) % q]);
        }
    }
    out.vertices.push_back(a);
    return out;
}

namespace {

// Appends `a` and, when its F or F' partner is still outside, the partner too.
void append_with_partner(const Graph &g, std::vector<Vertex> &path, std::vector<char> &in_path, Vertex a,
                         const RotationConstraints &c) {
    path.push_back(a);
    in_path[a] = 1;
    std::optional<Vertex> partner = c.hard_partner(a);
    if (!partner || in_path[*partner]) {
        partner = c.soft_partner(a, in_path);
    }
    if (partner && !in_path[*partner] && g.adjacent(a, *partner)) {
        path.push_back(*partner);
        in_path[*partner] = 1;
    }
}

}  // namespace

Path greedy_path(const Graph &g, Vertex start, const RotationConstraints &constraints) {
    const std::size_t n = g.order();
    std::vector<char> used(n, 0);
    std::vector<std::size_t> free_degree(n);
    for (Vertex v = 0; v < n; ++v) {
        free_degree[v] = g.degree(v);
    }
    std::vector<Vertex> path;
    auto take = [&](Vertex v) {
        for (Vertex w : g.neighbors(v)) {
            --free_degree[w];
        }
    };
    append_with_partner(g, path, used, start, constraints);
    for (Vertex v : path) {
        take(v);
    }
    bool flipped = false;
    while (true) {
        const Vertex end = path.back();
        std::optional<Vertex> next;
        if (auto p = constraints.soft_partner(end, used); p && g.adjacent(end, *p)) {
            next = p;
        }
        for (Vertex cand : g.neighbors(end)) {
            if (next && constraints.is_soft(Edge(end, *next))) {
                break;
            }
            if (!used[cand] && (!next || free_degree[cand] < free_degree[*next])) {
                next = cand;
            }
        }
        if (!next) {
            if (flipped) {
                break;
            }
            std::reverse(path.begin(), path.end());
            flipped = true;
            continue;
        }
        const std::size_t before = path.size();
        append_with_partner(g, path, used, *next, constraints);
        for (std::size_t k = before; k < path.size(); ++k) {
            take(path[k]);
        }
    }
    return Path(std::move(path));
}

namespace {

bool consistent_with_hard(const Path &p, const RotationConstraints &c, std::size_t n) {
    std::vector<char> on(n, 0);
    for (Vertex v : p.vertices) {
        on[v] = 1;
    }
    EdgeSet path_edges;
    for (const Edge &e : p.edges()) {
        path_edges.insert(e);
    }
    for (const Edge &e : c.hard()) {
        if ((on[e.u] || on[e.v]) && !path_edges.contains(e)) {
            return false;
        }
    }
    return true;
}

}  // namespace

HamiltonResult find_hamilton_cycle(const Graph &g, RotationConstraints &constraints, std::size_t budget,
                                   const HamiltonOptions &options) {
    const std::size_t n = g.order();
    for (const Edge &e : constraints.hard()) {
        if (!g.has_edge(e)) {
            throw std::invalid_argument("forbidden-to-break edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                        ") is not an edge of the graph");
        }
    }
    if (!constraints.hard().empty() && !constraints.hard_partner(constraints.hard().begin()->u)) {
        throw std::invalid_argument("the forbidden-to-break edge set must be a matching");
    }

    HamiltonResult result;
    const std::size_t soft_before = constraints.broken_soft();
    auto finish = [&](std::string failure) {
        result.failure = std::move(failure);
        result.broken_soft = constraints.broken_soft() - soft_before;
        return result;
    };
    if (n < 3) {
        return finish("graph has fewer than 3 vertices");
    }

    std::vector<Vertex> starts(n);
    std::iota(starts.begin(), starts.end(), Vertex{0});
    std::stable_sort(starts.begin(), starts.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    std::size_t attempt = options.start_offset;

    Path path;
    if (options.seed_path) {
        if (options.seed_path->vertices.empty() || !is_valid_path(g, *options.seed_path) ||
            !consistent_with_hard(*options.seed_path, constraints, n)) {
            throw std::invalid_argument("seed path is not a valid path containing its forbidden-to-break edges");
        }
        path = *options.seed_path;
    } else {
        path = greedy_path(g, starts[attempt % n], constraints);
    }

    while (true) {
        result.longest_path = std::max(result.longest_path, path.vertices.size());
        if (result.iterations >= budget) {
            return finish("iteration budget of " + std::to_string(budget) + " exhausted; longest path had " +
                          std::to_string(result.longest_path) + " of " + std::to_string(n) + " vertices");
        }
        ++result.iterations;
        auto outcome = rotate_until_extendable(g, path, constraints, options.limits);

        if (auto *ext = std::get_if<ExtendAt>(&outcome)) {
            std::vector<char> in_path(n, 0);
            for (Vertex v : ext->path.vertices) {
                in_path[v] = 1;
            }
            path = std::move(ext->path);
            append_with_partner(g, path.vertices, in_path, ext->outside, constraints);
            continue;
        }
        if (auto *chord = std::get_if<Chord>(&outcome)) {
            if (chord->path.vertices.size() == n) {
                result.cycle = HamiltonCycle{std::move(chord->path.vertices)};
                break;
            }
            std::vector<char> in_path(n, 0);
            for (Vertex v : chord->path.vertices) {
                in_path[v] = 1;
            }
            // Pick the first cycle vertex with an outside neighbor, preferring one
            // that can be opened without touching a soft edge.
            const auto &cyc = chord->path.vertices;
            const std::size_t q = cyc.size();
            std::optional<std::pair<Vertex, Vertex>> pick;
            std::optional<std::pair<Vertex, Vertex>> fallback;
            for (std::size_t i = 0; i < q && !pick; ++i) {
                const Vertex w = cyc[i];
                auto a = outside_neighbor(g, w, in_path, constraints);
                if (!a) {
                    continue;
                }
                const Edge fwd(w, cyc[(i + 1) % q]);
                const Edge bwd(cyc[(i + q - 1) % q], w);
                const bool clean = (!constraints.is_soft(fwd)) || (!constraints.is_soft(bwd));
                const bool legal = !constraints.forbids(fwd) || !constraints.forbids(bwd);
                if (clean) {
                    pick = std::make_pair(w, *a);
                } else if (legal && !fallback) {
                    fallback = std::make_pair(w, *a);
                }
            }
            if (!pick) {
                pick = fallback;
            }
            if (!pick) {
                return finish("no vertex on a closed " + std::to_string(q) +
                              "-cycle has an outside neighbor; graph is disconnected");
            }
            path = absorb_external_vertex(g, chord->path, pick->first, pick->second, constraints);
            path.vertices.pop_back();
            append_with_partner(g, path.vertices, in_path, pick->second, constraints);
            continue;
        }
        ++result.restarts;
        ++attempt;
        if (result.restarts >= (options.max_restarts == 0 ? n : options.max_restarts)) {
            return finish("rotation search stuck from every start vertex");
        }
        path = greedy_path(g, starts[attempt % n], constraints);
    }

    if (!is_hamilton_cycle(g, *result.cycle)) {
        throw std::logic_error("find_hamilton_cycle produced an invalid cycle");
    }
    for (const Edge &e : constraints.hard()) {
        if (!result.cycle->contains(e)) {
            throw std::logic_error("find_hamilton_cycle broke a forbidden edge");
        }
    }
    return finish("");
}

}  // namespace hamcover
