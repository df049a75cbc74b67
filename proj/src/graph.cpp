#include "hamcover/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace hamcover {

VertexSet::VertexSet(std::size_t n, std::initializer_list<Vertex> members) : VertexSet(n) {
    for (Vertex v : members) {
        if (v >= n) {
            throw GraphError("vertex " + std::to_string(v) + " outside universe of size " + std::to_string(n));
        }
        insert(v);
    }
}

VertexSet VertexSet::full(std::size_t n) {
    VertexSet s(n);
    for (Vertex v = 0; v < n; ++v) {
        s.insert(v);
    }
    return s;
}

VertexSet VertexSet::from(std::size_t n, std::span<const Vertex> members) {
    VertexSet s(n);
    for (Vertex v : members) {
        if (v >= n) {
            throw GraphError("vertex " + std::to_string(v) + " outside universe of size " + std::to_string(n));
        }
        s.insert(v);
    }
    return s;
}

std::size_t VertexSet::size() const {
    std::size_t c = 0;
    for (auto w : bits_) {
        c += static_cast<std::size_t>(std::popcount(w));
    }
    return c;
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> out;
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t word = bits_[w];
        while (word != 0) {
            auto bit = static_cast<std::size_t>(std::countr_zero(word));
            out.push_back(static_cast<Vertex>(w * 64 + bit));
            word &= word - 1;
        }
    }
    return out;
}

Graph Graph::build(std::size_t n, std::span<const Edge> edges) {
    if (n > std::numeric_limits<Vertex>::max()) {
        throw GraphError("vertex count too large");
    }
    Graph g;
    g.adj_.resize(n);
    for (const Edge &e : edges) {
        if (e.u >= n || e.v >= n) {
            throw GraphError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") has a vertex outside 0.." +
                             std::to_string(n == 0 ? 0 : n - 1));
        }
        if (e.u == e.v) {
            throw GraphError("self-loop at vertex " + std::to_string(e.u));
        }
        g.adj_[e.u].push_back(e.v);
        g.adj_[e.v].push_back(e.u);
    }
    std::size_t degree_sum = 0;
    for (auto &nbrs : g.adj_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        degree_sum += nbrs.size();
    }
    g.m_ = degree_sum / 2;
    if (n <= kMatrixLimit) {
        const std::size_t words = (n + 63) / 64;
        g.rows_.assign(n, std::vector<std::uint64_t>(words, 0));
        for (Vertex v = 0; v < n; ++v) {
            for (Vertex w : g.adj_[v]) {
                g.rows_[v][w >> 6] |= std::uint64_t{1} << (w & 63);
            }
        }
    }
    return g;
}

Graph Graph::build(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
    std::vector<Edge> es;
    es.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (a == b) {
            throw GraphError("self-loop at vertex " + std::to_string(a));
        }
        es.emplace_back(a, b);
    }
    return build(n, es);
}

Graph Graph::complete(std::size_t n) {
    std::vector<Edge> es;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            es.emplace_back(u, v);
        }
    }
    return build(n, es);
}

Graph Graph::cycle(std::size_t n) {
    std::vector<Edge> es;
    for (Vertex v = 0; n >= 3 && v < n; ++v) {
        es.emplace_back(v, static_cast<Vertex>((v + 1) % n));
    }
    return build(n, es);
}

Graph Graph::path(std::size_t n) {
    std::vector<Edge> es;
    for (Vertex v = 0; v + 1 < n; ++v) {
        es.emplace_back(v, v + 1);
    }
    return build(n, es);
}

Graph Graph::petersen() {
    std::vector<Edge> es;
    for (Vertex i = 0; i < 5; ++i) {
        es.emplace_back(i, (i + 1) % 5);          // outer 5-cycle
        es.emplace_back(i, i + 5);                // spokes
        es.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
    }
    return build(10, es);
}

bool Graph::adjacent(Vertex a, Vertex b) const {
    if (a >= order() || b >= order()) {
        return false;
    }
    if (!rows_.empty()) {
        return (rows_[a][b >> 6] >> (b & 63)) & 1u;
    }
    const auto &nbrs = adj_[a];
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::size_t Graph::max_degree() const {
    std::size_t d = 0;
    for (const auto &nbrs : adj_) {
        d = std::max(d, nbrs.size());
    }
    return d;
}

std::size_t Graph::min_degree() const {
    if (adj_.empty()) {
        return 0;
    }
    std::size_t d = adj_.front().size();
    for (const auto &nbrs : adj_) {
        d = std::min(d, nbrs.size());
    }
    return d;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < order(); ++u) {
        for (Vertex v : adj_[u]) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

Graph Graph::without_edges(std::span<const Edge> removed) const {
    std::unordered_set<Edge, EdgeHash> drop(removed.begin(), removed.end());
    std::vector<Edge> kept;
    kept.reserve(m_);
    for (const Edge &e : edges()) {
        if (!drop.contains(e)) {
            kept.push_back(e);
        }
    }
    return build(order(), kept);
}

VertexSet neighborhood_of_set(const Graph &g, const VertexSet &a) {
    VertexSet out(g.order());
    for (Vertex v : a.members()) {
        for (Vertex w : g.neighbors(v)) {
            if (!a.contains(w)) {
                out.insert(w);
            }
        }
    }
    return out;
}

std::size_t neighborhood_size(const Graph &g, std::span<const Vertex> a, std::vector<std::uint8_t> &scratch) {
    // 1 = member of A, 2 = counted neighbor
    for (Vertex v : a) {
        scratch[v] = 1;
    }
    std::size_t count = 0;
    for (Vertex v : a) {
        for (Vertex w : g.neighbors(v)) {
            if (scratch[w] == 0) {
                scratch[w] = 2;
                ++count;
            }
        }
    }
    for (Vertex v : a) {
        scratch[v] = 0;
        for (Vertex w : g.neighbors(v)) {
            scratch[w] = 0;
        }
    }
    return count;
}

std::vector<std::size_t> bfs_distances(const Graph &g, Vertex source) {
    std::vector<std::size_t> dist(g.order(), kUnreachable);
    std::vector<Vertex> queue;
    queue.reserve(g.order());
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex v = queue[head];
        for (Vertex w : g.neighbors(v)) {
            if (dist[w] == kUnreachable) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

bool is_connected(const Graph &g) {
    if (g.order() <= 1) {
        return true;
    }
    auto dist = bfs_distances(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](std::size_t d) { return d == kUnreachable; });
}

std::optional<std::size_t> diameter(const Graph &g) {
    std::size_t best = 0;
    for (Vertex s = 0; s < g.order(); ++s) {
        for (std::size_t d : bfs_distances(g, s)) {
            if (d == kUnreachable) {
                return std::nullopt;
            }
            best = std::max(best, d);
        }
    }
    return best;
}

InducedSubgraph induced_subgraph(const Graph &g, const VertexSet &keep) {
    InducedSubgraph out;
    out.to_sub.assign(g.order(), std::nullopt);
    for (Vertex v = 0; v < g.order(); ++v) {
        if (keep.contains(v)) {
            out.to_sub[v] = static_cast<Vertex>(out.to_parent.size());
            out.to_parent.push_back(v);
        }
    }
    std::vector<Edge> es;
    for (Vertex v : out.to_parent) {
        for (Vertex w : g.neighbors(v)) {
            if (v < w && out.to_sub[w]) {
                es.emplace_back(*out.to_sub[v], *out.to_sub[w]);
            }
        }
    }
    out.graph = Graph::build(out.to_parent.size(), es);
    return out;
}

namespace {

bool parse_line(const std::string &line, unsigned long long &a, unsigned long long &b) {
    std::istringstream ls(line);
    std::string extra;
    if (!(ls >> a >> b)) {
        return false;
    }
    return !(ls >> extra);
}

bool blank(const std::string &line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

Graph read_edge_list(std::istream &in) {
    std::string line;
    std::size_t lineno = 0;
    unsigned long long n = 0;
    unsigned long long m = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) {
            continue;
        }
        if (!parse_line(line, n, m)) {
            throw GraphError("line " + std::to_string(lineno) + ": expected header \"n m\"");
        }
        header = true;
        break;
    }
    if (!header) {
        throw GraphError("empty graph file: missing \"n m\" header");
    }
    std::vector<Edge> es;
    es.reserve(m);
    while (es.size() < m && std::getline(in, line)) {
        ++lineno;
        if (blank(line)) {
            continue;
        }
        unsigned long long a = 0;
        unsigned long long b = 0;
        if (!parse_line(line, a, b)) {
            throw GraphError("line " + std::to_string(lineno) + ": expected edge \"u v\"");
        }
        if (a >= n || b >= n) {
            throw GraphError("line " + std::to_string(lineno) + ": vertex out of range 0.." + std::to_string(n - 1));
        }
        if (a == b) {
            throw GraphError("line " + std::to_string(lineno) + ": self-loop at vertex " + std::to_string(a));
        }
        es.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
    if (es.size() != m) {
        throw GraphError("header announces " + std::to_string(m) + " edges but file has " + std::to_string(es.size()));
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (!blank(line)) {
            throw GraphError("line " + std::to_string(lineno) + ": unexpected content after " + std::to_string(m) +
                             " edges");
        }
    }
    return Graph::build(n, es);
}

Graph read_edge_list_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw GraphError("cannot open graph file: " + path);
    }
    try {
        return read_edge_list(in);
    } catch (const GraphError &e) {
        throw GraphError(path + ": " + e.what());
    }
}

void write_edge_list(std::ostream &out, const Graph &g) {
    out << g.order() << ' ' << g.size() << '\n';
    for (const Edge &e : g.edges()) {
        out << e.u << ' ' << e.v << '\n';
    }
}

void write_edge_list_file(const std::string &path, const Graph &g) {
    std::ofstream out(path);
    if (!out) {
        throw GraphError("cannot write graph file: " + path);
    }
    write_edge_list(out, g);
}

}  // namespace hamcover
