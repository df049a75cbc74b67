#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hamcover/graph.hpp"
#include "hamcover/path.hpp"
#include "hamcover/random_gen.hpp"

using namespace hamcover;

namespace {

// Floyd-Warshall; independent of the BFS used by diameter().
std::optional<std::size_t> floyd_diameter(const Graph &g) {
    const std::size_t n = g.order();
    const std::size_t inf = 1u << 30;
    std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
    for (Vertex v = 0; v < n; ++v) {
        d[v][v] = 0;
        for (Vertex w : g.neighbors(v)) {
            d[v][w] = 1;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
            }
        }
    }
    std::size_t best = 0;
    for (auto &row : d) {
        for (auto x : row) {
            if (x >= inf) {
                return std::nullopt;
            }
            best = std::max(best, x);
        }
    }
    return best;
}

Graph relabel(const Graph &g, const std::vector<Vertex> &perm) {
    std::vector<Edge> es;
    for (const Edge &e : g.edges()) {
        es.emplace_back(perm[e.u], perm[e.v]);
    }
    return Graph::build(g.order(), es);
}

}  // namespace

TEST_CASE("build_graph") {
    SUBCASE("complete graph") {
        auto g = Graph::complete(4);
        CHECK(g.order() == 4);
        CHECK(g.size() == 6);
    }
    SUBCASE("cycle degrees") {
        std::vector<std::pair<Vertex, Vertex>> es{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
        auto g = Graph::build(5, es);
        CHECK(g.size() == 5);
        for (Vertex v = 0; v < 5; ++v) {
            CHECK(g.degree(v) == 2);
        }
        CHECK(g == Graph::cycle(5));
    }
    SUBCASE("duplicates merge") {
        std::vector<std::pair<Vertex, Vertex>> es{{0, 1}, {0, 1}, {1, 2}};
        auto g = Graph::build(3, es);
        CHECK(g.size() == 2);
        CHECK(g.adjacent(1, 0));
        CHECK_FALSE(g.adjacent(0, 2));
    }
    SUBCASE("rejections") {
        std::vector<std::pair<Vertex, Vertex>> loop{{1, 1}};
        CHECK_THROWS_AS(Graph::build(3, loop), GraphError);
        std::vector<std::pair<Vertex, Vertex>> range{{0, 3}};
        CHECK_THROWS_AS(Graph::build(3, range), GraphError);
    }
    SUBCASE("symmetry and degree sum") {
        auto g = sample_gnp(60, 0.2, {5, 0});
        std::size_t sum = 0;
        for (Vertex v = 0; v < g.order(); ++v) {
            sum += g.degree(v);
            for (Vertex w : g.neighbors(v)) {
                CHECK(g.adjacent(w, v));
                CHECK(w != v);
            }
        }
        CHECK(sum == 2 * g.size());
    }
}

TEST_CASE("neighborhood_of_set") {
    auto c5 = Graph::cycle(5);
    CHECK(neighborhood_of_set(c5, VertexSet(5, {0})) == VertexSet(5, {1, 4}));
    CHECK(neighborhood_of_set(c5, VertexSet(5, {0, 1})) == VertexSet(5, {2, 4}));
    CHECK(neighborhood_of_set(c5, VertexSet::full(5)).empty());

    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = sample_gnp(30, 0.15, {99, static_cast<std::uint64_t>(trial)});
        VertexSet a(30);
        for (Vertex v = 0; v < 30; ++v) {
            if (rng.uniform() < 0.2) {
                a.insert(v);
            }
        }
        auto nbhd = neighborhood_of_set(g, a);
        std::vector<std::uint8_t> scratch(30, 0);
        auto members = a.members();
        CHECK(neighborhood_size(g, members, scratch) == nbhd.size());
        for (Vertex w = 0; w < 30; ++w) {
            bool touches = std::any_of(members.begin(), members.end(), [&](Vertex v) { return g.adjacent(v, w); });
            CHECK(nbhd.contains(w) == (touches && !a.contains(w)));
        }
    }
}

TEST_CASE("diameter") {
    CHECK(diameter(Graph::complete(4)) == 1);
    CHECK(diameter(Graph::cycle(5)) == 2);
    CHECK(floyd_diameter(Graph::petersen()) == 2);
    CHECK(diameter(Graph::petersen()) == 2);
    for (std::size_t n = 2; n < 10; ++n) {
        CHECK(diameter(Graph::complete(n)) == 1);
    }
    std::vector<std::pair<Vertex, Vertex>> two_triangles{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
    CHECK_FALSE(diameter(Graph::build(6, two_triangles)).has_value());

    Rng rng(3);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto g = sample_gnp(25, 0.2, {11, seed});
        std::vector<Vertex> perm(25);
        std::iota(perm.begin(), perm.end(), Vertex{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(diameter(g) == floyd_diameter(g));
        CHECK(diameter(relabel(g, perm)) == diameter(g));
    }
}

TEST_CASE("induced_subgraph") {
    auto k3 = induced_subgraph(Graph::complete(4), VertexSet(4, {0, 2, 3}));
    CHECK(k3.graph == Graph::complete(3));
    CHECK(k3.to_parent == std::vector<Vertex>{0, 2, 3});
    CHECK_FALSE(k3.to_sub[1].has_value());
    CHECK(k3.to_sub[3] == 2u);

    auto p3 = induced_subgraph(Graph::cycle(5), VertexSet(5, {0, 1, 2}));
    CHECK(p3.graph == Graph::path(3));

    auto none = induced_subgraph(Graph::petersen(), VertexSet(10));
    CHECK(none.graph.order() == 0);
    CHECK(none.graph.size() == 0);

    auto g = sample_gnp(40, 0.3, {1, 2});
    CHECK(induced_subgraph(g, VertexSet::full(40)).graph == g);
}

TEST_CASE("edge list io") {
    auto g = sample_gnp(50, 0.1, {8, 1});
    std::stringstream buf;
    write_edge_list(buf, g);
    const std::string first = buf.str();
    auto back = read_edge_list(buf);
    CHECK(back == g);
    std::stringstream again;
    write_edge_list(again, back);
    CHECK(again.str() == first);

    std::istringstream bad_header("x y\n");
    CHECK_THROWS_WITH_AS(read_edge_list(bad_header), doctest::Contains("line 1"), GraphError);
    std::istringstream short_file("3 2\n0 1\n");
    CHECK_THROWS_AS(read_edge_list(short_file), GraphError);
    std::istringstream loop("3 1\n2 2\n");
    CHECK_THROWS_WITH_AS(read_edge_list(loop), doctest::Contains("line 2"), GraphError);
    std::istringstream range("3 1\n0 3\n");
    CHECK_THROWS_AS(read_edge_list(range), GraphError);
}

TEST_CASE("paths and cycles") {
    auto k4 = Graph::complete(4);
    CHECK(is_valid_path(k4, Path{0, 1, 2, 3}));
    CHECK_FALSE(is_valid_path(k4, Path{0, 1, 0}));
    CHECK(Path{0, 1}.length() == 1);
    CHECK(Path{3}.trivial());
    CHECK(is_hamilton_cycle(Graph::cycle(5), HamiltonCycle{{0, 1, 2, 3, 4}}));
    CHECK_FALSE(is_hamilton_cycle(Graph::cycle(5), HamiltonCycle{{0, 2, 1, 3, 4}}));
    CHECK(normalize_cycle(HamiltonCycle{{3, 2, 1, 0, 4}}) == HamiltonCycle{{0, 1, 2, 3, 4}});
}
