#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "hamcover/cover.hpp"
#include "hamcover/random_gen.hpp"
#include "hamcover/verify.hpp"

using namespace hamcover;

namespace {

std::set<Edge> cycle_edges(const HamiltonCycle &c) {
    std::set<Edge> out;
    const auto &vs = c.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        out.insert(Edge(vs[i], vs[(i + 1) % vs.size()]));
    }
    return out;
}

bool covers(const std::vector<HamiltonCycle> &cycles, const Edge &e) {
    return std::any_of(cycles.begin(), cycles.end(), [&](const auto &c) { return cycle_edges(c).contains(e); });
}

Matching maximal_matching(const Graph &g) {
    std::vector<char> used(g.order(), 0);
    Matching m;
    for (const auto &e : g.edges()) {
        if (!used[e.u] && !used[e.v]) {
            used[e.u] = used[e.v] = 1;
            m.push_back(e);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("cover_matching_once") {
    const Matching m{{0, 1}, {2, 3}, {4, 5}};
    auto k6 = Graph::complete(6);
    auto r = cover_matching_once(k6, m, 0.5);
    REQUIRE(r.ok());
    CHECK(is_hamilton_cycle(k6, *r.cycle));
    CHECK(r.uncovered.empty());
    for (const auto &e : m) {
        CHECK(cycle_edges(*r.cycle).contains(e));
    }

    auto empty = cover_matching_once(Graph::complete(7), Matching{}, 0.5);
    REQUIRE(empty.ok());
    CHECK(empty.uncovered.empty());

    auto petersen = cover_matching_once(Graph::petersen(), Matching{{0, 1}}, 0.5);
    CHECK_FALSE(petersen.ok());
    CHECK_FALSE(petersen.failure.empty());
    CHECK(held_karp_hamiltonian(Graph::petersen()).decided);
    CHECK_FALSE(held_karp_hamiltonian(Graph::petersen()).hamiltonian);

    CHECK_THROWS_AS(cover_matching_once(k6, Matching{{0, 1}, {1, 2}}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(cover_matching_once(Graph::cycle(5), Matching{{0, 2}}, 0.5), std::invalid_argument);

    SUBCASE("protected case keeps every matching edge") {
        MatchingCoverOptions o;
        o.force_protect = true;
        auto g = sample_gnp(60, 0.3, {4, 4});
        auto mm = maximal_matching(g);
        mm.resize(6);
        auto p = cover_matching_once(g, mm, 0.5, o);
        REQUIRE(p.ok());
        CHECK(p.protected_case);
        CHECK(p.uncovered.empty());
    }
}

TEST_CASE("cover_matching") {
    const Matching pm{{0, 1}, {2, 3}, {4, 5}};
    auto one = cover_matching(Graph::complete(6), pm, 0.5);
    REQUIRE(one.ok());
    CHECK(one.cycles.size() == 1);
    CHECK(cover_matching(Graph::complete(6), Matching{}, 0.5).cycles.empty());

    CHECK(matching_chunk_size(128, 0.2) == 1);
    CHECK(matching_chunk_size(100000, 1.0) == 10);

    auto g = sample_gnp(128, 0.5, {8, 0});
    auto m = maximal_matching(g);
    auto r = cover_matching(g, m, 0.3);
    REQUIRE(r.ok());
    MESSAGE("G(128,0.5) maximal matching of " << m.size() << " edges covered by " << r.cycles.size() << " cycles");
    for (const auto &c : r.cycles) {
        CHECK(is_hamilton_cycle(g, c));
    }
    for (const auto &e : m) {
        CHECK(covers(r.cycles, e));
    }

    auto pet = cover_matching(Graph::petersen(), Matching{{0, 1}}, 0.5);
    CHECK_FALSE(pet.ok());
    CHECK(pet.uncovered == Matching{{0, 1}});
}

TEST_CASE("greedy_edge_coloring examples") {
    CHECK(greedy_edge_coloring(Graph::complete(3)).size() == 3);
    std::vector<std::pair<Vertex, Vertex>> pm{{0, 1}, {2, 3}, {4, 5}};
    CHECK(greedy_edge_coloring(Graph::build(6, pm)).size() == 1);
    auto k4 = greedy_edge_coloring(Graph::complete(4));
    CHECK(k4.size() <= 5);
    CHECK(greedy_edge_coloring(Graph::build(4, std::vector<std::pair<Vertex, Vertex>>{})).empty());
}

TEST_CASE("greedy_edge_coloring fuzz") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng(i, 9);
        auto h = sample_gnp(5 + rng.below(80), 0.02 + 0.5 * rng.uniform(), {i, 3});
        auto classes = greedy_edge_coloring(h);
        std::multiset<Edge> all;
        for (const auto &cls : classes) {
            CHECK(validate_matching(h, cls).ok);
            CHECK_FALSE(cls.empty());
            all.insert(cls.begin(), cls.end());
        }
        CHECK(classes.size() + 1 <= std::max<std::size_t>(2 * h.max_degree(), 1));
        const auto es = h.edges();
        CHECK(all == std::multiset<Edge>(es.begin(), es.end()));
    }
}

TEST_CASE("extract_packing") {
    auto k5 = extract_packing(Graph::complete(5), 2);
    REQUIRE(k5.cycles.size() == 2);
    CHECK(k5.residual.size() == 0);
    CHECK(k5.shortfall == 0);
    std::set<Edge> seen;
    for (const auto &c : k5.cycles) {
        for (const auto &e : cycle_edges(c)) {
            CHECK(seen.insert(e).second);
        }
    }

    auto c5 = extract_packing(Graph::cycle(5), 2);
    CHECK(c5.cycles.size() == 1);
    CHECK(c5.residual.size() == 0);
    CHECK(c5.shortfall == 1);
    CHECK_FALSE(c5.stop_reason.empty());

    auto none = extract_packing(Graph::petersen(), 0);
    CHECK(none.cycles.empty());
    CHECK(none.residual == Graph::petersen());

    auto g = sample_gnp(100, 0.3, {5, 5});
    auto pk = extract_packing(g, g.min_degree() / 2);
    std::set<Edge> used;
    for (const auto &c : pk.cycles) {
        CHECK(is_hamilton_cycle(g, c));
        for (const auto &e : cycle_edges(c)) {
            CHECK(used.insert(e).second);
        }
    }
    CHECK(pk.residual.size() + used.size() == g.size());
}

TEST_CASE("cover_graph examples") {
    auto k5 = cover_graph(Graph::complete(5), 0.5);
    REQUIRE(k5.ok());
    CHECK(k5.certificate->cover_size == 2);
    CHECK(k5.certificate->h == 2);

    auto c5 = cover_graph(Graph::cycle(5), 0.5);
    REQUIRE(c5.ok());
    CHECK(c5.certificate->cover_size == 1);

    auto pet = cover_graph(Graph::petersen(), 0.5);
    CHECK_FALSE(pet.ok());
    CHECK(pet.failed_phase == "covering");

    for (std::size_t n : {7u, 9u}) {
        auto kn = Graph::complete(n);
        auto r = cover_graph(kn, 0.5);
        REQUIRE(r.ok());
        CHECK(validate_cover(kn, r.certificate->cycles).ok);
        CHECK(r.certificate->cover_size <= n - 1);
        CHECK(2 * r.certificate->cover_size >= n - 1);
    }

    auto disconnected = cover_graph(Graph::build(6, std::vector<std::pair<Vertex, Vertex>>{
                                                        {0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}),
                                    0.5);
    CHECK(disconnected.failed_phase == "precondition");
    CHECK(cover_graph(Graph::path(5), 0.5).failed_phase == "precondition");
}

TEST_CASE("cover_graph certificates on random graphs") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto g = sample_gnp(96, 0.25, {seed, 0});
        auto r = cover_graph(g, 0.3);
        REQUIRE(r.ok());
        const auto &cert = *r.certificate;
        auto v = validate_cover(g, cert.cycles);
        CHECK(v.ok);
        CHECK(cert.coverage == v.coverage);
        CHECK(cert.cover_size == cert.cycles.size());
        CHECK(2 * cert.cover_size >= g.max_degree());
        std::set<Edge> packed;
        for (std::size_t i = 0; i < cert.h; ++i) {
            for (const auto &e : cycle_edges(cert.cycles[i])) {
                CHECK(packed.insert(e).second);
            }
        }
        CHECK(r.stats.h == cert.h);
        CHECK(r.stats.residual_edges == g.size() - packed.size());
    }
}

TEST_CASE("run_gnp_experiment") {
    const std::vector<std::uint64_t> seeds{0, 1, 2};
    ExperimentOptions serial;
    serial.jobs = 1;
    auto a = run_gnp_experiment(80, 0.3, seeds, 0.3, serial);
    ExperimentOptions parallel;
    parallel.jobs = 3;
    auto b = run_gnp_experiment(80, 0.3, seeds, 0.3, parallel);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a[i].seed == seeds[i]);
        CHECK(a[i].valid);
        CHECK(a[i].lower_bound_ok);
        CHECK(a[i].ratio == doctest::Approx(a[i].stats.cover_size / 12.0));
        CHECK(a[i].stats.cover_size == b[i].stats.cover_size);
        CHECK(a[i].stats.h == b[i].stats.h);
        REQUIRE(a[i].checks.has_value());
        CHECK(a[i].checks->small != Verdict::Violated);
    }

    auto sparse = run_gnp_experiment(16, 0.05, std::vector<std::uint64_t>{3}, 0.5);
    CHECK_FALSE(sparse[0].valid);
    CHECK_FALSE(sparse[0].failed_phase.empty());
    CHECK_FALSE(sparse[0].notes.empty());

    auto complete = run_gnp_experiment(128, 1.0, std::vector<std::uint64_t>{0}, 0.2);
    REQUIRE(complete[0].valid);
    MESSAGE("K128: h = " << complete[0].stats.h << ", cover size = " << complete[0].stats.cover_size);
    CHECK(complete[0].stats.cover_size >= 64);
    CHECK(complete[0].stats.h >= 55);
    CHECK(complete[0].stats.cover_size <= 70);
}
