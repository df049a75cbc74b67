#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hamcover/expander_check.hpp"
#include "hamcover/verify.hpp"
#include "oracles.hpp"

using namespace hamcover;

TEST_CASE("small_expansion_witness_search") {
    auto c5 = Graph::cycle(5);
    auto single = small_expansion_witness_search(c5, 2, 1, 50, {1, 0});
    CHECK(single.verdict == Verdict::Holds);

    auto pairs = small_expansion_witness_search(c5, 2, 2, 50, {1, 0});
    CHECK(pairs.verdict == Verdict::Violated);
    CHECK(pairs.witness == std::vector<Vertex>{0, 1});
    CHECK(witness_rechecks(c5, pairs));

    auto k6 = small_expansion_witness_search(Graph::complete(6), 3, 1, 50, {1, 0});
    CHECK(k6.verdict != Verdict::Violated);

    SUBCASE("low degree vertex") {
        auto r = small_expansion_witness_search(Graph::path(4), 2, 3, 10, {1, 0});
        CHECK(r.verdict == Verdict::Violated);
        CHECK(r.witness == std::vector<Vertex>{0});
    }
    SUBCASE("random graphs give inconclusive rather than holds") {
        auto g = sample_gnp(80, 0.3, {2, 2});
        auto r = small_expansion_witness_search(g, 5, 6, 200, {3, 3});
        CHECK(r.verdict != Verdict::Holds);
    }
}

TEST_CASE("large_expansion_witness_search") {
    auto k6 = large_expansion_witness_search(Graph::complete(6), 2, 50, {1, 0});
    CHECK(k6.verdict == Verdict::Holds);

    auto tri = testing::two_triangles();
    auto r = large_expansion_witness_search(tri, 3, 50, {1, 0});
    REQUIRE(r.verdict == Verdict::Violated);
    CHECK(witness_rechecks(tri, r));
    const bool first_low = r.witness == std::vector<Vertex>{0, 1, 2};
    CHECK((first_low ? r.witness_b == std::vector<Vertex>{3, 4, 5} : r.witness == std::vector<Vertex>{3, 4, 5}));

    auto c5 = large_expansion_witness_search(Graph::cycle(5), 3, 50, {1, 0});
    CHECK(c5.verdict == Verdict::Holds);
}

TEST_CASE("sampled witnesses always re-check") {
    for (std::uint64_t i = 0; i < 300; ++i) {
        auto g = sample_gnp(30, 0.1 + 0.002 * static_cast<double>(i), {6, i});
        auto s = small_expansion_witness_search(g, 2.5, 5, 40, {i, 1});
        if (s.verdict == Verdict::Violated) {
            CHECK(witness_rechecks(g, s));
        }
        auto l = large_expansion_witness_search(g, 6, 40, {i, 2});
        if (l.verdict == Verdict::Violated) {
            CHECK(witness_rechecks(g, l));
        }
    }
}

TEST_CASE("sampled search against the exhaustive oracle") {
    int violated = 0;
    int detected = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const std::size_t n = 8 + i % 7;
        auto g = sample_gnp(n, 0.25 + 0.05 * static_cast<double>(i % 9), {10, i});
        const double s = 1.0 + 0.25 * static_cast<double>(i % 5);
        const double gb = 2.0 + static_cast<double>(i % 3);
        auto exact = exhaustive_expansion_check(g, s, gb, 2.0);
        auto sampled = small_expansion_witness_search(g, s, gb, std::size_t{1} << n, {i, 0});
        if (exact.small_holds) {
            CHECK(sampled.verdict != Verdict::Violated);
        } else {
            ++violated;
            detected += sampled.verdict == Verdict::Violated ? 1 : 0;
            CHECK(sampled.verdict != Verdict::Holds);
        }
        auto large = large_expansion_witness_search(g, 2.0, std::size_t{1} << n, {i, 5});
        if (exact.large_holds) {
            CHECK(large.verdict != Verdict::Violated);
        } else {
            CHECK(large.verdict != Verdict::Holds);
        }
    }
    REQUIRE(violated > 20);
    CHECK(static_cast<double>(detected) >= 0.95 * violated);
}

TEST_CASE("diameter_bound_check") {
    auto k8 = diameter_bound_check(Graph::complete(8), 2);
    CHECK(k8.diameter == 1u);
    CHECK(k8.bound == doctest::Approx(9.0));
    CHECK(k8.ok);

    auto c5 = diameter_bound_check(Graph::cycle(5), 2);
    CHECK(c5.diameter == 2u);
    CHECK(c5.bound == doctest::Approx(2 * std::log(5.0) / std::log(2.0) + 3));
    CHECK(c5.bound == doctest::Approx(7.64).epsilon(1e-3));
    CHECK(c5.ok);

    auto tri = diameter_bound_check(testing::two_triangles(), 3);
    CHECK_FALSE(tri.ok);
    CHECK_FALSE(tri.diameter.has_value());
}

TEST_CASE("peel_non_expanding") {
    auto k8 = peel_non_expanding(Graph::complete(8), VertexSet(8), 4, 2);
    CHECK(k8.removed.empty());
    CHECK(k8.kept == VertexSet::full(8));
    CHECK(k8.within_bound);

    std::vector<std::pair<Vertex, Vertex>> es{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {6, 7}, {7, 8}, {8, 6}};
    auto star = Graph::build(9, es);
    auto r = peel_non_expanding(star, VertexSet(9, {0}), 4, 2);
    CHECK(r.removed == VertexSet(9, {1, 2, 3, 4, 5}));
    CHECK(r.kept == VertexSet(9, {6, 7, 8}));
    CHECK_FALSE(r.within_bound);

    auto g = sample_gnp(64, 0.5, {12, 0});
    Rng rng(4);
    VertexSet d(64);
    while (d.size() < 5) {
        d.insert(static_cast<Vertex>(rng.below(64)));
    }
    auto gnp = peel_non_expanding(g, d, 4, 10);
    CHECK(gnp.removed.empty());
    CHECK(gnp.kept.size() == 59);

    SUBCASE("every kept vertex has s/2 kept neighbors") {
        for (std::uint64_t i = 0; i < 100; ++i) {
            auto h = sample_gnp(50, 0.08, {13, i});
            VertexSet dd(50);
            for (Vertex v = 0; v < 50; v += 7) {
                dd.insert(v);
            }
            auto pr = peel_non_expanding(h, dd, 5, 4);
            for (Vertex v : pr.kept.members()) {
                std::size_t inside = 0;
                for (Vertex w : h.neighbors(v)) {
                    inside += pr.kept.contains(w) ? 1 : 0;
                }
                CHECK(static_cast<double>(inside) >= 2.5);
                CHECK_FALSE(dd.contains(v));
            }
        }
    }
}
