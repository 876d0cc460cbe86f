#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"

using namespace equicolor;

namespace {

std::vector<size_t> part_sizes(const ForestPartition& fp) {
    std::vector<size_t> s;
    for (const auto& p : fp.parts) s.push_back(p.size());
    std::sort(s.rbegin(), s.rend());
    return s;
}

// Brute force: do disjoint independent sets of sizes floor(n/s) and
// floor((n+1)/s) exist that together cover the top two vertices?
bool witnesses_exist_brute(const Graph& g, int s) {
    int n = g.n();
    auto [w0, w1] = top_two_degree(g);
    std::vector<unsigned> indep;
    for (unsigned m = 0; m < (1u << n); ++m) {
        bool ok = true;
        for (const auto& e : g.edges())
            if ((m >> e.u & 1u) && (m >> e.v & 1u)) { ok = false; break; }
        if (ok) indep.push_back(m);
    }
    unsigned need = (w0 >= 0 ? 1u << w0 : 0u) | (w1 >= 0 ? 1u << w1 : 0u);
    for (unsigned a : indep) {
        if (__builtin_popcount(a) != n / s) continue;
        for (unsigned b : indep)
            if (__builtin_popcount(b) == (n + 1) / s && !(a & b) && ((a | b) & need) == need) return true;
    }
    return false;
}

Graph minus_matching(const Graph& g, fixtures::Rng& rng) {
    auto es = g.edges();
    std::shuffle(es.begin(), es.end(), rng);
    std::vector<char> used(static_cast<size_t>(g.n()), 0);
    Graph h = g;
    for (const auto& e : es)
        if (!used[static_cast<size_t>(e.u)] && !used[static_cast<size_t>(e.v)]) {
            used[static_cast<size_t>(e.u)] = used[static_cast<size_t>(e.v)] = 1;
            h.remove_edge(e.u, e.v);
        }
    return h;
}

}  // namespace

TEST(FourForests, K4) {
    auto g = fx::complete(4);
    auto fp = forest_four_partition(g);
    EXPECT_EQ(part_sizes(fp), (std::vector<size_t>{1, 1, 1, 1}));
}

TEST(FourForests, Octahedron) {
    auto g = fx::octahedron();
    auto fp = forest_four_partition(g, ForestBackend::Exhaustive);
    EXPECT_EQ(part_sizes(fp), (std::vector<size_t>{2, 2, 1, 1}));
    EXPECT_TRUE(check_forest_partition(g, fp, true).empty());
}

TEST(FourForests, Triangulation24) {
    fixtures::Rng rng(24);
    auto g = fixtures::random_stacked_triangulation(24, rng);
    ASSERT_EQ(g.m(), 3u * 24 - 6);
    auto fp = forest_four_partition(g, ForestBackend::Exhaustive);
    EXPECT_TRUE(check_forest_partition(g, fp, true).empty());
}

TEST(FourForests, HeuristicLarge) {
    fixtures::Rng rng(5);
    for (int n : {100, 500, 1500}) {
        auto g = fixtures::random_stacked_triangulation(n, rng);
        auto fp = forest_four_partition(g, ForestBackend::Heuristic);
        EXPECT_TRUE(check_forest_partition(g, fp, true).empty()) << n;
    }
}

TEST(FourForests, RejectsTooManyEdges) {
    try {
        forest_four_partition(fx::complete(6));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
}

TEST(LowDeg, BoundedDegreeS10) {
    fixtures::Rng rng(10);
    for (int it = 0; it < 5; ++it) {
        int n = 200 + 100 * it;
        auto g = fixtures::random_bounded_planar(n, rng, n / 5);
        auto c = equitable_color_planar_lowdeg(g, 10);
        EXPECT_EQ(c.s, 40);
        EXPECT_TRUE(check_equitable(g, c).empty());
    }
}

TEST(LowDeg, Grid5x5) {
    auto g = fx::grid(5, 5);
    auto c = equitable_color_planar_lowdeg(g, 10);
    EXPECT_TRUE(check_equitable(g, c).empty());
}

TEST(LowDeg, Cycle8WithTwelveColours) {
    auto g = fx::cycle(8);
    auto c = equitable_color_planar_lowdeg(g, 3);
    EXPECT_EQ(c.s, 12);
    EXPECT_TRUE(check_equitable(g, c).empty());
    for (int x : c.class_sizes()) EXPECT_LE(x, 1);
}

TEST(LowDeg, HighDegreeViolates) {
    try {
        equitable_color_planar_lowdeg(fx::star(60), 10);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::HypothesisViolated);
    }
}

TEST(LowDeg, ExhaustiveBackendSmall) {
    fixtures::Rng rng(8);
    for (int it = 0; it < 10; ++it) {
        int n = 15 + it;
        auto g = fixtures::random_bounded_planar(n, rng, n / 5);
        auto c = equitable_color_planar_lowdeg(g, 10, ForestBackend::Exhaustive);
        EXPECT_TRUE(check_equitable(g, c).empty());
    }
}

TEST(Witness, GadgetInfeasible) {
    auto g = planar_gadget(40).graph;
    EXPECT_EQ(g.n(), 1642);
    EXPECT_FALSE(find_witness_sets(g, 40).has_value());
}

TEST(Witness, TwoIsolatedPlusC4) {
    auto g = fx::disjoint_union(Graph(2), fx::cycle(4));
    auto w = find_witness_sets(g, 3);
    ASSERT_TRUE(w);
    EXPECT_TRUE(check_witness_sets(g, 3, w->I0, w->I1).empty());
    EXPECT_TRUE(witnesses_exist_brute(g, 3));
}

TEST(Witness, EmptyGraphSingletons) {
    Graph g(40);
    auto w = find_witness_sets(g, 40);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->I0.size(), 1u);
    EXPECT_EQ(w->I1.size(), 1u);
    std::vector<int> both{w->I0[0], w->I1[0]};
    std::sort(both.begin(), both.end());
    auto [w0, w1] = top_two_degree(g);
    std::vector<int> top{w0, w1};
    std::sort(top.begin(), top.end());
    EXPECT_EQ(both, top);
}

TEST(Witness, AgreesWithBruteForce) {
    fixtures::Rng rng(41);
    int yes = 0, no = 0;
    for (int it = 0; it < 300; ++it) {
        int n = 5 + static_cast<int>(rng() % 7);
        Graph g = it % 3 == 0 ? fixtures::random_stacked_triangulation(n, rng)
                              : fixtures::random_hub_planar(n, rng, 1 + static_cast<int>(rng() % 2), 0.7);
        int s = 2 + static_cast<int>(rng() % 3);
        bool brute = witnesses_exist_brute(g, s);
        auto w = find_witness_sets(g, s);
        ASSERT_EQ(w.has_value(), brute) << "n=" << n << " s=" << s;
        if (w) {
            ASSERT_TRUE(check_witness_sets(g, s, w->I0, w->I1).empty());
        }
        (brute ? yes : no)++;
    }
    EXPECT_GT(yes, 0);
    EXPECT_GT(no, 0);
}

TEST(PlanarDriver, TriangulationMinusMatching) {
    fixtures::Rng rng(400);
    auto g = minus_matching(fixtures::random_stacked_triangulation(400, rng), rng);
    auto w = find_witness_sets(g, 40);
    ASSERT_TRUE(w);
    PlanarLoopState st;
    auto c = equitable_color_planar(g, 40, w->I0, w->I1, &st);
    EXPECT_TRUE(check_equitable(g, c).empty());
}

TEST(PlanarDriver, PeelSizesAndInvariant) {
    fixtures::Rng rng(77);
    for (int it = 0; it < 12; ++it) {
        int n = 200 + 70 * it;
        Graph g = fixtures::random_hub_planar(n, rng, 3 + it % 3, 1.0, it % 2 == 0);
        int s = 40 + 4 * (it % 3);
        auto w = find_witness_sets(g, s);
        if (!w) continue;
        PlanarLoopState st;
        auto c = equitable_color_planar(g, s, w->I0, w->I1, &st);
        ASSERT_TRUE(check_equitable(g, c).empty());
        std::vector<char> seen(static_cast<size_t>(n), 0);
        int peeled = 0;
        for (size_t j = 0; j < st.I.size(); ++j) {
            ASSERT_EQ(static_cast<int>(st.I[j].size()), (n + static_cast<int>(j)) / s);
            ASSERT_TRUE(is_independent(g, st.I[j]));
            for (int v : st.I[j]) {
                ASSERT_FALSE(seen[static_cast<size_t>(v)]);
                seen[static_cast<size_t>(v)] = 1;
            }
            peeled += static_cast<int>(st.I[j].size());
            ASSERT_EQ(st.n_j[j + 1], n - peeled);
        }
        for (int j = 4; j <= std::min(st.j, s - 12); ++j)
            if (j < static_cast<int>(st.I.size())) {
                ASSERT_LE(3 * st.max_degree[static_cast<size_t>(j)], 2 * st.n_j[static_cast<size_t>(j)]);
            }
        ASSERT_GE(st.escape_j, 0);
    }
    EXPECT_EQ(telemetry().invariant_violations, 0u);
}

// Nested rings keep several hubs above the escape threshold, so the loop
// runs past j = 4 and checks its degree invariant.
TEST(PlanarDriver, RingedHubsReachInvariant) {
    fixtures::Rng rng(606);
    int checked = 0;
    for (int it = 0; it < 6; ++it) {
        Graph g = fixtures::random_ringed_hubs(300 + 100 * it, rng, 6 + it % 3);
        auto w = find_witness_sets(g, 40);
        ASSERT_TRUE(w);
        PlanarLoopState st;
        auto c = equitable_color_planar(g, 40, w->I0, w->I1, &st);
        ASSERT_TRUE(check_equitable(g, c).empty());
        checked += st.invariant_checks;
    }
    EXPECT_GT(checked, 0);
}

TEST(PlanarDriver, InvalidWitnesses) {
    fixtures::Rng rng(3);
    Graph g = fixtures::random_hub_planar(300, rng, 3);
    auto w = find_witness_sets(g, 40);
    ASSERT_TRUE(w);
    auto bad = w->I0;
    bad.pop_back();
    try {
        equitable_color_planar(g, 40, bad, w->I1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::WitnessInvalid);
    }
    auto swapped = w->I1;
    std::swap(swapped[0], swapped.back());
    // Swapping order inside a set is harmless.
    EXPECT_NO_THROW(equitable_color_planar(g, 40, w->I0, swapped));
}

TEST(PlanarDriver, RejectsSmallS) {
    try {
        equitable_color_planar(fx::path(100), 39, {}, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
}

TEST(PlanarDriver, SmallGraphDistinctColours) {
    auto g = fx::complete(4);
    auto c = equitable_color_planar(g, 40, {}, {});
    EXPECT_TRUE(check_equitable(g, c).empty());
}
