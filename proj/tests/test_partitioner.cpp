#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"

using namespace equicolor;

namespace {

// Empty when the saturation meets its degree bounds: at most two vertices
// above the threshold, each at most one above max(threshold, own degree),
// adjacent to each other when both sit exactly on that bound.
std::string saturation_bounds(const Graph& g, const SaturationResult& r) {
    const Graph& h = r.supergraph;
    if (!validate_embedding(h).is_maximal) return "not maximal";
    for (const auto& e : g.edges())
        if (!h.has_edge(e.u, e.v)) return "lost an edge";
    int T = bad_threshold(g.n());
    if (r.exceptional.size() > 2) return "more than two exceptional vertices";
    int tight = 0;
    for (int v = 0; v < g.n(); ++v) {
        bool exc = std::any_of(r.exceptional.begin(), r.exceptional.end(), [&](auto p) { return p.first == v; });
        int bound = std::max(T + 1, g.degree(v) + 1);
        if (!exc && h.degree(v) > std::max(T, g.degree(v))) return "vertex " + std::to_string(v) + " over threshold";
        if (exc && h.degree(v) > bound) return "exceptional vertex " + std::to_string(v) + " over bound";
        if (exc && h.degree(v) == bound) ++tight;
    }
    if (tight == 2 && !h.has_edge(r.exceptional[0].first, r.exceptional[1].first)) return "tight pair not adjacent";
    return {};
}

int within_degree_max(const Graph& g, const ForestPartition& fp) {
    int d = 0;
    for (int v = 0; v < g.n(); ++v) d = std::max(d, degree_within(g, fp.part_of, v));
    return d;
}

}  // namespace

TEST(Saturation, TriangleUnchanged) {
    auto g = fx::with_order(fx::cycle(3));
    auto r = saturate_with_degree_control(g);
    EXPECT_TRUE(r.added_edges.empty());
    EXPECT_TRUE(r.phase_log.empty());
    EXPECT_EQ(r.supergraph.edges(), g.edges());
}

TEST(Saturation, PathP4) {
    auto g = fx::with_order(fx::path(4));
    auto r = saturate_with_degree_control(g);
    EXPECT_EQ(r.supergraph.m(), 5u);
    EXPECT_LE(r.supergraph.max_degree(), 5);
    EXPECT_TRUE(saturation_bounds(g, r).empty());
}

TEST(Saturation, StalactiteG1) {
    auto g = stalactite_chain(1).graph;
    auto r = saturate_with_degree_control(g);
    EXPECT_EQ(r.supergraph.m(), 13u);
    EXPECT_LE(r.supergraph.max_degree(), 7);
    EXPECT_TRUE(saturation_bounds(g, r).empty());
}

TEST(Saturation, RejectsNonOuterplanar) {
    EXPECT_THROW(saturate_with_degree_control(fx::complete(4)), Error);
}

TEST(FindReducible, Fan4KindA) {
    auto h = fx::polygon(4, {{0, 2}});
    auto c = find_reducible(h);
    EXPECT_EQ(c.kind, ReducibleConfig::Kind::A);
    EXPECT_TRUE(c.x2 == 0 || c.x2 == 2);
    EXPECT_TRUE(c.x1 == 1 || c.x1 == 3);
    EXPECT_TRUE(config_valid(h, c));
}

TEST(FindReducible, HexagonKindB) {
    auto h = fx::polygon(6, {{0, 2}, {2, 4}, {4, 0}});
    auto c = find_reducible(h);
    EXPECT_EQ(c.kind, ReducibleConfig::Kind::B);
    EXPECT_EQ(h.degree(c.v), 4);
    EXPECT_EQ(h.degree(c.x1), 2);
    EXPECT_EQ(h.degree(c.x2), 2);
    EXPECT_TRUE(config_valid(h, c));
}

TEST(FindReducible, PentagonAvoidsEdge) {
    auto h = fx::polygon(5, {{0, 2}, {0, 3}});
    auto c = find_reducible(h, make_edge(0, 2));
    EXPECT_EQ(c.kind, ReducibleConfig::Kind::A);
    EXPECT_EQ(c.x2, 3);
    EXPECT_EQ(c.x1, 4);
}

TEST(HalfDeg, Triangle) {
    auto h = fx::with_order(fx::cycle(3));
    auto fp = forest_equipartition_halfdeg(h, make_edge(0, 1));
    std::vector<size_t> s{fp.parts[0].size(), fp.parts[1].size()};
    std::sort(s.begin(), s.end());
    EXPECT_EQ(s, (std::vector<size_t>{1, 2}));
    EXPECT_LE(within_degree_max(h, fp), 1);
}

TEST(HalfDeg, SquareWithChord) {
    auto h = fx::polygon(4, {{0, 2}});
    auto fp = forest_equipartition_halfdeg(h, make_edge(0, 2));
    EXPECT_EQ(fp.parts[0].size(), 2u);
    EXPECT_EQ(fp.parts[1].size(), 2u);
    EXPECT_LE(degree_within(h, fp.part_of, 0), 1);
    EXPECT_LE(degree_within(h, fp.part_of, 2), 1);
    EXPECT_LE(within_degree_max(h, fp), 1);
}

TEST(HalfDeg, Hexagon) {
    auto h = fx::polygon(6, {{0, 2}, {2, 4}, {4, 0}});
    auto fp = forest_equipartition_halfdeg(h, make_edge(0, 4));
    EXPECT_EQ(fp.parts[0].size(), 3u);
    EXPECT_EQ(fp.parts[1].size(), 3u);
    EXPECT_TRUE(check_forest_partition(h, fp, true).empty());
}

TEST(HalfDeg, RejectsNonMaximal) {
    EXPECT_THROW(forest_equipartition_halfdeg(fx::with_order(fx::cycle(5)), make_edge(0, 1)), Error);
}

TEST(PartitionLemma, Triangle) {
    auto g = fx::cycle(3);
    auto fp = partition_lemma(g);
    EXPECT_TRUE(check_forest_partition(g, fp, true).empty());
    for (int v = 0; v < 3; ++v) EXPECT_EQ(fp.degree_caps[static_cast<size_t>(v)], 2);
}

TEST(PartitionLemma, P12) {
    auto g = fx::path(12);
    auto fp = partition_lemma(g);
    EXPECT_EQ(fp.parts[0].size(), 6u);
    EXPECT_EQ(fp.parts[1].size(), 6u);
    EXPECT_TRUE(check_forest_partition(g, fp, true).empty());
    EXPECT_LE(within_degree_max(g, fp), 3);
}

TEST(PartitionLemma, Random600) {
    fixtures::Rng rng(600);
    auto g = fixtures::random_maximal_outerplanar(600, rng);
    auto fp = partition_lemma(g);
    EXPECT_EQ(fp.parts[0].size(), 300u);
    for (int v = 0; v < 600; ++v)
        EXPECT_LE(degree_within(g, fp.part_of, v), std::max(101, g.degree(v) / 2));
    EXPECT_TRUE(check_forest_partition(g, fp, true).empty());
}

// With e given, the configuration avoids both ends of e once |H| >= 5; every
// edge of every triangulation up to 10 vertices.
TEST(PartitionerProperty, ReducibleAvoidsEdge) {
    for (int n = 5; n <= 10; ++n)
        enumerate_maximal_outerplanar(n, [&](const Graph& h) {
            for (const auto& e : h.edges()) {
                auto c = find_reducible(h, e);
                ASSERT_TRUE(config_valid(h, c));
                ASSERT_FALSE(c.touches(e.u) || c.touches(e.v)) << "n=" << n;
                if (c.kind == ReducibleConfig::Kind::A) {
                    ASSERT_EQ(h.degree(c.x1), 2);
                    ASSERT_EQ(h.degree(c.x2), 3);
                } else {
                    ASSERT_EQ(h.degree(c.v), 4);
                    ASSERT_EQ(h.degree(c.x1), 2);
                    ASSERT_EQ(h.degree(c.x2), 2);
                }
            }
        });
}

TEST(PartitionerProperty, HalfDegOnEnumerated) {
    for (int n = 3; n <= 9; ++n)
        enumerate_maximal_outerplanar(n, [&](const Graph& h) {
            for (const auto& e : h.edges()) {
                auto fp = forest_equipartition_halfdeg(h, e);
                ASSERT_TRUE(check_forest_partition(h, fp, true).empty());
            }
        });
}

TEST(PartitionerProperty, SaturationAndCapsRandom) {
    fixtures::Rng rng(77);
    for (int it = 0; it < 150; ++it) {
        int n = 10 + static_cast<int>(rng() % 300);
        double keep = 0.3 + 0.7 * static_cast<double>(rng() % 100) / 100.0;
        Graph g = fixtures::random_outerplanar(n, rng, keep, it % 3 ? 0.0 : 0.6);
        auto r = saturate_with_degree_control(g);
        ASSERT_TRUE(saturation_bounds(g, r).empty()) << saturation_bounds(g, r);
        auto fp = partition_lemma(g);
        ASSERT_TRUE(check_forest_partition(g, fp, true).empty());
    }
}

// Low maximum degree gives uniform caps.
TEST(PartitionerProperty, LowDegreeGivesUniformCap) {
    fixtures::Rng rng(99);
    int checked = 0;
    for (int it = 0; it < 400 && checked < 100; ++it) {
        int n = 12 + static_cast<int>(rng() % 200);
        Graph g = fixtures::random_outerplanar(n, rng, 0.8);
        if (g.max_degree() > bad_threshold(n)) continue;
        ++checked;
        auto fp = partition_lemma(g);
        ASSERT_LE(within_degree_max(g, fp), ceil_div(n, 6) + 1);
    }
    EXPECT_GE(checked, 50);
}
