#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"

using namespace equicolor;

namespace {

std::vector<int> sorted_sizes(const Coloring& c) {
    auto s = c.class_sizes();
    std::sort(s.rbegin(), s.rend());
    return s;
}

bool hypothesis_holds(const Graph& f, int s) {
    auto a = forest_alpha_all(f);
    return std::all_of(a.begin(), a.end(), [&](int x) { return x >= f.n() / s; });
}

Graph spider_12() {
    Graph g(12);
    for (int i = 1; i <= 9; ++i) g.add_edge(0, i);
    g.add_edge(1, 10);
    g.add_edge(2, 11);
    return g;
}

}  // namespace

TEST(LinkForest, TwoEdgesBecomeP4) {
    Graph f(4);
    f.add_edge(0, 1);
    f.add_edge(2, 3);
    auto r = link_forest(f);
    EXPECT_EQ(r.added.size(), 1u);
    EXPECT_TRUE(is_forest(r.tree));
    EXPECT_EQ(components(r.tree).size(), 1u);
    EXPECT_EQ(r.tree.max_degree(), 2);
}

TEST(LinkForest, TreeUnchanged) {
    auto t = fx::path(5);
    auto r = link_forest(t);
    EXPECT_TRUE(r.added.empty());
    EXPECT_EQ(r.tree.edges(), t.edges());
}

TEST(LinkForest, IsolatedVertexJoinsCentreOfP3) {
    Graph f(4);
    f.add_edge(1, 2);
    f.add_edge(2, 3);
    auto r = link_forest(f);
    ASSERT_EQ(r.added.size(), 1u);
    EXPECT_EQ(r.added[0], make_edge(0, 2));
}

TEST(ForestAlpha, MatchesNaive) {
    fixtures::Rng rng(5);
    for (int it = 0; it < 200; ++it) {
        int n = 1 + static_cast<int>(rng() % 14);
        Graph f = fixtures::random_forest(n, rng, 0.3, static_cast<int>(rng() % 2));
        auto a = forest_alpha_all(f);
        for (int v = 0; v < n; ++v) ASSERT_EQ(a[static_cast<size_t>(v)], fx::naive_alpha_v(f, v));
    }
}

TEST(EquitableForest, P6) {
    auto c = equitable_color_forest(fx::path(6), 3);
    EXPECT_EQ(sorted_sizes(c), (std::vector<int>{2, 2, 2}));
}

TEST(EquitableForest, StarK14) {
    auto g = fx::star(4);
    auto c = equitable_color_forest(g, 3);
    EXPECT_TRUE(check_equitable(g, c).empty());
    EXPECT_EQ(sorted_sizes(c), (std::vector<int>{2, 2, 1}));
    auto cls = c.classes()[static_cast<size_t>(c.color[0] - 1)];
    EXPECT_EQ(cls, std::vector<int>{0});
}

TEST(EquitableForest, SpiderViolatesHypothesis) {
    auto g = spider_12();
    try {
        equitable_color_forest(g, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::HypothesisViolated);
        EXPECT_EQ(e.vertex(), 0);
        EXPECT_EQ(e.value(), 3);
    }
    EXPECT_FALSE(exhaustive_equitable(g, 3).has_value());
}

TEST(EquitableForest, RejectsSmallS) {
    EXPECT_THROW(equitable_color_forest(fx::path(4), 2), Error);
}

TEST(TreeEnumeration, Counts) {
    // Unlabelled trees: 1, 1, 1, 2, 3, 6, 11, 23, 47, 106.
    std::vector<size_t> want{1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
    for (int n = 1; n <= 10; ++n) EXPECT_EQ(fx::all_trees(n).size(), want[static_cast<size_t>(n - 1)]) << n;
}

// The three-way equivalence on every tree up to 12 vertices, s = 3..6.
TEST(ForestProperty, TreeIff) {
    for (int n = 1; n <= 12; ++n)
        for (const auto& t : fx::all_trees(n))
            for (int s = 3; s <= 6; ++s) {
                bool hyp = hypothesis_holds(t, s);
                bool oracle = exhaustive_equitable(t, s).has_value();
                bool ok = true;
                try {
                    auto c = equitable_color_forest(t, s);
                    ASSERT_TRUE(check_equitable(t, c).empty());
                } catch (const Error& e) {
                    ASSERT_EQ(e.kind(), ErrorKind::HypothesisViolated);
                    ok = false;
                }
                ASSERT_EQ(ok, hyp) << "n=" << n << " s=" << s;
                ASSERT_EQ(hyp, oracle) << "n=" << n << " s=" << s;
            }
}

TEST(ForestEnumeration, Counts) {
    // Unlabelled forests: 1, 2, 3, 6, 10, 20, 37, 76, 153, 329.
    std::vector<size_t> want{1, 2, 3, 6, 10, 20, 37, 76, 153, 329};
    for (int n = 1; n <= 10; ++n) EXPECT_EQ(fx::all_forests(n).size(), want[static_cast<size_t>(n - 1)]) << n;
}

// Every forest up to 12 vertices: linking never breaks the hypothesis.
TEST(ForestProperty, LinkingKeepsHypothesis) {
    for (int n = 2; n <= 12; ++n)
        for (const auto& f : fx::all_forests(n)) {
            auto r = link_forest(f);
            ASSERT_TRUE(is_forest(r.tree));
            ASSERT_EQ(components(r.tree).size(), 1u);
            ASSERT_EQ(r.tree.m(), static_cast<size_t>(n - 1));
            for (int s = 3; s <= 6; ++s)
                if (hypothesis_holds(f, s)) {
                    ASSERT_TRUE(hypothesis_holds(r.tree, s)) << format_graph(f) << "s=" << s;
                }
        }
}

TEST(ForestProperty, LinkingRandom) {
    fixtures::Rng rng(17);
    for (int it = 0; it < 300; ++it) {
        int n = 2 + static_cast<int>(rng() % 60);
        Graph f = fixtures::random_forest(n, rng, 0.4);
        auto r = link_forest(f);
        ASSERT_TRUE(is_forest(r.tree));
        ASSERT_EQ(components(r.tree).size(), 1u);
        for (int s = 3; s <= 6; ++s)
            if (hypothesis_holds(f, s)) {
                ASSERT_TRUE(hypothesis_holds(r.tree, s)) << "s=" << s;
            }
    }
}

// A smaller-class join can cost the hub its last spare vertex: star on 7
// with leaves 0..5, pendant 8 on 5, and an isolated 6.
TEST(LinkForest, AvoidsTightHub) {
    Graph f(9);
    for (int v : {0, 1, 2, 3, 4, 5}) f.add_edge(7, v);
    f.add_edge(5, 8);
    ASSERT_TRUE(hypothesis_holds(f, 3));
    auto r = link_forest(f);
    EXPECT_TRUE(hypothesis_holds(r.tree, 3));
    EXPECT_EQ(r.added, std::vector<Edge>{make_edge(5, 6)});
}

TEST(ForestProperty, RandomLargeForests) {
    fixtures::Rng rng(23);
    for (int it = 0; it < 100; ++it) {
        int n = 50 + static_cast<int>(rng() % 400);
        Graph f = fixtures::random_forest(n, rng, 0.05, static_cast<int>(rng() % 3));
        for (int s : {3, 5, 8}) {
            if (!hypothesis_holds(f, s)) continue;
            auto c = equitable_color_forest(f, s);
            ASSERT_TRUE(check_equitable(f, c).empty());
        }
    }
}
