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

}  // namespace

TEST(AlphaV, Cycle5) {
    auto g = fx::cycle(5);
    for (int v = 0; v < 5; ++v) {
        auto w = alpha_v_exact(g, v);
        EXPECT_EQ(w.size, 2);
        EXPECT_TRUE(is_independent(g, w.witness));
        EXPECT_NE(std::find(w.witness.begin(), w.witness.end(), v), w.witness.end());
    }
}

TEST(AlphaV, StalactiteY1) {
    auto g = stalactite_chain(1).graph;
    auto w = alpha_v_exact(g, 1);
    EXPECT_GE(w.size, 3);
    EXPECT_LE(8 / 3, w.size);
}

TEST(AlphaV, StarCentre) {
    EXPECT_EQ(alpha_v_exact(fx::star(4), 0).size, 1);
    EXPECT_EQ(alpha_v_exact(fx::star(4), 1).size, 4);
}

TEST(AlphaV, NonOuterplanarUsesBranchAndBound) {
    auto g = fx::icosahedron();
    for (int v = 0; v < 12; ++v) EXPECT_EQ(alpha_v_exact(g, v).size, fx::naive_alpha_v(g, v));
}

TEST(ExhaustiveEquitable, P6) {
    auto c = exhaustive_equitable(fx::path(6), 3);
    ASSERT_TRUE(c);
    EXPECT_EQ(sorted_sizes(*c), (std::vector<int>{2, 2, 2}));
    EXPECT_TRUE(check_equitable(fx::path(6), *c).empty());
}

TEST(ExhaustiveEquitable, StalactiteS3Infeasible) {
    EXPECT_FALSE(exhaustive_equitable(stalactite_chain(1).graph, 3).has_value());
}

TEST(ExhaustiveEquitable, TriangleS2Infeasible) {
    EXPECT_FALSE(exhaustive_equitable(fx::cycle(3), 2).has_value());
}

TEST(ExhaustiveEquitable, BudgetGuard) {
    try {
        exhaustive_equitable(fx::path(30), 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
    }
    EXPECT_TRUE(exhaustive_equitable(fx::path(30), 3, SearchBudget::with_n(30)).has_value());
}

TEST(ExhaustiveForest, Triangle) {
    auto fp = exhaustive_forest_partition(fx::cycle(3), 2, true);
    ASSERT_TRUE(fp);
    std::vector<size_t> s{fp->parts[0].size(), fp->parts[1].size()};
    std::sort(s.begin(), s.end());
    EXPECT_EQ(s, (std::vector<size_t>{1, 2}));
}

TEST(ExhaustiveForest, K4) {
    auto g = fx::complete(4);
    auto fp = exhaustive_forest_partition(g, 2, true);
    ASSERT_TRUE(fp);
    EXPECT_TRUE(check_forest_partition(g, *fp, true).empty());
    for (const auto& p : fp->parts) EXPECT_EQ(p.size(), 2u);
    EXPECT_FALSE(exhaustive_forest_partition(g, 1, true).has_value());
}

TEST(ExhaustiveForest, Icosahedron) {
    auto g = fx::icosahedron();
    auto fp = exhaustive_forest_partition(g, 4, true);
    ASSERT_TRUE(fp);
    EXPECT_TRUE(check_forest_partition(g, *fp, true).empty());
    for (const auto& p : fp->parts) EXPECT_EQ(p.size(), 3u);
}

TEST(Enumerate, SmallCounts) {
    EXPECT_EQ(enumerate_maximal_outerplanar(4).size(), 2u);
    EXPECT_EQ(enumerate_maximal_outerplanar(5).size(), 5u);
    EXPECT_EQ(enumerate_maximal_outerplanar(6).size(), 14u);
}

TEST(Enumerate, MatchesCatalan) {
    for (int n = 3; n <= 12; ++n) {
        std::uint64_t k = enumerate_maximal_outerplanar(n, [&](const Graph& g) {
            ASSERT_TRUE(validate_embedding(g).is_maximal);
        });
        EXPECT_EQ(k, catalan(n - 2)) << "n=" << n;
    }
    EXPECT_EQ(catalan(9), 4862u);
}

TEST(Enumerate, DihedralClasses) {
    // Triangulations of the hexagon up to symmetry: fan, zigzag, triangle.
    EXPECT_EQ(enumerate_maximal_outerplanar(6, true).size(), 3u);
}

TEST(OracleProperty, AlphaMatchesNaive) {
    fixtures::Rng rng(3);
    for (int n = 3; n <= 12; ++n) {
        enumerate_maximal_outerplanar(n, [&](const Graph& g) {
            if (rng() % 8) return;  // a sample is enough beyond the exhaustive suite in acceptance
            auto a = alpha_all(g);
            for (int v = 0; v < n; ++v) ASSERT_EQ(a[static_cast<size_t>(v)], fx::naive_alpha_v(g, v));
        });
        for (int it = 0; it < 20; ++it) {
            Graph g = fixtures::random_outerplanar(n, rng, 0.5);
            for (int v = 0; v < n; ++v) ASSERT_EQ(alpha_v_exact(g, v).size, fx::naive_alpha_v(g, v));
        }
    }
}

// A returned colouring puts every vertex in a class of size at least floor(n/s),
// so alpha_v >= floor(n/s) everywhere.
TEST(OracleProperty, NecessityOfHypothesis) {
    for (int n = 5; n <= 9; ++n) {
        enumerate_maximal_outerplanar(n, [&](const Graph& g) {
            auto a = alpha_all(g);
            for (int s = 3; s <= 4; ++s) {
                auto c = exhaustive_equitable(g, s);
                if (!c) continue;
                ASSERT_TRUE(check_equitable(g, *c).empty());
                for (int x : a) ASSERT_GE(x, n / s);
            }
        });
    }
}
