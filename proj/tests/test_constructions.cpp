#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "fixtures.hpp"

using namespace equicolor;

namespace {

std::vector<int> sorted_profile(const std::vector<int>& colour, int k) {
    std::vector<int> sz(static_cast<size_t>(k), 0);
    for (int c : colour) ++sz[static_cast<size_t>(c - 1)];
    std::sort(sz.rbegin(), sz.rend());
    return sz;
}

// Class-size profiles of every proper k-colouring (colours up to renaming).
std::set<std::vector<int>> all_profiles(const Graph& g, int k) {
    std::set<std::vector<int>> out;
    std::vector<int> col(static_cast<size_t>(g.n()), 0);
    std::function<void(int, int)> rec = [&](int v, int used) {
        if (v == g.n()) {
            out.insert(sorted_profile(col, k));
            return;
        }
        for (int c = 1; c <= std::min(k, used + 1); ++c) {
            bool ok = true;
            for (int u : g.neighbors(v))
                if (u < v && col[static_cast<size_t>(u)] == c) ok = false;
            if (!ok) continue;
            col[static_cast<size_t>(v)] = c;
            rec(v + 1, std::max(used, c));
        }
        col[static_cast<size_t>(v)] = 0;
    };
    rec(0, 0);
    return out;
}

bool near_triangulation(const Graph& g) {
    for (const auto& f : inner_faces(g, *g.outer_order()))
        if (f.size() != 3) return false;
    return true;
}

}  // namespace

TEST(Stalactite, OrdersAndDegree) {
    const int want[] = {8, 28, 48};
    for (int i = 1; i <= 3; ++i) {
        auto con = stalactite_chain(i);
        const Graph& g = con.graph;
        EXPECT_EQ(g.n(), want[i - 1]);
        EXPECT_EQ(con.cert.claimed_order, g.n());
        EXPECT_EQ(g.max_degree(), 5);
        auto r = validate_embedding(g);
        EXPECT_TRUE(r.is_outerplanar);
        EXPECT_TRUE(near_triangulation(g)) << i;
        EXPECT_EQ(con.cert.no_equitable_s, 3);
    }
}

TEST(Stalactite, ThreeColourProfile) {
    auto g1 = stalactite_chain(1).graph;
    EXPECT_EQ(sorted_profile(three_color_capped(g1).color, 3), (std::vector<int>{4, 2, 2}));
    EXPECT_EQ(all_profiles(g1, 3), (std::set<std::vector<int>>{{4, 2, 2}}));
    auto con2 = stalactite_chain(2);
    auto p2 = sorted_profile(three_color_capped(con2.graph).color, 3);
    EXPECT_EQ(p2, (std::vector<int>{14, 7, 7}));
    EXPECT_EQ(p2, con2.cert.claimed_class_profile);
}

TEST(Stalactite, AlphaBound) {
    for (int i = 1; i <= 3; ++i) {
        auto g = stalactite_chain(i).graph;
        auto a = alpha_all(g);
        EXPECT_GE(*std::min_element(a.begin(), a.end()), g.n() / 3) << i;
    }
}

TEST(Stalactite, G1NoEquitableThreeColouring) {
    EXPECT_FALSE(exhaustive_equitable(stalactite_chain(1).graph, 3).has_value());
}

TEST(Stalactite, RejectsBadIndex) {
    EXPECT_THROW(stalactite_chain(0), Error);
}

TEST(PlanarGadget, S6) {
    auto con = planar_gadget(6);
    const Graph& g = con.graph;
    EXPECT_EQ(g.n(), 44);
    EXPECT_EQ(alpha_v_exact(g, 0).size, 7);
    EXPECT_EQ(alpha_v_exact(g, 1).size, 7);
    EXPECT_EQ(g.n() / 6, 7);
    for (int v = 2; v < g.n(); ++v) EXPECT_LE(g.degree(v), 4);
    EXPECT_EQ(g.max_degree(), con.cert.claimed_max_degree);
    EXPECT_LE(g.m(), static_cast<size_t>(3 * g.n() - 6));
}

TEST(PlanarGadget, S3Infeasible) {
    auto g = planar_gadget(3).graph;
    EXPECT_EQ(g.n(), 14);
    EXPECT_FALSE(exhaustive_equitable(g, 3).has_value());
    EXPECT_FALSE(find_witness_sets(g, 3).has_value());
}

TEST(Extender, SingleProfile) {
    auto con = extender_chain(1);
    EXPECT_EQ(con.graph.n(), 6);
    EXPECT_EQ(all_profiles(con.graph, 4), (std::set<std::vector<int>>{{2, 2, 1, 1}}));
    EXPECT_EQ(con.cert.claimed_class_profile, (std::vector<int>{2, 2, 1, 1}));
    EXPECT_EQ(con.graph.max_degree(), 5);
}

TEST(Extender, Chain2) {
    auto con = extender_chain(2);
    EXPECT_EQ(con.graph.n(), 18);
    EXPECT_EQ(con.graph.max_degree(), 7);
    EXPECT_EQ(con.cert.claimed_max_degree, 7);
    EXPECT_LE(con.graph.m(), static_cast<size_t>(3 * 18 - 6));
    EXPECT_EQ(all_profiles(con.graph, 4), (std::set<std::vector<int>>{con.cert.claimed_class_profile}));
}

TEST(Degenerate, Orders) {
    EXPECT_EQ(degenerate_gadget(1, 3).graph.n(), 20);
    EXPECT_EQ(degenerate_gadget(2, 4).graph.n(), 38);
    EXPECT_THROW(degenerate_gadget(3, 2), Error);
}

TEST(Degenerate, D1S3Infeasible) {
    auto con = degenerate_gadget(1, 3);
    EXPECT_EQ(con.graph.max_degree(), 15);
    EXPECT_FALSE(exhaustive_equitable(con.graph, 3).has_value());
}

TEST(Degenerate, D2S2Infeasible) {
    auto con = degenerate_gadget(2, 2);
    EXPECT_FALSE(exhaustive_equitable(con.graph, 2).has_value());
}
