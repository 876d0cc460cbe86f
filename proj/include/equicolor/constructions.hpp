#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"

namespace equicolor {

// What a generator claims about its output. An empty profile means no claim;
// no_equitable_s > 0 claims there is no equitable colouring with that many
// colours.
struct ConstructionCertificate {
    std::string family;
    std::vector<int> params;
    int claimed_order = 0;
    int claimed_max_degree = 0;
    std::vector<int> claimed_class_profile;
    int no_equitable_s = 0;
};

struct Construction {
    Graph graph;
    ConstructionCertificate cert;
};

// Chain of 2i-1 stalactites laid out left to right. Within a stalactite the
// ids run x1 y1 x2 y2 x3 y3 x4 apex; each junction adds v then w, with v on
// x4 of the left piece and x1 of the right one, and w on x4, y3 of the left
// piece and x1, y1 of the right one.
inline Construction stalactite_chain(int i) {
    if (i < 1) fail(ErrorKind::InvalidArgument, "stalactite chain index must be at least 1");
    int pieces = 2 * i - 1, n = 8 + 20 * (i - 1);
    Graph g(n);
    struct Piece { int x[4], y[3], apex; };
    std::vector<Piece> ps;
    std::vector<std::pair<int, int>> junctions;  // (v, w)
    int next = 0;
    for (int p = 0; p < pieces; ++p) {
        if (p > 0) {
            junctions.emplace_back(next, next + 1);
            next += 2;
        }
        Piece s{};
        for (int k = 0; k < 4; ++k) {
            s.x[k] = next++;
            if (k < 3) s.y[k] = next++;
        }
        s.apex = next++;
        for (int k = 0; k < 4; ++k) g.add_edge(s.apex, s.x[k]);
        for (int k = 0; k < 3; ++k) {
            g.add_edge(s.x[k], s.x[k + 1]);
            g.add_edge(s.y[k], s.x[k]);
            g.add_edge(s.y[k], s.x[k + 1]);
        }
        ps.push_back(s);
    }
    for (int p = 1; p < pieces; ++p) {
        const Piece& L = ps[static_cast<size_t>(p - 1)];
        const Piece& R = ps[static_cast<size_t>(p)];
        auto [v, w] = junctions[static_cast<size_t>(p - 1)];
        g.add_edge(v, w);
        g.add_edge(v, L.x[3]);
        g.add_edge(v, R.x[0]);
        for (int t : {L.x[3], L.y[2], R.x[0], R.y[0]}) g.add_edge(w, t);
    }
    // Top path left to right, then the bottom path back.
    std::vector<int> order;
    for (int p = 0; p < pieces; ++p) {
        const Piece& s = ps[static_cast<size_t>(p)];
        order.insert(order.end(), {s.x[0], s.apex, s.x[3]});
        if (p + 1 < pieces) order.push_back(junctions[static_cast<size_t>(p)].first);
    }
    for (int p = pieces - 1; p >= 0; --p) {
        const Piece& s = ps[static_cast<size_t>(p)];
        order.insert(order.end(), {s.y[2], s.x[2], s.y[1], s.x[1], s.y[0]});
        if (p > 0) order.push_back(junctions[static_cast<size_t>(p - 1)].second);
    }
    g.set_outer_order(order);
    ConstructionCertificate c{"stalactite", {i}, n, 5, {n / 2, n / 4, n / 4}, 3};
    return {std::move(g), c};
}

// (K_2 join P_{s^2}) plus s isolated vertices. Ids: the join pair 0 and 1,
// the path 2..s^2+1, then the isolated vertices.
inline Construction planar_gadget(int s) {
    if (s < 2) fail(ErrorKind::InvalidArgument, "planar gadget needs s >= 2");
    int p = s * s, n = p + s + 2;
    Graph g(n);
    g.add_edge(0, 1);
    for (int k = 0; k < p; ++k) {
        g.add_edge(0, 2 + k);
        g.add_edge(1, 2 + k);
        if (k + 1 < p) g.add_edge(2 + k, 3 + k);
    }
    ConstructionCertificate c{"planar-gadget", {s}, n, p + 1, {}, s};
    return {std::move(g), c};
}

// Copies of K_2 join 2K_2 glued root edge to leaf edge. Step i >= 2 takes the
// first unused leaf edge, glues an extender onto it and then two more onto
// the new extender's leaf edges.
inline Construction extender_chain(int i) {
    if (i < 1) fail(ErrorKind::InvalidArgument, "extender chain index must be at least 1");
    int n = 6 + 12 * (i - 1);
    Graph g(n);
    int next = 2;
    std::vector<std::array<int, 2>> leaves;
    std::vector<char> used;
    auto extender = [&](int a, int b) {
        g.add_edge(a, b);
        for (int k = 0; k < 2; ++k) {
            std::array<int, 2> e{next, next + 1};
            next += 2;
            g.add_edge(e[0], e[1]);
            for (int r : {a, b})
                for (int x : e) g.add_edge(r, x);
            leaves.push_back(e);
            used.push_back(0);
        }
        return leaves.size() - 2;
    };
    extender(0, 1);
    for (int step = 2; step <= i; ++step) {
        size_t f = 0;
        while (used[f]) ++f;
        used[f] = 1;
        size_t h = extender(leaves[f][0], leaves[f][1]);
        for (size_t k = h; k < h + 2; ++k) {
            used[k] = 1;
            extender(leaves[k][0], leaves[k][1]);
        }
    }
    ConstructionCertificate c{"extender", {i}, n, i == 1 ? 5 : 7, {n / 3, n / 3, n / 6, n / 6}, 0};
    return {std::move(g), c};
}

// K_d join (s^2+2s)K_1, plus ds+d^2 isolated vertices. Ids: the clique
// 0..d-1, then the joined independent set, then the isolated vertices.
inline Construction degenerate_gadget(int d, int s) {
    if (d < 1 || s < d) fail(ErrorKind::InvalidArgument, "degenerate gadget needs d >= 1 and s >= d");
    int mid = s * s + 2 * s, iso = d * s + d * d, n = d + mid + iso;
    Graph g(n);
    for (int a = 0; a < d; ++a) {
        for (int b = a + 1; b < d; ++b) g.add_edge(a, b);
        for (int x = 0; x < mid; ++x) g.add_edge(a, d + x);
    }
    ConstructionCertificate c{"degenerate", {d, s}, n, d - 1 + mid, {}, s};
    return {std::move(g), c};
}

}  // namespace equicolor
