#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <vector>

#include "graph.hpp"

namespace equicolor::fixtures {

using Rng = std::mt19937_64;

// Relabels vertices by a random permutation; drops the outer order.
inline Graph shuffled(const Graph& g, Rng& rng) {
    std::vector<int> perm(static_cast<size_t>(g.n()));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph h(g.n());
    for (const auto& e : g.edges()) h.add_edge(perm[static_cast<size_t>(e.u)], perm[static_cast<size_t>(e.v)]);
    return h;
}

// Triangulated polygon on outer order 0..n-1. With hub_bias > 0 the apex of
// each split is pulled towards vertex 0's side, which grows high-degree
// vertices.
inline Graph random_maximal_outerplanar(int n, Rng& rng, double hub_bias = 0.0) {
    Graph g(n);
    if (n < 3) {
        if (n == 2) g.add_edge(0, 1);
        return g;
    }
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    std::vector<std::pair<int, int>> work{{0, n - 1}};
    std::uniform_real_distribution<double> U(0.0, 1.0);
    while (!work.empty()) {
        auto [i, j] = work.back();
        work.pop_back();
        if (j - i < 2) continue;
        int k;
        if (U(rng) < hub_bias) k = U(rng) < 0.5 ? i + 1 : j - 1;
        else k = i + 1 + static_cast<int>(rng() % static_cast<unsigned>(j - i - 1));
        g.add_edge(i, k);
        g.add_edge(k, j);
        work.emplace_back(i, k);
        work.emplace_back(k, j);
    }
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    g.set_outer_order(order);
    return g;
}

// Triangulated polygon in which vertex 0 has degree d0 (2 <= d0 <= n-1). With
// second_hub set, the largest region next to 0 is fanned from one vertex, so
// two vertices end up with high degree. The neighbours of 0 are drawn from the
// first `spread` share of the boundary.
inline Graph random_fan_outerplanar(int n, Rng& rng, int d0, bool second_hub = false, double spread = 1.0) {
    Graph g(n);
    if (n < 3) return random_maximal_outerplanar(n, rng);
    d0 = std::clamp(d0, 2, n - 1);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    int hi = std::clamp(static_cast<int>(spread * n), d0, n - 1);
    std::vector<int> inner(static_cast<size_t>(hi - 2));
    std::iota(inner.begin(), inner.end(), 2);
    std::shuffle(inner.begin(), inner.end(), rng);
    std::vector<int> nb{1, n - 1};
    nb.insert(nb.end(), inner.begin(), inner.begin() + (d0 - 2));
    std::sort(nb.begin(), nb.end());
    for (int x : nb) g.add_edge(0, x);
    size_t widest = 0;
    for (size_t i = 0; i + 1 < nb.size(); ++i)
        if (nb[i + 1] - nb[i] > nb[widest + 1] - nb[widest]) widest = i;
    for (size_t i = 0; i + 1 < nb.size(); ++i) {
        int a = nb[i], b = nb[i + 1];
        if (b - a < 2) continue;
        if (second_hub && i == widest) {
            int h = a + 1 + static_cast<int>(rng() % static_cast<unsigned>(b - a - 1));
            for (int x = a; x <= b; ++x)
                if (x != h) g.add_edge(h, x);
            continue;
        }
        std::vector<std::pair<int, int>> work{{a, b}};
        while (!work.empty()) {
            auto [l, r] = work.back();
            work.pop_back();
            if (r - l < 2) continue;
            int k = l + 1 + static_cast<int>(rng() % static_cast<unsigned>(r - l - 1));
            g.add_edge(l, k);
            g.add_edge(k, r);
            work.emplace_back(l, k);
            work.emplace_back(k, r);
        }
    }
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    g.set_outer_order(order);
    return g;
}

// Outerplanar graph: a triangulated polygon with each edge kept with
// probability keep, then relabelled.
inline Graph random_outerplanar(int n, Rng& rng, double keep, double hub_bias = 0.0) {
    Graph full = random_maximal_outerplanar(n, rng, hub_bias);
    Graph g(n);
    std::bernoulli_distribution B(keep);
    for (const auto& e : full.edges())
        if (B(rng)) g.add_edge(e.u, e.v);
    return shuffled(g, rng);
}

// Random recursive tree; with hubs > 0 a share of vertices attach to one of
// the first `hubs` vertices.
inline Graph random_tree(int n, Rng& rng, int hubs = 0) {
    Graph t(n);
    for (int v = 1; v < n; ++v) {
        int p = (hubs > 0 && rng() % 2 == 0) ? static_cast<int>(rng() % static_cast<unsigned>(std::min(v, hubs)))
                                             : static_cast<int>(rng() % static_cast<unsigned>(v));
        t.add_edge(p, v);
    }
    return t;
}

inline Graph random_forest(int n, Rng& rng, double drop, int hubs = 0) {
    Graph t = random_tree(n, rng, hubs);
    Graph f(n);
    std::bernoulli_distribution B(drop);
    for (const auto& e : t.edges())
        if (!B(rng)) f.add_edge(e.u, e.v);
    return shuffled(f, rng);
}

// Planar triangulation grown by inserting each new vertex into a uniformly
// random face of the current one.
inline Graph random_stacked_triangulation(int n, Rng& rng) {
    Graph g(n);
    if (n < 3) {
        if (n == 2) g.add_edge(0, 1);
        return g;
    }
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    std::vector<std::array<int, 3>> faces{{0, 1, 2}, {0, 1, 2}};
    for (int v = 3; v < n; ++v) {
        size_t f = rng() % faces.size();
        auto t = faces[f];
        for (int x : t) g.add_edge(v, x);
        faces[f] = {t[0], t[1], v};
        faces.push_back({t[1], t[2], v});
        faces.push_back({t[0], t[2], v});
    }
    return g;
}

// Planar graph: a triangulated polygon on n - hubs vertices with `hubs`
// extra vertices in the outer face, each joined to one arc of the polygon.
// Consecutive hubs share an arc endpoint and are adjacent. Every edge is then
// kept with probability keep, and the result relabelled. With even_arcs the
// arcs have (nearly) equal length, so all hubs get about the same degree.
inline Graph random_hub_planar(int n, Rng& rng, int hubs, double keep = 1.0, bool even_arcs = false) {
    int m = n - hubs;
    if (hubs < 1 || m < 3) return random_stacked_triangulation(n, rng);
    Graph base = random_maximal_outerplanar(m, rng);
    Graph g(n);
    for (const auto& e : base.edges()) g.add_edge(e.u, e.v);
    std::vector<int> cuts(static_cast<size_t>(m));
    std::iota(cuts.begin(), cuts.end(), 0);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(static_cast<size_t>(std::min(hubs, m)));
    if (even_arcs)
        for (size_t h = 0; h < cuts.size(); ++h) cuts[h] = static_cast<int>(h * static_cast<size_t>(m) / cuts.size());
    std::sort(cuts.begin(), cuts.end());
    int k = static_cast<int>(cuts.size());
    for (int h = 0; h < k; ++h) {
        int a = cuts[static_cast<size_t>(h)], b = h + 1 < k ? cuts[static_cast<size_t>(h + 1)] : cuts[0] + m;
        if (k == 1) b = a + m - 1;
        for (int x = a; x <= b; ++x) g.add_edge(m + h, x % m);
        if (k > 1 && (h + 1 < k || k > 2)) g.add_edge(m + h, m + (h + 1) % k);
    }
    Graph out(n);
    std::bernoulli_distribution B(keep);
    for (const auto& e : g.edges())
        if (keep >= 1.0 || B(rng)) out.add_edge(e.u, e.v);
    return shuffled(out, rng);
}

// Planar graph with maximum degree at most dmax: a stacked triangulation with
// edges at overloaded vertices removed in random order.
inline Graph random_bounded_planar(int n, Rng& rng, int dmax) {
    Graph g = random_stacked_triangulation(n, rng);
    auto es = g.edges();
    std::shuffle(es.begin(), es.end(), rng);
    for (const auto& e : es)
        if (g.degree(e.u) > dmax || g.degree(e.v) > dmax) g.remove_edge(e.u, e.v);
    return shuffled(g, rng);
}

// Planar graph of nested rings: `rings` cycles of random length, with a hub
// joined to every vertex of two consecutive rings (the region between them)
// and one more hub on each end. Hubs keep a large share of the degree even
// after several have been removed.
inline Graph random_ringed_hubs(int n, Rng& rng, int rings) {
    int hubs = rings + 1, body = n - hubs;
    if (rings < 1 || body < 3 * rings) return random_stacked_triangulation(n, rng);
    std::vector<int> len(static_cast<size_t>(rings), 3);
    std::uniform_int_distribution<int> pick(0, rings - 1);
    for (int extra = body - 3 * rings; extra > 0; --extra) ++len[static_cast<size_t>(pick(rng))];
    Graph g(n);
    std::vector<int> start(static_cast<size_t>(rings) + 1, 0);
    for (int r = 0; r < rings; ++r) {
        start[static_cast<size_t>(r) + 1] = start[static_cast<size_t>(r)] + len[static_cast<size_t>(r)];
        for (int i = 0; i < len[static_cast<size_t>(r)]; ++i)
            g.add_edge(start[static_cast<size_t>(r)] + i, start[static_cast<size_t>(r)] + (i + 1) % len[static_cast<size_t>(r)]);
    }
    for (int h = 0; h < hubs; ++h)
        for (int r : {h - 1, h})
            if (r >= 0 && r < rings)
                for (int v = start[static_cast<size_t>(r)]; v < start[static_cast<size_t>(r) + 1]; ++v) g.add_edge(body + h, v);
    return shuffled(g, rng);
}

}  // namespace equicolor::fixtures
