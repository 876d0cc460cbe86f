#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "equicolor/equicolor.hpp"
#include "equicolor/random.hpp"

namespace fx {

using equicolor::Graph;

inline Graph with_order(Graph g) {
    std::vector<int> o(static_cast<size_t>(g.n()));
    std::iota(o.begin(), o.end(), 0);
    g.set_outer_order(o);
    return g;
}

inline Graph path(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline Graph cycle(int n) {
    Graph g = path(n);
    if (n >= 3) g.add_edge(0, n - 1);
    return g;
}

inline Graph star(int leaves) {
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

// Apex 0 joined to every vertex of the path 1..n-1.
inline Graph fan(int n) {
    Graph g(n);
    for (int i = 1; i < n; ++i) {
        g.add_edge(0, i);
        if (i + 1 < n) g.add_edge(i, i + 1);
    }
    return with_order(g);
}

// Polygon 0..n-1 plus chords, outer order the identity.
inline Graph polygon(int n, const std::vector<std::pair<int, int>>& chords) {
    Graph g = cycle(n);
    for (auto [a, b] : chords) g.add_edge(a, b);
    return with_order(g);
}

inline Graph complete(int n) {
    Graph g(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
    return g;
}

inline Graph octahedron() {
    Graph g(6);
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            if (b != a + 3) g.add_edge(a, b);
    return g;
}

inline Graph icosahedron() {
    Graph g(12);
    for (int i = 0; i < 5; ++i) {
        int u = 1 + i, un = 1 + (i + 1) % 5, l = 6 + i, ln = 6 + (i + 1) % 5;
        g.add_edge(0, u);
        g.add_edge(u, un);
        g.add_edge(l, ln);
        g.add_edge(11, l);
        g.add_edge(u, l);
        g.add_edge(un, l);
    }
    return g;
}

inline Graph grid(int r, int c) {
    Graph g(r * c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            if (i + 1 < r) g.add_edge(i * c + j, (i + 1) * c + j);
            if (j + 1 < c) g.add_edge(i * c + j, i * c + j + 1);
        }
    return g;
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g(a.n() + b.n());
    for (const auto& e : a.edges()) g.add_edge(e.u, e.v);
    for (const auto& e : b.edges()) g.add_edge(a.n() + e.u, a.n() + e.v);
    return g;
}

// alpha_v by trying every subset; only for tiny graphs.
inline int naive_alpha_v(const Graph& g, int v) {
    int n = g.n(), best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (!(mask >> v & 1u)) continue;
        bool ok = true;
        for (const auto& e : g.edges())
            if ((mask >> e.u & 1u) && (mask >> e.v & 1u)) { ok = false; break; }
        if (ok) best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

// Canonical string of a free tree: AHU encoding rooted at each centre,
// smallest one wins.
inline std::string tree_canon(const Graph& t) {
    int n = t.n();
    if (n == 0) return "";
    std::vector<int> deg = t.degrees(), leaves, removed(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        if (deg[static_cast<size_t>(v)] <= 1) leaves.push_back(v);
    int left = n;
    while (left > 2) {
        std::vector<int> next;
        for (int v : leaves) {
            removed[static_cast<size_t>(v)] = 1;
            --left;
            for (int w : t.neighbors(v))
                if (!removed[static_cast<size_t>(w)] && --deg[static_cast<size_t>(w)] == 1) next.push_back(w);
        }
        leaves = next;
    }
    std::function<std::string(int, int)> enc = [&](int v, int p) {
        std::vector<std::string> ch;
        for (int w : t.neighbors(v))
            if (w != p) ch.push_back(enc(w, v));
        std::sort(ch.begin(), ch.end());
        std::string s = "(";
        for (auto& c : ch) s += c;
        return s + ")";
    };
    std::string best;
    for (int c : leaves) {
        auto s = enc(c, -1);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

// Every unlabelled tree on n vertices, once each: rooted level sequences in
// the order of Beyer and Hedetniemi, deduplicated by canonical form.
inline std::vector<Graph> all_trees(int n) {
    std::vector<Graph> out;
    if (n == 1) return {Graph(1)};
    std::set<std::string> seen;
    std::vector<int> L(static_cast<size_t>(n));
    std::iota(L.begin(), L.end(), 0);  // the path rooted at an end
    while (true) {
        Graph t(n);
        std::vector<int> last(static_cast<size_t>(n), -1);
        last[0] = 0;
        for (int i = 1; i < n; ++i) {
            t.add_edge(i, last[static_cast<size_t>(L[static_cast<size_t>(i)] - 1)]);
            last[static_cast<size_t>(L[static_cast<size_t>(i)])] = i;
        }
        if (seen.insert(tree_canon(t)).second) out.push_back(t);
        int p = n - 1;
        while (p > 0 && L[static_cast<size_t>(p)] == 1) --p;
        if (p == 0) break;
        int q = p - 1;
        while (L[static_cast<size_t>(q)] != L[static_cast<size_t>(p)] - 1) --q;
        for (int i = p; i < n; ++i) L[static_cast<size_t>(i)] = L[static_cast<size_t>(i - (p - q))];
    }
    return out;
}

// Every unlabelled forest on n vertices: multisets of trees, taken in a
// fixed order so each appears once.
inline std::vector<Graph> all_forests(int n) {
    std::vector<std::pair<int, Graph>> pool;
    for (int k = 1; k <= n; ++k)
        for (auto& t : all_trees(k)) pool.emplace_back(k, std::move(t));
    std::vector<Graph> out;
    std::function<void(size_t, int, const Graph&)> rec = [&](size_t from, int left, const Graph& acc) {
        if (left == 0) {
            out.push_back(acc);
            return;
        }
        for (size_t i = from; i < pool.size(); ++i)
            if (pool[i].first <= left) rec(i, left - pool[i].first, disjoint_union(acc, pool[i].second));
    };
    rec(0, n, Graph(0));
    return out;
}

}  // namespace fx
