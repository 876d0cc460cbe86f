#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace equicolor {

// Position of every vertex in a cyclic order; -1 for absent vertices.
inline std::vector<int> positions(int n, const std::vector<int>& order) {
    std::vector<int> pos(static_cast<size_t>(n), -1);
    for (size_t i = 0; i < order.size(); ++i)
        if (order[i] >= 0 && order[i] < n) pos[static_cast<size_t>(order[i])] = static_cast<int>(i);
    return pos;
}

// True when no two edges interleave with respect to `order` (which must be a
// permutation of the vertices). Interval-stack check, O(m log m).
inline bool crossing_free(const Graph& g, const std::vector<int>& order) {
    auto pos = positions(g.n(), order);
    std::vector<std::pair<int, int>> iv;
    iv.reserve(g.m());
    for (const auto& e : g.edges()) {
        int a = pos[static_cast<size_t>(e.u)], b = pos[static_cast<size_t>(e.v)];
        if (a > b) std::swap(a, b);
        iv.emplace_back(a, b);
    }
    std::sort(iv.begin(), iv.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first < y.first : x.second > y.second;
    });
    std::vector<int> stack;  // right ends
    for (const auto& [l, r] : iv) {
        while (!stack.empty() && stack.back() <= l) stack.pop_back();
        if (!stack.empty() && stack.back() < r) return false;
        stack.push_back(r);
    }
    return true;
}

// Every interleaving pair, for diagnostics. Quadratic.
inline std::vector<std::pair<Edge, Edge>> crossing_pairs(const Graph& g, const std::vector<int>& order,
                                                         std::size_t limit = 16) {
    auto pos = positions(g.n(), order);
    auto es = g.edges();
    std::vector<std::pair<Edge, Edge>> out;
    for (size_t i = 0; i < es.size() && out.size() < limit; ++i) {
        int a = pos[static_cast<size_t>(es[i].u)], b = pos[static_cast<size_t>(es[i].v)];
        if (a > b) std::swap(a, b);
        for (size_t j = i + 1; j < es.size() && out.size() < limit; ++j) {
            int c = pos[static_cast<size_t>(es[j].u)], d = pos[static_cast<size_t>(es[j].v)];
            if (c > d) std::swap(c, d);
            if ((a < c && c < b && b < d) || (c < a && a < d && d < b)) out.emplace_back(es[i], es[j]);
        }
    }
    return out;
}

namespace detail {

// Biconnected blocks as vertex lists (iterative Tarjan). Isolated vertices
// produce no block.
inline std::vector<std::vector<int>> blocks(const Graph& g) {
    int n = g.n();
    std::vector<int> disc(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
    std::vector<std::vector<int>> out;
    std::vector<std::pair<int, int>> estack;
    struct Frame { int v, parent; size_t next; };
    int timer = 0;
    for (int root = 0; root < n; ++root) {
        if (disc[static_cast<size_t>(root)] >= 0) continue;
        disc[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = timer++;
        std::vector<Frame> st{{root, -1, 0}};
        while (!st.empty()) {
            Frame& f = st.back();
            const auto& nb = g.neighbors(f.v);
            if (f.next < nb.size()) {
                int w = nb[f.next++];
                if (w == f.parent) continue;
                if (disc[static_cast<size_t>(w)] < 0) {
                    estack.emplace_back(f.v, w);
                    disc[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = timer++;
                    st.push_back({w, f.v, 0});
                } else if (disc[static_cast<size_t>(w)] < disc[static_cast<size_t>(f.v)]) {
                    estack.emplace_back(f.v, w);
                    low[static_cast<size_t>(f.v)] = std::min(low[static_cast<size_t>(f.v)], disc[static_cast<size_t>(w)]);
                }
                continue;
            }
            int v = f.v, p = f.parent;
            st.pop_back();
            if (p < 0) continue;
            low[static_cast<size_t>(p)] = std::min(low[static_cast<size_t>(p)], low[static_cast<size_t>(v)]);
            if (low[static_cast<size_t>(v)] >= disc[static_cast<size_t>(p)]) {
                std::vector<int> blk;
                while (true) {
                    auto [a, b] = estack.back();
                    estack.pop_back();
                    blk.push_back(a);
                    blk.push_back(b);
                    if (a == p && b == v) break;
                }
                std::sort(blk.begin(), blk.end());
                blk.erase(std::unique(blk.begin(), blk.end()), blk.end());
                out.push_back(std::move(blk));
            }
        }
    }
    return out;
}

// Hamiltonian cycle of a 2-connected outerplanar block by repeated removal of
// degree-2 vertices. nullopt when the block is not outerplanar.
inline std::optional<std::vector<int>> block_cycle(const Graph& g, const std::vector<int>& bv,
                                                   std::vector<int>& loc) {
    int k = static_cast<int>(bv.size());
    if (k == 2) return bv;
    for (int i = 0; i < k; ++i) loc[static_cast<size_t>(bv[static_cast<size_t>(i)])] = i;
    std::vector<std::set<int>> adj(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i)
        for (int w : g.neighbors(bv[static_cast<size_t>(i)])) {
            int j = loc[static_cast<size_t>(w)];
            if (j >= 0) adj[static_cast<size_t>(i)].insert(j);
        }
    for (int v : bv) loc[static_cast<size_t>(v)] = -1;

    std::unordered_map<std::uint64_t, int> ins;
    std::vector<char> alive(static_cast<size_t>(k), 1);
    std::vector<int> queue;
    for (int i = 0; i < k; ++i)
        if (adj[static_cast<size_t>(i)].size() == 2) queue.push_back(i);
    int count = k;
    size_t head = 0;
    while (count > 3) {
        while (head < queue.size() &&
               (!alive[static_cast<size_t>(queue[head])] || adj[static_cast<size_t>(queue[head])].size() != 2))
            ++head;
        if (head == queue.size()) return std::nullopt;
        int v = queue[head++];
        int a = *adj[static_cast<size_t>(v)].begin(), b = *adj[static_cast<size_t>(v)].rbegin();
        auto key = edge_key(a, b);
        if (ins.count(key)) return std::nullopt;
        ins[key] = v;
        alive[static_cast<size_t>(v)] = 0;
        --count;
        adj[static_cast<size_t>(a)].erase(v);
        adj[static_cast<size_t>(b)].erase(v);
        if (!adj[static_cast<size_t>(a)].count(b)) {
            adj[static_cast<size_t>(a)].insert(b);
            adj[static_cast<size_t>(b)].insert(a);
        }
        for (int x : {a, b})
            if (adj[static_cast<size_t>(x)].size() == 2) queue.push_back(x);
            else if (adj[static_cast<size_t>(x)].size() < 2) return std::nullopt;
    }
    std::vector<int> tri;
    for (int i = 0; i < k; ++i)
        if (alive[static_cast<size_t>(i)]) tri.push_back(i);
    if (tri.size() != 3) return std::nullopt;
    for (int i = 0; i < 3; ++i)
        if (!adj[static_cast<size_t>(tri[static_cast<size_t>(i)])].count(tri[static_cast<size_t>((i + 1) % 3)]))
            return std::nullopt;
    // Expand each cycle edge by the vertices that were removed from it.
    std::vector<int> cyc;
    std::vector<std::pair<int, int>> work;
    for (int i = 2; i >= 0; --i) work.emplace_back(tri[static_cast<size_t>(i)], tri[static_cast<size_t>((i + 1) % 3)]);
    while (!work.empty()) {
        auto [p, q] = work.back();
        work.pop_back();
        auto it = ins.find(edge_key(p, q));
        if (it == ins.end()) {
            cyc.push_back(p);
            continue;
        }
        int v = it->second;
        ins.erase(it);
        work.emplace_back(v, q);
        work.emplace_back(p, v);
    }
    if (static_cast<int>(cyc.size()) != k) return std::nullopt;
    std::vector<int> out;
    out.reserve(cyc.size());
    for (int i : cyc) out.push_back(bv[static_cast<size_t>(i)]);
    return out;
}

}  // namespace detail

// Outer boundary order of some outerplane embedding, or nullopt if g is not
// outerplanar.
inline std::optional<std::vector<int>> compute_outer_order(const Graph& g) {
    int n = g.n();
    auto blks = detail::blocks(g);
    std::vector<int> loc(static_cast<size_t>(n), -1);
    std::vector<std::vector<int>> cycles;
    cycles.reserve(blks.size());
    for (const auto& b : blks) {
        auto c = detail::block_cycle(g, b, loc);
        if (!c) return std::nullopt;
        cycles.push_back(std::move(*c));
    }
    std::vector<std::vector<int>> blocks_at(static_cast<size_t>(n));
    for (size_t i = 0; i < cycles.size(); ++i)
        for (int v : cycles[i]) blocks_at[static_cast<size_t>(v)].push_back(static_cast<int>(i));

    std::vector<char> used_block(cycles.size(), 0), placed(static_cast<size_t>(n), 0);
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n));
    // Tasks: vertex >= 0 means emit; otherwise ~(block) paired with entry vertex.
    std::vector<std::pair<int, int>> tasks;
    for (int s = 0; s < n; ++s) {
        if (placed[static_cast<size_t>(s)]) continue;
        tasks.emplace_back(s, -1);
        while (!tasks.empty()) {
            auto [a, b] = tasks.back();
            tasks.pop_back();
            if (a >= 0) {
                placed[static_cast<size_t>(a)] = 1;
                order.push_back(a);
                const auto& bl = blocks_at[static_cast<size_t>(a)];
                for (auto it = bl.rbegin(); it != bl.rend(); ++it)
                    if (!used_block[static_cast<size_t>(*it)]) {
                        used_block[static_cast<size_t>(*it)] = 1;
                        tasks.emplace_back(~*it, a);
                    }
            } else {
                const auto& cyc = cycles[static_cast<size_t>(~a)];
                auto at = std::find(cyc.begin(), cyc.end(), b) - cyc.begin();
                int k = static_cast<int>(cyc.size());
                for (int j = k - 1; j >= 1; --j) tasks.emplace_back(cyc[static_cast<size_t>((at + j) % k)], -1);
            }
        }
    }
    if (static_cast<int>(order.size()) != n || !crossing_free(g, order)) return std::nullopt;
    return order;
}

struct ValidationReport {
    bool is_outerplanar = false;
    bool is_maximal = false;
    std::vector<std::string> violations;
};

inline ValidationReport validate_embedding(const Graph& g) {
    ValidationReport r;
    int n = g.n();
    if (n >= 2 && g.m() > static_cast<size_t>(2 * n - 3))
        r.violations.push_back("edge count " + std::to_string(g.m()) + " exceeds 2n-3 = " + std::to_string(2 * n - 3));
    std::optional<std::vector<int>> order = g.outer_order();
    bool order_ok = true;
    if (order) {
        std::vector<int> seen(static_cast<size_t>(n), 0);
        for (int v : *order) {
            if (v < 0 || v >= n) {
                r.violations.push_back("outer order names unknown vertex " + std::to_string(v));
                order_ok = false;
            } else if (++seen[static_cast<size_t>(v)] == 2) {
                r.violations.push_back("vertex " + std::to_string(v) + " repeated in outer order");
                order_ok = false;
            }
        }
        for (int v = 0; v < n; ++v)
            if (!seen[static_cast<size_t>(v)]) {
                r.violations.push_back("vertex " + std::to_string(v) + " missing from outer order");
                order_ok = false;
            }
        if (order_ok && !crossing_free(g, *order)) {
            order_ok = false;
            for (const auto& [e, f] : crossing_pairs(g, *order))
                r.violations.push_back("chords " + std::to_string(e.u) + "-" + std::to_string(e.v) + " and " +
                                       std::to_string(f.u) + "-" + std::to_string(f.v) + " cross");
        }
    } else {
        order = compute_outer_order(g);
        order_ok = order.has_value();
        if (!order_ok) r.violations.push_back("no outerplane embedding exists");
    }
    r.is_outerplanar = order_ok && (n < 2 || g.m() <= static_cast<size_t>(2 * n - 3));
    if (n < 3)
        r.is_maximal = r.is_outerplanar && g.m() == static_cast<size_t>(n * (n - 1) / 2);
    else
        r.is_maximal = r.is_outerplanar && g.m() == static_cast<size_t>(2 * n - 3);
    return r;
}

// Copy of g that carries an outer order, computing one if needed.
inline Graph embedded(const Graph& g) {
    if (g.has_embedding()) {
        const auto& o = *g.outer_order();
        bool perm = static_cast<int>(o.size()) == g.n();
        if (perm) {
            std::vector<char> seen(static_cast<size_t>(g.n()), 0);
            for (int v : o) {
                if (v < 0 || v >= g.n() || seen[static_cast<size_t>(v)]) { perm = false; break; }
                seen[static_cast<size_t>(v)] = 1;
            }
        }
        if (!perm) fail(ErrorKind::NotOuterplanar, "outer order is not a permutation of the vertices");
        if (!crossing_free(g, o)) fail(ErrorKind::NotOuterplanar, "outer order has crossing chords");
        return g;
    }
    auto o = compute_outer_order(g);
    if (!o) fail(ErrorKind::NotOuterplanar, "graph is not outerplanar");
    Graph h = g;
    h.set_outer_order(std::move(*o));
    return h;
}

// Neighbours of v sorted by clockwise offset from v along the outer order.
inline std::vector<int> neighbors_in_rotation(const Graph& g, int v) {
    if (!g.has_embedding()) fail(ErrorKind::MissingEmbedding, "rotation needs an outer order");
    const auto& order = *g.outer_order();
    int n = g.n();
    auto pos = positions(n, order);
    std::vector<int> r = g.neighbors(v);
    int pv = pos[static_cast<size_t>(v)];
    std::sort(r.begin(), r.end(), [&](int a, int b) {
        return (pos[static_cast<size_t>(a)] - pv + n) % n < (pos[static_cast<size_t>(b)] - pv + n) % n;
    });
    return r;
}

// Components of G[N(v)], each as an ordered path.
inline std::vector<std::vector<int>> neighborhood_paths(const Graph& g, int v) {
    const auto& nb = g.neighbors(v);
    Graph h = g.induced(nb);
    std::vector<std::vector<int>> out;
    for (const auto& comp : components(h)) {
        size_t edges = 0;
        int start = comp.front();
        for (int x : comp) {
            int d = h.degree(x);
            if (d > 2) fail(ErrorKind::NotOuterplanar, "neighbourhood of " + std::to_string(v) + " has a branch vertex");
            edges += static_cast<size_t>(d);
            if (d <= 1 && h.degree(start) > 1) start = x;
        }
        if (edges / 2 != comp.size() - 1)
            fail(ErrorKind::NotOuterplanar, "neighbourhood of " + std::to_string(v) + " contains a cycle");
        std::vector<int> path{start};
        int prev = -1, cur = start;
        while (true) {
            int nxt = -1;
            for (int w : h.neighbors(cur))
                if (w != prev) { nxt = w; break; }
            if (nxt < 0) break;
            path.push_back(nxt);
            prev = cur;
            cur = nxt;
        }
        for (int& x : path) x = nb[static_cast<size_t>(x)];
        out.push_back(std::move(path));
    }
    return out;
}

// Inner faces of an outerplane graph that contains its whole outer cycle, each
// listed in outer-order position. `pos` maps vertex to position.
inline std::vector<std::vector<int>> inner_faces(const Graph& g, const std::vector<int>& order) {
    int n = g.n();
    auto pos = positions(n, order);
    std::vector<std::vector<int>> ends(static_cast<size_t>(n));  // chord start positions by end position
    for (const auto& e : g.edges()) {
        int a = pos[static_cast<size_t>(e.u)], b = pos[static_cast<size_t>(e.v)];
        if (a > b) std::swap(a, b);
        if (b - a == 1 || (a == 0 && b == n - 1)) continue;
        ends[static_cast<size_t>(b)].push_back(a);
    }
    std::vector<std::vector<int>> faces;
    std::vector<int> stack;
    for (int j = 0; j < n; ++j) {
        auto& st = ends[static_cast<size_t>(j)];
        std::sort(st.rbegin(), st.rend());
        for (int i : st) {
            std::vector<int> face;
            while (stack.back() != i) {
                face.push_back(stack.back());
                stack.pop_back();
            }
            face.push_back(i);
            std::reverse(face.begin(), face.end());
            face.push_back(j);
            faces.push_back(std::move(face));
        }
        stack.push_back(j);
    }
    if (n >= 3) faces.push_back(stack);
    for (auto& f : faces)
        for (int& p : f) p = order[static_cast<size_t>(p)];
    return faces;
}

// Adds every missing edge between consecutive outer-order vertices.
inline void close_outer_cycle(Graph& g) {
    const auto& o = *g.outer_order();
    int n = g.n();
    if (n < 3) {
        if (n == 2) g.add_edge(o[0], o[1]);
        return;
    }
    for (int i = 0; i < n; ++i) g.add_edge(o[static_cast<size_t>(i)], o[static_cast<size_t>((i + 1) % n)]);
}

// A maximal outerplanar supergraph on the same outer order: close the outer
// cycle, then fan-triangulate every face. No degree control.
inline Graph triangulate_plain(const Graph& g0) {
    Graph g = embedded(g0);
    if (g.n() < 3) {
        close_outer_cycle(g);
        return g;
    }
    close_outer_cycle(g);
    for (const auto& f : inner_faces(g, *g.outer_order()))
        for (size_t i = 2; i + 1 < f.size(); ++i) g.add_edge(f[0], f[i]);
    return g;
}

struct DualTree {
    std::vector<std::array<int, 3>> faces;             // sorted vertex triples
    std::vector<std::pair<int, int>> links;            // face index pairs
    std::vector<std::vector<int>> adj;                 // face adjacency
    std::unordered_map<std::uint64_t, std::vector<int>> face_of_edge;

    int size() const { return static_cast<int>(faces.size()); }
    std::vector<int> faces_at(int a, int b) const {
        auto it = face_of_edge.find(edge_key(a, b));
        return it == face_of_edge.end() ? std::vector<int>{} : it->second;
    }
};

inline DualTree weak_dual(const Graph& g0) {
    Graph g = g0.has_embedding() ? g0 : embedded(g0);
    auto rep = validate_embedding(g);
    if (g.n() < 3 || !rep.is_maximal) fail(ErrorKind::NotMaximal, "weak dual needs a maximal outerplanar graph");
    DualTree t;
    for (const auto& f : inner_faces(g, *g.outer_order())) {
        ensure(f.size() == 3, "maximal outerplanar graph has a non-triangular face");
        std::array<int, 3> tri{f[0], f[1], f[2]};
        std::sort(tri.begin(), tri.end());
        t.faces.push_back(tri);
    }
    t.adj.assign(t.faces.size(), {});
    for (int i = 0; i < t.size(); ++i) {
        const auto& f = t.faces[static_cast<size_t>(i)];
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) t.face_of_edge[edge_key(f[static_cast<size_t>(a)], f[static_cast<size_t>(b)])].push_back(i);
    }
    for (const auto& [k, fs] : t.face_of_edge)
        if (fs.size() == 2) t.links.emplace_back(std::min(fs[0], fs[1]), std::max(fs[0], fs[1]));
    std::sort(t.links.begin(), t.links.end());
    for (const auto& [a, b] : t.links) {
        t.adj[static_cast<size_t>(a)].push_back(b);
        t.adj[static_cast<size_t>(b)].push_back(a);
    }
    return t;
}

// The unique (up to renaming) 3-colouring of a maximal outerplanar graph,
// propagated across the dual tree. Colours 1..3.
inline std::vector<int> color_triangulation(const Graph& h) {
    int n = h.n();
    std::vector<int> col(static_cast<size_t>(n), 0);
    if (n <= 3) {
        for (int v = 0; v < n; ++v) col[static_cast<size_t>(v)] = v + 1;
        return col;
    }
    auto faces = inner_faces(h, *h.outer_order());
    std::unordered_map<std::uint64_t, std::vector<int>> at;
    for (size_t i = 0; i < faces.size(); ++i)
        for (int a = 0; a < 3; ++a)
            at[edge_key(faces[i][static_cast<size_t>(a)], faces[i][static_cast<size_t>((a + 1) % 3)])].push_back(static_cast<int>(i));
    std::vector<char> done(faces.size(), 0);
    std::vector<int> stack{0};
    done[0] = 1;
    for (int a = 0; a < 3; ++a) col[static_cast<size_t>(faces[0][static_cast<size_t>(a)])] = a + 1;
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        const auto& tri = faces[static_cast<size_t>(f)];
        for (int a = 0; a < 3; ++a) {
            int x = tri[static_cast<size_t>(a)], y = tri[static_cast<size_t>((a + 1) % 3)];
            for (int h2 : at[edge_key(x, y)]) {
                if (done[static_cast<size_t>(h2)]) continue;
                done[static_cast<size_t>(h2)] = 1;
                for (int z : faces[static_cast<size_t>(h2)])
                    if (z != x && z != y) col[static_cast<size_t>(z)] = 6 - col[static_cast<size_t>(x)] - col[static_cast<size_t>(y)];
                stack.push_back(h2);
            }
        }
    }
    return col;
}

// Proper 3-colouring with every class of size at most floor(n/2).
inline Coloring three_color_capped(const Graph& g) {
    Graph h = triangulate_plain(g);
    Coloring c(3, g.n());
    c.color = color_triangulation(h);
    if (g.n() == 0) return c;
    ensure(is_proper(g, c), "capped 3-colouring is not proper");
    int cap = std::max(1, g.n() / 2);
    for (int sz : c.class_sizes()) ensure(sz <= cap, "capped 3-colouring exceeds n/2");
    return c;
}

// Relabels colours so the largest class gets targets[0], the middle one
// targets[1], and the smallest targets[2]; ties keep the lower colour first.
inline std::vector<int> rank_classes(const Coloring& c) {
    auto sz = c.class_sizes();
    std::vector<int> idx{0, 1, 2};
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return sz[static_cast<size_t>(a)] > sz[static_cast<size_t>(b)]; });
    return idx;
}

}  // namespace equicolor
