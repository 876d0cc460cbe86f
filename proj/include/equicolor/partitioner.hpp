#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "graph.hpp"
#include "graph_core.hpp"

namespace equicolor {

// Degree at which a vertex counts as bad during saturation.
inline int bad_threshold(int n) { return 2 * ceil_div(n, 6) + 3; }

// The per-vertex cap of the two-forest partition.
inline int partition_cap(int n, int degree) { return std::max(ceil_div(n, 6) + 1, degree / 2); }

struct SaturationResult {
    Graph supergraph;
    std::vector<Edge> added_edges;
    std::vector<std::pair<int, int>> exceptional;  // (vertex, final degree), at most two
    std::vector<int> phase_log;                    // phases that added edges, subset of {1,2,3}
};

namespace detail {

class Saturator {
public:
    explicit Saturator(const Graph& g) : orig_(g), g_(g), T_(bad_threshold(g.n())), forced_(static_cast<size_t>(g.n()), 0) {
        g_.clear_outer_order();
    }

    SaturationResult run() {
        int n = g_.n();
        if (n >= 3) {
            while (g_.m() < static_cast<size_t>(2 * n - 3)) {
                join_components();
                while (join_blocks(false)) {}
                triangulate_blocks();
                if (g_.m() == static_cast<size_t>(2 * n - 3)) break;
                // Nothing left that avoids bad vertices.
                if (!join_blocks(true)) force_chord();
            }
        } else if (n == 2) {
            add(0, 1, 1);
        }
        auto order = compute_outer_order(g_);
        ensure(order.has_value(), "saturation left outerplanarity");
        g_.set_outer_order(*order);
        SaturationResult r;
        r.supergraph = g_;
        r.added_edges = added_;
        r.phase_log.assign(phases_.begin(), phases_.end());
        for (int v = 0; v < n; ++v)
            if (g_.degree(v) > T_) r.exceptional.emplace_back(v, g_.degree(v));
        std::stable_sort(r.exceptional.begin(), r.exceptional.end(), [](auto a, auto b) { return a.second > b.second; });
        audit(r);
        return r;
    }

private:
    bool bad(int v) const { return g_.degree(v) >= T_; }

    void add(int a, int b, int phase) {
        if (!g_.add_edge(a, b)) return;
        added_.push_back(make_edge(a, b));
        phases_.insert(phase);
        if (phase > 1)
            for (int x : {a, b})
                if (bad(x) || g_.degree(x) > T_) ++forced_[static_cast<size_t>(x)];
    }

    void join_components() {
        auto comps = components(g_);
        auto pick = [&](const std::vector<int>& c) {
            int best = -1;
            for (int v : c)
                if (!bad(v) && (best < 0 || g_.degree(v) < g_.degree(best))) best = v;
            return best < 0 ? c.front() : best;
        };
        for (size_t i = 1; i < comps.size(); ++i) {
            int u = pick(comps[i - 1]), v = pick(comps[i]);
            add(u, v, 1);
        }
    }

    // Blocks with their Hamiltonian cycles.
    std::vector<std::vector<int>> block_cycles() const {
        auto blks = blocks(g_);
        std::vector<int> loc(static_cast<size_t>(g_.n()), -1);
        std::vector<std::vector<int>> out;
        for (const auto& b : blks) {
            auto c = block_cycle(g_, b, loc);
            if (!c) fail(ErrorKind::NotOuterplanar, "a block has no Hamiltonian outer cycle");
            out.push_back(std::move(*c));
        }
        return out;
    }

    // Edges between the outer neighbours of a cut vertex in two of its
    // blocks. Unforced, one pass adds many edges, best keys first: a join at
    // c with ends x, y only changes the outer-cycle neighbours of c, x and y,
    // so later joins avoiding those three still see current cycles. With
    // `forced`, one edge is added and bad endpoints are allowed (fewest first).
    bool join_blocks(bool forced) {
        auto cyc = block_cycles();
        if (cyc.size() <= 1) return false;
        std::vector<std::vector<int>> at(static_cast<size_t>(g_.n()));
        for (size_t i = 0; i < cyc.size(); ++i)
            for (int v : cyc[i]) at[static_cast<size_t>(v)].push_back(static_cast<int>(i));
        auto ends = [&](int b, int c) {
            const auto& cy = cyc[static_cast<size_t>(b)];
            if (cy.size() == 2) return std::vector<int>{cy[0] == c ? cy[1] : cy[0]};
            auto k = cy.size();
            auto i = static_cast<size_t>(std::find(cy.begin(), cy.end(), c) - cy.begin());
            return std::vector<int>{cy[(i + 1) % k], cy[(i + k - 1) % k]};
        };
        using Key = std::tuple<int, int, int, int, int, int, int, int>;  // nbad, forced, degree, x, y, c, blocks
        std::vector<Key> cand;
        for (int c = 0; c < g_.n(); ++c) {
            const auto& bl = at[static_cast<size_t>(c)];
            for (size_t i = 0; i < bl.size(); ++i)
                for (size_t j = i + 1; j < bl.size(); ++j)
                    for (int x : ends(bl[i], c))
                        for (int y : ends(bl[j], c)) {
                            int nbad = bad(x) + bad(y);
                            if (!forced && nbad) continue;
                            int f = std::max(bad(x) ? forced_[static_cast<size_t>(x)] : 0, bad(y) ? forced_[static_cast<size_t>(y)] : 0);
                            cand.emplace_back(nbad, f, std::max(g_.degree(x), g_.degree(y)), std::min(x, y), std::max(x, y), c, bl[i], bl[j]);
                        }
        }
        if (cand.empty()) return false;
        std::sort(cand.begin(), cand.end());
        if (forced) {
            add(std::get<3>(cand[0]), std::get<4>(cand[0]), 2);
            return true;
        }
        std::vector<char> touched(static_cast<size_t>(g_.n()), 0);
        std::vector<int> uf(cyc.size());
        std::iota(uf.begin(), uf.end(), 0);
        auto find = [&](int b) {
            while (uf[static_cast<size_t>(b)] != b) b = uf[static_cast<size_t>(b)] = uf[static_cast<size_t>(uf[static_cast<size_t>(b)])];
            return b;
        };
        bool any = false;
        for (const auto& [nbad, f, d, x, y, c, bi, bj] : cand) {
            int ri = find(bi), rj = find(bj);
            if (ri == rj || bad(x) || bad(y)) continue;
            if (touched[static_cast<size_t>(c)] || touched[static_cast<size_t>(x)] || touched[static_cast<size_t>(y)]) continue;
            touched[static_cast<size_t>(c)] = touched[static_cast<size_t>(x)] = touched[static_cast<size_t>(y)] = 1;
            uf[static_cast<size_t>(ri)] = rj;
            add(x, y, 1);
            any = true;
        }
        return any;
    }

    // Ear-cutting inside every inner face of every block, never touching a
    // bad vertex. Faces left with two consecutive bad vertices are recorded.
    void triangulate_blocks() {
        stuck_.clear();
        for (const auto& cy : block_cycles()) {
            if (cy.size() < 4) continue;
            std::vector<int> sorted = cy;
            std::sort(sorted.begin(), sorted.end());
            Graph h = g_.induced(sorted);
            std::vector<int> order;
            for (int v : cy) order.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()));
            for (auto face : inner_faces(h, order)) {
                for (int& v : face) v = sorted[static_cast<size_t>(v)];
                cut_ears(face);
            }
        }
    }

    void cut_ears(std::vector<int> p) {
        while (p.size() >= 4) {
            size_t k = p.size();
            std::tuple<int, int, int, size_t> best{3, 0, 0, 0};
            for (size_t i = 0; i < k; ++i) {
                int a = p[(i + k - 1) % k], v = p[i], b = p[(i + 1) % k];
                if (bad(a) || bad(b)) continue;
                // An ear at a bad vertex costs it nothing.
                std::tuple<int, int, int, size_t> key{bad(v) ? 0 : 1, std::max(g_.degree(a), g_.degree(b)) + 1, std::min(a, b), i};
                if (key < best) best = key;
            }
            if (std::get<0>(best) == 3) {
                stuck_.push_back(p);
                return;
            }
            size_t i = std::get<3>(best);
            add(p[(i + k - 1) % k], p[(i + 1) % k], 1);
            p.erase(p.begin() + static_cast<long>(i));
        }
    }

    void force_chord() {
        std::tuple<int, int, int, int> best{1 << 30, 0, -1, -1};
        for (const auto& p : stuck_) {
            size_t k = p.size();
            for (size_t i = 0; i < k; ++i) {
                int a = p[(i + k - 1) % k], b = p[(i + 1) % k];
                int nbad = bad(a) + bad(b);
                int f = std::max(bad(a) ? forced_[static_cast<size_t>(a)] : 0, bad(b) ? forced_[static_cast<size_t>(b)] : 0);
                std::tuple<int, int, int, int> key{nbad * 4 + f, std::max(g_.degree(a), g_.degree(b)), std::min(a, b), std::max(a, b)};
                if (key < best) best = key;
            }
        }
        ensure(std::get<2>(best) >= 0, "saturation stalled below 2n-3 edges");
        add(std::get<2>(best), std::get<3>(best), 3);
    }

    // Degree bounds of the supergraph; breaches are counted, not thrown, so the
    // caller's own verification decides.
    void audit(const SaturationResult& r) const {
        int extra = 0;
        if (r.exceptional.size() > 2) extra += static_cast<int>(r.exceptional.size()) - 2;
        int tight = 0;
        for (auto [w, d] : r.exceptional) {
            int bound = std::max(T_ + 1, orig_.degree(w) + 1);
            if (d > bound) ++extra;
            if (d == bound) ++tight;
        }
        if (tight == 2 && !g_.has_edge(r.exceptional[0].first, r.exceptional[1].first)) ++extra;
        telemetry().saturation_extra_bad_edges += static_cast<std::uint64_t>(extra);
    }

    const Graph& orig_;
    Graph g_;
    int T_;
    std::vector<int> forced_;
    std::vector<Edge> added_;
    std::set<int> phases_;
    std::vector<std::vector<int>> stuck_;
};

}  // namespace detail

// Maximal outerplanar supergraph in which at most two vertices exceed
// 2*ceil(n/6)+3, each by at most one edge over max(threshold, original degree).
inline SaturationResult saturate_with_degree_control(const Graph& g) {
    if (!validate_embedding(g).is_outerplanar) fail(ErrorKind::NotOuterplanar, "saturation needs an outerplanar graph");
    if (g.n() >= 3 && g.m() == static_cast<size_t>(2 * g.n() - 3)) {
        SaturationResult r;
        r.supergraph = embedded(g);
        int T = bad_threshold(g.n());
        for (int v = 0; v < g.n(); ++v)
            if (g.degree(v) > T) r.exceptional.emplace_back(v, g.degree(v));
        std::stable_sort(r.exceptional.begin(), r.exceptional.end(), [](auto a, auto b) { return a.second > b.second; });
        return r;
    }
    return detail::Saturator(g).run();
}

struct ReducibleConfig {
    enum class Kind { A, B };
    Kind kind = Kind::A;
    // A: x1 is the 2-vertex, x2 its 3-neighbour, y1 their common neighbour and
    // y2 the last neighbour of x2. B: v is the 4-vertex, x1 and x2 its
    // 2-neighbours, x1~y1, x2~y2, and y1y2 is an edge. v is -1 for kind A.
    int v = -1, x1 = -1, x2 = -1, y1 = -1, y2 = -1;

    std::vector<int> vertices() const {
        if (kind == Kind::A) return {x2, x1};
        return {v, x1, x2};
    }
    bool touches(int a) const { return a == x1 || a == x2 || a == v; }
};

namespace detail {

// Mutable adjacency for peeling configurations off a maximal outerplanar graph.
class Peeler {
public:
    explicit Peeler(const Graph& h) : adj_(static_cast<size_t>(h.n())), alive_(static_cast<size_t>(h.n()), 1), count_(h.n()) {
        for (int v = 0; v < h.n(); ++v) adj_[static_cast<size_t>(v)] = h.neighbors(v);
    }

    int degree(int v) const { return static_cast<int>(adj_[static_cast<size_t>(v)].size()); }
    const std::vector<int>& nbrs(int v) const { return adj_[static_cast<size_t>(v)]; }
    bool alive(int v) const { return alive_[static_cast<size_t>(v)]; }
    int count() const { return count_; }

    bool adjacent(int a, int b) const {
        const auto& l = adj_[static_cast<size_t>(a)];
        return std::find(l.begin(), l.end(), b) != l.end();
    }

    // Configuration using the 2-vertex x as x1 (or as x1 of kind B), avoiding
    // the vertices a and b.
    std::optional<ReducibleConfig> config_at(int x, int a, int b) const {
        if (!alive(x) || degree(x) != 2 || x == a || x == b) return std::nullopt;
        const auto& nx = nbrs(x);
        for (int side = 0; side < 2; ++side) {
            int p = nx[static_cast<size_t>(side)], q = nx[static_cast<size_t>(1 - side)];
            if (p == a || p == b) continue;
            if (degree(p) == 3) {
                ReducibleConfig c;
                c.kind = ReducibleConfig::Kind::A;
                c.x1 = x;
                c.x2 = p;
                c.y1 = q;
                for (int w : nbrs(p))
                    if (w != x && w != q) c.y2 = w;
                return c;
            }
            if (degree(p) == 4) {
                for (int r : nbrs(p)) {
                    if (r == x || r == q || degree(r) != 2 || r == a || r == b) continue;
                    ReducibleConfig c;
                    c.kind = ReducibleConfig::Kind::B;
                    c.v = p;
                    c.x1 = x;
                    c.y1 = q;
                    c.x2 = r;
                    for (int w : nbrs(r))
                        if (w != p) c.y2 = w;
                    return c;
                }
            }
        }
        return std::nullopt;
    }

    void remove(int v) {
        alive_[static_cast<size_t>(v)] = 0;
        --count_;
        for (int w : adj_[static_cast<size_t>(v)]) {
            auto& l = adj_[static_cast<size_t>(w)];
            l.erase(std::find(l.begin(), l.end(), v));
        }
        adj_[static_cast<size_t>(v)].clear();
    }

private:
    std::vector<std::vector<int>> adj_;
    std::vector<char> alive_;
    int count_;
};

}  // namespace detail

// True when c's degrees and edges match its kind in h.
inline bool config_valid(const Graph& h, const ReducibleConfig& c) {
    auto deg = [&](int v) { return v >= 0 && v < h.n() ? h.degree(v) : -1; };
    if (c.kind == ReducibleConfig::Kind::A)
        return deg(c.x1) == 2 && deg(c.x2) == 3 && h.has_edge(c.x1, c.x2) && h.has_edge(c.x1, c.y1) &&
               h.has_edge(c.x2, c.y1) && h.has_edge(c.x2, c.y2) && c.y1 != c.y2;
    return deg(c.v) == 4 && deg(c.x1) == 2 && deg(c.x2) == 2 && h.has_edge(c.v, c.x1) && h.has_edge(c.v, c.x2) &&
           h.has_edge(c.x1, c.y1) && h.has_edge(c.x2, c.y2) && h.has_edge(c.y1, c.y2) && h.has_edge(c.v, c.y1) &&
           h.has_edge(c.v, c.y2);
}

namespace detail {

// Config at the end (v*, w*) of a longest path in the weak dual.
inline std::optional<ReducibleConfig> config_from_dual_end(const Graph& h, const DualTree& t, int vs, int ws) {
    const auto& fv = t.faces[static_cast<size_t>(vs)];
    const auto& fw = t.faces[static_cast<size_t>(ws)];
    auto in = [](const std::array<int, 3>& f, int x) { return std::find(f.begin(), f.end(), x) != f.end(); };
    std::vector<int> shared;
    int x1 = -1;
    for (int x : fv) (in(fw, x) ? shared.push_back(x) : void(x1 = x));
    if (shared.size() != 2) return std::nullopt;
    int c = -1;
    for (int x : fw)
        if (!in(fv, x)) c = x;
    ReducibleConfig cfg;
    const auto& nb = t.adj[static_cast<size_t>(ws)];
    if (nb.size() <= 2) {
        // x2 is the shared vertex not on w*'s other shared edge.
        int x2 = shared[0], y1 = shared[1];
        for (int u : nb) {
            if (u == vs) continue;
            if (!in(t.faces[static_cast<size_t>(u)], shared[1])) std::swap(x2, y1);
        }
        cfg.kind = ReducibleConfig::Kind::A;
        cfg.x1 = x1;
        cfg.x2 = x2;
        cfg.y1 = y1;
        cfg.y2 = c;
    } else {
        int us = -1;
        for (int u : nb)
            if (u != vs && t.adj[static_cast<size_t>(u)].size() == 1) us = u;
        if (us < 0) return std::nullopt;
        const auto& fu = t.faces[static_cast<size_t>(us)];
        int v = in(fu, shared[0]) ? shared[0] : shared[1];
        cfg.kind = ReducibleConfig::Kind::B;
        cfg.v = v;
        cfg.x1 = x1;
        cfg.y1 = shared[0] == v ? shared[1] : shared[0];
        for (int x : fu)
            if (!in(fw, x)) cfg.x2 = x;
        cfg.y2 = c;
    }
    if (!config_valid(h, cfg)) return std::nullopt;
    return cfg;
}

inline std::vector<int> dual_longest_path(const DualTree& t) {
    auto bfs = [&](int s, std::vector<int>& par) {
        std::vector<int> dist(static_cast<size_t>(t.size()), -1), q{s};
        par.assign(static_cast<size_t>(t.size()), -1);
        dist[static_cast<size_t>(s)] = 0;
        for (size_t h = 0; h < q.size(); ++h)
            for (int u : t.adj[static_cast<size_t>(q[h])])
                if (dist[static_cast<size_t>(u)] < 0) {
                    dist[static_cast<size_t>(u)] = dist[static_cast<size_t>(q[h])] + 1;
                    par[static_cast<size_t>(u)] = q[h];
                    q.push_back(u);
                }
        return q.back();
    };
    std::vector<int> par;
    int a = bfs(0, par);
    int b = bfs(a, par);
    std::vector<int> path;
    for (int x = b; x >= 0; x = par[static_cast<size_t>(x)]) path.push_back(x);
    return path;
}

}  // namespace detail

// A 3-vertex with a 2-neighbour (A) or a 4-vertex with two 2-neighbours (B),
// avoiding both endpoints of e when e is given.
inline ReducibleConfig find_reducible(const Graph& h0, const std::optional<Edge>& e = std::nullopt) {
    if (h0.n() < 4) fail(ErrorKind::TooSmall, "reducible configurations need at least 4 vertices");
    if (e && h0.n() < 5) fail(ErrorKind::TooSmall, "avoiding an edge needs at least 5 vertices");
    Graph h = h0.has_embedding() ? h0 : embedded(h0);
    DualTree t = weak_dual(h);
    int a = e ? e->u : -1, b = e ? e->v : -1;
    auto path = detail::dual_longest_path(t);
    for (int end = 0; end < 2; ++end) {
        int vs = end == 0 ? path.front() : path.back();
        int ws = end == 0 ? path[1] : path[path.size() - 2];
        auto c = detail::config_from_dual_end(h, t, vs, ws);
        if (c && !c->touches(a) && !c->touches(b)) return *c;
    }
    if (e) {
        // Ladder case: recurse on a component beyond N[{a,b}] together with
        // its two attachment vertices and one endpoint of e.
        std::vector<char> near(static_cast<size_t>(h.n()), 0);
        for (int w : {a, b}) {
            near[static_cast<size_t>(w)] = 1;
            for (int x : h.neighbors(w)) near[static_cast<size_t>(x)] = 1;
        }
        std::vector<char> seen(static_cast<size_t>(h.n()), 0);
        for (int s = 0; s < h.n(); ++s) {
            if (near[static_cast<size_t>(s)] || seen[static_cast<size_t>(s)]) continue;
            std::vector<int> comp{s}, attach;
            seen[static_cast<size_t>(s)] = 1;
            for (size_t i = 0; i < comp.size(); ++i)
                for (int x : h.neighbors(comp[i])) {
                    if (near[static_cast<size_t>(x)]) attach.push_back(x);
                    else if (!seen[static_cast<size_t>(x)]) {
                        seen[static_cast<size_t>(x)] = 1;
                        comp.push_back(x);
                    }
                }
            std::sort(attach.begin(), attach.end());
            attach.erase(std::unique(attach.begin(), attach.end()), attach.end());
            if (comp.size() < 2 || attach.size() != 2) continue;
            int x1 = attach[0], x2 = attach[1];
            int w = -1;
            for (int c : {a, b})
                if (h.has_edge(c, x1) && h.has_edge(c, x2)) w = c;
            if (w < 0 || !h.has_edge(x1, x2)) continue;
            std::vector<int> vs = comp;
            vs.push_back(w);
            vs.push_back(x1);
            vs.push_back(x2);
            std::sort(vs.begin(), vs.end());
            Graph sub = h.induced(vs);
            sub.clear_outer_order();
            if (sub.m() != static_cast<size_t>(2 * sub.n() - 3)) continue;
            auto idx = [&](int v) { return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
            ReducibleConfig c = find_reducible(sub, make_edge(idx(x1), idx(x2)));
            for (int* f : {&c.v, &c.x1, &c.x2, &c.y1, &c.y2})
                if (*f >= 0) *f = vs[static_cast<size_t>(*f)];
            if (config_valid(h, c) && !c.touches(a) && !c.touches(b)) return c;
        }
    }
    // Direct scan over 2-vertices.
    detail::Peeler p(h);
    for (int x = 0; x < h.n(); ++x)
        if (auto c = p.config_at(x, a, b)) return *c;
    fail(ErrorKind::NoConfigAvoidingE, "no reducible configuration avoids the specified edge");
}

namespace detail {

// Puts a peeled configuration back, given parts for y1 and y2.
inline void unwind_config(const ReducibleConfig& c, std::vector<int>& part, int size[2]) {
    auto put = [&](int v, int i) {
        part[static_cast<size_t>(v)] = i;
        ++size[i];
    };
    if (c.kind == ReducibleConfig::Kind::A) {
        int py = part[static_cast<size_t>(c.y2)];
        put(c.x1, py);
        put(c.x2, 1 - py);
    } else {
        int s = size[0] <= size[1] ? 0 : 1;
        if (part[static_cast<size_t>(c.y1)] == s || part[static_cast<size_t>(c.y2)] == s) {
            put(c.x1, s);
            put(c.x2, s);
            put(c.v, 1 - s);
        } else {
            put(c.v, s);
            put(c.x2, s);
            put(c.x1, 1 - s);
        }
    }
}

// Brute force over 2-colourings of a graph with at most 6 vertices.
inline std::optional<std::vector<int>> small_halfdeg_partition(const Graph& h, const std::vector<int>& cap) {
    int n = h.n();
    for (int mask = 0; mask < (1 << n); ++mask) {
        int ones = __builtin_popcount(static_cast<unsigned>(mask));
        if (std::abs(n - 2 * ones) > 1) continue;
        std::vector<int> part(static_cast<size_t>(n));
        for (int v = 0; v < n; ++v) part[static_cast<size_t>(v)] = (mask >> v) & 1;
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) ok = degree_within(h, part, v) <= cap[static_cast<size_t>(v)];
        if (!ok) continue;
        auto fp = make_partition(n, 2, part);
        if (check_forest_partition(h, fp, true).empty()) return part;
    }
    return std::nullopt;
}

}  // namespace detail

// Balanced two-forest partition of a maximal outerplanar graph with
// d_Fi(v) <= floor(d(v)/2), and floor((d(v)-1)/2) at the endpoints of e.
inline ForestPartition forest_equipartition_halfdeg(const Graph& h, const Edge& e) {
    int n = h.n();
    if (n < 3 || h.m() != static_cast<size_t>(2 * n - 3) || !validate_embedding(h).is_maximal)
        fail(ErrorKind::NotMaximal, "half-degree partition needs a maximal outerplanar graph");
    if (!h.has_edge(e.u, e.v)) fail(ErrorKind::InvalidArgument, "specified edge is not in the graph");
    std::vector<int> cap(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) cap[static_cast<size_t>(v)] = h.degree(v) / 2;
    if (n >= 4)
        for (int w : {e.u, e.v}) cap[static_cast<size_t>(w)] = (h.degree(w) - 1) / 2;

    detail::Peeler p(h);
    std::vector<ReducibleConfig> peeled;
    std::vector<int> stack;
    for (int v = n - 1; v >= 0; --v)
        if (p.degree(v) == 2) stack.push_back(v);
    bool rescanned = false;
    while (p.count() > 6) {
        std::optional<ReducibleConfig> c;
        while (!stack.empty() && !c) {
            int x = stack.back();
            stack.pop_back();
            c = p.config_at(x, e.u, e.v);
        }
        if (!c) {
            // The scanner should never run dry; rescan once, then defer to the
            // dual-tree search on the remaining graph.
            if (!rescanned) {
                rescanned = true;
                for (int v = n - 1; v >= 0; --v)
                    if (p.alive(v) && p.degree(v) == 2) stack.push_back(v);
                continue;
            }
            std::vector<int> vs;
            for (int v = 0; v < n; ++v)
                if (p.alive(v)) vs.push_back(v);
            Graph rest = h.induced(vs);
            rest.clear_outer_order();
            auto idx = [&](int v) { return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
            ReducibleConfig r = find_reducible(rest, make_edge(idx(e.u), idx(e.v)));
            for (int* f : {&r.v, &r.x1, &r.x2, &r.y1, &r.y2})
                if (*f >= 0) *f = vs[static_cast<size_t>(*f)];
            c = r;
        }
        rescanned = false;
        peeled.push_back(*c);
        for (int v : c->vertices()) p.remove(v);
        for (int y : {c->y1, c->y2}) {
            if (p.degree(y) == 2) stack.push_back(y);
            for (int w : p.nbrs(y))
                if (p.degree(w) == 2) stack.push_back(w);
        }
    }
    std::vector<int> base;
    for (int v = 0; v < n; ++v)
        if (p.alive(v)) base.push_back(v);
    Graph hb = h.induced(base);
    std::vector<int> bcap(base.size());
    auto bidx = [&](int v) { return static_cast<int>(std::lower_bound(base.begin(), base.end(), v) - base.begin()); };
    for (size_t i = 0; i < base.size(); ++i) bcap[i] = hb.degree(static_cast<int>(i)) / 2;
    if (base.size() >= 4)
        for (int w : {e.u, e.v}) bcap[static_cast<size_t>(bidx(w))] = (hb.degree(bidx(w)) - 1) / 2;
    auto small = detail::small_halfdeg_partition(hb, bcap);
    ensure(small.has_value(), "no base-case partition for a small maximal outerplanar graph");

    std::vector<int> part(static_cast<size_t>(n), -1);
    int size[2] = {0, 0};
    for (size_t i = 0; i < base.size(); ++i) {
        part[static_cast<size_t>(base[i])] = (*small)[i];
        ++size[(*small)[i]];
    }
    for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) detail::unwind_config(*it, part, size);
    ForestPartition fp = make_partition(n, 2, part);
    fp.degree_caps = cap;
    auto msg = check_forest_partition(h, fp, true);
    ensure(msg.empty(), "half-degree partition: " + msg);
    return fp;
}

// Balanced two-forest partition of an outerplanar graph with
// d_Fi(v) <= max(ceil(n/6)+1, floor(d(v)/2)).
inline ForestPartition partition_lemma(const Graph& g) {
    int n = g.n();
    if (!validate_embedding(g).is_outerplanar) fail(ErrorKind::NotOuterplanar, "partition needs an outerplanar graph");
    std::vector<int> part(static_cast<size_t>(n), 0);
    if (n >= 3) {
        auto sat = saturate_with_degree_control(g);
        const Graph& h = sat.supergraph;
        int T = bad_threshold(n);
        // Vertices that need the stronger cap: above the threshold and above
        // their original degree.
        std::vector<int> need;
        for (auto [w, d] : sat.exceptional)
            if (d > T && d > g.degree(w)) need.push_back(w);
        Edge e = h.edges().front();
        if (need.size() >= 2 && h.has_edge(need[0], need[1])) {
            e = make_edge(need[0], need[1]);
        } else if (!need.empty() || !sat.exceptional.empty()) {
            int w = need.empty() ? sat.exceptional.front().first : need.front();
            int mate = h.neighbors(w).front();
            for (auto [x, d] : sat.exceptional)
                if (x != w && h.has_edge(w, x)) mate = x;
            e = make_edge(w, mate);
        }
        part = forest_equipartition_halfdeg(h, e).part_of;
    } else {
        for (int v = 0; v < n; ++v) part[static_cast<size_t>(v)] = v % 2;
    }
    ForestPartition fp = make_partition(n, 2, part);
    fp.degree_caps.resize(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) fp.degree_caps[static_cast<size_t>(v)] = partition_cap(n, g.degree(v));
    auto msg = check_forest_partition(g, fp, true);
    ensure(msg.empty(), "two-forest partition: " + msg);
    return fp;
}

}  // namespace equicolor
