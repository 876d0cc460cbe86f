#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "forest_coloring.hpp"
#include "graph.hpp"
#include "graph_core.hpp"
#include "oracle.hpp"
#include "partitioner.hpp"

namespace equicolor {

// Target class sizes n_j = floor((n+j-1)/s), plus the running quotas used by
// the extension algorithm. Vectors are 1-based; index 0 is unused.
struct ColorBudget {
    int s = 6;
    std::vector<int> n_j, n_j_rem, n_j_blocked;

    static ColorBudget for_order(int n, int s = 6) {
        ColorBudget b;
        b.s = s;
        b.n_j.assign(static_cast<size_t>(s + 1), 0);
        for (int j = 1; j <= s; ++j) b.n_j[static_cast<size_t>(j)] = (n + j - 1) / s;
        b.n_j_rem = b.n_j;
        b.n_j_blocked.assign(static_cast<size_t>(s + 1), 0);
        return b;
    }
    int operator[](int j) const { return n_j[static_cast<size_t>(j)]; }
    int total() const { return std::accumulate(n_j.begin(), n_j.end(), 0); }
};

struct DangerReport {
    int threshold_dangerous = 0;  // 2 ceil(n/6) + 4
    int threshold_near = 0;       // 2 ceil(n/6) + 3
    std::vector<int> dangerous;
    std::vector<int> near;  // every vertex at or above threshold_near, by degree
};

struct HypothesisCheck {
    bool ok = true;
    int vertex = -1;  // the tightest vertex checked exactly
    int alpha = 0;    // its exact alpha_v
    int bound = 0;  // floor(n/s)
};

struct ColorReduction {
    std::vector<std::vector<int>> peels;  // original vertex ids, in peel order
    Graph residual;
    std::vector<int> residual_ids;  // residual vertex -> original vertex
    int s_final = 0;
};

struct TwoDangerousScratch {
    int w1 = -1, w2 = -1;
    std::vector<int> S1, S2, S1p, S2p, S1pp, S2pp;
    std::vector<int> y;  // residual vertices with a neighbour in both S1'' and S2''
    std::vector<int> residual;
};

struct OneDangerousScratch {
    int w = -1;
    std::vector<int> T;
    int alpha_T = 0;
    int a = 0, b = 0;  // T-paths of order 3 and 1 after paring
    std::vector<std::vector<int>> C;  // capped classes, largest first
    std::vector<int> peeled;  // vertices removed as configurations
    std::vector<int> part;    // final two-forest partition (w in part 0)
};

enum class ExtendMode { Plain, HighDegree, SmallT };

struct ExtendTrace {
    long six_steps = 0;
    long jumps_to_six = 0;
    long invariant_checks = 0;
    long invariant_violations = 0;
    std::vector<int> order;  // x_1..x_d
};

namespace detail {

inline std::vector<int> bfs_dist(const Graph& g, int src, int cap) {
    std::vector<int> d(static_cast<size_t>(g.n()), -1);
    std::deque<int> q{src};
    d[static_cast<size_t>(src)] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (d[static_cast<size_t>(v)] == cap) continue;
        for (int w : g.neighbors(v))
            if (d[static_cast<size_t>(w)] < 0) {
                d[static_cast<size_t>(w)] = d[static_cast<size_t>(v)] + 1;
                q.push_back(w);
            }
    }
    return d;
}

inline Graph with_embedding(const Graph& g) { return g.has_embedding() ? g : embedded(g); }

// Largest independent set containing v inside `allowed`, first in h and then,
// if it is too small, in the original graph g.
inline std::vector<int> set_through(const Graph& h, const Graph* g, int v, int want, const std::vector<char>& allowed) {
    auto s = max_independent_outerplanar(h, allowed, v);
    if ((!s || static_cast<int>(s->size()) < want) && g && g != &h) {
        ++telemetry().original_graph_set_searches;
        s = max_independent_outerplanar(with_embedding(*g), allowed, v);
    }
    if (!s || static_cast<int>(s->size()) < want)
        fail(ErrorKind::HypothesisViolated, "no independent set of size " + std::to_string(want) + " through " + std::to_string(v), v,
             s ? static_cast<long>(s->size()) : 0);
    std::vector<int> out{v};
    for (int x : *s)
        if (x != v && static_cast<int>(out.size()) < want) out.push_back(x);
    return out;
}

// Sizes must equal the budget exactly.
inline void check_budget_sizes(const Coloring& c, const ColorBudget& b, const std::string& where) {
    auto sz = c.class_sizes();
    for (int j = 1; j <= b.s; ++j)
        ensure(sz[static_cast<size_t>(j - 1)] == b[j], where + ": colour " + std::to_string(j) + " used " +
                                                          std::to_string(sz[static_cast<size_t>(j - 1)]) + " times, wanted " +
                                                          std::to_string(b[j]));
}

// Colours two vertex-disjoint forests of g with {1,2,3} and {4,5,6}.
inline Coloring colour_two_forests(const Graph& g, const std::vector<int>& part, const Graph* orig) {
    int n = g.n();
    Coloring out(6, n);
    for (int i = 0; i < 2; ++i) {
        std::vector<int> vs;
        for (int v = 0; v < n; ++v)
            if (part[static_cast<size_t>(v)] == i) vs.push_back(v);
        Graph f = g.induced(vs);
        f.clear_outer_order();
        Coloring c;
        try {
            c = equitable_color_forest(f, 3);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::HypothesisViolated || !orig || orig == &g) throw;
            ++telemetry().original_graph_set_searches;
            Graph fo = orig->induced(vs);
            fo.clear_outer_order();
            c = equitable_color_forest(fo, 3);
        }
        for (size_t k = 0; k < vs.size(); ++k) out.color[static_cast<size_t>(vs[k])] = c.color[k] + 3 * i;
    }
    return out;
}

}  // namespace detail

// alpha_v >= floor(n/s) for every v, reported as a value.
inline HypothesisCheck check_hypothesis(const Graph& g, int s) {
    if (s < 1) fail(ErrorKind::InvalidArgument, "colour count must be positive");
    HypothesisCheck r;
    int n = g.n();
    r.bound = n / s;
    if (n == 0) return r;
    // G - N[v] is outerplanar and so 3-colourable, which gives
    // alpha_v >= 1 + ceil((n - d(v) - 1)/3). Only vertices where that falls
    // short, and a maximum-degree vertex, need the exact value.
    Graph h = detail::with_embedding(g);
    int top = 0;
    for (int v = 1; v < n; ++v)
        if (g.degree(v) > g.degree(top)) top = v;
    r.alpha = n + 1;
    for (int v = 0; v < n; ++v) {
        if (v != top && 1 + ceil_div(n - g.degree(v) - 1, 3) >= r.bound) continue;
        int a = static_cast<int>(max_independent_outerplanar(h, {}, v)->size());
        if (a < r.alpha) {
            r.alpha = a;
            r.vertex = v;
        }
    }
    r.ok = r.alpha >= r.bound;
    // Same statement as s >= ceil((n+1)/(alpha+1)).
    ensure(r.ok == (s >= ceil_div(n + 1, r.alpha + 1)), "hypothesis forms disagree");
    return r;
}

inline DangerReport classify_danger(const Graph& g) {
    DangerReport r;
    int n = g.n();
    r.threshold_dangerous = 2 * ceil_div(n, 6) + 4;
    r.threshold_near = 2 * ceil_div(n, 6) + 3;
    for (int v = 0; v < n; ++v) {
        if (g.degree(v) >= r.threshold_near) r.near.push_back(v);
        if (g.degree(v) >= r.threshold_dangerous) r.dangerous.push_back(v);
    }
    auto by_degree = [&](int a, int b) { return g.degree(a) > g.degree(b); };
    std::stable_sort(r.near.begin(), r.near.end(), by_degree);
    std::stable_sort(r.dangerous.begin(), r.dangerous.end(), by_degree);
    ensure(r.near.size() <= 2, "three vertices at the near-danger threshold in an outerplanar graph");
    return r;
}

// Peels independent sets of size floor(n/s) through a maximum-degree vertex
// until six colours remain.
inline ColorReduction reduce_color_count(const Graph& g, int s) {
    if (s < 6) fail(ErrorKind::InvalidArgument, "colour reduction needs s >= 6");
    auto hyp = check_hypothesis(g, s);
    if (!hyp.ok)
        fail(ErrorKind::HypothesisViolated,
             "vertex " + std::to_string(hyp.vertex) + " has alpha_v " + std::to_string(hyp.alpha) + " < " + std::to_string(hyp.bound),
             hyp.vertex, hyp.alpha);
    ColorReduction r;
    r.residual = detail::with_embedding(g);
    r.residual_ids.resize(static_cast<size_t>(g.n()));
    std::iota(r.residual_ids.begin(), r.residual_ids.end(), 0);
    for (int cur = s; cur > 6; --cur) {
        const Graph& h = r.residual;
        int n = h.n();
        int v = 0;
        for (int x = 1; x < n; ++x)
            if (h.degree(x) > h.degree(v)) v = x;
        auto I = n > 0 ? detail::set_through(h, nullptr, v, n / cur, {}) : std::vector<int>{};
        if (n / cur == 0) I.clear();
        std::vector<int> peel;
        for (int x : I) peel.push_back(r.residual_ids[static_cast<size_t>(x)]);
        r.peels.push_back(peel);
        std::vector<int> keep = remaining_vertices(n, I);
        Graph next = h.induced(keep);
        next.clear_outer_order();
        std::vector<int> ids;
        for (int x : keep) ids.push_back(r.residual_ids[static_cast<size_t>(x)]);
        r.residual = detail::with_embedding(next);
        r.residual_ids = std::move(ids);
        ensure(check_hypothesis(r.residual, cur - 1).ok, "residual after a peel fails the hypothesis");
    }
    r.s_final = std::min(s, 6);
    return r;
}

// Six colours from the two-forest partition, one triple per forest.
inline Coloring color_zero_dangerous(const Graph& g) {
    int n = g.n();
    if (n <= 6) {
        Coloring c(6, n);
        for (int v = 0; v < n; ++v) c.color[static_cast<size_t>(v)] = v + 1;
        return c;
    }
    auto fp = partition_lemma(g);
    auto c = detail::colour_two_forests(g, fp.part_of, nullptr);
    verify_equitable_or_throw(g, c, "color_zero_dangerous");
    return c;
}

// Completes a colouring of V - N(w) over the neighbours x_1..x_d of w, taken
// in rotation order, cycling through the colours with a skip to 6 when
// colours 3..5 run short.
inline Coloring algorithm1_extend(const Graph& h0, int w, const Coloring& partial, ColorBudget budget,
                                  ExtendMode mode = ExtendMode::Plain, ExtendTrace* trace = nullptr) {
    Graph h = detail::with_embedding(h0);
    int n = h.n();
    ensure(budget.s == 6, "extension works with six colours");
    auto x = neighbors_in_rotation(h, w);
    int d = static_cast<int>(x.size());
    if (d >= 3) ensure(!h.has_edge(x.front(), x.back()), "first and last neighbours of w are adjacent");
    std::vector<int> idx(static_cast<size_t>(n), -1);
    for (int i = 0; i < d; ++i) idx[static_cast<size_t>(x[static_cast<size_t>(i)])] = i;
    Coloring c = partial;
    c.s = 6;
    auto& rem = budget.n_j_rem;
    rem = budget.n_j;
    for (int v = 0; v < n; ++v) {
        int col = c.color[static_cast<size_t>(v)];
        if (idx[static_cast<size_t>(v)] >= 0) ensure(col == 0, "a neighbour of w is already coloured");
        else ensure(col >= 1 && col <= 6, "vertex outside N(w) left uncoloured");
        if (col) --rem[static_cast<size_t>(col)];
    }
    for (int j = 1; j <= 6; ++j) ensure(rem[static_cast<size_t>(j)] >= 0, "partial colouring overfills colour " + std::to_string(j));

    // Blocked counts: coloured vertices off N[w] with a neighbour x_h, h >= i,
    // that have not yet turned away an attempt. Each such vertex blocks at most
    // one attempt with its colour, so it is spent once it has. With d(w) >= n/2
    // the colour-1 set through w is not part of the residual and is skipped.
    // The bound n_j' + n_j'' <= n_6' is only checked for colours still in
    // demand: once n_j' = 0 its blockers no longer matter.
    std::vector<std::vector<int>> expire(static_cast<size_t>(d + 1));
    std::vector<char> spent(static_cast<size_t>(n), 1);
    auto& blocked = budget.n_j_blocked;
    blocked.assign(7, 0);
    for (int v = 0; v < n; ++v) {
        if (v == w || idx[static_cast<size_t>(v)] >= 0) continue;
        if (mode == ExtendMode::HighDegree && c.color[static_cast<size_t>(v)] == 1) continue;
        int last = -1;
        for (int u : h.neighbors(v)) last = std::max(last, idx[static_cast<size_t>(u)]);
        if (last < 0) continue;
        ++blocked[static_cast<size_t>(c.color[static_cast<size_t>(v)])];
        spent[static_cast<size_t>(v)] = 0;
        expire[static_cast<size_t>(last)].push_back(v);
    }
    auto spend = [&](int v) {
        if (spent[static_cast<size_t>(v)]) return;
        spent[static_cast<size_t>(v)] = 1;
        --blocked[static_cast<size_t>(c.color[static_cast<size_t>(v)])];
    };

    int i = 0;
    ExtendTrace local;
    ExtendTrace& tr = trace ? *trace : local;
    tr.order = x;
    auto check = [&](bool ok) {
        ++tr.invariant_checks;
        ++telemetry().invariant_checks;
        if (!ok) {
            ++tr.invariant_violations;
            ++telemetry().invariant_violations;
            fail(ErrorKind::InternalAssertionFailed, "extension invariant broken at neighbour " + std::to_string(i + 1));
        }
    };
    auto R = [&](int j) { return rem[static_cast<size_t>(j)]; };

    int j = budget[6] == budget[5] ? 1 : 6;
    int fails = 0;
    while (i < d) {
        if (mode == ExtendMode::HighDegree && j != 6) check(R(5) == R(6));
        if (mode == ExtendMode::SmallT && j != 6) check(R(3) + R(4) + R(5) >= R(6));
        int xi = x[static_cast<size_t>(i)];
        bool ok = R(j) > 0;
        for (int u : h.neighbors(xi))
            if (ok && c.color[static_cast<size_t>(u)] == j) ok = false;
        if (ok && j == 6) {
            ++tr.six_steps;
            ++telemetry().extend_six_steps;
            if (mode == ExtendMode::HighDegree)
                for (int k = 1; k <= 5; ++k)
                    if (R(k) > 0) check(R(k) + blocked[static_cast<size_t>(k)] <= R(6));
            if (mode == ExtendMode::SmallT && R(3) > 0) check(R(3) + blocked[3] <= R(6));
        }
        if (ok) {
            c.color[static_cast<size_t>(xi)] = j;
            --rem[static_cast<size_t>(j)];
            fails = 0;
        } else {
            for (int u : h.neighbors(xi))
                if (c.color[static_cast<size_t>(u)] == j) spend(u);
            ensure(++fails <= 12, "extension stalled at neighbour " + std::to_string(i + 1) + " of w");
        }
        j = j % 6 + 1;
        if (R(3) + R(4) + R(5) < R(6) && j != 6) {
            j = 6;
            ++tr.jumps_to_six;
            ++telemetry().extend_jumps_to_six;
        }
        if (ok) {
            for (int v : expire[static_cast<size_t>(i)]) spend(v);
            ++i;
        }
    }
    if (mode == ExtendMode::HighDegree) check(tr.jumps_to_six == 0);
    // The seed colouring is the caller's to vouch for; check what was added.
    for (int xi : x)
        for (int u : h.neighbors(xi))
            ensure(c.color[static_cast<size_t>(u)] != c.color[static_cast<size_t>(xi)], "extension produced an improper colouring");
    detail::check_budget_sizes(c, budget, "algorithm1_extend");
    return c;
}

// Two vertices of degree at least 2 ceil(n/6) + 3. Colour 5 goes on w2 and a
// run of N(w1), colour 6 on w1 and a run of N(w2); the rest is 3-coloured and
// the alternate vertices of both runs take colours 1..4.
inline Coloring color_two_dangerous(const Graph& h0, int w1, int w2, TwoDangerousScratch* scratch = nullptr) {
    Graph h = detail::with_embedding(h0);
    int n = h.n();
    auto b = ColorBudget::for_order(n);
    int thr = bad_threshold(n);
    if (w1 == w2 || h.degree(w1) < thr || h.degree(w2) < thr)
        fail(ErrorKind::InvalidArgument, "two-dangerous case needs two vertices of degree >= " + std::to_string(thr));
    int W[2] = {w1, w2};
    std::vector<int> S[2];
    for (int i = 0; i < 2; ++i) {
        int wi = W[i], wo = W[1 - i];
        std::vector<char> blocked(static_cast<size_t>(n), 0);
        std::vector<int> M{wo};
        for (int u : h.neighbors(wo))
            if (u != wi) M.push_back(u);
        for (int u : M) {
            blocked[static_cast<size_t>(u)] = 1;
            for (int z : h.neighbors(u)) blocked[static_cast<size_t>(z)] = 1;
        }
        for (int u : neighbors_in_rotation(h, wi))
            if (!blocked[static_cast<size_t>(u)]) S[i].push_back(u);
    }
    const int len[2] = {b[1] + b[5] - 1, b[4] + b[6] - 1};
    for (int i = 0; i < 2; ++i)
        ensure(static_cast<int>(S[i].size()) >= len[i], "pruned neighbourhood of " + std::to_string(W[i]) + " has " +
                                                            std::to_string(S[i].size()) + " vertices, run needs " +
                                                            std::to_string(len[i]) + " (d = " + std::to_string(h.degree(W[i])) + ")");
    const int half[2] = {b[1], b[4]};

    std::vector<char> fixed(static_cast<size_t>(n), 0);  // S1', S2', w1, w2
    fixed[static_cast<size_t>(w1)] = fixed[static_cast<size_t>(w2)] = 1;
    auto window = [&](int i, int a, std::vector<int>& pp, std::vector<int>& rest) {
        pp.clear();
        rest.clear();
        for (int k = 0; k < len[i]; ++k) (k % 2 == 0 && k / 2 < half[i] ? pp : rest).push_back(S[i][static_cast<size_t>(a + k)]);
    };
    // Contacts of S'' with residual vertices: each vertex at most one, except
    // a single y with one neighbour on each side.
    std::vector<int> hits(static_cast<size_t>(n), 0), side(static_cast<size_t>(n), -1);
    std::vector<int> best_a{-1, -1};
    std::vector<int> pp[2], rest[2];
    auto in_window = [&](int i, int a, int v) {
        auto it = std::find(S[i].begin() + a, S[i].begin() + a + len[i], v);
        return it != S[i].begin() + a + len[i];
    };
    for (int a = 0; a + len[0] <= static_cast<int>(S[0].size()) && best_a[0] < 0; ++a) {
        for (int c2 = 0; c2 + len[1] <= static_cast<int>(S[1].size()); ++c2) {
            window(0, a, pp[0], rest[0]);
            window(1, c2, pp[1], rest[1]);
            std::vector<int> touched;
            bool ok = true;
            int ys = 0;
            for (int i = 0; i < 2 && ok; ++i)
                for (int u : pp[i])
                    for (int z : h.neighbors(u)) {
                        if (z == w1 || z == w2 || in_window(0, a, z) || in_window(1, c2, z)) continue;
                        if (hits[static_cast<size_t>(z)] == 0) touched.push_back(z);
                        if (++hits[static_cast<size_t>(z)] >= 2) {
                            if (hits[static_cast<size_t>(z)] > 2 || side[static_cast<size_t>(z)] == i || ++ys > 1) ok = false;
                        }
                        side[static_cast<size_t>(z)] = i;
                    }
            for (int z : touched) hits[static_cast<size_t>(z)] = 0, side[static_cast<size_t>(z)] = -1;
            if (ok) {
                best_a = {a, c2};
                break;
            }
        }
    }
    ensure(best_a[0] >= 0, "no pair of runs keeps S'' contacts apart");
    window(0, best_a[0], pp[0], rest[0]);
    window(1, best_a[1], pp[1], rest[1]);

    Coloring c(6, n);
    for (int u : rest[0]) c.color[static_cast<size_t>(u)] = 5;
    for (int u : rest[1]) c.color[static_cast<size_t>(u)] = 6;
    c.color[static_cast<size_t>(w2)] = 5;
    c.color[static_cast<size_t>(w1)] = 6;
    for (int i = 0; i < 2; ++i)
        for (int u : pp[i]) fixed[static_cast<size_t>(u)] = 1;
    for (int i = 0; i < 2; ++i)
        for (int u : rest[i]) fixed[static_cast<size_t>(u)] = 1;
    std::vector<int> residual;
    for (int v = 0; v < n; ++v)
        if (!fixed[static_cast<size_t>(v)]) residual.push_back(v);
    ensure(static_cast<int>(residual.size()) == b[2] + b[3], "residual order differs from n_2 + n_3");
    Graph gr = h.induced(residual);
    gr.clear_outer_order();
    Coloring c3 = three_color_capped(gr);
    auto rank = rank_classes(c3);
    const int target[3] = {3, 2, 1};
    std::vector<int> map(3);
    for (int k = 0; k < 3; ++k) map[static_cast<size_t>(rank[static_cast<size_t>(k)])] = target[k];
    for (size_t k = 0; k < residual.size(); ++k)
        c.color[static_cast<size_t>(residual[k])] = map[static_cast<size_t>(c3.color[k] - 1)];
    auto sz = c.class_sizes();
    for (int j = 1; j <= 3; ++j) ensure(sz[static_cast<size_t>(j - 1)] <= b[j], "residual class exceeds its quota");

    std::vector<int> free_set = pp[0];
    free_set.insert(free_set.end(), pp[1].begin(), pp[1].end());
    std::vector<int> used{0, sz[0], sz[1], sz[2]};
    for (int step = 0; step < b[1]; ++step) {
        int j = 1;
        while (used[static_cast<size_t>(j)] >= b[j]) ++j;
        int pick = -1;
        for (int z : free_set) {
            if (c.color[static_cast<size_t>(z)] != 0) continue;
            bool ok = true;
            for (int u : h.neighbors(z))
                if (c.color[static_cast<size_t>(u)] == j) { ok = false; break; }
            if (ok) { pick = z; break; }
        }
        ensure(pick >= 0, "greedy completion of colours 1..3 stalled");
        c.color[static_cast<size_t>(pick)] = j;
        ++used[static_cast<size_t>(j)];
    }
    for (int z : free_set)
        if (c.color[static_cast<size_t>(z)] == 0) c.color[static_cast<size_t>(z)] = 4;
    ensure(is_proper(h, c), "two-dangerous colouring is not proper");
    detail::check_budget_sizes(c, b, "color_two_dangerous");

    if (scratch) {
        scratch->w1 = w1;
        scratch->w2 = w2;
        scratch->S1 = S[0];
        scratch->S2 = S[1];
        scratch->S1pp = pp[0];
        scratch->S2pp = pp[1];
        scratch->S1p = pp[0];
        scratch->S1p.insert(scratch->S1p.end(), rest[0].begin(), rest[0].end());
        scratch->S2p = pp[1];
        scratch->S2p.insert(scratch->S2p.end(), rest[1].begin(), rest[1].end());
        scratch->residual = residual;
        scratch->y.clear();
        std::vector<int> cnt(static_cast<size_t>(n), 0);
        for (int z : free_set)
            for (int u : h.neighbors(z))
                if (!fixed[static_cast<size_t>(u)] && ++cnt[static_cast<size_t>(u)] == 2) scratch->y.push_back(u);
    }
    return c;
}

// d(w) >= n/2: colour 1 on an independent set through w, a capped 3-colouring
// of what is left off N(w) on 4, 3, 2, then extend over N(w).
inline Coloring color_one_dangerous_highdeg(const Graph& h0, int w, const Graph* orig = nullptr, ExtendTrace* trace = nullptr) {
    Graph h = detail::with_embedding(h0);
    int n = h.n();
    if (2 * h.degree(w) < n) fail(ErrorKind::InvalidArgument, "high-degree case needs d(w) >= n/2");
    auto b = ColorBudget::for_order(n);
    std::vector<char> allowed(static_cast<size_t>(n), 1);
    for (int u : h.neighbors(w)) allowed[static_cast<size_t>(u)] = 0;
    auto I1 = detail::set_through(h, orig, w, b[1], allowed);

    std::vector<char> out(static_cast<size_t>(n), 0);
    for (int u : h.neighbors(w)) out[static_cast<size_t>(u)] = 1;
    for (int u : I1) out[static_cast<size_t>(u)] = 1;
    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
        if (!out[static_cast<size_t>(v)]) rest.push_back(v);
    int k = n / 6, l = n - 6 * k;
    ensure(static_cast<int>(rest.size()) <= 2 * k + l / 2, "residual larger than 2k + floor(l/2)");

    Coloring c(6, n);
    for (int u : I1) c.color[static_cast<size_t>(u)] = 1;
    Graph gr = h.induced(rest);
    gr.clear_outer_order();
    Coloring c3 = three_color_capped(gr);
    auto rank = rank_classes(c3);
    const int target[3] = {4, 3, 2};
    std::vector<int> map(3);
    for (int q = 0; q < 3; ++q) map[static_cast<size_t>(rank[static_cast<size_t>(q)])] = target[q];
    for (size_t q = 0; q < rest.size(); ++q) c.color[static_cast<size_t>(rest[q])] = map[static_cast<size_t>(c3.color[q] - 1)];
    c = algorithm1_extend(h, w, c, b, ExtendMode::HighDegree, trace);
    ensure(is_proper(orig ? *orig : h, c), "high-degree colouring is not proper");
    return c;
}

// 2 ceil(n/6) + 4 <= d(w) < n/2 and alpha(G[T]) < floor(n/6): the capped
// classes of G - N[w] seed colours 1..3, their overflow seeds 4..6.
inline Coloring color_one_dangerous_smallT(const Graph& h0, int w, ExtendTrace* trace = nullptr,
                                           OneDangerousScratch* scratch = nullptr) {
    Graph h = detail::with_embedding(h0);
    int n = h.n();
    auto b = ColorBudget::for_order(n);
    if (h.degree(w) < 2 * ceil_div(n, 6) + 4 || 2 * h.degree(w) >= n)
        fail(ErrorKind::InvalidArgument, "small-T case needs 2 ceil(n/6) + 4 <= d(w) < n/2");
    auto dist = detail::bfs_dist(h, w, 2);
    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
        if (dist[static_cast<size_t>(v)] < 0 || dist[static_cast<size_t>(v)] >= 2) rest.push_back(v);
    Graph gr = h.induced(rest);
    gr.clear_outer_order();
    Coloring c3 = three_color_capped(gr);
    auto rank = rank_classes(c3);
    std::vector<std::vector<int>> C(3);
    for (size_t q = 0; q < rest.size(); ++q) {
        int cls = c3.color[q] - 1;
        int r = static_cast<int>(std::find(rank.begin(), rank.end(), cls) - rank.begin());
        C[static_cast<size_t>(r)].push_back(rest[q]);
    }
    auto inT = [&](int v) { return dist[static_cast<size_t>(v)] == 2; };
    // Members of T first, then the rest, so a cut keeps all of T.
    auto t_first = [&](std::vector<int> v) {
        std::stable_partition(v.begin(), v.end(), inT);
        return v;
    };
    Coloring c(6, n);
    c.color[static_cast<size_t>(w)] = 1;
    auto c1 = t_first(C[0]);
    ensure(static_cast<int>(c1.size()) >= b[1] - 1, "largest class too small for I_1");
    ensure(std::count_if(c1.begin(), c1.end(), inT) <= b[1] - 1, "T meets the largest class in too many vertices");
    for (size_t q = 0; q < c1.size(); ++q) c.color[static_cast<size_t>(c1[q])] = static_cast<int>(q) < b[1] - 1 ? 1 : 4;
    const int own[2] = {2, 3}, spill[2] = {5, 6};
    for (int r = 1; r <= 2; ++r) {
        auto cr = t_first(C[static_cast<size_t>(r)]);
        int quota = b[own[r - 1]];
        ensure(std::count_if(cr.begin(), cr.end(), inT) <= quota, "T meets a class in more vertices than its quota");
        for (size_t q = 0; q < cr.size(); ++q)
            c.color[static_cast<size_t>(cr[q])] = static_cast<int>(q) < quota ? own[r - 1] : spill[r - 1];
    }
    auto sz = c.class_sizes();
    for (int j = 1; j <= 6; ++j) ensure(sz[static_cast<size_t>(j - 1)] <= b[j], "seeded class exceeds its quota");
    std::vector<int> rem(7);
    for (int j = 1; j <= 6; ++j) rem[static_cast<size_t>(j)] = b[j] - sz[static_cast<size_t>(j - 1)];
    for (int j = 1; j <= 5; ++j) ensure(rem[6] >= rem[static_cast<size_t>(j)], "initial n_6' below another quota");
    if (rem[5] < rem[6] - 1) {
        int g2 = static_cast<int>(rest.size()) - (b[1] - 1) - sz[1];
        ensure(g2 <= b[3] + b[4] + b[5] - b[6] - 3, "G'' larger than n_3 + n_4 + n_5 - n_6 - 3");
    }
    if (scratch) {
        scratch->w = w;
        scratch->C = C;
    }
    c = algorithm1_extend(h, w, c, b, ExtendMode::SmallT, trace);
    ensure(is_proper(h, c), "small-T colouring is not proper");
    return c;
}

// d(w) >= 2 ceil(n/6) + 4 and alpha(G[T]) >= floor(n/6): a two-forest
// partition built around N[w] u T with a large independent set through w in
// the first forest, then an equitable 3-colouring of each forest.
inline Coloring color_one_dangerous_bigT(const Graph& h0, int w, OneDangerousScratch* scratch = nullptr,
                                         const Graph* orig = nullptr) {
    Graph h = detail::with_embedding(h0);
    int n = h.n();
    if (h.m() != static_cast<size_t>(2 * n - 3)) fail(ErrorKind::NotMaximal, "big-T case needs a maximal outerplanar graph");
    if (h.degree(w) < 2 * ceil_div(n, 6) + 4) fail(ErrorKind::InvalidArgument, "big-T case needs d(w) >= 2 ceil(n/6) + 4");
    for (int v = 0; v < n; ++v)
        if (v != w && h.degree(v) >= bad_threshold(n))
            fail(ErrorKind::InvalidArgument, "second vertex of degree " + std::to_string(h.degree(v)) + "; use the two-dangerous case", v);
    auto dist = detail::bfs_dist(h, w, 3);
    auto D = [&](int v) { return dist[static_cast<size_t>(v)]; };
    auto x = neighbors_in_rotation(h, w);
    int d = static_cast<int>(x.size());
    std::vector<int> xpos(static_cast<size_t>(n), -1);
    for (int i = 0; i < d; ++i) xpos[static_cast<size_t>(x[static_cast<size_t>(i)])] = i;

    // T-paths, in order of their first neighbour around w.
    std::vector<int> T;
    for (int v = 0; v < n; ++v)
        if (D(v) == 2) T.push_back(v);
    std::vector<std::vector<int>> paths;
    {
        std::vector<char> seen(static_cast<size_t>(n), 0);
        auto tdeg = [&](int v) {
            int k = 0;
            for (int u : h.neighbors(v)) k += D(u) == 2;
            return k;
        };
        for (int v : T) {
            if (seen[static_cast<size_t>(v)] || tdeg(v) > 1) continue;
            std::vector<int> p{v};
            seen[static_cast<size_t>(v)] = 1;
            for (int cur = v;;) {
                int nxt = -1;
                for (int u : h.neighbors(cur))
                    if (D(u) == 2 && !seen[static_cast<size_t>(u)]) nxt = u;
                if (nxt < 0) break;
                seen[static_cast<size_t>(nxt)] = 1;
                p.push_back(nxt);
                cur = nxt;
            }
            paths.push_back(p);
        }
        for (int v : T) ensure(seen[static_cast<size_t>(v)] && tdeg(v) <= 2, "T does not induce a linear forest");
    }
    auto first_x = [&](const std::vector<int>& p) {
        int best = d;
        for (int v : p)
            for (int u : h.neighbors(v))
                if (xpos[static_cast<size_t>(u)] >= 0) best = std::min(best, xpos[static_cast<size_t>(u)]);
        return best;
    };
    std::stable_sort(paths.begin(), paths.end(), [&](const auto& p, const auto& q) { return first_x(p) < first_x(q); });
    int alphaT = 0;
    for (const auto& p : paths) alphaT += static_cast<int>(p.size() + 1) / 2;
    if (alphaT < n / 6) fail(ErrorKind::InvalidArgument, "big-T case needs alpha(G[T]) >= floor(n/6)");

    // Peel configurations until everything beyond distance 2 is isolated.
    detail::Peeler pl(h);
    std::vector<ReducibleConfig> peeled;
    while (true) {
        std::vector<int> comp_of(static_cast<size_t>(n), -1);
        std::vector<int> big;
        for (int v = 0; v < n && big.empty(); ++v) {
            if (!pl.alive(v) || (D(v) >= 0 && D(v) <= 2) || comp_of[static_cast<size_t>(v)] >= 0) continue;
            std::vector<int> comp{v};
            comp_of[static_cast<size_t>(v)] = v;
            for (size_t q = 0; q < comp.size(); ++q)
                for (int u : pl.nbrs(comp[q]))
                    if ((D(u) < 0 || D(u) > 2) && comp_of[static_cast<size_t>(u)] < 0) {
                        comp_of[static_cast<size_t>(u)] = v;
                        comp.push_back(u);
                    }
            if (comp.size() >= 2) big = comp;
        }
        if (big.empty()) break;
        std::vector<int> att;
        for (int u : big)
            for (int z : pl.nbrs(u))
                if (D(z) >= 0 && D(z) <= 2 && std::find(att.begin(), att.end(), z) == att.end()) att.push_back(z);
        ensure(att.size() == 2 && pl.adjacent(att[0], att[1]), "outer component does not hang off a single edge");
        int xc = -1;
        for (int z : pl.nbrs(att[0]))
            if (D(z) == 1 && pl.adjacent(z, att[1])) xc = z;
        ensure(xc >= 0, "attachment edge has no common neighbour in N(w)");
        std::vector<int> vs = big;
        vs.push_back(xc);
        vs.push_back(att[0]);
        vs.push_back(att[1]);
        std::sort(vs.begin(), vs.end());
        auto at = [&](int v) { return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
        Graph hc = h.induced(vs);
        hc.clear_outer_order();
        ReducibleConfig r = find_reducible(hc, make_edge(at(att[0]), at(att[1])));
        for (int* f : {&r.v, &r.x1, &r.x2, &r.y1, &r.y2})
            if (*f >= 0) *f = vs[static_cast<size_t>(*f)];
        for (int u : r.vertices()) ensure(comp_of[static_cast<size_t>(u)] == big.front(), "configuration leaves the outer component");
        peeled.push_back(r);
        for (int u : r.vertices()) pl.remove(u);
    }
    std::vector<int> Z;
    for (int v = 0; v < n; ++v)
        if (pl.alive(v) && (D(v) < 0 || D(v) > 2)) Z.push_back(v);

    // Pare each T-path to order 3, 1 or 0 without touching its vertex with
    // two neighbours in N(w).
    struct Pare {
        int e, f, g;  // g < 0: the pair (e, f) = (t, u) closing an order-2 path
        int xo;
    };
    std::vector<Pare> pares;
    std::vector<std::vector<int>> kept;
    auto xdeg = [&](int v) {
        int k = 0;
        for (int u : h.neighbors(v)) k += D(u) == 1;
        return k;
    };
    for (auto p : paths) {
        int t = -1;
        for (int v : p)
            if (xdeg(v) == 2) {
                ensure(t < 0, "T-path with two vertices seeing two neighbours of w");
                t = v;
            }
        ensure(t >= 0, "T-path without a vertex seeing two neighbours of w");
        while (p.size() >= 4) {
            int pt = static_cast<int>(std::find(p.begin(), p.end(), t) - p.begin());
            int left = pt, right = static_cast<int>(p.size()) - 1 - pt;
            if (right >= left) {
                size_t L = p.size();
                pares.push_back({p[L - 1], p[L - 2], p[L - 3], -1});
                p.resize(L - 2);
            } else {
                pares.push_back({p[0], p[1], p[2], -1});
                p.erase(p.begin(), p.begin() + 2);
            }
        }
        if (p.size() == 2) {
            int u = p[0] == t ? p[1] : p[0];
            int xo = -1;
            for (int z : h.neighbors(t))
                if (D(z) == 1 && !h.has_edge(z, u)) xo = z;
            ensure(xo >= 0, "order-2 T-path has no private neighbour in N(w)");
            pares.push_back({t, u, -1, xo});
            p.clear();
        }
        if (!p.empty()) kept.push_back(p);
    }
    int a = 0, bb = 0;
    for (const auto& p : kept) (p.size() == 3 ? a : bb) += 1;

    std::vector<int> part(static_cast<size_t>(n), -1);
    auto P = [&](int v) -> int& { return part[static_cast<size_t>(v)]; };
    P(w) = 0;
    if (3 * (3 * a + bb) >= n) {
        int extras_first = (a + bb) / 2;
        for (size_t q = 0; q < kept.size(); ++q) {
            int side = static_cast<int>(q) < extras_first ? 0 : 1;
            for (size_t k = 0; k < kept[q].size(); ++k) P(kept[q][k]) = k % 2 == 0 ? side : 1 - side;
        }
        for (int i = 0; i < d; ++i) P(x[static_cast<size_t>(i)]) = i % 2 == 0 ? 1 : 0;
    } else {
        std::vector<char> reserved(static_cast<size_t>(n), 0);
        for (const auto& p : kept) {
            for (size_t k = 0; k < p.size(); ++k) P(p[k]) = k % 2 == 0 ? 0 : 1;
            if (p.size() == 3)
                for (int z : h.neighbors(p[1]))
                    if (D(z) == 1) reserved[static_cast<size_t>(z)] = 1;
        }
        // a + b + 1 unreserved neighbours of w into the second forest, spread
        // out first and packed if needed.
        int need = a + bb + 1;
        for (int pass = 0; pass < 2 && need > 0; ++pass)
            for (int i = 0; i < d && need > 0; ++i) {
                int v = x[static_cast<size_t>(i)];
                if (reserved[static_cast<size_t>(v)] || P(v) >= 0) continue;
                if (pass == 0 && i > 0 && P(x[static_cast<size_t>(i - 1)]) == 1) continue;
                P(v) = 1;
                --need;
            }
        ensure(need == 0, "not enough unreserved neighbours of w");
        int k = 0;
        for (int v : x)
            if (P(v) < 0) P(v) = k++ % 2 == 0 ? 1 : 0;
    }
    for (auto it = pares.rbegin(); it != pares.rend(); ++it) {
        if (it->g >= 0) {
            P(it->f) = 1 - P(it->g);
            P(it->e) = 1 - P(it->f);
        } else {
            P(it->e) = 1 - P(it->xo);
            P(it->f) = 1 - P(it->e);
        }
    }
    int size[2] = {0, 0};
    for (int v = 0; v < n; ++v)
        if (P(v) >= 0) ++size[P(v)];
    // Distance-3 leftovers: keep the balance and the half-degree caps of the
    // peeled graph.
    auto cur_cap = [&](int v) { return v == w ? n : (pl.degree(v) + 1) / 2; };
    auto same = [&](int v, int i) {
        int k = 0;
        for (int u : pl.nbrs(v)) k += P(u) == i;
        return k;
    };
    for (int z : Z) {
        int pref = size[0] <= size[1] ? 0 : 1;
        int choice = pref;
        for (int i : {pref, 1 - pref}) {
            if (std::abs(size[i] + 1 - size[1 - i]) > 1) continue;
            bool ok = same(z, i) <= cur_cap(z) && same(z, i) <= 1;
            for (int u : pl.nbrs(z))
                if (P(u) == i && same(u, i) + 1 > cur_cap(u)) ok = false;
            if (ok) { choice = i; break; }
        }
        P(z) = choice;
        ++size[choice];
    }
    for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) detail::unwind_config(*it, part, size);

    ForestPartition fp = make_partition(n, 2, part);
    fp.degree_caps.resize(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) fp.degree_caps[static_cast<size_t>(v)] = v == w ? n : (h.degree(v) + 1) / 2;
    auto msg = check_forest_partition(h, fp, true);
    ensure(msg.empty(), "big-T partition: " + msg);
    {
        Graph f1 = h.induced(fp.parts[0]);
        f1.clear_outer_order();
        auto al = forest_alpha_all(f1);
        int wi = static_cast<int>(std::lower_bound(fp.parts[0].begin(), fp.parts[0].end(), w) - fp.parts[0].begin());
        ensure(al[static_cast<size_t>(wi)] >= f1.n() / 3, "first forest has no large independent set through w");
    }
    if (scratch) {
        scratch->w = w;
        scratch->T = T;
        scratch->alpha_T = alphaT;
        scratch->a = a;
        scratch->b = bb;
        scratch->peeled.clear();
        for (const auto& r : peeled)
            for (int u : r.vertices()) scratch->peeled.push_back(u);
        scratch->part = part;
    }
    Coloring c = detail::colour_two_forests(h, part, orig);
    ensure(is_proper(h, c) || (orig && is_proper(*orig, c)), "big-T colouring is not proper");
    return c;
}

namespace detail {

// Greedy proper colouring (least-used legal colour, smallest-last order)
// followed by rebalancing; exhaustive search for small graphs.
inline std::optional<Coloring> generic_equitable(const Graph& g, int s) {
    int n = g.n();
    Coloring c(s, n);
    std::vector<int> deg(static_cast<size_t>(n)), order;
    std::vector<char> gone(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v) deg[static_cast<size_t>(v)] = g.degree(v);
    for (int k = 0; k < n; ++k) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!gone[static_cast<size_t>(v)] && (best < 0 || deg[static_cast<size_t>(v)] < deg[static_cast<size_t>(best)])) best = v;
        gone[static_cast<size_t>(best)] = 1;
        order.push_back(best);
        for (int u : g.neighbors(best)) --deg[static_cast<size_t>(u)];
    }
    std::vector<int> used(static_cast<size_t>(s + 1), 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::vector<char> bad(static_cast<size_t>(s + 1), 0);
        for (int u : g.neighbors(*it)) bad[static_cast<size_t>(c.color[static_cast<size_t>(u)])] = 1;
        int pick = -1;
        for (int j = 1; j <= s; ++j)
            if (!bad[static_cast<size_t>(j)] && (pick < 0 || used[static_cast<size_t>(j)] < used[static_cast<size_t>(pick)])) pick = j;
        if (pick < 0) return std::nullopt;
        c.color[static_cast<size_t>(*it)] = pick;
        ++used[static_cast<size_t>(pick)];
    }
    if (rebalance(g, c) && c.equitable() && is_proper(g, c)) return c;
    if (n <= 20) {
        auto e = exhaustive_equitable(g, s);
        if (e) return e;
    }
    return std::nullopt;
}

}  // namespace detail

struct RouteInfo {
    std::string pipeline;  // which construction produced the colouring
    bool fell_back = false;
    std::string failure;  // message from the construction that failed, if any
};

// Equitable 6-colouring of an outerplanar graph satisfying the hypothesis at
// s = 6, dispatched on the high-degree vertices of its saturation.
inline Coloring color_six(const Graph& g, RouteInfo* route = nullptr) {
    int n = g.n();
    RouteInfo local;
    RouteInfo& rt = route ? *route : local;
    if (n <= 6) {
        rt.pipeline = "distinct";
        Coloring c(6, n);
        for (int v = 0; v < n; ++v) c.color[static_cast<size_t>(v)] = v + 1;
        return c;
    }
    auto good = [&](const Coloring& c) { return c.n() == n && c.complete() && is_proper(g, c) && c.equitable(); };
    auto attempt = [&](const std::string& name, auto&& fn) -> std::optional<Coloring> {
        try {
            Coloring c = fn();
            if (good(c)) {
                rt.pipeline = name;
                return c;
            }
            rt.failure += (rt.failure.empty() ? "" : "; ") + name + ": output failed verification";
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NotOuterplanar) throw;
            rt.failure += (rt.failure.empty() ? "" : "; ") + name + ": " + e.what();
        }
        return std::nullopt;
    };
    Graph h = saturate_with_degree_control(g).supergraph;
    auto danger = classify_danger(h);
    std::optional<Coloring> c;
    std::string primary = "zero-dangerous";
    if (danger.near.size() >= 2) {
        primary = "two-dangerous";
        c = attempt(primary, [&] { return color_two_dangerous(h, danger.near[0], danger.near[1]); });
    } else if (danger.dangerous.size() == 1) {
        int w = danger.dangerous[0];
        if (2 * h.degree(w) >= n) {
            primary = "one-dangerous-highdeg";
            c = attempt(primary, [&] { return color_one_dangerous_highdeg(h, w, &g); });
        } else {
            auto dist = detail::bfs_dist(h, w, 2);
            std::vector<char> allowed(static_cast<size_t>(n), 0);
            for (int v = 0; v < n; ++v) allowed[static_cast<size_t>(v)] = dist[static_cast<size_t>(v)] == 2;
            auto it = max_independent_outerplanar(h, allowed, -1);
            int alphaT = it ? static_cast<int>(it->size()) : 0;
            if (alphaT <= n / 6 - 1) {
                primary = "one-dangerous-smallT";
                c = attempt(primary, [&] { return color_one_dangerous_smallT(h, w); });
            } else {
                primary = "one-dangerous-bigT";
                c = attempt(primary, [&] { return color_one_dangerous_bigT(h, w, nullptr, &g); });
            }
        }
    } else {
        c = attempt(primary, [&] { return color_zero_dangerous(g); });
    }
    if (c) return *c;
    ++telemetry().pipeline_fallbacks;
    rt.fell_back = true;
    if (primary != "zero-dangerous")
        if ((c = attempt("zero-dangerous", [&] { return color_zero_dangerous(g); }))) return *c;
    if (auto e = detail::generic_equitable(g, 6)) {
        rt.pipeline = "generic";
        return *e;
    }
    fail(ErrorKind::Unsolved, "no construction produced an equitable 6-colouring: " + rt.failure);
}

// Main driver: check the hypothesis, peel down to six colours, colour the
// residual and verify against g.
inline Coloring equitable_color_outerplanar(const Graph& g, int s, RouteInfo* route = nullptr) {
    if (s < 6) fail(ErrorKind::InvalidArgument, "the outerplanar driver needs s >= 6");
    if (!validate_embedding(g).is_outerplanar) fail(ErrorKind::NotOuterplanar, "graph is not outerplanar");
    auto red = reduce_color_count(g, s);
    Coloring six = color_six(red.residual, route);
    Coloring c(s, g.n());
    for (size_t q = 0; q < red.residual_ids.size(); ++q) c.color[static_cast<size_t>(red.residual_ids[q])] = six.color[q];
    for (size_t k = 0; k < red.peels.size(); ++k)
        for (int v : red.peels[k]) c.color[static_cast<size_t>(v)] = 7 + static_cast<int>(k);
    verify_equitable_or_throw(g, c, "equitable_color_outerplanar");
    return c;
}

struct FiveToFourCertificate {
    std::string case_label;  // "1", "2", "2-pair", "3.1", "3.2", "3.3", "3.4", "search"
    std::vector<int> S;      // vertices of degree >= ceil(n/5) + 4
    std::vector<int> peel;
    Graph residual;
    std::vector<int> residual_ids;
    bool residual_hypothesis = false;
    std::optional<Coloring> coloring;  // full 5-colouring when the s = 4 search succeeds
};

// Experimental: one peel from s = 5 to s = 4, then exhaustive search at s = 4.
inline FiveToFourCertificate reduce_5_to_4(const Graph& g0, const SearchBudget& budget = SearchBudget{}) {
    Graph g = detail::with_embedding(g0);
    int n = g.n();
    auto hyp = check_hypothesis(g, 5);
    if (!hyp.ok) fail(ErrorKind::HypothesisViolated, "hypothesis fails at s = 5", hyp.vertex, hyp.alpha);
    FiveToFourCertificate cert;
    int big = ceil_div(n, 5) + 4;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) >= big) cert.S.push_back(v);
    std::stable_sort(cert.S.begin(), cert.S.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
    int want = n / 5;

    auto residual_ok = [&](const std::vector<int>& I) {
        if (!is_independent(g, I)) return false;
        Graph r = g.induced(remaining_vertices(n, I));
        r.clear_outer_order();
        return check_hypothesis(r, 4).ok;
    };
    std::vector<std::pair<std::string, std::vector<int>>> candidates;
    auto through = [&](int v, int size, const std::vector<char>& allowed) -> std::optional<std::vector<int>> {
        auto s = max_independent_outerplanar(g, allowed, v);
        if (!s || static_cast<int>(s->size()) < size) return std::nullopt;
        std::vector<int> out{v};
        for (int x : *s)
            if (x != v && static_cast<int>(out.size()) < size) out.push_back(x);
        return out;
    };
    if (cert.S.size() <= 1) {
        int v = 0;
        for (int x = 1; x < n; ++x)
            if (g.degree(x) > g.degree(v)) v = x;
        if (auto I = through(v, want, {})) candidates.emplace_back("1", *I);
    } else if (cert.S.size() == 2) {
        int w1 = cert.S[0], w2 = cert.S[1];
        if (!g.has_edge(w1, w2)) {
            std::vector<char> allowed(static_cast<size_t>(n), 1);
            for (int u : g.neighbors(w2)) allowed[static_cast<size_t>(u)] = 0;
            if (auto I = max_independent_outerplanar(g, allowed, w1);
                I && std::find(I->begin(), I->end(), w2) != I->end() && static_cast<int>(I->size()) >= want) {
                std::vector<int> out{w1, w2};
                for (int x : *I)
                    if (x != w1 && x != w2 && static_cast<int>(out.size()) < want) out.push_back(x);
                candidates.emplace_back("2-pair", out);
            }
        }
        auto I1 = through(w1, want, {}), I2 = through(w2, want, {});
        if (I1 && I2) {
            auto b_of = [&](int wi, const std::vector<int>& other) {
                int k = 0;
                for (int u : other) k += g.has_edge(wi, u);
                return k;
            };
            if (g.degree(w1) - b_of(w1, *I2) <= ceil_div(n, 5) + 3) candidates.emplace_back("2", *I2);
            if (g.degree(w2) - b_of(w2, *I1) <= ceil_div(n, 5) + 3) candidates.emplace_back("2", *I1);
            // Alternate classes of the pruned neighbourhoods of both.
            std::vector<char> allowed(static_cast<size_t>(n), 0);
            for (int wi : {w1, w2})
                for (int u : g.neighbors(wi)) allowed[static_cast<size_t>(u)] = 1;
            for (int wi : {w1, w2})
                for (int u : g.neighbors(wi))
                    if (g.has_edge(u, w1) && g.has_edge(u, w2)) allowed[static_cast<size_t>(u)] = 0;
            allowed[static_cast<size_t>(w1)] = allowed[static_cast<size_t>(w2)] = 0;
            if (auto I = max_independent_outerplanar(g, allowed, -1); I && static_cast<int>(I->size()) >= (n + 1) / 5) {
                I->resize(static_cast<size_t>((n + 1) / 5));
                candidates.emplace_back("2", *I);
            }
        }
    } else {
        // Three heavy vertices: w_i together with the smaller alternation
        // classes of the other two pruned neighbourhoods.
        std::vector<int> w3(cert.S.begin(), cert.S.begin() + 3);
        int edges = g.has_edge(w3[0], w3[1]) + g.has_edge(w3[0], w3[2]) + g.has_edge(w3[1], w3[2]);
        const char* label = edges == 3 ? "3.1" : edges == 2 ? "3.2" : edges == 1 ? "3.3" : "3.4";
        std::vector<std::vector<int>> Sx(3);
        for (int i = 0; i < 3; ++i) {
            int wj = w3[static_cast<size_t>((i + 1) % 3)], wk = w3[static_cast<size_t>((i + 2) % 3)];
            for (int u : g.neighbors(w3[static_cast<size_t>(i)]))
                if (u != wj && u != wk && !g.has_edge(u, wj) && !g.has_edge(u, wk)) Sx[static_cast<size_t>(i)].push_back(u);
        }
        for (int i = 0; i < 3; ++i) {
            int wi = w3[static_cast<size_t>(i)];
            std::vector<char> allowed(static_cast<size_t>(n), 0);
            for (int j = 0; j < 3; ++j)
                if (j != i)
                    for (int u : Sx[static_cast<size_t>(j)]) allowed[static_cast<size_t>(u)] = !g.has_edge(u, wi);
            allowed[static_cast<size_t>(wi)] = 1;
            if (auto I = through(wi, want, allowed)) candidates.emplace_back(label, *I);
        }
    }
    // Certified search as a last resort: sets through each vertex in order of
    // decreasing degree.
    std::vector<int> byd(static_cast<size_t>(n));
    std::iota(byd.begin(), byd.end(), 0);
    std::stable_sort(byd.begin(), byd.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
    for (const auto& [label, I] : candidates)
        if (residual_ok(I)) {
            cert.case_label = label;
            cert.peel = I;
            break;
        }
    for (int v : byd) {
        if (!cert.peel.empty() || want == 0) break;
        if (auto I = through(v, want, {}); I && residual_ok(*I)) {
            cert.case_label = "search";
            cert.peel = *I;
        }
    }
    if (want == 0) cert.case_label = "1";
    ensure(!cert.peel.empty() || want == 0, "no peel leaves a residual satisfying the s = 4 hypothesis");
    cert.residual_ids = remaining_vertices(n, cert.peel);
    cert.residual = g.induced(cert.residual_ids);
    cert.residual.clear_outer_order();
    cert.residual_hypothesis = check_hypothesis(cert.residual, 4).ok;
    ensure(cert.residual_hypothesis, "residual fails the s = 4 hypothesis");
    if (auto c4 = exhaustive_equitable(cert.residual, 4, budget)) {
        Coloring c(5, n);
        for (size_t q = 0; q < cert.residual_ids.size(); ++q) c.color[static_cast<size_t>(cert.residual_ids[q])] = c4->color[q];
        for (int v : cert.peel) c.color[static_cast<size_t>(v)] = 5;
        verify_equitable_or_throw(g, c, "reduce_5_to_4");
        cert.coloring = c;
    }
    return cert;
}

}  // namespace equicolor
