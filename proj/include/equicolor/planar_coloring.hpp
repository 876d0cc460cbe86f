#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "forest_coloring.hpp"
#include "graph.hpp"
#include "oracle.hpp"

namespace equicolor {

enum class ForestBackend { Auto, Exhaustive, Heuristic };

// Bookkeeping for the peeling loop. Index j runs over peeled classes; the
// tail window starts at j = s - 40 and tilde_n(i) reads n_{i+s-40}.
struct PlanarLoopState {
    int s = 0;
    int j = 0;
    std::vector<int> n_j;               // |G_j| for every step reached
    std::vector<std::vector<int>> I;    // peeled sets, original ids
    std::vector<int> w;                 // w_j
    std::vector<int> d_w;               // d_{G_j}(w_j)
    std::vector<int> max_degree;        // Delta(G_j)
    std::vector<std::string> special;   // branch taken for I_2 and I_3
    int escape_j = -1;                  // step at which the forest colouring finished the job
    int invariant_checks = 0;

    int tail_start() const { return s - 40; }
    int tilde_n(int i) const {
        int k = i + tail_start();
        return k >= 0 && k < static_cast<int>(n_j.size()) ? n_j[static_cast<size_t>(k)] : -1;
    }
};

namespace detail {

inline void check_planar_edge_count(const Graph& g) {
    if (g.n() >= 3 && g.m() > static_cast<size_t>(3 * g.n() - 6))
        fail(ErrorKind::InvalidArgument, "more than 3n-6 edges, graph cannot be planar");
}

// Vertices by degree, largest first, ties by index.
inline std::vector<int> by_degree_desc(const Graph& g) {
    std::vector<int> v(static_cast<size_t>(g.n()));
    std::iota(v.begin(), v.end(), 0);
    std::stable_sort(v.begin(), v.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
    return v;
}

// Smallest-last order: every vertex has few neighbours later in the list
// reversed. Ties are broken by index or, with rng, at random.
inline std::vector<int> smallest_last(const Graph& g, std::mt19937_64* rng = nullptr) {
    int n = g.n();
    std::vector<int> deg = g.degrees(), order;
    std::vector<char> gone(static_cast<size_t>(n), 0);
    std::vector<int> ids(static_cast<size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    if (rng) std::shuffle(ids.begin(), ids.end(), *rng);
    for (int k = 0; k < n; ++k) {
        int best = -1;
        for (int v : ids)
            if (!gone[static_cast<size_t>(v)] && (best < 0 || deg[static_cast<size_t>(v)] < deg[static_cast<size_t>(best)])) best = v;
        gone[static_cast<size_t>(best)] = 1;
        order.push_back(best);
        for (int u : g.neighbors(best)) --deg[static_cast<size_t>(u)];
    }
    std::reverse(order.begin(), order.end());
    return order;
}

// Component label of every vertex inside its own part.
inline std::vector<int> part_components(const Graph& g, const std::vector<int>& part) {
    int n = g.n();
    std::vector<int> comp(static_cast<size_t>(n), -1), stack;
    int next = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[static_cast<size_t>(s)] >= 0) continue;
        comp[static_cast<size_t>(s)] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(u))
                if (comp[static_cast<size_t>(w)] < 0 && part[static_cast<size_t>(w)] == part[static_cast<size_t>(u)]) {
                    comp[static_cast<size_t>(w)] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    return comp;
}

// v may join part p when its neighbours there sit in pairwise different trees.
inline bool can_join(const Graph& g, const std::vector<int>& part, const std::vector<int>& comp, int v, int p) {
    std::vector<int> seen;
    for (int w : g.neighbors(v)) {
        if (w == v || part[static_cast<size_t>(w)] != p) continue;
        int c = comp[static_cast<size_t>(w)];
        if (std::find(seen.begin(), seen.end(), c) != seen.end()) return false;
        seen.push_back(c);
    }
    return true;
}

// Greedy acyclic 4-partition along a smallest-last order, then single-vertex
// moves along chains of parts until sizes are within one.
inline std::optional<std::vector<int>> heuristic_four_forests(const Graph& g, std::mt19937_64* rng) {
    const int k = 4, n = g.n();
    auto order = smallest_last(g, rng);
    std::vector<int> part(static_cast<size_t>(n), -1), size(k, 0);
    std::vector<int> uf(static_cast<size_t>(n));
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[static_cast<size_t>(x)] != x) x = uf[static_cast<size_t>(x)] = uf[static_cast<size_t>(uf[static_cast<size_t>(x)])];
        return x;
    };
    for (int v : order) {
        int pick = -1, pick_nb = 0;
        for (int p = 0; p < k; ++p) {
            std::vector<int> roots;
            bool ok = true;
            for (int w : g.neighbors(v))
                if (part[static_cast<size_t>(w)] == p) {
                    int r = find(w);
                    if (std::find(roots.begin(), roots.end(), r) != roots.end()) { ok = false; break; }
                    roots.push_back(r);
                }
            if (!ok) continue;
            int nb = static_cast<int>(roots.size());
            if (pick < 0 || size[static_cast<size_t>(p)] < size[static_cast<size_t>(pick)] ||
                (size[static_cast<size_t>(p)] == size[static_cast<size_t>(pick)] && nb < pick_nb)) {
                pick = p;
                pick_nb = nb;
            }
        }
        if (pick < 0) return std::nullopt;  // more than 7 earlier neighbours; not planar
        part[static_cast<size_t>(v)] = pick;
        ++size[static_cast<size_t>(pick)];
        for (int w : g.neighbors(v))
            if (part[static_cast<size_t>(w)] == pick) uf[static_cast<size_t>(find(w))] = find(v);
    }
    for (int round = 0; round < 4 * n + 16; ++round) {
        int mx = *std::max_element(size.begin(), size.end()), mn = *std::min_element(size.begin(), size.end());
        if (mx <= mn + 1) return part;
        auto comp = part_components(g, part);
        // BFS over parts from the largest ones; edge A->B through a vertex of A
        // that can join B.
        std::vector<int> via(k, -1), from(k, -2);
        std::vector<int> queue;
        for (int a = 0; a < k; ++a)
            if (size[static_cast<size_t>(a)] == mx) { from[static_cast<size_t>(a)] = -1; queue.push_back(a); }
        int target = -1;
        for (size_t h = 0; h < queue.size() && target < 0; ++h) {
            int a = queue[h];
            for (int b = 0; b < k && target < 0; ++b) {
                if (from[static_cast<size_t>(b)] != -2) continue;
                for (int v = 0; v < n; ++v)
                    if (part[static_cast<size_t>(v)] == a && can_join(g, part, comp, v, b)) {
                        from[static_cast<size_t>(b)] = a;
                        via[static_cast<size_t>(b)] = v;
                        if (size[static_cast<size_t>(b)] + 2 <= mx) target = b;
                        else queue.push_back(b);
                        break;
                    }
            }
        }
        if (target < 0) return std::nullopt;
        for (int b = target; from[static_cast<size_t>(b)] >= 0; b = from[static_cast<size_t>(b)]) {
            int v = via[static_cast<size_t>(b)];
            --size[static_cast<size_t>(part[static_cast<size_t>(v)])];
            part[static_cast<size_t>(v)] = b;
            ++size[static_cast<size_t>(b)];
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Balanced partition into four induced forests. Planarity is trusted apart
// from the edge count. The exhaustive backend is complete up to 24 vertices;
// the heuristic one may give up with Unsolved. Every result is verified.
inline ForestPartition forest_four_partition(const Graph& g, ForestBackend backend = ForestBackend::Auto,
                                             const SearchBudget& budget = SearchBudget::with_n(24)) {
    detail::check_planar_edge_count(g);
    int n = g.n();
    if (backend == ForestBackend::Auto) backend = n <= 24 ? ForestBackend::Exhaustive : ForestBackend::Heuristic;
    if (backend == ForestBackend::Exhaustive) {
        auto fp = exhaustive_forest_partition(g, 4, true, budget);
        if (!fp) fail(ErrorKind::Unsolved, "no balanced partition into four forests exists");
        return *fp;
    }
    std::mt19937_64 rng(0x5eed);
    for (int attempt = 0; attempt < 24; ++attempt) {
        auto part = detail::heuristic_four_forests(g, attempt == 0 ? nullptr : &rng);
        if (!part) continue;
        ForestPartition fp = make_partition(n, 4, *part);
        auto msg = check_forest_partition(g, fp, true);
        ensure(msg.empty(), "heuristic forest partition: " + msg);
        return fp;
    }
    fail(ErrorKind::Unsolved, "heuristic backend found no balanced partition into four forests");
}

// Equitable 4s-colouring when Delta(g) <= (s-2)/(4s) n: four forests, each
// coloured with its own block of s colours (si, si-1, ..., s(i-1)+1 on F_i).
inline Coloring equitable_color_planar_lowdeg(const Graph& g, int s, ForestBackend backend = ForestBackend::Auto) {
    if (s < 3) fail(ErrorKind::InvalidArgument, "multiplier must be at least 3");
    int n = g.n(), k = 4 * s;
    detail::check_planar_edge_count(g);
    bool degree_ok = static_cast<long>(4) * s * g.max_degree() <= static_cast<long>(s - 2) * n;
    if (!degree_ok) {
        if (n > k)
            fail(ErrorKind::HypothesisViolated,
                 "max degree " + std::to_string(g.max_degree()) + " exceeds (s-2)/(4s) n");
        // At most one vertex per class: any proper colouring with distinct colours.
        Coloring c(k, n);
        for (int v = 0; v < n; ++v) c.color[static_cast<size_t>(v)] = v + 1;
        return c;
    }
    ForestPartition fp = forest_four_partition(g, backend);
    Coloring c(k, n);
    for (int i = 0; i < 4; ++i) {
        const auto& F = fp.parts[static_cast<size_t>(i)];
        Coloring ci = equitable_color_forest(g.induced(F), s);
        for (size_t q = 0; q < F.size(); ++q)
            c.color[static_cast<size_t>(F[q])] = s * (i + 1) - (ci.color[q] - 1);
    }
    verify_equitable_or_throw(g, c, "equitable_color_planar_lowdeg");
    return c;
}

struct WitnessSets {
    std::vector<int> I0, I1;
    int w0 = -1, w1 = -1;
};

namespace detail {

// Independent set of exactly `want` vertices drawn from cand (alive mask over
// g), by min-degree greedy and then bounded depth-first search.
inline std::optional<std::vector<int>> independent_of_size(const Graph& g, std::vector<char> cand, int want,
                                                           BudgetClock* clock = nullptr) {
    int n = g.n();
    if (want <= 0) return std::vector<int>{};
    {
        auto alive = cand;
        std::vector<int> deg(static_cast<size_t>(n), 0), out;
        for (int v = 0; v < n; ++v)
            if (alive[static_cast<size_t>(v)])
                for (int w : g.neighbors(v)) deg[static_cast<size_t>(v)] += alive[static_cast<size_t>(w)];
        while (static_cast<int>(out.size()) < want) {
            int best = -1;
            for (int v = 0; v < n; ++v)
                if (alive[static_cast<size_t>(v)] && (best < 0 || deg[static_cast<size_t>(v)] < deg[static_cast<size_t>(best)])) best = v;
            if (best < 0) break;
            out.push_back(best);
            std::vector<int> drop{best};
            for (int w : g.neighbors(best))
                if (alive[static_cast<size_t>(w)]) drop.push_back(w);
            for (int x : drop) alive[static_cast<size_t>(x)] = 0;
            for (int x : drop)
                for (int y : g.neighbors(x))
                    if (alive[static_cast<size_t>(y)]) --deg[static_cast<size_t>(y)];
        }
        if (static_cast<int>(out.size()) >= want) return out;
    }
    SearchBudget local;
    BudgetClock own(local);
    BudgetClock& ck = clock ? *clock : own;
    std::vector<int> cur;
    std::function<bool(std::vector<char>&, int)> rec = [&](std::vector<char>& alive, int left) -> bool {
        ck.tick();
        if (static_cast<int>(cur.size()) == want) return true;
        if (want - static_cast<int>(cur.size()) > left) return false;
        int best = -1, bd = 0;
        for (int v = 0; v < n; ++v)
            if (alive[static_cast<size_t>(v)]) {
                int d = 0;
                for (int w : g.neighbors(v)) d += alive[static_cast<size_t>(w)];
                if (best < 0 || d < bd) { best = v; bd = d; }
            }
        if (best < 0) return false;
        // Some vertex of N[best] lies in any maximum extension; branch on them.
        std::vector<int> opts{best};
        for (int w : g.neighbors(best))
            if (alive[static_cast<size_t>(w)]) opts.push_back(w);
        for (size_t i = 0; i < opts.size(); ++i) {
            int v = opts[i];
            auto next = alive;
            int removed = 0;
            for (size_t q = 0; q < i; ++q) if (next[static_cast<size_t>(opts[q])]) { next[static_cast<size_t>(opts[q])] = 0; ++removed; }
            if (!next[static_cast<size_t>(v)]) continue;
            next[static_cast<size_t>(v)] = 0;
            ++removed;
            for (int w : g.neighbors(v))
                if (next[static_cast<size_t>(w)]) { next[static_cast<size_t>(w)] = 0; ++removed; }
            cur.push_back(v);
            if (rec(next, left - removed)) return true;
            cur.pop_back();
        }
        return false;
    };
    int left = static_cast<int>(std::count(cand.begin(), cand.end(), 1));
    if (rec(cand, left)) return cur;
    return std::nullopt;
}

}  // namespace detail

// The two largest-degree vertices, ties broken by index.
inline std::pair<int, int> top_two_degree(const Graph& g) {
    auto byd = detail::by_degree_desc(g);
    return {byd.size() > 0 ? byd[0] : -1, byd.size() > 1 ? byd[1] : -1};
}

// Empty string when (I0, I1) witness the hypothesis for g and s.
inline std::string check_witness_sets(const Graph& g, int s, const std::vector<int>& I0, const std::vector<int>& I1) {
    int n = g.n();
    if (static_cast<int>(I0.size()) != n / s) return "I_0 must have floor(n/s) vertices";
    if (static_cast<int>(I1.size()) != (n + 1) / s) return "I_1 must have floor((n+1)/s) vertices";
    std::vector<int> seen(static_cast<size_t>(n), 0);
    for (const auto* I : {&I0, &I1})
        for (int v : *I) {
            if (v < 0 || v >= n) return "vertex out of range";
            if (seen[static_cast<size_t>(v)]++) return "vertex " + std::to_string(v) + " repeated";
        }
    if (!is_independent(g, I0)) return "I_0 is not independent";
    if (!is_independent(g, I1)) return "I_1 is not independent";
    auto [w0, w1] = top_two_degree(g);
    for (int w : {w0, w1})
        if (w >= 0 && !seen[static_cast<size_t>(w)]) return "top-degree vertex " + std::to_string(w) + " not covered";
    return {};
}

// Disjoint independent sets of sizes floor(n/s) and floor((n+1)/s) covering
// the two largest-degree vertices, or nullopt when none exist. Greedy first,
// then a three-way branch (in I_0, in I_1, neither) with counting bounds.
inline std::optional<WitnessSets> find_witness_sets(const Graph& g, int s, const SearchBudget& budget = SearchBudget{}) {
    if (s < 1) fail(ErrorKind::InvalidArgument, "colour count must be positive");
    int n = g.n();
    const int need[2] = {n / s, (n + 1) / s};
    auto [w0, w1] = top_two_degree(g);
    WitnessSets ws;
    ws.w0 = w0;
    ws.w1 = w1;
    std::vector<int> tops;
    for (int w : {w0, w1})
        if (w >= 0) tops.push_back(w);
    detail::BudgetClock clock(budget);

    // Placements of the top vertices: side[t] says which set holds tops[t].
    std::vector<std::vector<int>> placements;
    if (tops.size() == 2) placements = {{0, 1}, {1, 0}, {0, 0}, {1, 1}};
    else if (tops.size() == 1) placements = {{0}, {1}};
    else placements = {{}};

    for (const auto& side : placements) {
        std::vector<int> set_of(static_cast<size_t>(n), -1);
        int have[2] = {0, 0};
        bool ok = true;
        for (size_t t = 0; t < tops.size(); ++t) {
            set_of[static_cast<size_t>(tops[t])] = side[t];
            ++have[side[t]];
        }
        for (int x = 0; x < 2; ++x) ok = ok && have[x] <= need[x];
        for (size_t a = 0; a < tops.size() && ok; ++a)
            for (size_t b = a + 1; b < tops.size(); ++b)
                if (side[a] == side[b] && g.has_edge(tops[a], tops[b])) ok = false;
        if (!ok) continue;
        // Vertices each set may still take.
        auto eligible = [&](int v, int x) {
            if (set_of[static_cast<size_t>(v)] >= 0) return false;
            for (int w : g.neighbors(v))
                if (set_of[static_cast<size_t>(w)] == x) return false;
            return true;
        };
        // Counting bound over the undecided vertices.
        auto feasible = [&](int from, const std::vector<int>& order) {
            int onlyA = 0, onlyB = 0, both = 0;
            for (size_t i = static_cast<size_t>(from); i < order.size(); ++i) {
                int v = order[i];
                bool a = eligible(v, 0), b = eligible(v, 1);
                if (a && b) ++both;
                else if (a) ++onlyA;
                else if (b) ++onlyB;
            }
            int ra = need[0] - have[0], rb = need[1] - have[1];
            return ra <= onlyA + both && rb <= onlyB + both && ra + rb <= onlyA + onlyB + both;
        };
        auto order = detail::smallest_last(g);
        std::reverse(order.begin(), order.end());  // low degree first
        if (!feasible(0, order)) continue;

        // Greedy: fill the set with the larger deficit from vertices only it
        // can take, then the other one.
        {
            auto trial = set_of;
            int h2[2] = {have[0], have[1]};
            for (int pass = 0; pass < 2; ++pass)
                for (int x : {1, 0})
                    for (int v : order) {
                        if (h2[x] >= need[x] || trial[static_cast<size_t>(v)] >= 0) continue;
                        bool clash = false, other_free = true;
                        for (int w : g.neighbors(v)) {
                            if (trial[static_cast<size_t>(w)] == x) clash = true;
                            if (trial[static_cast<size_t>(w)] == 1 - x) other_free = false;
                        }
                        if (clash) continue;
                        if (pass == 0 && other_free && h2[1 - x] < need[1 - x]) continue;
                        trial[static_cast<size_t>(v)] = x;
                        ++h2[x];
                    }
            if (h2[0] == need[0] && h2[1] == need[1]) {
                for (int v = 0; v < n; ++v) {
                    if (trial[static_cast<size_t>(v)] == 0) ws.I0.push_back(v);
                    if (trial[static_cast<size_t>(v)] == 1) ws.I1.push_back(v);
                }
                ensure(check_witness_sets(g, s, ws.I0, ws.I1).empty(), "greedy witness sets are invalid");
                return ws;
            }
        }
        std::function<bool(int)> rec = [&](int idx) -> bool {
            clock.tick();
            if (have[0] == need[0] && have[1] == need[1]) return true;
            if (idx == n || !feasible(idx, order)) return false;
            int v = order[static_cast<size_t>(idx)];
            for (int x : {0, 1}) {
                if (have[x] >= need[x] || !eligible(v, x)) continue;
                set_of[static_cast<size_t>(v)] = x;
                ++have[x];
                if (rec(idx + 1)) return true;
                --have[x];
                set_of[static_cast<size_t>(v)] = -1;
            }
            return rec(idx + 1);
        };
        if (rec(0)) {
            for (int v = 0; v < n; ++v) {
                if (set_of[static_cast<size_t>(v)] == 0) ws.I0.push_back(v);
                if (set_of[static_cast<size_t>(v)] == 1) ws.I1.push_back(v);
            }
            ensure(check_witness_sets(g, s, ws.I0, ws.I1).empty(), "searched witness sets are invalid");
            return ws;
        }
    }
    return std::nullopt;
}

// Equitable s-colouring (s >= 40) of a planar graph from witness sets: peel
// independent sets through the current maximum-degree vertex, and finish with
// four forests once the remaining colour count is a multiple of four and the
// degree is low enough. Class j gets colour j+1.
inline Coloring equitable_color_planar(const Graph& g, int s, const std::vector<int>& I0, const std::vector<int>& I1,
                                       PlanarLoopState* state = nullptr, ForestBackend backend = ForestBackend::Auto) {
    if (s < 40) fail(ErrorKind::InvalidArgument, "the planar driver needs s >= 40");
    detail::check_planar_edge_count(g);
    int n = g.n();
    PlanarLoopState local;
    PlanarLoopState& st = state ? *state : local;
    st = PlanarLoopState{};
    st.s = s;
    Coloring c(s, n);
    if (n <= s) {
        for (int v = 0; v < n; ++v) c.color[static_cast<size_t>(v)] = v + 1;
        return c;
    }
    if (auto msg = check_witness_sets(g, s, I0, I1); !msg.empty()) fail(ErrorKind::WitnessInvalid, msg);

    std::vector<char> alive(static_cast<size_t>(n), 1);
    std::vector<int> deg = g.degrees();
    int n_cur = n;
    auto remove_set = [&](const std::vector<int>& I, int colour) {
        for (int v : I) {
            alive[static_cast<size_t>(v)] = 0;
            c.color[static_cast<size_t>(v)] = colour;
            --n_cur;
        }
        for (int v : I)
            for (int w : g.neighbors(v))
                if (alive[static_cast<size_t>(w)]) --deg[static_cast<size_t>(w)];
    };
    auto current_top = [&]() {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (alive[static_cast<size_t>(v)] && (best < 0 || deg[static_cast<size_t>(v)] > deg[static_cast<size_t>(best)])) best = v;
        return best;
    };
    auto record = [&](int j, int w) {
        st.j = j;
        st.n_j.push_back(n_cur);
        st.w.push_back(w);
        st.d_w.push_back(w >= 0 ? deg[static_cast<size_t>(w)] : 0);
        st.max_degree.push_back(w >= 0 ? deg[static_cast<size_t>(w)] : 0);
    };
    auto [w0, w1] = top_two_degree(g);
    const std::vector<int>* given[2] = {&I0, &I1};
    for (int j = 0; j < s; ++j) {
        int w = current_top();
        record(j, w);
        int r = s - j;
        int Delta = w >= 0 ? deg[static_cast<size_t>(w)] : 0;
        // Escape: 4 | r and Delta(G_j) <= (r/4 - 2)/r n_j.
        if (r % 4 == 0 && r / 4 >= 3 && static_cast<long>(r) * Delta <= static_cast<long>(r / 4 - 2) * n_cur) {
            std::vector<int> rest;
            for (int v = 0; v < n; ++v)
                if (alive[static_cast<size_t>(v)]) rest.push_back(v);
            Coloring cj = equitable_color_planar_lowdeg(g.induced(rest), r / 4, backend);
            for (size_t q = 0; q < rest.size(); ++q) c.color[static_cast<size_t>(rest[q])] = j + cj.color[q];
            st.escape_j = j;
            verify_equitable_or_throw(g, c, "equitable_color_planar");
            return c;
        }
        if (j >= s - 12 + 1) fail(ErrorKind::InternalAssertionFailed, "peeling loop ran past s-12 without finishing");
        int want = (n + j) / s;
        std::vector<int> I;
        if (j < 2) {
            I = *given[j];
            // The witnesses fix w_0 and w_1 by degree in G itself.
            st.w.back() = j == 0 ? w0 : w1;
            st.d_w.back() = deg[static_cast<size_t>(st.w.back())];
        } else {
            if (j >= 4 && j <= s - 12) {
                ++st.invariant_checks;
                ++telemetry().invariant_checks;
                if (3L * Delta > 2L * n_cur) {
                    ++telemetry().invariant_violations;
                    fail(ErrorKind::InternalAssertionFailed,
                         "Delta(G_j) > 2 n_j / 3 at j = " + std::to_string(j));
                }
                int bound = 1 + ceil_div(n_cur - Delta - 1, 4);
                ensure(bound >= ceil_div(n_cur, 12), "independent-set bound below n_j / 12");
                ensure(ceil_div(n_cur, 12) >= want, "n_j / 12 below the required class size");
            }
            std::vector<char> cand(static_cast<size_t>(n), 0);
            for (int v = 0; v < n; ++v) cand[static_cast<size_t>(v)] = alive[static_cast<size_t>(v)];
            cand[static_cast<size_t>(w)] = 0;
            for (int x : g.neighbors(w)) cand[static_cast<size_t>(x)] = 0;
            std::optional<std::vector<int>> rest;
            if (j == 2 || j == 3) {
                // Degree dichotomy: with a very high degree, start from the
                // common neighbourhood of w_0 and w_1.
                bool high = j == 2 ? 3L * Delta > 2L * n : 2L * Delta > n;
                st.special.push_back(high ? "common-neighbourhood" : "low-degree");
                if (high) {
                    std::vector<char> common(static_cast<size_t>(n), 0);
                    for (int x : g.neighbors(w0))
                        if (g.has_edge(x, w1) && cand[static_cast<size_t>(x)]) common[static_cast<size_t>(x)] = 1;
                    rest = detail::independent_of_size(g, common, want - 1);
                }
            }
            if (!rest) rest = detail::independent_of_size(g, cand, want - 1);
            if (!rest) fail(ErrorKind::Unsolved, "no independent set of size " + std::to_string(want) + " through w_" + std::to_string(j));
            I = {w};
            I.insert(I.end(), rest->begin(), rest->begin() + (want - 1));
        }
        ensure(static_cast<int>(I.size()) == want, "peeled set has the wrong size");
        ensure(is_independent(g, I), "peeled set is not independent");
        st.I.push_back(I);
        remove_set(I, j + 1);
    }
    // Every class was peeled; only possible when nothing is left.
    ensure(n_cur == 0, "vertices left after peeling every class");
    verify_equitable_or_throw(g, c, "equitable_color_planar");
    return c;
}

}  // namespace equicolor
