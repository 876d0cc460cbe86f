#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graph.hpp"
#include "graph_core.hpp"

namespace equicolor {

struct AlphaWitness {
    int vertex = -1;
    int size = 0;
    std::vector<int> witness;
};

// Limits for the exhaustive searches. The wall-clock cap defaults to the
// EQUICOLOR_BUDGET_MS environment variable when it is set.
struct SearchBudget {
    int max_n = 20;
    long max_ms = 60000;
    std::uint64_t max_nodes = 2'000'000'000ULL;

    SearchBudget() {
        if (const char* e = std::getenv("EQUICOLOR_BUDGET_MS")) {
            char* end = nullptr;
            long v = std::strtol(e, &end, 10);
            if (end != e && v > 0) max_ms = v;
        }
    }
    static SearchBudget with_n(int n) {
        SearchBudget b;
        b.max_n = n;
        return b;
    }
};

namespace detail {

class BudgetClock {
public:
    explicit BudgetClock(const SearchBudget& b) : b_(b), start_(std::chrono::steady_clock::now()) {}
    void tick() {
        if (++nodes_ > b_.max_nodes) fail(ErrorKind::BudgetExceeded, "search node budget exhausted");
        if ((nodes_ & 0xFFF) == 0) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
            if (ms > b_.max_ms) fail(ErrorKind::BudgetExceeded, "search time budget exhausted");
        }
    }
    std::uint64_t nodes() const { return nodes_; }

private:
    const SearchBudget& b_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
};

inline int mis_bitmask(const std::vector<std::uint64_t>& nbr, std::uint64_t cand, std::uint64_t& best_set, std::uint64_t cur,
                       int cur_size, int& best) {
    if (cand == 0) {
        if (cur_size > best) {
            best = cur_size;
            best_set = cur;
        }
        return best;
    }
    if (cur_size + std::popcount(cand) <= best) return best;
    // Branch on the candidate of minimum degree within cand and its neighbours.
    int pick = -1, pick_deg = 65;
    for (std::uint64_t c = cand; c; c &= c - 1) {
        int v = std::countr_zero(c);
        int d = std::popcount(nbr[static_cast<size_t>(v)] & cand);
        if (d < pick_deg) { pick_deg = d; pick = v; }
    }
    std::uint64_t branch = (nbr[static_cast<size_t>(pick)] & cand) | (1ULL << pick);
    for (std::uint64_t c = branch; c; c &= c - 1) {
        int u = std::countr_zero(c);
        mis_bitmask(nbr, cand & ~(nbr[static_cast<size_t>(u)] | (1ULL << u)), best_set, cur | (1ULL << u), cur_size + 1, best);
    }
    return best;
}

}  // namespace detail

// Largest independent set of g inside `allowed` (empty = every vertex) that
// contains `forced` (ignored when negative), by branch and bound. n <= 64.
inline std::optional<std::vector<int>> max_independent_bb(const Graph& g, const std::vector<char>& allowed, int forced) {
    int n = g.n();
    if (n > 64) fail(ErrorKind::TooLarge, "branch-and-bound independent set is limited to 64 vertices");
    std::vector<std::uint64_t> nbr(static_cast<size_t>(n), 0);
    std::uint64_t cand = 0;
    for (int v = 0; v < n; ++v) {
        for (int w : g.neighbors(v)) nbr[static_cast<size_t>(v)] |= 1ULL << w;
        if (allowed.empty() || allowed[static_cast<size_t>(v)]) cand |= 1ULL << v;
    }
    std::uint64_t cur = 0;
    int base = 0;
    if (forced >= 0) {
        if (!(cand >> forced & 1ULL)) return std::nullopt;
        cur = 1ULL << forced;
        cand &= ~(nbr[static_cast<size_t>(forced)] | cur);
        base = 1;
    }
    std::uint64_t best_set = cur;
    int best = base;
    detail::mis_bitmask(nbr, cand, best_set, cur, base, best);
    std::vector<int> out;
    for (std::uint64_t c = best_set; c; c &= c - 1) out.push_back(std::countr_zero(c));
    return out;
}

// Largest independent set of an outerplanar g inside `allowed` containing
// `forced`, by dynamic programming over the triangles of a maximal outerplanar
// supergraph. Bags come from the supergraph; conflicts come from g itself.
inline std::optional<std::vector<int>> max_independent_outerplanar(const Graph& g, const std::vector<char>& allowed,
                                                                   int forced) {
    int n = g.n();
    auto ok = [&](int v) { return allowed.empty() || allowed[static_cast<size_t>(v)]; };
    if (forced >= 0 && !ok(forced)) return std::nullopt;
    if (n <= 3) {
        std::vector<int> best;
        bool found = false;
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<int> s;
            bool good = true;
            for (int v = 0; v < n && good; ++v)
                if (mask >> v & 1) {
                    if (!ok(v)) good = false;
                    s.push_back(v);
                }
            if (!good || (forced >= 0 && !(mask >> forced & 1)) || !is_independent(g, s)) continue;
            if (!found || s.size() > best.size()) { best = s; found = true; }
        }
        if (!found) return std::nullopt;
        return best;
    }
    Graph h = triangulate_plain(g);
    auto faces = inner_faces(h, *h.outer_order());
    int F = static_cast<int>(faces.size());
    std::unordered_map<std::uint64_t, std::vector<int>> at;
    for (int i = 0; i < F; ++i)
        for (int a = 0; a < 3; ++a)
            at[edge_key(faces[static_cast<size_t>(i)][static_cast<size_t>(a)], faces[static_cast<size_t>(i)][static_cast<size_t>((a + 1) % 3)])].push_back(i);
    // Root at face 0; BFS gives parents and the shared edge.
    std::vector<int> parent(static_cast<size_t>(F), -1), bfs{0}, newv(static_cast<size_t>(F), -1);
    std::vector<char> seen(static_cast<size_t>(F), 0);
    seen[0] = 1;
    for (size_t q = 0; q < bfs.size(); ++q) {
        int f = bfs[q];
        const auto& tri = faces[static_cast<size_t>(f)];
        for (int a = 0; a < 3; ++a) {
            int x = tri[static_cast<size_t>(a)], y = tri[static_cast<size_t>((a + 1) % 3)];
            for (int c : at[edge_key(x, y)]) {
                if (seen[static_cast<size_t>(c)]) continue;
                seen[static_cast<size_t>(c)] = 1;
                parent[static_cast<size_t>(c)] = f;
                for (int z : faces[static_cast<size_t>(c)])
                    if (z != x && z != y) newv[static_cast<size_t>(c)] = z;
                bfs.push_back(c);
            }
        }
    }
    const int NEG = -1000000;
    auto valid = [&](int f, int mask) {
        const auto& t = faces[static_cast<size_t>(f)];
        for (int a = 0; a < 3; ++a) {
            bool in = mask >> a & 1;
            int v = t[static_cast<size_t>(a)];
            if (in && !ok(v)) return false;
            if (!in && v == forced) return false;
        }
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                if ((mask >> a & 1) && (mask >> b & 1) && g.has_edge(t[static_cast<size_t>(a)], t[static_cast<size_t>(b)]))
                    return false;
        return true;
    };
    // Map a parent mask to the child's mask for the shared vertices.
    auto child_mask = [&](int f, int pmask, int c, int zbit) {
        const auto& pt = faces[static_cast<size_t>(f)];
        const auto& ct = faces[static_cast<size_t>(c)];
        int m = 0;
        for (int b = 0; b < 3; ++b) {
            int v = ct[static_cast<size_t>(b)];
            if (v == newv[static_cast<size_t>(c)]) {
                if (zbit) m |= 1 << b;
                continue;
            }
            for (int a = 0; a < 3; ++a)
                if (pt[static_cast<size_t>(a)] == v && (pmask >> a & 1)) m |= 1 << b;
        }
        return m;
    };
    std::vector<std::vector<int>> children(static_cast<size_t>(F));
    for (int c = 1; c < F; ++c) children[static_cast<size_t>(parent[static_cast<size_t>(bfs[static_cast<size_t>(c)])])].push_back(bfs[static_cast<size_t>(c)]);
    std::vector<std::array<int, 8>> dp(static_cast<size_t>(F));
    for (int qi = F - 1; qi >= 0; --qi) {
        int f = bfs[static_cast<size_t>(qi)];
        for (int mask = 0; mask < 8; ++mask) {
            if (!valid(f, mask)) { dp[static_cast<size_t>(f)][static_cast<size_t>(mask)] = NEG; continue; }
            int total = 0;
            for (int c : children[static_cast<size_t>(f)]) {
                int best = NEG;
                for (int z = 0; z < 2; ++z) {
                    int cm = child_mask(f, mask, c, z);
                    int val = dp[static_cast<size_t>(c)][static_cast<size_t>(cm)];
                    if (val > NEG) best = std::max(best, val + z);
                }
                if (best == NEG) { total = NEG; break; }
                total += best;
            }
            dp[static_cast<size_t>(f)][static_cast<size_t>(mask)] = total;
        }
    }
    int root_mask = -1, best = NEG;
    for (int mask = 0; mask < 8; ++mask) {
        int val = dp[0][static_cast<size_t>(mask)];
        if (val > NEG && val + std::popcount(static_cast<unsigned>(mask)) > best) {
            best = val + std::popcount(static_cast<unsigned>(mask));
            root_mask = mask;
        }
    }
    if (root_mask < 0) return std::nullopt;
    std::vector<int> chosen_mask(static_cast<size_t>(F), -1);
    chosen_mask[0] = root_mask;
    std::vector<int> out;
    for (int a = 0; a < 3; ++a)
        if (root_mask >> a & 1) out.push_back(faces[0][static_cast<size_t>(a)]);
    for (int qi = 0; qi < F; ++qi) {
        int f = bfs[static_cast<size_t>(qi)];
        int mask = chosen_mask[static_cast<size_t>(f)];
        for (int c : children[static_cast<size_t>(f)]) {
            int bz = -1, bm = -1, bv = NEG;
            for (int z = 0; z < 2; ++z) {
                int cm = child_mask(f, mask, c, z);
                int val = dp[static_cast<size_t>(c)][static_cast<size_t>(cm)];
                if (val > NEG && val + z > bv) { bv = val + z; bz = z; bm = cm; }
            }
            chosen_mask[static_cast<size_t>(c)] = bm;
            if (bz) out.push_back(newv[static_cast<size_t>(c)]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Largest independent set containing v (outerplanar DP, otherwise branch and
// bound for n <= 64).
inline AlphaWitness alpha_v_exact(const Graph& g, int v) {
    if (v < 0 || v >= g.n()) fail(ErrorKind::InvalidArgument, "vertex out of range");
    std::optional<std::vector<int>> w;
    bool outer = g.has_embedding() ? crossing_free(g, *g.outer_order()) : compute_outer_order(g).has_value();
    if (outer)
        w = max_independent_outerplanar(g.has_embedding() ? g : embedded(g), {}, v);
    else if (g.n() <= 64)
        w = max_independent_bb(g, {}, v);
    else
        fail(ErrorKind::TooLarge, "exact alpha_v needs an outerplanar graph or at most 64 vertices");
    ensure(w.has_value(), "a vertex always lies in some independent set");
    return AlphaWitness{v, static_cast<int>(w->size()), std::move(*w)};
}

// alpha_v for every vertex of an outerplanar graph.
inline std::vector<int> alpha_all(const Graph& g) {
    Graph h = g.has_embedding() ? g : embedded(g);
    std::vector<int> a(static_cast<size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) a[static_cast<size_t>(v)] = static_cast<int>(max_independent_outerplanar(h, {}, v)->size());
    return a;
}

// Proper s-colouring with all classes of size floor(n/s) or ceil(n/s), or
// nullopt after exhausting the search space.
inline std::optional<Coloring> exhaustive_equitable(const Graph& g, int s, const SearchBudget& budget = SearchBudget{}) {
    int n = g.n();
    if (s < 1) fail(ErrorKind::InvalidArgument, "colour count must be positive");
    if (s > 64) fail(ErrorKind::InvalidArgument, "exhaustive search supports at most 64 colours");
    if (n > budget.max_n) fail(ErrorKind::BudgetExceeded, "graph has " + std::to_string(n) + " vertices, budget allows " + std::to_string(budget.max_n));
    Coloring c(s, n);
    if (n == 0) return c;
    const int lo = n / s, hi = ceil_div(n, s), r = n % s;
    std::vector<int> count(static_cast<size_t>(s), 0);
    std::vector<std::vector<int>> blocked(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(s), 0));
    int at_hi = 0, deficit = s * lo, uncolored = n, used = 0;
    detail::BudgetClock clock(budget);

    auto can_take = [&](int col) {
        if (count[static_cast<size_t>(col)] >= hi) return false;
        if (hi > lo && count[static_cast<size_t>(col)] == lo && at_hi >= r) return false;
        return true;
    };
    std::function<bool()> rec = [&]() -> bool {
        clock.tick();
        if (uncolored == 0) return true;
        if (deficit > uncolored) return false;
        int pick = -1, pick_opts = s + 1, pick_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (c.color[static_cast<size_t>(v)]) continue;
            int opts = 0;
            for (int col = 0; col < std::min(s, used + 1); ++col)
                if (!blocked[static_cast<size_t>(v)][static_cast<size_t>(col)] && can_take(col)) ++opts;
            if (opts == 0) return false;
            int d = g.degree(v);
            if (opts < pick_opts || (opts == pick_opts && d > pick_deg)) {
                pick = v;
                pick_opts = opts;
                pick_deg = d;
            }
        }
        int limit = std::min(s, used + 1);
        for (int col = 0; col < limit; ++col) {
            if (blocked[static_cast<size_t>(pick)][static_cast<size_t>(col)] || !can_take(col)) continue;
            int before_used = used;
            c.color[static_cast<size_t>(pick)] = col + 1;
            if (count[static_cast<size_t>(col)] < lo) --deficit;
            if (++count[static_cast<size_t>(col)] == hi && hi > lo) ++at_hi;
            --uncolored;
            if (col == used) ++used;
            for (int w : g.neighbors(pick)) ++blocked[static_cast<size_t>(w)][static_cast<size_t>(col)];
            if (rec()) return true;
            for (int w : g.neighbors(pick)) --blocked[static_cast<size_t>(w)][static_cast<size_t>(col)];
            used = before_used;
            ++uncolored;
            if (count[static_cast<size_t>(col)]-- == hi && hi > lo) --at_hi;
            if (count[static_cast<size_t>(col)] < lo) ++deficit;
            c.color[static_cast<size_t>(pick)] = 0;
        }
        return false;
    };
    if (!rec()) return std::nullopt;
    verify_equitable_or_throw(g, c, "exhaustive_equitable");
    return c;
}

// Partition into k parts that each induce a forest; balanced means part sizes
// differ by at most one.
inline std::optional<ForestPartition> exhaustive_forest_partition(const Graph& g, int k, bool balanced,
                                                                  const SearchBudget& budget = SearchBudget::with_n(24)) {
    int n = g.n();
    if (k < 1) fail(ErrorKind::InvalidArgument, "part count must be positive");
    if (n > budget.max_n) fail(ErrorKind::BudgetExceeded, "graph too large for exhaustive forest partition");
    const int lo = balanced ? n / k : 0, hi = balanced ? ceil_div(n, k) : n, r = n % k;
    // Visit vertices in BFS order from high-degree vertices so cycles close early.
    std::vector<int> order;
    {
        std::vector<int> byd(static_cast<size_t>(n));
        std::iota(byd.begin(), byd.end(), 0);
        std::stable_sort(byd.begin(), byd.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
        std::vector<char> seen(static_cast<size_t>(n), 0);
        for (int s : byd) {
            if (seen[static_cast<size_t>(s)]) continue;
            seen[static_cast<size_t>(s)] = 1;
            size_t head = order.size();
            order.push_back(s);
            while (head < order.size()) {
                int u = order[head++];
                std::vector<int> nb = g.neighbors(u);
                std::stable_sort(nb.begin(), nb.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
                for (int w : nb)
                    if (!seen[static_cast<size_t>(w)]) {
                        seen[static_cast<size_t>(w)] = 1;
                        order.push_back(w);
                    }
            }
        }
    }
    std::vector<int> part(static_cast<size_t>(n), -1), size(static_cast<size_t>(k), 0);
    // One union-find over all vertices; only same-part edges are ever united.
    std::vector<int> uf(static_cast<size_t>(n)), rank(static_cast<size_t>(n), 0);
    std::iota(uf.begin(), uf.end(), 0);
    std::vector<std::pair<int, int>> undo;  // (child root, old rank of parent root or -1)
    auto find = [&](int x) {
        while (uf[static_cast<size_t>(x)] != x) x = uf[static_cast<size_t>(x)];
        return x;
    };
    int at_hi = 0, used = 0, deficit = k * lo;
    detail::BudgetClock clock(budget);
    std::function<bool(int)> rec = [&](int idx) -> bool {
        clock.tick();
        if (idx == n) return true;
        if (deficit > n - idx) return false;
        int v = order[static_cast<size_t>(idx)];
        int limit = std::min(k, used + 1);
        for (int p = 0; p < limit; ++p) {
            if (size[static_cast<size_t>(p)] >= hi) continue;
            if (balanced && hi > lo && size[static_cast<size_t>(p)] == lo && at_hi >= r) continue;
            // Roots of v's same-part neighbours must be distinct.
            std::vector<int> roots;
            bool cyc = false;
            for (int w : g.neighbors(v))
                if (part[static_cast<size_t>(w)] == p) {
                    int rw = find(w);
                    if (std::find(roots.begin(), roots.end(), rw) != roots.end()) { cyc = true; break; }
                    roots.push_back(rw);
                }
            if (cyc) continue;
            size_t mark = undo.size();
            for (int rw : roots) {
                int a = find(v), b = rw;
                if (rank[static_cast<size_t>(a)] < rank[static_cast<size_t>(b)]) std::swap(a, b);
                undo.emplace_back(b, rank[static_cast<size_t>(a)]);
                uf[static_cast<size_t>(b)] = a;
                if (rank[static_cast<size_t>(a)] == rank[static_cast<size_t>(b)]) ++rank[static_cast<size_t>(a)];
            }
            part[static_cast<size_t>(v)] = p;
            if (size[static_cast<size_t>(p)] < lo) --deficit;
            if (++size[static_cast<size_t>(p)] == hi && hi > lo) ++at_hi;
            int before_used = used;
            if (p == used) ++used;
            if (rec(idx + 1)) return true;
            used = before_used;
            if (size[static_cast<size_t>(p)]-- == hi && hi > lo) --at_hi;
            if (size[static_cast<size_t>(p)] < lo) ++deficit;
            part[static_cast<size_t>(v)] = -1;
            while (undo.size() > mark) {
                auto [b, old] = undo.back();
                undo.pop_back();
                int a = uf[static_cast<size_t>(b)];
                rank[static_cast<size_t>(a)] = old;
                uf[static_cast<size_t>(b)] = b;
            }
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    ForestPartition fp = make_partition(n, k, part);
    auto msg = check_forest_partition(g, fp, balanced);
    ensure(msg.empty(), "exhaustive forest partition: " + msg);
    return fp;
}

inline std::uint64_t catalan(int k) {
    std::uint64_t c = 1;
    for (int i = 0; i < k; ++i) c = c * 2 * (2 * static_cast<std::uint64_t>(i) + 1) / (static_cast<std::uint64_t>(i) + 2);
    return c;
}

// Calls `emit` once per triangulation of the labeled convex n-gon (outer order
// 0..n-1). Returns the number emitted.
inline std::uint64_t enumerate_maximal_outerplanar(int n, const std::function<void(const Graph&)>& emit) {
    if (n < 3 || n > 14) fail(ErrorKind::InvalidArgument, "enumeration supports 3 <= n <= 14");
    std::vector<Edge> chords;
    std::vector<std::pair<int, int>> pending{{0, n - 1}};
    std::uint64_t count = 0;
    std::vector<int> identity(static_cast<size_t>(n));
    std::iota(identity.begin(), identity.end(), 0);
    std::function<void()> rec = [&]() {
        if (pending.empty()) {
            Graph g(n);
            for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
            for (const auto& e : chords) g.add_edge(e.u, e.v);
            g.set_outer_order(identity);
            ++count;
            emit(g);
            return;
        }
        auto [i, j] = pending.back();
        pending.pop_back();
        if (j - i < 2) {
            rec();
        } else {
            for (int k = i + 1; k < j; ++k) {
                size_t mark = chords.size();
                if (k - i >= 2) chords.push_back({i, k});
                if (j - k >= 2) chords.push_back({k, j});
                pending.emplace_back(i, k);
                pending.emplace_back(k, j);
                rec();
                pending.pop_back();
                pending.pop_back();
                chords.resize(mark);
            }
        }
        pending.emplace_back(i, j);
    };
    rec();
    return count;
}

inline std::vector<Graph> enumerate_maximal_outerplanar(int n, bool dedup_dihedral = false) {
    std::vector<Graph> out;
    std::set<std::vector<Edge>> canon;
    enumerate_maximal_outerplanar(n, [&](const Graph& g) {
        if (!dedup_dihedral) {
            out.push_back(g);
            return;
        }
        auto es = g.edges();
        std::vector<Edge> best;
        for (int refl = 0; refl < 2; ++refl)
            for (int rot = 0; rot < n; ++rot) {
                std::vector<Edge> m;
                m.reserve(es.size());
                for (const auto& e : es) {
                    auto f = [&](int x) { return ((refl ? (n - x) % n : x) + rot) % n; };
                    m.push_back(make_edge(f(e.u), f(e.v)));
                }
                std::sort(m.begin(), m.end());
                if (best.empty() || m < best) best = std::move(m);
            }
        if (canon.insert(best).second) out.push_back(g);
    });
    return out;
}

}  // namespace equicolor
