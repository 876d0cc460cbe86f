#pragma once

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "oracle.hpp"

namespace equicolor {

// 2-colouring of a forest: side[v] in {0,1}, each tree rooted at its smallest
// vertex on side 0. Throws NotAForest on a cycle.
inline std::vector<int> forest_sides(const Graph& f) {
    std::vector<int> side(static_cast<size_t>(f.n()), -1);
    std::vector<int> parent(static_cast<size_t>(f.n()), -1);
    std::vector<int> stack;
    for (int s = 0; s < f.n(); ++s) {
        if (side[static_cast<size_t>(s)] >= 0) continue;
        side[static_cast<size_t>(s)] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : f.neighbors(u)) {
                if (w == parent[static_cast<size_t>(u)]) continue;
                if (side[static_cast<size_t>(w)] >= 0) fail(ErrorKind::NotAForest, "graph contains a cycle");
                side[static_cast<size_t>(w)] = 1 - side[static_cast<size_t>(u)];
                parent[static_cast<size_t>(w)] = u;
                stack.push_back(w);
            }
        }
    }
    return side;
}

// alpha_v for every vertex of a forest in linear time (rerooting).
inline std::vector<int> forest_alpha_all(const Graph& f) {
    int n = f.n();
    forest_sides(f);  // acyclicity check
    std::vector<int> parent(static_cast<size_t>(n), -1), order, comp(static_cast<size_t>(n), -1);
    std::vector<int> comp_best;
    for (int s = 0; s < n; ++s) {
        if (comp[static_cast<size_t>(s)] >= 0) continue;
        int id = static_cast<int>(comp_best.size());
        comp_best.push_back(0);
        comp[static_cast<size_t>(s)] = id;
        size_t head = order.size();
        order.push_back(s);
        while (head < order.size()) {
            int u = order[head++];
            for (int w : f.neighbors(u))
                if (w != parent[static_cast<size_t>(u)]) {
                    parent[static_cast<size_t>(w)] = u;
                    comp[static_cast<size_t>(w)] = id;
                    order.push_back(w);
                }
        }
    }
    std::vector<int> din(static_cast<size_t>(n), 1), dout(static_cast<size_t>(n), 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it, p = parent[static_cast<size_t>(v)];
        if (p >= 0) {
            din[static_cast<size_t>(p)] += dout[static_cast<size_t>(v)];
            dout[static_cast<size_t>(p)] += std::max(din[static_cast<size_t>(v)], dout[static_cast<size_t>(v)]);
        } else {
            comp_best[static_cast<size_t>(comp[static_cast<size_t>(v)])] = std::max(din[static_cast<size_t>(v)], dout[static_cast<size_t>(v)]);
        }
    }
    int total = std::accumulate(comp_best.begin(), comp_best.end(), 0);
    std::vector<int> uin(static_cast<size_t>(n), 0), uout(static_cast<size_t>(n), 0), alpha(static_cast<size_t>(n));
    for (int v : order) {
        int p = parent[static_cast<size_t>(v)];
        if (p >= 0) {
            uin[static_cast<size_t>(v)] = din[static_cast<size_t>(p)] - dout[static_cast<size_t>(v)] + uout[static_cast<size_t>(p)];
            int bup = parent[static_cast<size_t>(p)] >= 0 ? std::max(uin[static_cast<size_t>(p)], uout[static_cast<size_t>(p)]) : 0;
            uout[static_cast<size_t>(v)] = dout[static_cast<size_t>(p)] - std::max(din[static_cast<size_t>(v)], dout[static_cast<size_t>(v)]) + bup;
        }
        alpha[static_cast<size_t>(v)] = din[static_cast<size_t>(v)] + uout[static_cast<size_t>(v)] +
                                        total - comp_best[static_cast<size_t>(comp[static_cast<size_t>(v)])];
    }
    return alpha;
}

struct LinkResult {
    Graph tree;
    std::vector<Edge> added;
};

// Joins the trees of a forest into one tree. Every new edge ends at a support
// vertex (the neighbour of a leaf), which some maximum independent set of its
// tree avoids. Joining two nontrivial trees that way changes no alpha_v, and
// hanging an isolated vertex on a support vertex p lowers alpha_p alone, by 1;
// p is the support vertex with the most slack. Within a tree the weakly
// smaller 2-colour class is preferred, then low degree.
inline LinkResult link_forest(const Graph& f) {
    auto side = forest_sides(f);
    auto comps = components(f);
    LinkResult res{f, {}};
    res.tree.clear_outer_order();
    if (comps.size() <= 1) return res;
    auto link = [&](int a, int b) {
        res.tree.add_edge(a, b);
        res.added.push_back(make_edge(a, b));
    };
    auto support_of = [&](const std::vector<int>& vs) {
        int c1 = 0;
        for (int v : vs) c1 += side[static_cast<size_t>(v)];
        int small = 2 * c1 < static_cast<int>(vs.size()) ? 1 : 0;
        int best = -1;
        auto better = [&](int v) {
            if (best < 0) return true;
            bool sv = side[static_cast<size_t>(v)] == small, sb = side[static_cast<size_t>(best)] == small;
            if (sv != sb) return sv;
            return f.degree(v) < f.degree(best);
        };
        for (int v : vs) {
            bool has_leaf = false;
            for (int u : f.neighbors(v)) has_leaf |= f.degree(u) == 1;
            // In a P2 both ends qualify; the one picked keeps the other as its leaf.
            if (has_leaf && better(v)) best = v;
        }
        return best;
    };
    std::vector<int> singles, supports;
    int hub = -1;
    for (const auto& c : comps) {
        if (c.size() == 1) {
            singles.push_back(c[0]);
            continue;
        }
        int p = support_of(c);
        for (int v : c)
            if (v == p || (c.size() > 2 && std::any_of(f.neighbors(v).begin(), f.neighbors(v).end(),
                                                       [&](int u) { return f.degree(u) == 1; })))
                supports.push_back(v);
        if (hub < 0)
            hub = p;
        else
            link(hub, p);
    }
    auto alpha = forest_alpha_all(f);
    // Largest floor(n/s), s >= 3, that f already meets; staying at or above it
    // keeps every hypothesis f satisfied.
    const int n = f.n();
    int keep = 0;
    if (n > 0) {
        int lo = *std::min_element(alpha.begin(), alpha.end());
        for (int s = 3; s <= n + 1; ++s)
            if (n / s <= lo) {
                keep = n / s;
                break;
            }
    }
    size_t next = 0;
    if (hub < 0) {
        // Edgeless: the first edge costs every vertex 1.
        link(singles[0], singles[1]);
        for (auto& a : alpha) --a;
        supports.push_back(singles[0]);
        next = 2;
    }
    std::priority_queue<std::pair<int, int>> slack;
    auto refill = [&] {
        slack = {};
        for (int p : supports) slack.emplace(alpha[static_cast<size_t>(p)], -p);
    };
    refill();
    for (; next < singles.size(); ++next) {
        int a = singles[next];
        auto [ap, p] = slack.top();
        if (ap - 1 >= keep) {
            slack.pop();
            link(-p, a);
            slack.emplace(ap - 1, p);
            continue;
        }
        // Every support vertex is tight. Try the roomiest leaves and supports
        // directly and keep the join with the best minimum.
        std::vector<int> cand;
        for (int v = 0; v < n; ++v)
            if (res.tree.degree(v) > 0) cand.push_back(v);
        std::stable_sort(cand.begin(), cand.end(), [&](int x, int y) { return alpha[static_cast<size_t>(x)] > alpha[static_cast<size_t>(y)]; });
        if (cand.size() > 16) cand.resize(16);
        int best = -1, best_min = -1;
        for (int v : cand) {
            res.tree.add_edge(v, a);
            auto al = forest_alpha_all(res.tree);
            int lo = *std::min_element(al.begin(), al.end());
            res.tree.remove_edge(v, a);
            if (lo > best_min) best = v, best_min = lo;
        }
        link(best, a);
        alpha = forest_alpha_all(res.tree);
        supports.clear();
        for (int v = 0; v < n; ++v)
            for (int u : res.tree.neighbors(v))
                if (res.tree.degree(u) == 1 && res.tree.degree(v) > 1) {
                    supports.push_back(v);
                    break;
                }
        if (supports.empty()) supports.push_back(best);
        refill();
    }
    return res;
}

namespace detail {

// For a forest with sides X (0) and Y (1): best(t) = largest number of
// X-vertices in an independent set holding exactly t Y-vertices (t <= tmax),
// with reconstruction. Trees hang off a virtual root with index n.
class MixedClassDP {
public:
    MixedClassDP(const Graph& forest, const std::vector<int>& side, int tmax) : g_(forest), side_(side), tmax_(tmax) {
        int n = g_.n();
        root_ = n;
        children_.assign(static_cast<size_t>(n) + 1, {});
        std::vector<int> order;
        std::vector<char> seen(static_cast<size_t>(n), 0);
        for (int r = 0; r < n; ++r) {
            if (seen[static_cast<size_t>(r)]) continue;
            seen[static_cast<size_t>(r)] = 1;
            children_[static_cast<size_t>(root_)].push_back(r);
            size_t h = order.size();
            order.push_back(r);
            for (; h < order.size(); ++h)
                for (int w : g_.neighbors(order[h]))
                    if (!seen[static_cast<size_t>(w)]) {
                        seen[static_cast<size_t>(w)] = 1;
                        children_[static_cast<size_t>(order[h])].push_back(w);
                        order.push_back(w);
                    }
        }
        in_.assign(static_cast<size_t>(n) + 1, {});
        out_.assign(static_cast<size_t>(n) + 1, {});
        pin_.assign(static_cast<size_t>(n) + 1, {});
        pout_.assign(static_cast<size_t>(n) + 1, {});
        for (auto it = order.rbegin(); it != order.rend(); ++it) compute(*it);
        compute(root_);
    }

    int best(int t) const {
        if (t < 0 || t > tmax_) return NEG;
        return at(out_[static_cast<size_t>(root_)], t);
    }

    // Independent set with exactly t Y-vertices and best(t) X-vertices.
    std::vector<int> reconstruct(int t) const {
        std::vector<int> out;
        std::vector<std::tuple<int, int, int>> work;  // vertex, in-flag, j
        work.emplace_back(root_, 0, t);
        while (!work.empty()) {
            auto [v, flag, j] = work.back();
            work.pop_back();
            if (flag) out.push_back(v);
            const auto& kids = children_[static_cast<size_t>(v)];
            int cur = flag ? at(in_[static_cast<size_t>(v)], j) : at(out_[static_cast<size_t>(v)], j);
            const auto& pref = flag ? pin_[static_cast<size_t>(v)] : pout_[static_cast<size_t>(v)];
            for (int i = static_cast<int>(kids.size()) - 1; i >= 0; --i) {
                int c = kids[static_cast<size_t>(i)];
                const auto& before = pref[static_cast<size_t>(i)];
                bool found = false;
                for (int b = 0; b <= j && !found; ++b) {
                    int a = at(before, j - b);
                    if (a == NEG) continue;
                    int ci = flag ? NEG : at(in_[static_cast<size_t>(c)], b);
                    int co = at(out_[static_cast<size_t>(c)], b);
                    if (ci != NEG && a + ci == cur) {
                        work.emplace_back(c, 1, b);
                        cur = a; j -= b; found = true;
                    } else if (co != NEG && a + co == cur) {
                        work.emplace_back(c, 0, b);
                        cur = a; j -= b; found = true;
                    }
                }
                ensure(found, "mixed-class reconstruction lost its trace");
            }
        }
        return out;
    }

private:
    static constexpr int NEG = -1000000000;
    static int at(const std::vector<int>& a, int j) { return j < static_cast<int>(a.size()) ? a[static_cast<size_t>(j)] : NEG; }

    std::vector<int> merge(const std::vector<int>& a, const std::vector<int>& b) const {
        int len = std::min<int>(tmax_ + 1, static_cast<int>(a.size() + b.size()) - 1);
        std::vector<int> r(static_cast<size_t>(len), NEG);
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == NEG) continue;
            for (size_t j = 0; j < b.size() && static_cast<int>(i + j) < len; ++j)
                if (b[j] != NEG) r[i + j] = std::max(r[i + j], a[i] + b[j]);
        }
        return r;
    }

    void compute(int v) {
        std::vector<int> in, out{0};
        if (v == root_) in = {NEG};
        else if (side_[static_cast<size_t>(v)] == 1) in = tmax_ >= 1 ? std::vector<int>{NEG, 0} : std::vector<int>{NEG};
        else in = {1};
        for (int c : children_[static_cast<size_t>(v)]) {
            pin_[static_cast<size_t>(v)].push_back(in);
            pout_[static_cast<size_t>(v)].push_back(out);
            const auto& cin = in_[static_cast<size_t>(c)];
            const auto& cout = out_[static_cast<size_t>(c)];
            std::vector<int> either(std::max(cin.size(), cout.size()), NEG);
            for (size_t j = 0; j < either.size(); ++j) either[j] = std::max(at(cin, static_cast<int>(j)), at(cout, static_cast<int>(j)));
            in = merge(in, cout);
            out = merge(out, either);
        }
        in_[static_cast<size_t>(v)] = std::move(in);
        out_[static_cast<size_t>(v)] = std::move(out);
    }

    const Graph& g_;
    const std::vector<int>& side_;
    int tmax_;
    int root_ = 0;
    std::vector<std::vector<int>> children_;
    std::vector<std::vector<int>> in_, out_;
    std::vector<std::vector<std::vector<int>>> pin_, pout_;
};

// Relabels classes so that colours 1..r carry the larger size.
inline Coloring colour_from_classes(int n, int s, std::vector<std::vector<int>> classes) {
    std::stable_sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    Coloring c(s, n);
    for (int j = 0; j < s; ++j)
        for (int v : classes[static_cast<size_t>(j)]) c.color[static_cast<size_t>(v)] = j + 1;
    return c;
}

// Pure classes from each side, then the one class allowed to mix both sides.
inline std::optional<Coloring> one_mixed_class(const Graph& forest, const std::vector<int>& side, int s) {
    int n = forest.n();
    int q = n / s, r = n % s;
    std::vector<int> X, Y;
    for (int v = 0; v < n; ++v) (side[static_cast<size_t>(v)] ? Y : X).push_back(v);
    int nx = static_cast<int>(X.size()), ny = static_cast<int>(Y.size());
    MixedClassDP dp(forest, side, std::min(ny, q + 1));
    for (int k = 0; k <= s - 1; ++k) {
        int ky = s - 1 - k;
        for (int hm = 0; hm <= std::min(1, r); ++hm) {
            for (int hx = 0; hx <= std::min(k, r - hm); ++hx) {
                int hy = r - hm - hx;
                if (hy < 0 || hy > ky) continue;
                int p = nx - (k * q + hx), t = ny - (ky * q + hy);
                if (p < 0 || t < 0 || p + t != q + hm) continue;
                if (dp.best(t) < p) continue;
                auto mixed = dp.reconstruct(t);
                std::vector<char> in_m(static_cast<size_t>(n), 0);
                std::vector<int> M;
                int px = 0;
                for (int v : mixed) {
                    if (side[static_cast<size_t>(v)] == 0) {
                        if (px == p) continue;
                        ++px;
                    }
                    M.push_back(v);
                    in_m[static_cast<size_t>(v)] = 1;
                }
                std::vector<std::vector<int>> classes;
                auto deal = [&](const std::vector<int>& pool, int cnt, int his) {
                    size_t idx = 0;
                    std::vector<int> rest;
                    for (int v : pool)
                        if (!in_m[static_cast<size_t>(v)]) rest.push_back(v);
                    for (int c = 0; c < cnt; ++c) {
                        int sz = q + (c < his ? 1 : 0);
                        classes.emplace_back(rest.begin() + static_cast<long>(idx), rest.begin() + static_cast<long>(idx + static_cast<size_t>(sz)));
                        idx += static_cast<size_t>(sz);
                    }
                };
                deal(X, k, hx);
                deal(Y, ky, hy);
                classes.push_back(M);
                Coloring c = colour_from_classes(n, s, std::move(classes));
                if (check_equitable(forest, c).empty()) return c;
            }
        }
    }
    return std::nullopt;
}

// Maximum independent set of a forest containing v (v first, the rest in
// vertex order).
inline std::vector<int> forest_mis_with(const Graph& f, int v) {
    int n = f.n();
    std::vector<int> parent(static_cast<size_t>(n), -1), order;
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::vector<int> roots{v};
    for (int u = 0; u < n; ++u) roots.push_back(u);
    for (int rt : roots) {
        if (seen[static_cast<size_t>(rt)]) continue;
        seen[static_cast<size_t>(rt)] = 1;
        size_t h = order.size();
        order.push_back(rt);
        for (; h < order.size(); ++h)
            for (int w : f.neighbors(order[h]))
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    parent[static_cast<size_t>(w)] = order[h];
                    order.push_back(w);
                }
    }
    std::vector<int> din(static_cast<size_t>(n), 1), dout(static_cast<size_t>(n), 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int u = *it, p = parent[static_cast<size_t>(u)];
        if (p < 0) continue;
        din[static_cast<size_t>(p)] += dout[static_cast<size_t>(u)];
        dout[static_cast<size_t>(p)] += std::max(din[static_cast<size_t>(u)], dout[static_cast<size_t>(u)]);
    }
    std::vector<char> in(static_cast<size_t>(n), 0);
    for (int u : order) {
        int p = parent[static_cast<size_t>(u)];
        if (u == v) in[static_cast<size_t>(u)] = 1;
        else if (p >= 0 && in[static_cast<size_t>(p)]) in[static_cast<size_t>(u)] = 0;
        else in[static_cast<size_t>(u)] = din[static_cast<size_t>(u)] >= dout[static_cast<size_t>(u)];
    }
    std::vector<int> out{v};
    for (int u = 0; u < n; ++u)
        if (in[static_cast<size_t>(u)] && u != v) out.push_back(u);
    return out;
}

// Best flip of two classes of a forest: the components of f[A u B] may each be
// swapped between A and B, and a subset sum picks the most balanced outcome.
// Returns true if |A| - |B| shrank.
inline bool kempe_balance_pair(const Graph& f, Coloring& c, int a, int b) {
    int n = f.n();
    int ca = a + 1, cb = b + 1;
    std::vector<int> comp(static_cast<size_t>(n), -1);
    std::vector<std::vector<int>> comps;
    std::vector<int> diff;  // |K n A| - |K n B|
    for (int v = 0; v < n; ++v) {
        int cv = c.color[static_cast<size_t>(v)];
        if ((cv != ca && cv != cb) || comp[static_cast<size_t>(v)] >= 0) continue;
        int id = static_cast<int>(comps.size());
        comps.push_back({v});
        comp[static_cast<size_t>(v)] = id;
        for (size_t h = 0; h < comps.back().size(); ++h)
            for (int w : f.neighbors(comps.back()[h])) {
                int cw = c.color[static_cast<size_t>(w)];
                if ((cw == ca || cw == cb) && comp[static_cast<size_t>(w)] < 0) {
                    comp[static_cast<size_t>(w)] = id;
                    comps.back().push_back(w);
                }
            }
        int d = 0;
        for (int u : comps.back()) d += c.color[static_cast<size_t>(u)] == ca ? 1 : -1;
        diff.push_back(d);
    }
    int sa = 0, sb = 0;
    for (int v = 0; v < n; ++v) {
        if (c.color[static_cast<size_t>(v)] == ca) ++sa;
        if (c.color[static_cast<size_t>(v)] == cb) ++sb;
    }
    // Flipping a set with total difference D moves |A| - |B| to gap - 2D.
    int gap = sa - sb, off = sa + sb;
    int width = 2 * off + 1;
    std::vector<int> from(static_cast<size_t>(width), -2);  // component index that reached the sum
    from[static_cast<size_t>(off)] = -1;
    for (int i = 0; i < static_cast<int>(diff.size()); ++i) {
        int d = diff[static_cast<size_t>(i)];
        if (d == 0) continue;
        std::vector<int> next = from;
        for (int x = 0; x < width; ++x)
            if (from[static_cast<size_t>(x)] != -2 && x + d >= 0 && x + d < width && next[static_cast<size_t>(x + d)] == -2)
                next[static_cast<size_t>(x + d)] = i;
        from.swap(next);
    }
    // Each sum remembers the first component reaching it, so indices strictly
    // decrease along the trace and no component is used twice.
    int best = off, best_gap = std::abs(gap);
    for (int x = 0; x < width; ++x)
        if (from[static_cast<size_t>(x)] != -2 && std::abs(gap - 2 * (x - off)) < best_gap) {
            best_gap = std::abs(gap - 2 * (x - off));
            best = x;
        }
    if (best == off) return false;
    std::vector<char> flip(comps.size(), 0);
    for (int x = best; x != off;) {
        int i = from[static_cast<size_t>(x)];
        ensure(i >= 0 && !flip[static_cast<size_t>(i)], "subset-sum trace broken");
        flip[static_cast<size_t>(i)] = 1;
        x -= diff[static_cast<size_t>(i)];
    }
    for (size_t i = 0; i < comps.size(); ++i)
        if (flip[i])
            for (int u : comps[i]) c.color[static_cast<size_t>(u)] = c.color[static_cast<size_t>(u)] == ca ? cb : ca;
    return true;
}

// Moves single vertices along chains of classes, and failing that flips
// two-coloured components, until all sizes are within one of each other.
// Each step lowers the sum of squared class sizes.
inline bool rebalance(const Graph& g, Coloring& c) {
    int n = g.n(), s = c.s;
    for (int round = 0; round < 4 * n + 16; ++round) {
        auto sizes = c.class_sizes();
        int mx = *std::max_element(sizes.begin(), sizes.end());
        int mn = *std::min_element(sizes.begin(), sizes.end());
        if (mx <= mn + 1) return true;
        std::vector<std::vector<int>> nbr_in(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(s), 0));
        for (int v = 0; v < n; ++v)
            for (int w : g.neighbors(v)) ++nbr_in[static_cast<size_t>(v)][static_cast<size_t>(c.color[static_cast<size_t>(w)] - 1)];
        auto classes = c.classes();
        // BFS over classes from every maximum class; edge A->B via a vertex of
        // A without neighbours in B.
        std::vector<int> via(static_cast<size_t>(s), -1), from(static_cast<size_t>(s), -2);
        std::deque<int> dq;
        for (int a = 0; a < s; ++a)
            if (sizes[static_cast<size_t>(a)] == mx) { from[static_cast<size_t>(a)] = -1; dq.push_back(a); }
        int target = -1;
        while (!dq.empty() && target < 0) {
            int a = dq.front();
            dq.pop_front();
            for (int b = 0; b < s && target < 0; ++b) {
                if (from[static_cast<size_t>(b)] != -2) continue;
                for (int v : classes[static_cast<size_t>(a)])
                    if (nbr_in[static_cast<size_t>(v)][static_cast<size_t>(b)] == 0) {
                        from[static_cast<size_t>(b)] = a;
                        via[static_cast<size_t>(b)] = v;
                        if (sizes[static_cast<size_t>(b)] + 2 <= mx) target = b;
                        else dq.push_back(b);
                        break;
                    }
            }
        }
        if (target >= 0) {
            for (int b = target; from[static_cast<size_t>(b)] >= 0; b = from[static_cast<size_t>(b)])
                c.color[static_cast<size_t>(via[static_cast<size_t>(b)])] = b + 1;
            continue;
        }
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < s; ++a)
            for (int b = 0; b < s; ++b)
                if (sizes[static_cast<size_t>(a)] >= sizes[static_cast<size_t>(b)] + 2) pairs.emplace_back(a, b);
        std::stable_sort(pairs.begin(), pairs.end(), [&](auto x, auto y) {
            return sizes[static_cast<size_t>(x.first)] - sizes[static_cast<size_t>(x.second)] >
                   sizes[static_cast<size_t>(y.first)] - sizes[static_cast<size_t>(y.second)];
        });
        bool moved = false;
        for (auto [a, b] : pairs)
            if (kempe_balance_pair(g, c, a, b)) { moved = true; break; }
        if (!moved) return false;
    }
    return false;
}

}  // namespace detail

// Throws HypothesisViolated(v, alpha_v) unless alpha_v(f) >= floor(n/s) for all v.
inline void check_forest_hypothesis(const Graph& f, int s) {
    int n = f.n(), need = n / s;
    auto alpha = forest_alpha_all(f);
    for (int v = 0; v < n; ++v)
        if (alpha[static_cast<size_t>(v)] < need)
            fail(ErrorKind::HypothesisViolated,
                 "vertex " + std::to_string(v) + " has alpha_v " + std::to_string(alpha[static_cast<size_t>(v)]) +
                     " < floor(n/s) = " + std::to_string(need),
                 v, alpha[static_cast<size_t>(v)]);
}

// Equitable proper s-colouring (s >= 3) of a forest whose vertices all lie in
// independent sets of size floor(n/s).
inline Coloring equitable_color_forest(const Graph& f, int s) {
    int n = f.n();
    if (s < 3) fail(ErrorKind::InvalidArgument, "forest colouring needs s >= 3");
    check_forest_hypothesis(f, s);
    if (n <= s) {
        Coloring c(s, n);
        for (int v = 0; v < n; ++v) c.color[static_cast<size_t>(v)] = v + 1;
        return c;
    }
    // Sides follow the linked tree; the mixed class only has to be
    // independent in f itself.
    auto link = link_forest(f);
    auto side = forest_sides(link.tree);
    if (auto c = detail::one_mixed_class(f, side, s)) {
        verify_equitable_or_throw(f, *c, "equitable_color_forest");
        return *c;
    }
    // Each tree of f may flip its sides independently; try the flips that
    // balance the two sides and that pile the larger halves together.
    {
        auto comps = components(f);
        std::vector<int> diff(comps.size());
        for (size_t i = 0; i < comps.size(); ++i)
            for (int v : comps[i]) diff[i] += side[static_cast<size_t>(v)] ? -1 : 1;
        std::vector<size_t> idx(comps.size());
        std::iota(idx.begin(), idx.end(), size_t{0});
        std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return std::abs(diff[a]) > std::abs(diff[b]); });
        for (int mode = 0; mode < 2; ++mode) {
            auto alt = side;
            int bal = 0;
            for (size_t i : idx) {
                bool flip = mode == 0 ? (bal > 0) == (diff[i] > 0) && diff[i] != 0 : diff[i] < 0;
                if (flip)
                    for (int v : comps[i]) alt[static_cast<size_t>(v)] ^= 1;
                bal += flip ? -diff[i] : diff[i];
            }
            if (alt == side) continue;
            if (auto c = detail::one_mixed_class(f, alt, s)) {
                verify_equitable_or_throw(f, *c, "equitable_color_forest");
                return *c;
            }
        }
    }
    // Rebalance from a few deterministic starts: the tightest vertices get a
    // class cut from a maximum independent set through them, and the rest is
    // dealt from the 2-colouring.
    ++telemetry().forest_rebalances;
    auto alpha = forest_alpha_all(f);
    std::vector<int> tight(static_cast<size_t>(n));
    std::iota(tight.begin(), tight.end(), 0);
    std::stable_sort(tight.begin(), tight.end(), [&](int a, int b) {
        if (alpha[static_cast<size_t>(a)] != alpha[static_cast<size_t>(b)]) return alpha[static_cast<size_t>(a)] < alpha[static_cast<size_t>(b)];
        return f.degree(a) > f.degree(b);
    });
    int q = n / s, r = n % s;
    std::vector<std::vector<int>> seeds{{}};
    for (int i = 0; i < std::min(n, 3); ++i) seeds.push_back(detail::forest_mis_with(f, tight[static_cast<size_t>(i)]));
    for (const auto& seed : seeds) {
        for (int variant = 0; variant < 4; ++variant) {
            Coloring c(s, n);
            int first = 1;
            if (!seed.empty()) {
                int want = std::min<int>(static_cast<int>(seed.size()), q + (r > 0 && variant % 2 == 0 ? 1 : 0));
                // Keep the seed vertex, then take from the front or the back.
                std::vector<int> cls{seed.front()};
                for (int i = 1; static_cast<int>(cls.size()) < want; ++i)
                    cls.push_back(variant < 2 ? seed[static_cast<size_t>(i)] : seed[seed.size() - static_cast<size_t>(i)]);
                for (int v : cls) c.color[static_cast<size_t>(v)] = 1;
                first = 2;
            }
            int rest = s - first + 1;
            int nx = 0, nt = 0;
            for (int v = 0; v < n; ++v)
                if (!c.color[static_cast<size_t>(v)]) { ++nt; nx += side[static_cast<size_t>(v)] == 0; }
            int kx = std::clamp(static_cast<int>(static_cast<long>(rest) * nx / std::max(nt, 1)) + (seed.empty() ? variant % 2 : 0), 1, rest - 1);
            int ix = 0, iy = 0;
            for (int v = 0; v < n; ++v) {
                if (c.color[static_cast<size_t>(v)]) continue;
                if (side[static_cast<size_t>(v)] == 0) c.color[static_cast<size_t>(v)] = first + (ix++ % kx);
                else c.color[static_cast<size_t>(v)] = first + kx + (iy++ % (rest - kx));
            }
            if (detail::rebalance(f, c)) {
                c = detail::colour_from_classes(n, s, c.classes());
                verify_equitable_or_throw(f, c, "equitable_color_forest");
                return c;
            }
        }
    }
    if (n <= 20) {
        ++telemetry().forest_exhaustive_fallbacks;
        auto e = exhaustive_equitable(f, s);
        ensure(e.has_value(), "forest satisfying the hypothesis has no equitable colouring");
        return detail::colour_from_classes(n, s, e->classes());
    }
    fail(ErrorKind::InternalAssertionFailed, "forest colouring stalled on a graph that satisfies the hypothesis");
}

}  // namespace equicolor
