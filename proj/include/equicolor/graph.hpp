#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace equicolor {

struct Edge {
    int u = 0;
    int v = 0;
    friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }
    friend bool operator<(const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    }
};

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

inline std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists and an
// optional outerplane embedding given as the cyclic order of the outer boundary.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(static_cast<size_t>(n)) {
        if (n < 0) fail(ErrorKind::InvalidArgument, "negative vertex count");
    }

    static Graph from_edges(int n, const std::vector<Edge>& edges) {
        Graph g(n);
        for (const auto& e : edges) g.add_edge(e.u, e.v);
        return g;
    }

    int n() const { return static_cast<int>(adj_.size()); }
    std::size_t m() const { return m_; }

    bool add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) fail(ErrorKind::InvalidArgument, "self-loop at " + std::to_string(u));
        auto& au = adj_[static_cast<size_t>(u)];
        auto it = std::lower_bound(au.begin(), au.end(), v);
        if (it != au.end() && *it == v) return false;
        au.insert(it, v);
        auto& av = adj_[static_cast<size_t>(v)];
        av.insert(std::lower_bound(av.begin(), av.end(), u), u);
        ++m_;
        return true;
    }

    bool remove_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        auto& au = adj_[static_cast<size_t>(u)];
        auto it = std::lower_bound(au.begin(), au.end(), v);
        if (it == au.end() || *it != v) return false;
        au.erase(it);
        auto& av = adj_[static_cast<size_t>(v)];
        av.erase(std::lower_bound(av.begin(), av.end(), u));
        --m_;
        return true;
    }

    bool has_edge(int u, int v) const {
        if (u < 0 || v < 0 || u >= n() || v >= n() || u == v) return false;
        const auto& a = adj_[static_cast<size_t>(u)];
        const auto& b = adj_[static_cast<size_t>(v)];
        if (a.size() <= b.size()) return std::binary_search(a.begin(), a.end(), v);
        return std::binary_search(b.begin(), b.end(), u);
    }

    const std::vector<int>& neighbors(int v) const {
        check_vertex(v);
        return adj_[static_cast<size_t>(v)];
    }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    int max_degree() const {
        int d = 0;
        for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
        return d;
    }

    std::vector<int> degrees() const {
        std::vector<int> d(adj_.size());
        for (size_t i = 0; i < adj_.size(); ++i) d[i] = static_cast<int>(adj_[i].size());
        return d;
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(m_);
        for (int u = 0; u < n(); ++u)
            for (int v : adj_[static_cast<size_t>(u)])
                if (u < v) out.push_back({u, v});
        return out;
    }

    const std::optional<std::vector<int>>& outer_order() const { return outer_; }
    bool has_embedding() const { return outer_.has_value(); }
    void set_outer_order(std::vector<int> order) { outer_ = std::move(order); }
    void clear_outer_order() { outer_.reset(); }

    // Subgraph induced by `vs`; vertex i of the result is vs[i]. The embedding
    // is inherited by restricting the outer order.
    Graph induced(const std::vector<int>& vs) const {
        std::vector<int> idx(adj_.size(), -1);
        for (size_t i = 0; i < vs.size(); ++i) idx[static_cast<size_t>(vs[i])] = static_cast<int>(i);
        Graph h(static_cast<int>(vs.size()));
        for (size_t i = 0; i < vs.size(); ++i)
            for (int w : adj_[static_cast<size_t>(vs[i])]) {
                int j = idx[static_cast<size_t>(w)];
                if (j > static_cast<int>(i)) h.add_edge(static_cast<int>(i), j);
            }
        if (outer_) {
            std::vector<int> order;
            for (int v : *outer_)
                if (idx[static_cast<size_t>(v)] >= 0) order.push_back(idx[static_cast<size_t>(v)]);
            h.set_outer_order(std::move(order));
        }
        return h;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.adj_ == b.adj_ && a.outer_ == b.outer_;
    }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n())
            fail(ErrorKind::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
    }

    std::vector<std::vector<int>> adj_;
    std::size_t m_ = 0;
    std::optional<std::vector<int>> outer_;
};

// Complement of `removed` as a sorted vertex list.
inline std::vector<int> remaining_vertices(int n, const std::vector<int>& removed) {
    std::vector<char> gone(static_cast<size_t>(n), 0);
    for (int v : removed) gone[static_cast<size_t>(v)] = 1;
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (!gone[static_cast<size_t>(v)]) out.push_back(v);
    return out;
}

inline bool is_independent(const Graph& g, const std::vector<int>& set) {
    for (size_t i = 0; i < set.size(); ++i)
        for (size_t j = i + 1; j < set.size(); ++j)
            if (set[i] == set[j] || g.has_edge(set[i], set[j])) return false;
    return true;
}

inline int ceil_div(long a, long b) { return static_cast<int>((a + b - 1) / b); }
inline int floor_div(long a, long b) { return static_cast<int>(a / b); }

// Colours are 1..s; 0 marks an uncoloured vertex.
struct Coloring {
    int s = 0;
    std::vector<int> color;

    Coloring() = default;
    Coloring(int s_, int n) : s(s_), color(static_cast<size_t>(n), 0) {}

    int n() const { return static_cast<int>(color.size()); }

    std::vector<int> class_sizes() const {
        std::vector<int> sz(static_cast<size_t>(s), 0);
        for (int c : color)
            if (c >= 1 && c <= s) ++sz[static_cast<size_t>(c - 1)];
        return sz;
    }

    std::vector<std::vector<int>> classes() const {
        std::vector<std::vector<int>> cl(static_cast<size_t>(s));
        for (int v = 0; v < n(); ++v) {
            int c = color[static_cast<size_t>(v)];
            if (c >= 1 && c <= s) cl[static_cast<size_t>(c - 1)].push_back(v);
        }
        return cl;
    }

    bool complete() const {
        return std::all_of(color.begin(), color.end(), [&](int c) { return c >= 1 && c <= s; });
    }

    bool equitable() const {
        if (!complete() || s <= 0) return false;
        int lo = n() / s, hi = ceil_div(n(), s);
        for (int c : class_sizes())
            if (c < lo || c > hi) return false;
        return true;
    }
};

inline bool is_proper(const Graph& g, const Coloring& c) {
    for (const auto& e : g.edges()) {
        int a = c.color[static_cast<size_t>(e.u)], b = c.color[static_cast<size_t>(e.v)];
        if (a != 0 && a == b) return false;
    }
    return true;
}

// Empty string when `c` is a proper equitable colouring of `g`; otherwise the
// first problem found.
inline std::string check_equitable(const Graph& g, const Coloring& c) {
    if (c.n() != g.n()) return "colouring covers " + std::to_string(c.n()) + " vertices, graph has " +
                               std::to_string(g.n());
    if (c.s <= 0) return "colour count must be positive";
    for (int v = 0; v < c.n(); ++v) {
        int col = c.color[static_cast<size_t>(v)];
        if (col < 1 || col > c.s)
            return "vertex " + std::to_string(v) + " has colour " + std::to_string(col) + " outside 1.." +
                   std::to_string(c.s);
    }
    for (const auto& e : g.edges())
        if (c.color[static_cast<size_t>(e.u)] == c.color[static_cast<size_t>(e.v)])
            return "adjacent vertices " + std::to_string(e.u) + " and " + std::to_string(e.v) +
                   " share colour " + std::to_string(c.color[static_cast<size_t>(e.u)]);
    int lo = g.n() / c.s, hi = ceil_div(g.n(), c.s);
    auto sz = c.class_sizes();
    for (int j = 0; j < c.s; ++j)
        if (sz[static_cast<size_t>(j)] < lo || sz[static_cast<size_t>(j)] > hi)
            return "class " + std::to_string(j + 1) + " has size " + std::to_string(sz[static_cast<size_t>(j)]) +
                   ", expected " + std::to_string(lo) + ".." + std::to_string(hi);
    return {};
}

inline void verify_equitable_or_throw(const Graph& g, const Coloring& c, const std::string& where) {
    auto msg = check_equitable(g, c);
    if (!msg.empty()) fail(ErrorKind::InternalAssertionFailed, where + ": " + msg);
}

// Parent pointers of a spanning forest of g[vs] if it is acyclic (roots map to
// -1, vertices outside vs to -2); nullopt when g[vs] has a cycle.
inline std::optional<std::vector<int>> forest_certificate(const Graph& g, const std::vector<int>& vs) {
    std::vector<int> parent(static_cast<size_t>(g.n()), -2);
    std::vector<char> in(static_cast<size_t>(g.n()), 0);
    for (int v : vs) in[static_cast<size_t>(v)] = 1;
    std::vector<int> stack;
    for (int root : vs) {
        if (parent[static_cast<size_t>(root)] != -2) continue;
        parent[static_cast<size_t>(root)] = -1;
        stack.push_back(root);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(u)) {
                if (!in[static_cast<size_t>(w)] || w == parent[static_cast<size_t>(u)]) continue;
                if (parent[static_cast<size_t>(w)] != -2) return std::nullopt;
                parent[static_cast<size_t>(w)] = u;
                stack.push_back(w);
            }
        }
    }
    return parent;
}

inline bool is_forest(const Graph& g) {
    std::vector<int> all(static_cast<size_t>(g.n()));
    std::iota(all.begin(), all.end(), 0);
    return forest_certificate(g, all).has_value();
}

struct ForestPartition {
    std::vector<std::vector<int>> parts;
    std::vector<int> part_of;       // vertex -> part index
    std::vector<int> degree_caps;   // empty when no caps are claimed
    std::vector<int> parent;        // spanning-forest certificate for each part

    int k() const { return static_cast<int>(parts.size()); }
};

inline ForestPartition make_partition(int n, int k, const std::vector<int>& part_of) {
    ForestPartition fp;
    fp.parts.assign(static_cast<size_t>(k), {});
    fp.part_of = part_of;
    for (int v = 0; v < n; ++v) fp.parts[static_cast<size_t>(part_of[static_cast<size_t>(v)])].push_back(v);
    return fp;
}

inline int degree_within(const Graph& g, const std::vector<int>& part_of, int v) {
    int d = 0;
    for (int w : g.neighbors(v))
        if (part_of[static_cast<size_t>(w)] == part_of[static_cast<size_t>(v)]) ++d;
    return d;
}

// Empty string when fp is a valid (optionally balanced) forest partition that
// respects its degree caps; fills fp.parent as a side effect.
inline std::string check_forest_partition(const Graph& g, ForestPartition& fp, bool balanced) {
    if (static_cast<int>(fp.part_of.size()) != g.n()) return "part_of has wrong length";
    std::vector<int> seen(static_cast<size_t>(g.n()), 0);
    for (int i = 0; i < fp.k(); ++i)
        for (int v : fp.parts[static_cast<size_t>(i)]) {
            if (v < 0 || v >= g.n()) return "vertex out of range";
            if (fp.part_of[static_cast<size_t>(v)] != i) return "part_of disagrees with parts";
            ++seen[static_cast<size_t>(v)];
        }
    for (int v = 0; v < g.n(); ++v)
        if (seen[static_cast<size_t>(v)] != 1) return "vertex " + std::to_string(v) + " not covered exactly once";
    if (balanced && fp.k() > 0) {
        size_t lo = g.n() / static_cast<size_t>(fp.k()), hi = static_cast<size_t>(ceil_div(g.n(), fp.k()));
        for (const auto& p : fp.parts)
            if (p.size() < lo || p.size() > hi) return "part sizes not balanced";
    }
    fp.parent.assign(static_cast<size_t>(g.n()), -1);
    for (const auto& p : fp.parts) {
        auto cert = forest_certificate(g, p);
        if (!cert) return "a part induces a cycle";
        for (int v : p) fp.parent[static_cast<size_t>(v)] = (*cert)[static_cast<size_t>(v)];
    }
    if (!fp.degree_caps.empty()) {
        for (int v = 0; v < g.n(); ++v) {
            int d = degree_within(g, fp.part_of, v);
            if (d > fp.degree_caps[static_cast<size_t>(v)])
                return "vertex " + std::to_string(v) + " has within-part degree " + std::to_string(d) +
                       " above cap " + std::to_string(fp.degree_caps[static_cast<size_t>(v)]);
        }
    }
    return {};
}

// Connected components as vertex lists, in order of smallest vertex.
inline std::vector<std::vector<int>> components(const Graph& g) {
    std::vector<int> comp(static_cast<size_t>(g.n()), -1);
    std::vector<std::vector<int>> out;
    std::vector<int> stack;
    for (int s = 0; s < g.n(); ++s) {
        if (comp[static_cast<size_t>(s)] >= 0) continue;
        out.emplace_back();
        comp[static_cast<size_t>(s)] = static_cast<int>(out.size()) - 1;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            out.back().push_back(u);
            for (int w : g.neighbors(u))
                if (comp[static_cast<size_t>(w)] < 0) {
                    comp[static_cast<size_t>(w)] = comp[static_cast<size_t>(s)];
                    stack.push_back(w);
                }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

}  // namespace equicolor
