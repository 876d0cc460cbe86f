#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"

namespace equicolor {

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

namespace detail {

struct Token {
    std::string text;
    int column;  // 1-based
};

inline std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

inline long parse_int(const Token& t, int line) {
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(t.text, &pos);
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + t.text + "'", line, t.column);
    }
    if (pos != t.text.size()) throw ParseError("expected an integer, got '" + t.text + "'", line, t.column);
    return v;
}

}  // namespace detail

// Line-based graph text: "n <count>", optional "outer <v0 ... v_{n-1}>", then
// one "e u v" per edge. '#' starts a comment.
inline Graph parse_graph(std::istream& in) {
    std::string raw;
    int line = 0;
    std::optional<Graph> g;
    while (std::getline(in, raw)) {
        ++line;
        auto tok = detail::tokenize(raw);
        if (tok.empty()) continue;
        const auto& kw = tok[0];
        if (kw.text == "n") {
            if (g) throw ParseError("duplicate 'n' header", line, kw.column);
            if (tok.size() != 2) throw ParseError("'n' takes one value", line, kw.column);
            long n = detail::parse_int(tok[1], line);
            if (n < 0 || n > 10'000'000) throw ParseError("vertex count out of range", line, tok[1].column);
            g.emplace(static_cast<int>(n));
            continue;
        }
        if (!g) throw ParseError("expected 'n <count>' before '" + kw.text + "'", line, kw.column);
        auto vertex = [&](const detail::Token& t) {
            long v = detail::parse_int(t, line);
            if (v < 0 || v >= g->n()) throw ParseError("vertex " + t.text + " out of range", line, t.column);
            return static_cast<int>(v);
        };
        if (kw.text == "e") {
            if (tok.size() != 3) throw ParseError("'e' takes two vertices", line, kw.column);
            int u = vertex(tok[1]), v = vertex(tok[2]);
            if (u == v) throw ParseError("self-loop", line, tok[2].column);
            g->add_edge(u, v);
        } else if (kw.text == "outer") {
            if (g->has_embedding()) throw ParseError("duplicate 'outer' line", line, kw.column);
            std::vector<int> order;
            std::vector<char> seen(static_cast<size_t>(g->n()), 0);
            for (size_t k = 1; k < tok.size(); ++k) {
                int v = vertex(tok[k]);
                if (seen[static_cast<size_t>(v)]++) throw ParseError("vertex repeated in outer order", line, tok[k].column);
                order.push_back(v);
            }
            if (static_cast<int>(order.size()) != g->n())
                throw ParseError("outer order must list every vertex once", line, kw.column);
            g->set_outer_order(std::move(order));
        } else {
            throw ParseError("unknown keyword '" + kw.text + "'", line, kw.column);
        }
    }
    if (!g) throw ParseError("missing 'n <count>' header", line + 1, 1);
    return *g;
}

inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

inline std::string format_graph(const Graph& g) {
    std::ostringstream out;
    out << "n " << g.n() << "\n";
    if (g.has_embedding()) {
        out << "outer";
        for (int v : *g.outer_order()) out << ' ' << v;
        out << "\n";
    }
    for (const auto& e : g.edges()) out << "e " << e.u << ' ' << e.v << "\n";
    return out.str();
}

// "s <k>" then one "c v colour" per vertex.
inline Coloring parse_coloring(std::istream& in) {
    std::string raw;
    int line = 0, s = -1;
    std::vector<std::pair<int, int>> entries;
    int max_v = -1;
    while (std::getline(in, raw)) {
        ++line;
        auto tok = detail::tokenize(raw);
        if (tok.empty()) continue;
        if (tok[0].text == "s") {
            if (s >= 0) throw ParseError("duplicate 's' header", line, tok[0].column);
            if (tok.size() != 2) throw ParseError("'s' takes one value", line, tok[0].column);
            long k = detail::parse_int(tok[1], line);
            if (k < 1) throw ParseError("colour count must be positive", line, tok[1].column);
            s = static_cast<int>(k);
        } else if (tok[0].text == "c") {
            if (s < 0) throw ParseError("expected 's <k>' before colour lines", line, tok[0].column);
            if (tok.size() != 3) throw ParseError("'c' takes a vertex and a colour", line, tok[0].column);
            long v = detail::parse_int(tok[1], line), col = detail::parse_int(tok[2], line);
            if (v < 0 || v > 10'000'000) throw ParseError("vertex out of range", line, tok[1].column);
            entries.emplace_back(static_cast<int>(v), static_cast<int>(col));
            max_v = std::max(max_v, static_cast<int>(v));
        } else {
            throw ParseError("unknown keyword '" + tok[0].text + "'", line, tok[0].column);
        }
    }
    if (s < 0) throw ParseError("missing 's <k>' header", line + 1, 1);
    Coloring c(s, max_v + 1);
    for (auto [v, col] : entries) c.color[static_cast<size_t>(v)] = col;
    return c;
}

inline Coloring parse_coloring(const std::string& text) {
    std::istringstream in(text);
    return parse_coloring(in);
}

inline std::string format_coloring(const Coloring& c) {
    std::ostringstream out;
    out << "s " << c.s << "\n";
    for (int v = 0; v < c.n(); ++v) out << "c " << v << ' ' << c.color[static_cast<size_t>(v)] << "\n";
    return out.str();
}

}  // namespace equicolor
