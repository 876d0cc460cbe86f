#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>
#include <fstream>

#include <json.hpp>

#include "fixtures.hpp"

using namespace equicolor;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run sh(const std::string& cmd) {
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    size_t k;
    while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), k);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string cli() { return EQUICOLOR_CLI_PATH; }

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / ("equicolor_test_" + name);
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST(GraphText, RoundTripEnumerated) {
    for (int n = 3; n <= 10; ++n)
        enumerate_maximal_outerplanar(n, [&](const Graph& g) { ASSERT_EQ(parse_graph(format_graph(g)), g); });
}

TEST(GraphText, RoundTripWithoutOrder) {
    auto g = fx::icosahedron();
    EXPECT_EQ(parse_graph(format_graph(g)), g);
}

TEST(GraphText, CommentsAndBlankLines) {
    auto g = parse_graph("# header\n\nn 3  # three\ne 0 1\ne 1 2 # path\n");
    EXPECT_EQ(g.n(), 3);
    EXPECT_EQ(g.m(), 2u);
}

TEST(GraphText, ErrorPositions) {
    struct Case { const char* text; int line, column; };
    const Case cases[] = {
        {"n 3\ne 0 7\n", 2, 5},
        {"n 3\ne 0 x\n", 2, 5},
        {"e 0 1\n", 1, 1},
        {"n 3\nn 4\n", 2, 1},
        {"n 3\nouter 0 1\n", 2, 1},
        {"n 3\nouter 0 1 1\n", 2, 11},
        {"n 3\ne 1 1\n", 2, 5},
        {"n 3\nfoo 1\n", 2, 1},
        {"# empty\n", 2, 1},
    };
    for (const auto& c : cases) {
        try {
            parse_graph(std::string(c.text));
            FAIL() << c.text;
        } catch (const ParseError& e) {
            EXPECT_EQ(e.kind(), ErrorKind::ParseError);
            EXPECT_EQ(e.line(), c.line) << c.text;
            EXPECT_EQ(e.column(), c.column) << c.text;
        }
    }
}

TEST(ColoringText, RoundTrip) {
    Coloring c(3, 5);
    c.color = {1, 2, 3, 1, 2};
    auto d = parse_coloring(format_coloring(c));
    EXPECT_EQ(d.s, 3);
    EXPECT_EQ(d.color, c.color);
    EXPECT_THROW(parse_coloring(std::string("c 0 1\n")), ParseError);
}

TEST(Cli, GenerateThenOracleIsInfeasible) {
    auto r = sh(cli() + " generate --family stalactite --params 1 | " + cli() + " oracle --s 3");
    EXPECT_EQ(r.code, 2) << r.out;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["outcome"], "Infeasible");
    EXPECT_EQ(j["command"], "oracle");
}

TEST(Cli, ColorP13) {
    auto f = temp_file("p13.txt", format_graph(fx::path(13)));
    auto r = sh(cli() + " color --s 6 " + f.string());
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["outcome"], "Colored");
    auto sizes = j["payload"]["class_sizes"].get<std::vector<int>>();
    std::sort(sizes.rbegin(), sizes.rend());
    EXPECT_EQ(sizes, (std::vector<int>{3, 2, 2, 2, 2, 2}));
}

TEST(Cli, VerifyTampered) {
    auto g = fx::path(13);
    auto f = temp_file("p13v.txt", format_graph(g));
    auto cf = temp_file("p13c.txt", "");
    auto r = sh(cli() + " color --s 6 --out " + cf.string() + " " + f.string());
    ASSERT_EQ(r.code, 0) << r.out;
    auto ok = sh(cli() + " verify --coloring " + cf.string() + " " + f.string());
    EXPECT_EQ(ok.code, 0) << ok.out;
    std::ifstream in(cf);
    Coloring c = parse_coloring(in);
    c.color[1] = c.color[0];
    auto bad = temp_file("p13bad.txt", format_coloring(c));
    auto r2 = sh(cli() + " verify --coloring " + bad.string() + " " + f.string());
    EXPECT_EQ(r2.code, 1) << r2.out;
    EXPECT_EQ(nlohmann::json::parse(r2.out)["outcome"], "Error");
}

TEST(Cli, ParseErrorReported) {
    auto f = temp_file("bad.txt", "n 3\ne 0 9\n");
    auto r = sh(cli() + " partition " + f.string());
    EXPECT_EQ(r.code, 1);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["outcome"], "Error");
    EXPECT_EQ(j["payload"]["line"], 2);
}

TEST(Cli, HypothesisAndEnum) {
    auto f = temp_file("star.txt", format_graph(fx::star(9)));
    auto h = sh(cli() + " hypothesis --s 3 " + f.string());
    EXPECT_EQ(h.code, 2);
    EXPECT_EQ(nlohmann::json::parse(h.out)["payload"]["alpha"], 1);
    auto e = sh(cli() + " enum --n 7 --s 6");
    ASSERT_EQ(e.code, 0) << e.out;
    auto j = nlohmann::json::parse(e.out);
    EXPECT_EQ(j["payload"]["count"], 42);
    EXPECT_EQ(j["payload"]["catalan"], 42);
}

TEST(Cli, PlanarGadgetColorIsInfeasible) {
    auto r = sh(cli() + " generate --family planar-gadget --params 40 | " + cli() + " color --planar --s 40");
    EXPECT_EQ(r.code, 2) << r.out;
}

TEST(Cli, PartitionCaps) {
    auto r = sh(cli() + " --seed 4 generate --family random-outerplanar --params 200 | " + cli() + " partition");
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["outcome"], "Partitioned");
    EXPECT_EQ(j["payload"]["parts"].size(), 2u);
}
