// Batch front end: reads graphs in the line format of io.hpp, prints a JSON
// run report (or a graph, for `generate`) and exits 0, 1 or 2.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "equicolor/equicolor.hpp"
#include "equicolor/random.hpp"

using namespace equicolor;
using nlohmann::json;

namespace {

struct RunReport {
    std::string command;
    std::string digest;
    std::string outcome = "Error";
    std::string message;
    json payload;
    double wall_ms = 0;

    json to_json() const {
        const auto& t = telemetry();
        json j{{"command", command},
               {"input_digest", digest},
               {"outcome", outcome},
               {"telemetry",
                {{"forest_exhaustive_fallbacks", t.forest_exhaustive_fallbacks},
                 {"forest_rebalances", t.forest_rebalances},
                 {"original_graph_set_searches", t.original_graph_set_searches},
                 {"pipeline_fallbacks", t.pipeline_fallbacks},
                 {"saturation_extra_bad_edges", t.saturation_extra_bad_edges},
                 {"extend_six_steps", t.extend_six_steps},
                 {"extend_jumps_to_six", t.extend_jumps_to_six},
                 {"invariant_checks", t.invariant_checks},
                 {"invariant_violations", t.invariant_violations}}},
               {"wall_ms", wall_ms}};
        if (!message.empty()) j["message"] = message;
        if (!payload.is_null()) j["payload"] = payload;
        return j;
    }
};

int exit_code(const std::string& outcome) {
    if (outcome == "Infeasible" || outcome == "HypothesisViolated") return 2;
    if (outcome == "Error" || outcome == "Unsolved") return 1;
    return 0;
}

std::string fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

std::string slurp(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json coloring_payload(const Coloring& c) {
    return {{"s", c.s}, {"colors", c.color}, {"class_sizes", c.class_sizes()}};
}

SearchBudget oracle_budget() {
    SearchBudget b;  // wall clock from EQUICOLOR_BUDGET_MS
    b.max_n = 64;
    return b;
}

// Smallest alpha_v over all vertices, for graphs that are not outerplanar.
std::pair<int, int> min_alpha_general(const Graph& g) {
    if (g.n() > 64) throw Error(ErrorKind::TooLarge, "alpha_v for non-outerplanar graphs is limited to 64 vertices");
    int best = g.n() + 1, at = -1;
    for (int v = 0; v < g.n(); ++v) {
        int a = static_cast<int>(max_independent_bb(g, {}, v)->size());
        if (a < best) { best = a; at = v; }
    }
    return {at, best};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equitable colouring of outerplanar and planar graphs"};
    app.require_subcommand(1);
    int s = 6, n_enum = 0;
    bool planar = false;
    std::string input = "-", coloring_file, family, coloring_out;
    std::vector<int> params;
    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "Seed for random generator families");

    auto* color = app.add_subcommand("color", "Equitable colouring through the constructive pipelines");
    color->add_option("--s", s, "Number of colours")->required();
    color->add_flag("--planar", planar, "Use the planar pipeline (s >= 40)");
    color->add_option("--out", coloring_out, "Also write the colouring to this file");
    color->add_option("graph", input, "Graph file, '-' for stdin");

    auto* partition = app.add_subcommand("partition", "Balanced two-forest partition with degree caps");
    partition->add_option("graph", input, "Graph file, '-' for stdin");

    auto* verify = app.add_subcommand("verify", "Check that a colouring is proper and equitable");
    verify->add_option("--coloring", coloring_file, "Colouring file")->required();
    verify->add_option("graph", input, "Graph file, '-' for stdin");

    auto* generate = app.add_subcommand("generate", "Emit a graph from one of the extremal families");
    generate->add_option("--family", family, "stalactite|planar-gadget|extender|degenerate|random-outerplanar|random-planar")
        ->required();
    generate->add_option("--params", params, "Family parameters")->expected(1, 2);

    auto* oracle = app.add_subcommand("oracle", "Exhaustive equitable colouring search");
    oracle->add_option("--s", s, "Number of colours")->required();
    oracle->add_option("graph", input, "Graph file, '-' for stdin");

    auto* enumerate = app.add_subcommand("enum", "Enumerate labeled maximal outerplanar graphs");
    enumerate->add_option("--n", n_enum, "Order")->required();
    enumerate->add_option("--s", s, "Colour every graph that satisfies the hypothesis at this s");

    auto* hypothesis = app.add_subcommand("hypothesis", "Check alpha_v >= floor(n/s), or the witness sets with --planar");
    hypothesis->add_option("--s", s, "Number of colours")->required();
    hypothesis->add_flag("--planar", planar, "Check the planar witness sets instead");
    hypothesis->add_option("graph", input, "Graph file, '-' for stdin");

    CLI11_PARSE(app, argc, argv);

    RunReport rep;
    rep.command = app.get_subcommands().front()->get_name();
    auto t0 = std::chrono::steady_clock::now();
    try {
        if (*generate) {
            Construction con;
            auto p = [&](size_t i, int dflt) { return i < params.size() ? params[i] : dflt; };
            fixtures::Rng rng(seed);
            if (family == "stalactite") con = stalactite_chain(p(0, 1));
            else if (family == "planar-gadget") con = planar_gadget(p(0, 40));
            else if (family == "extender") con = extender_chain(p(0, 1));
            else if (family == "degenerate") con = degenerate_gadget(p(0, 1), p(1, 3));
            else if (family == "random-outerplanar") con.graph = fixtures::random_maximal_outerplanar(p(0, 20), rng);
            else if (family == "random-planar") con.graph = fixtures::random_hub_planar(p(0, 200), rng, p(1, 3));
            else throw Error(ErrorKind::InvalidArgument, "unknown family '" + family + "'");
            if (!con.cert.family.empty()) {
                std::cout << "# family " << con.cert.family << " order " << con.cert.claimed_order << " max-degree "
                          << con.cert.claimed_max_degree;
                if (con.cert.no_equitable_s) std::cout << " no-equitable-s " << con.cert.no_equitable_s;
                std::cout << "\n";
            }
            std::cout << format_graph(con.graph);
            return 0;
        }
        if (*enumerate) {
            std::uint64_t count = 0, holds = 0, colored = 0, failures = 0;
            enumerate_maximal_outerplanar(n_enum, [&](const Graph& g) {
                ++count;
                if (enumerate->count("--s") == 0) return;
                if (!check_hypothesis(g, s).ok) return;
                ++holds;
                try {
                    equitable_color_outerplanar(g, s);
                    ++colored;
                } catch (const Error&) {
                    ++failures;
                }
            });
            rep.payload = {{"n", n_enum}, {"count", count}, {"catalan", catalan(n_enum - 2)}};
            if (enumerate->count("--s")) rep.payload.update({{"s", s}, {"hypothesis_holds", holds}, {"colored", colored}});
            rep.outcome = failures ? "Error" : "Enumerated";
            if (failures) rep.message = std::to_string(failures) + " graphs failed";
        } else {
            std::string text = slurp(input);
            rep.digest = fnv1a(text);
            Graph g = parse_graph(text);
            if (*color) {
                Coloring c;
                if (planar) {
                    auto w = find_witness_sets(g, s);
                    if (!w) {
                        rep.outcome = "Infeasible";
                        rep.message = "no witness sets for the two largest-degree vertices";
                    } else {
                        c = equitable_color_planar(g, s, w->I0, w->I1);
                    }
                } else {
                    c = equitable_color_outerplanar(g, s);
                }
                if (rep.outcome != "Infeasible") {
                    auto msg = check_equitable(g, c);
                    if (!msg.empty()) throw Error(ErrorKind::InternalAssertionFailed, "output failed verification: " + msg);
                    rep.outcome = "Colored";
                    rep.payload = coloring_payload(c);
                    if (!coloring_out.empty()) std::ofstream(coloring_out) << format_coloring(c);
                }
            } else if (*partition) {
                auto fp = partition_lemma(g);
                rep.outcome = "Partitioned";
                rep.payload = {{"parts", fp.parts}, {"degree_caps", fp.degree_caps}};
            } else if (*verify) {
                Coloring c = parse_coloring(slurp(coloring_file));
                if (c.n() < g.n()) c.color.resize(static_cast<size_t>(g.n()), 0);
                auto msg = check_equitable(g, c);
                if (msg.empty()) {
                    rep.outcome = "Colored";
                    rep.payload = coloring_payload(c);
                } else {
                    rep.outcome = "Error";
                    rep.message = msg;
                }
            } else if (*oracle) {
                auto c = exhaustive_equitable(g, s, oracle_budget());
                if (c) {
                    rep.outcome = "Colored";
                    rep.payload = coloring_payload(*c);
                } else {
                    rep.outcome = "Infeasible";
                    rep.message = "no equitable " + std::to_string(s) + "-colouring exists";
                }
            } else if (*hypothesis) {
                if (planar) {
                    auto w = find_witness_sets(g, s);
                    rep.outcome = w ? "HypothesisHolds" : "HypothesisViolated";
                    if (w) rep.payload = {{"I0", w->I0}, {"I1", w->I1}, {"w0", w->w0}, {"w1", w->w1}};
                } else {
                    int vertex, alpha;
                    if (validate_embedding(g).is_outerplanar) {
                        auto h = check_hypothesis(g, s);
                        vertex = h.vertex;
                        alpha = h.alpha;
                    } else {
                        std::tie(vertex, alpha) = min_alpha_general(g);
                    }
                    int bound = g.n() / s;
                    rep.outcome = alpha >= bound ? "HypothesisHolds" : "HypothesisViolated";
                    rep.payload = {{"vertex", vertex}, {"alpha", alpha}, {"bound", bound}};
                }
            }
        }
    } catch (const ParseError& e) {
        rep.outcome = "Error";
        rep.message = e.what();
        rep.payload = {{"line", e.line()}, {"column", e.column()}};
    } catch (const Error& e) {
        switch (e.kind()) {
            case ErrorKind::HypothesisViolated: rep.outcome = "HypothesisViolated"; break;
            case ErrorKind::Unsolved:
            case ErrorKind::BudgetExceeded: rep.outcome = "Unsolved"; break;
            default: rep.outcome = "Error";
        }
        rep.message = e.what();
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::cout << rep.to_json().dump(2) << "\n";
    return exit_code(rep.outcome);
}
