// ipaths: command-line front end. Every command reads or writes the JSON
// formats from ipaths/io.hpp; without --out the JSON goes to stdout.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ipaths/decomposition.hpp"
#include "ipaths/errors.hpp"
#include "ipaths/generators.hpp"
#include "ipaths/io.hpp"
#include "ipaths/mapper.hpp"
#include "ipaths/max_ip.hpp"
#include "ipaths/oracle.hpp"

using namespace ipaths;

namespace {

struct Common {
    std::string graph;
    std::string out;
    std::string dot;
    std::optional<int> max_paths;
    std::optional<std::uint64_t> seed;
};

class Stopwatch {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
        return ms;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

void emit(const std::string& out, const Json& doc, const std::string& summary) {
    if (out.empty() || out == "-") {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    write_text_file(out, doc.dump(2) + "\n");
    std::cerr << summary << "\n";
}

struct Loaded {
    SearchGraph graph;
    std::optional<GadgetConstants> meta;
};

Loaded load(const Common& c) {
    if (c.graph.empty())
        throw ParameterError("--graph is required");
    std::optional<GadgetConstants> meta;
    auto g = load_graph(c.graph, &meta);
    return {std::move(g), meta};
}

RunReport base_report(const std::string& command, const Loaded& in, const Common& c) {
    RunReport r;
    r.command = command;
    r.rule = in.graph.rule();
    if (in.graph.rule() == Rule::B)
        r.tau = in.graph.tau();
    r.seed = c.seed;
    r.stats = in.graph.stats();
    if (in.meta) {
        Json m;
        m["kind"] = in.meta->kind;
        m["s0"] = in.meta->s0;
        r.extra["gadget"] = m;
    }
    return r;
}

std::vector<InterestingPath> best_first(std::vector<InterestingPath> paths, std::optional<int> limit) {
    if (!limit || static_cast<int>(paths.size()) <= *limit)
        return paths;
    std::stable_sort(paths.begin(), paths.end(),
                     [](const auto& a, const auto& b) { return a.score > b.score; });
    paths.resize(*limit);
    return paths;
}

void finish(const Common& c, const SearchGraph& g, RunReport& r,
            const std::vector<InterestingPath>& paths, Stopwatch& clock) {
    for (const auto& p : paths)
        r.paths.push_back(report_path(g, p));
    if (!r.total_score && !r.bounds) {
        double total = 0.0;
        for (const auto& p : r.paths)
            total += p.score;
        r.total_score = total;
    }
    if (!c.dot.empty())
        write_text_file(c.dot, to_dot(g, paths));
    r.timings_ms.emplace_back("write", clock.lap());
    std::ostringstream summary;
    summary << r.command << ": " << r.paths.size() << " path(s)";
    if (r.total_score)
        summary << ", total score " << *r.total_score;
    if (r.bounds)
        summary << ", bounds [" << r.bounds->lower << ", " << r.bounds->upper << "]";
    emit(c.out, report_to_json(r), summary.str());
}

Json solver_stats(const SolverStats& s) {
    return Json{{"iterations", s.iterations},
                {"columns", s.columns},
                {"storedCells", s.stored_cells},
                {"tableBytes", s.table_bytes}};
}

void add_common(CLI::App* cmd, Common& c, bool needs_graph = true) {
    auto* g = cmd->add_option("--graph", c.graph, "Search graph JSON");
    if (needs_graph)
        g->required();
    cmd->add_option("--out", c.out, "Report JSON (default: stdout)");
    cmd->add_option("--export-dot", c.dot, "Write a Graphviz rendering of the result");
    cmd->add_option("--max-paths", c.max_paths, "Stop after / keep at most N paths")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "Seed recorded in the report (and used by generators)");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

std::vector<std::pair<int, int>> parse_arcs(const std::string& text) {
    std::vector<std::pair<int, int>> arcs;
    for (const auto& item : split_list(text)) {
        const auto dash = item.find('-');
        if (dash == std::string::npos)
            throw ParameterError("arc '" + item + "' is not of the form u-v");
        try {
            arcs.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
        } catch (const std::exception&) {
            throw ParameterError("arc '" + item + "' is not of the form u-v");
        }
    }
    return arcs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interesting-path search on Mapper skeletons and signed DAGs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ipaths 1.0");

    Common common;
    std::function<void()> action;

    // build -----------------------------------------------------------------
    std::string points, filter_cols, id_col = "id", target_col = "g", sk_out;
    std::vector<int> intervals{10};
    double overlap = 0.3;
    std::optional<double> gap;
    auto* build = app.add_subcommand("build", "CSV point cloud -> Mapper skeleton JSON");
    build->add_option("--points", points, "CSV file with a header row")->required();
    build->add_option("--id-col", id_col, "Point id column")->capture_default_str();
    build->add_option("--filter-cols", filter_cols,
                      "Comma-separated filter columns (default: all but id and target)");
    build->add_option("--target-col", target_col, "Target column g")->capture_default_str();
    build->add_option("--intervals", intervals, "Cover intervals: one count, or one per filter (comma-separated)")
        ->delimiter(',')
        ->capture_default_str();
    build->add_option("--overlap", overlap, "Fractional overlap of consecutive intervals")
        ->capture_default_str();
    build->add_option("--gap", gap, "Single-linkage threshold on g (default: range(g)/20)");
    build->add_option("--out", sk_out, "Skeleton JSON (default: stdout)");
    build->callback([&] {
        action = [&] {
            auto cloud = read_point_cloud_csv_file(points, CsvColumns{id_col, split_list(filter_cols), target_col});
            CoverSpec cover = CoverSpec::uniform(cloud.h(), intervals.front(), overlap);
            if (intervals.size() > 1) {
                if (static_cast<int>(intervals.size()) != cloud.h())
                    throw ParameterError("--intervals lists " + std::to_string(intervals.size()) +
                                         " counts for " + std::to_string(cloud.h()) + " filters");
                for (int i = 0; i < cloud.h(); ++i)
                    cover.dims[i].intervals = intervals[i];
            }
            auto sk = build_skeleton(cloud, cover, gap.value_or(default_gap(cloud)));
            emit(sk_out, skeleton_to_json(sk),
                 "build: " + std::to_string(sk.clusters.size()) + " clusters, " +
                     std::to_string(sk.links.size()) + " links");
        };
    });

    // graph -----------------------------------------------------------------
    std::string skeleton, rule_text = "a", graph_out;
    std::optional<double> tau;
    auto* graph = app.add_subcommand("graph", "Skeleton JSON -> signed directed search graph JSON");
    graph->add_option("--skeleton", skeleton, "Skeleton JSON")->required();
    graph->add_option("--rule", rule_text, "Edge-directing rule: a or b")
        ->check(CLI::IsMember({"a", "b"}))
        ->capture_default_str();
    graph->add_option("--tau", tau, "Bidirection threshold for rule b");
    graph->add_option("--out", graph_out, "Graph JSON (default: stdout)");
    graph->callback([&] {
        action = [&] {
            auto g = skeleton_to_search_graph(load_skeleton(skeleton), parse_rule(rule_text), tau);
            const auto& s = g.stats();
            emit(graph_out, graph_to_json(g),
                 "graph: n=" + std::to_string(s.n) + " m=" + std::to_string(s.m) +
                     (s.is_dag ? " (DAG)" : " (cyclic)"));
        };
    });

    // max-ip ----------------------------------------------------------------
    std::string solver = "sparse";
    int min_length = 1;
    std::optional<int> max_length;
    auto* maxip = app.add_subcommand("max-ip", "Maximum interesting path (DAG)");
    add_common(maxip, common);
    maxip->add_option("--solver", solver, "dense or sparse score table")
        ->check(CLI::IsMember({"dense", "sparse"}))
        ->capture_default_str();
    maxip->add_option("--min-length", min_length, "Only paths with at least this many edges");
    maxip->add_option("--max-length", max_length, "Only paths with at most this many edges");
    maxip->callback([&] {
        action = [&] {
            Stopwatch clock;
            auto in = load(common);
            auto r = base_report("max-ip", in, common);
            r.timings_ms.emplace_back("load", clock.lap());
            MaxIpOptions opt{min_length, max_length, nullptr};
            auto res = solver == "dense" ? max_ip(in.graph, opt) : max_ip_sparse(in.graph, opt);
            r.timings_ms.emplace_back("solve", clock.lap());
            r.extra["solver"] = solver;
            r.extra["solverStats"] = solver_stats(res.stats);
            std::vector<InterestingPath> paths;
            if (res.path)
                paths.push_back(*res.path);
            finish(common, in.graph, r, paths, clock);
        };
    });

    // decompositions --------------------------------------------------------
    int k = 0;
    auto decomposition = [&](const std::string& name, const std::string& help, bool takes_k,
                             std::function<PathCollection(const SearchGraph&)> run) {
        auto* cmd = app.add_subcommand(name, help);
        add_common(cmd, common);
        if (takes_k)
            cmd->add_option("--k", k, "Path length")->required();
        cmd->callback([&, name, takes_k, run] {
            action = [&, name, takes_k, run] {
                Stopwatch clock;
                auto in = load(common);
                auto r = base_report(name, in, common);
                if (takes_k)
                    r.k = k;
                r.timings_ms.emplace_back("load", clock.lap());
                auto c = run(in.graph);
                r.timings_ms.emplace_back("solve", clock.lap());
                r.extra["mode"] = to_string(c.mode);
                r.extra["coveredEdges"] = c.covered_edges;
                finish(common, in.graph, r, c.paths, clock);
            };
        });
    };
    auto greedy_opts = [&] { return GreedyOptions{common.max_paths}; };
    decomposition("ip", "Greedy decomposition into interesting paths (DAG)", false,
                  [&](const SearchGraph& g) { return greedy_ip(g, greedy_opts()); });
    decomposition("k-ip", "Greedy decomposition into interesting k-paths (DAG)", true,
                  [&](const SearchGraph& g) { return greedy_k_ip(g, k, greedy_opts()); });
    decomposition("atleast-k-ip", "Greedy extraction of paths with at least k edges (DAG)", true,
                  [&](const SearchGraph& g) { return at_least_k_ip(g, k, greedy_opts()); });
    decomposition("one-ip", "Every edge as its own path", false, [&](const SearchGraph& g) {
        auto c = one_ip(g);
        c.paths = best_first(std::move(c.paths), common.max_paths);
        return c;
    });
    decomposition("two-ip", "Exact 2-path decomposition via maximum-weight matching", false,
                  [&](const SearchGraph& g) {
                      auto c = two_ip(g);
                      c.paths = best_first(std::move(c.paths), common.max_paths);
                      return c;
                  });

    auto* bounds = app.add_subcommand("bounds", "Lower and upper bounds on the decomposition score (DAG)");
    add_common(bounds, common);
    bounds->callback([&] {
        action = [&] {
            Stopwatch clock;
            auto in = load(common);
            auto r = base_report("bounds", in, common);
            r.timings_ms.emplace_back("load", clock.lap());
            r.bounds = ip_bounds(in.graph);
            r.timings_ms.emplace_back("solve", clock.lap());
            finish(common, in.graph, r, {}, clock);
        };
    });

    // oracle ----------------------------------------------------------------
    std::optional<int> max_edges;
    auto* oracle = app.add_subcommand("oracle", "Exhaustive solvers for small graphs (any digraph)");
    oracle->require_subcommand(1);
    auto oracle_cmd = [&](const std::string& name, const std::string& help, bool takes_k,
                          std::function<std::pair<std::vector<InterestingPath>, Json>(const SearchGraph&)> run) {
        auto* cmd = oracle->add_subcommand(name, help);
        add_common(cmd, common);
        cmd->add_option("--max-edges", max_edges, "Override the enumeration guard on m");
        if (takes_k)
            cmd->add_option("--k", k, "Path length")->required();
        cmd->callback([&, name, takes_k, run] {
            action = [&, name, takes_k, run] {
                Stopwatch clock;
                auto in = load(common);
                auto r = base_report("oracle " + name, in, common);
                if (takes_k)
                    r.k = k;
                r.timings_ms.emplace_back("load", clock.lap());
                auto [paths, extra] = run(in.graph);
                r.timings_ms.emplace_back("solve", clock.lap());
                for (auto it = extra.begin(); it != extra.end(); ++it)
                    r.extra[it.key()] = it.value();
                finish(common, in.graph, r, best_first(std::move(paths), common.max_paths), clock);
            };
        });
    };
    oracle_cmd("max-ip", "Exhaustive maximum interesting path", false, [&](const SearchGraph& g) {
        OracleOptions opt;
        if (max_edges)
            opt.max_edges = *max_edges;
        auto res = brute_force_max_ip(g, opt);
        std::vector<InterestingPath> paths;
        if (res.path)
            paths.push_back(*res.path);
        return std::make_pair(paths, Json{{"enumeratedPaths", res.stats.stored_cells}});
    });
    oracle_cmd("k-ip", "Best edge-disjoint family of interesting k-paths", true, [&](const SearchGraph& g) {
        auto c = brute_force_k_ip(g, k, max_edges.value_or(12));
        return std::make_pair(c.paths, Json{{"coveredEdges", c.covered_edges}});
    });
    oracle_cmd("ip", "Best exact cover by interesting paths", false, [&](const SearchGraph& g) {
        auto c = brute_force_ip(g, max_edges.value_or(12));
        return std::make_pair(c.paths, Json{{"coveredEdges", c.covered_edges}});
    });

    // gen -------------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "Generate reduction gadgets and random DAGs");
    gen->require_subcommand(1);
    std::string gen_out, arcs;
    int gen_n = 4, gen_p = 1, gen_q = 1, gen_k = 3, signatures = 1;
    double density = 0.5, wmin = 0.0, wmax = 1.0;
    std::optional<long long> edge_count;
    std::uint64_t gen_seed = 0;
    auto write_instance = [&](const SearchGraph& g, const std::optional<GadgetConstants>& meta) {
        emit(gen_out, graph_to_json(g, meta),
             "gen: n=" + std::to_string(g.vertex_count()) + " m=" + std::to_string(g.edge_count()));
    };

    auto* dirhc = gen->add_subcommand("dirhc", "Hamiltonian-cycle reduction (default input: directed n-cycle)");
    dirhc->add_option("--n", gen_n, "Digraph vertex count")->capture_default_str();
    dirhc->add_option("--arcs", arcs, "Comma-separated arcs u-v (default: the n-cycle)");
    dirhc->add_option("--out", gen_out, "Graph JSON (default: stdout)");
    dirhc->callback([&] {
        action = [&] {
            Digraph d{gen_n, parse_arcs(arcs)};
            if (arcs.empty())
                for (int v = 0; v < gen_n; ++v)
                    d.arcs.emplace_back(v, (v + 1) % gen_n);
            auto inst = gen_dirhc(d);
            write_instance(inst.graph, inst.constants);
        };
    });

    auto add_cover_options = [&](CLI::App* cmd, bool with_k) {
        if (with_k)
            cmd->add_option("--k", gen_k, "Set size")->capture_default_str();
        cmd->add_option("--p", gen_p, "Number of sets")->capture_default_str();
        cmd->add_option("--q", gen_q, "Cover size (universe has k*q elements)")->capture_default_str();
        cmd->add_option("--seed", gen_seed, "Seed for the sets beyond the planted cover");
        cmd->add_option("--out", gen_out, "Graph JSON (default: stdout)");
    };
    auto cover_action = [&](int set_size) {
        return [&, set_size] {
            action = [&, set_size] {
                const int kk = set_size > 0 ? set_size : gen_k;
                auto inst = gen_xkc(kk, gen_q, planted_cover_sets(kk, gen_p, gen_q, gen_seed));
                write_instance(inst.graph, inst.constants);
            };
        };
    };
    auto* x3c = gen->add_subcommand("x3c", "Exact-3-cover reduction with a planted cover");
    add_cover_options(x3c, false);
    x3c->callback(cover_action(3));
    auto* xkc = gen->add_subcommand("xkc", "Exact-k-cover reduction with a planted cover");
    add_cover_options(xkc, true);
    xkc->callback(cover_action(0));

    auto* random = gen->add_subcommand("random", "Seeded random DAG");
    random->add_option("--n", gen_n, "Vertex count")->capture_default_str();
    random->add_option("--density", density, "Probability of each forward pair")->capture_default_str();
    random->add_option("--edges", edge_count, "Sample exactly this many edges instead");
    random->add_option("--signatures", signatures, "Number of distinct signatures")->capture_default_str();
    random->add_option("--weight-min", wmin)->capture_default_str();
    random->add_option("--weight-max", wmax)->capture_default_str();
    random->add_option("--seed", gen_seed)->capture_default_str();
    random->add_option("--out", gen_out, "Graph JSON (default: stdout)");
    random->callback([&] {
        action = [&] {
            RandomDagSpec spec{gen_n, density, signatures, wmin, wmax, gen_seed, edge_count};
            write_instance(gen_random_dag(spec), std::nullopt);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorKind::Parameter);
    }

    try {
        if (!action)
            throw ParameterError("no command given");
        action();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
