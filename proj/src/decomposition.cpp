#include "ipaths/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "ipaths/errors.hpp"
#include "ipaths/matching.hpp"
#include "ipaths/max_ip.hpp"

namespace ipaths {

std::string to_string(DecompositionMode mode) {
    switch (mode) {
        case DecompositionMode::IP: return "ip";
        case DecompositionMode::KIP: return "k-ip";
        case DecompositionMode::AtLeastKIP: return "atleast-k-ip";
        case DecompositionMode::OneIP: return "one-ip";
        case DecompositionMode::TwoIP: return "two-ip";
    }
    return "unknown";
}

double total_score(const SearchGraph& g, const std::vector<InterestingPath>& paths) {
    double total = 0.0;
    for (const auto& p : paths)
        total += path_score(g, p.edges);
    return total;
}

namespace {

PathCollection finish(const SearchGraph& g, std::vector<InterestingPath> paths,
                      DecompositionMode mode, int k) {
    PathCollection out;
    out.mode = mode;
    out.k = k;
    for (const auto& p : paths)
        out.covered_edges += p.length();
    out.total_score = total_score(g, paths);
    out.paths = std::move(paths);
    return out;
}

void check_k(const SearchGraph& g, int k) {
    const int n = g.vertex_count();
    if (k < 1 || k > std::max(0, n - 1))
        throw ParameterError("k must lie in [1, n-1] = [1, " + std::to_string(n - 1) + "], got " +
                             std::to_string(k));
}

PathCollection greedy(const SearchGraph& g, MaxIpOptions options, const GreedyOptions& greedy_opts,
                      DecompositionMode mode, int k) {
    if (!g.is_dag())
        throw DomainError("greedy decomposition requires a DAG (graph has a directed cycle)");
    EdgeMask mask(g);
    options.mask = &mask;
    std::vector<InterestingPath> paths;
    while (mask.active_count() > 0) {
        if (greedy_opts.max_paths && static_cast<int>(paths.size()) >= *greedy_opts.max_paths)
            break;
        auto found = max_ip_sparse(g, options);
        if (!found.path)
            break;
        const int before = mask.active_count();
        for (EdgeId e : found.path->edges)
            mask.remove_underlying(g, e);
        if (mask.active_count() >= before)
            throw std::logic_error("greedy extraction removed no edge");
        paths.push_back(std::move(*found.path));
    }
    return finish(g, std::move(paths), mode, k);
}

}  // namespace

PathCollection one_ip(const SearchGraph& g) {
    std::vector<InterestingPath> paths;
    std::set<int> seen;
    for (const auto& e : g.edges()) {
        if (!seen.insert(g.underlying(e.id)).second)
            continue;  // partner orientation already taken
        ResolvedSignature sig;
        if (!e.signature.is_wildcard())
            sig = e.signature;
        paths.push_back({{e.id}, sig, path_score(g, std::vector<EdgeId>{e.id})});
    }
    return finish(g, std::move(paths), DecompositionMode::OneIP, 1);
}

PathCollection two_ip(const SearchGraph& g) {
    // Best 2-path per unordered pair of underlying edges. Candidates arrive
    // ordered by first edge id; a strictly better score is needed to replace,
    // so equal-score orderings resolve to the smaller first edge.
    struct Candidate {
        EdgeId first, second;
        double score;
    };
    std::map<std::pair<int, int>, Candidate> best;
    for (const auto& a : g.edges()) {
        for (EdgeId bid : g.out_edges(a.target)) {
            const auto& b = g.edge(bid);
            if (b.target == a.source)
                continue;  // would revisit a vertex
            if (g.underlying(a.id) == g.underlying(b.id))
                continue;
            ResolvedSignature sig;
            auto m1 = signature_compatible(sig, a.signature);
            auto m2 = signature_compatible(m1.resolved, b.signature);
            if (!m2.accepted)
                continue;
            const std::vector<EdgeId> pair{a.id, b.id};
            const double s = path_score(g, pair);
            const int ua = g.underlying(a.id), ub = g.underlying(b.id);
            const std::pair<int, int> key = std::minmax(ua, ub);
            auto [it, fresh] = best.try_emplace(key, Candidate{a.id, b.id, s});
            if (!fresh && s > it->second.score)
                it->second = Candidate{a.id, b.id, s};
        }
    }

    std::vector<MatchEdge<double>> links;
    links.reserve(best.size());
    for (const auto& [key, cand] : best)
        links.push_back({key.first, key.second, cand.score});
    const int nodes = g.underlying_count();
    auto mate = max_weight_matching(nodes, links);

    if (nodes <= 16) {
        auto exact = brute_force_matching(nodes, links);
        const double a = matching_weight(mate, links);
        const double b = matching_weight(exact, links);
        if (std::abs(a - b) > 1e-9)
            throw std::logic_error("blossom matching disagrees with exhaustive matching (" +
                                   std::to_string(a) + " vs " + std::to_string(b) + ")");
    }

    std::vector<InterestingPath> paths;
    for (const auto& [key, cand] : best) {
        if (mate[key.first] != key.second)
            continue;
        auto checked = validate_path(g, std::vector<EdgeId>{cand.first, cand.second});
        paths.push_back(std::get<InterestingPath>(checked));
    }
    std::sort(paths.begin(), paths.end(),
              [](const auto& x, const auto& y) { return x.edges < y.edges; });
    return finish(g, std::move(paths), DecompositionMode::TwoIP, 2);
}

PathCollection greedy_ip(const SearchGraph& g, const GreedyOptions& options) {
    return greedy(g, MaxIpOptions{}, options, DecompositionMode::IP, 0);
}

PathCollection greedy_k_ip(const SearchGraph& g, int k, const GreedyOptions& options) {
    check_k(g, k);
    MaxIpOptions opt;
    opt.min_length = k;
    opt.max_length = k;
    return greedy(g, opt, options, DecompositionMode::KIP, k);
}

PathCollection at_least_k_ip(const SearchGraph& g, int k, const GreedyOptions& options) {
    check_k(g, k);
    MaxIpOptions opt;
    opt.min_length = k;
    return greedy(g, opt, options, DecompositionMode::AtLeastKIP, k);
}

ScoreBounds ip_bounds(const SearchGraph& g) {
    if (!g.is_dag())
        throw DomainError("score bounds require a DAG (graph has a directed cycle)");
    ScoreBounds out;
    const double f1 = rank_factor(1);
    for (const auto& e : g.edges())
        out.lower += e.weight * f1;
    for (const auto& [e, s] : per_edge_best(g))
        out.upper += s;
    return out;
}

std::optional<std::string> check_collection(const SearchGraph& g, const PathCollection& c,
                                            double tolerance) {
    std::vector<int> use(g.underlying_count(), 0);
    int edges = 0;
    for (std::size_t i = 0; i < c.paths.size(); ++i) {
        const auto& p = c.paths[i];
        const std::string where = "path " + std::to_string(i);
        auto checked = validate_path(g, p.edges);
        if (auto* r = std::get_if<PathRejection>(&checked))
            return where + ": " + r->message;
        const auto& ok = std::get<InterestingPath>(checked);
        if (std::abs(ok.score - p.score) > tolerance)
            return where + ": stored score differs from recomputed score";
        if (c.mode == DecompositionMode::KIP && p.length() != c.k)
            return where + ": has " + std::to_string(p.length()) + " edges, expected " +
                   std::to_string(c.k);
        if (c.mode == DecompositionMode::AtLeastKIP && p.length() < c.k)
            return where + ": shorter than k";
        if (c.mode == DecompositionMode::OneIP && p.length() != 1)
            return where + ": not a single edge";
        if (c.mode == DecompositionMode::TwoIP && p.length() != 2)
            return where + ": not a 2-path";
        for (EdgeId e : p.edges)
            if (++use[g.underlying(e)] > 1)
                return where + ": reuses edge " + std::to_string(e);
        edges += p.length();
    }
    if (c.mode == DecompositionMode::IP || c.mode == DecompositionMode::OneIP)
        for (int u = 0; u < g.underlying_count(); ++u)
            if (use[u] != 1)
                return "underlying edge " + std::to_string(u) + " is not covered";
    if (edges != c.covered_edges)
        return "covered edge count mismatch";
    if (std::abs(total_score(g, c.paths) - c.total_score) > tolerance)
        return "total score differs from the sum of path scores";
    return std::nullopt;
}

}  // namespace ipaths
