#include "ipaths/scoring.hpp"

#include <cmath>
#include <set>

#include "ipaths/errors.hpp"

namespace ipaths {

double rank_factor(int rank) { return std::log1p(static_cast<double>(rank)); }

std::vector<double> rank_factors(int max_rank) {
    std::vector<double> v(static_cast<std::size_t>(max_rank) + 1, 0.0);
    for (int r = 1; r <= max_rank; ++r)
        v[r] = rank_factor(r);
    return v;
}

double score(std::span<const double> weights) {
    if (weights.empty())
        throw ParameterError("score of an empty path is undefined");
    double total = 0.0;
    for (std::size_t r = 0; r < weights.size(); ++r) {
        if (!(weights[r] >= 0.0))
            throw InputError("edge weight at rank " + std::to_string(r + 1) + " is negative");
        total = total + weights[r] * rank_factor(static_cast<int>(r) + 1);
    }
    return total;
}

std::vector<VertexId> path_vertices(const SearchGraph& g, std::span<const EdgeId> edges) {
    std::vector<VertexId> out;
    if (edges.empty())
        return out;
    out.reserve(edges.size() + 1);
    out.push_back(g.edge(edges.front()).source);
    for (EdgeId e : edges)
        out.push_back(g.edge(e).target);
    return out;
}

double path_score(const SearchGraph& g, std::span<const EdgeId> edges) {
    std::vector<double> w;
    w.reserve(edges.size());
    for (EdgeId e : edges)
        w.push_back(g.edge(e).weight);
    return score(w);
}

std::string to_string(PathViolation v) {
    switch (v) {
        case PathViolation::Empty: return "empty path";
        case PathViolation::UnknownEdge: return "unknown edge";
        case PathViolation::Disconnected: return "edges are not head-to-tail";
        case PathViolation::RepeatedVertex: return "vertex repeats";
        case PathViolation::SignatureMismatch: return "signature mismatch";
        case PathViolation::PairReused: return "bidirected pair used in both directions";
    }
    return "unknown";
}

PathCheck validate_path(const SearchGraph& g, std::span<const EdgeId> edges) {
    auto reject = [](PathViolation why, int pos) {
        return PathRejection{why, pos, to_string(why) + " at position " + std::to_string(pos)};
    };
    if (edges.empty())
        return reject(PathViolation::Empty, 0);

    std::set<VertexId> visited;
    std::set<int> links;
    ResolvedSignature sig;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const int pos = static_cast<int>(i);
        if (edges[i] < 0 || edges[i] >= g.edge_count())
            return reject(PathViolation::UnknownEdge, pos);
        const auto& e = g.edge(edges[i]);
        if (i == 0) {
            visited.insert(e.source);
        } else if (g.edge(edges[i - 1]).target != e.source) {
            return reject(PathViolation::Disconnected, pos);
        }
        if (!links.insert(g.underlying(e.id)).second)
            return reject(PathViolation::PairReused, pos);
        if (!visited.insert(e.target).second)
            return reject(PathViolation::RepeatedVertex, pos);
        auto match = signature_compatible(sig, e.signature);
        if (!match.accepted)
            return reject(PathViolation::SignatureMismatch, pos);
        sig = match.resolved;
    }
    return InterestingPath{{edges.begin(), edges.end()}, sig, path_score(g, edges)};
}

}  // namespace ipaths
