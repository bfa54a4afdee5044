#pragma once
// Small graph builders and independent reference computations shared by the
// unit tests and the acceptance binary.

#include <cmath>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ipaths/search_graph.hpp"

namespace ipaths::testing {

struct E {
    int source;
    int target;
    double weight;
    std::string sig = "1";  // "*" marks one orientation of a bidirected pair
    std::optional<int> pair;
};

inline SearchGraph make_graph(int n, const std::vector<E>& spec) {
    int h = 1;
    for (const auto& e : spec)
        if (e.sig != "*") {
            h = static_cast<int>(e.sig.size());
            break;
        }
    std::vector<Vertex> vertices;
    for (int v = 0; v < n; ++v)
        vertices.push_back(Vertex{v, 0.0, {}, std::nullopt});
    std::vector<Edge> edges;
    for (const auto& e : spec)
        edges.push_back(Edge{static_cast<EdgeId>(edges.size()), e.source, e.target, e.weight,
                             Signature::parse(e.sig), e.pair});
    return SearchGraph(std::move(vertices), std::move(edges), h);
}

/// 0 -> 1 -> ... -> len with the given weights (unit if empty) and one signature.
inline SearchGraph chain(int len, std::vector<double> weights = {}, const std::string& sig = "1") {
    if (weights.empty())
        weights.assign(len, 1.0);
    std::vector<E> spec;
    for (int i = 0; i < len; ++i)
        spec.push_back({i, i + 1, weights[i], sig});
    return make_graph(len + 1, spec);
}

/// Reference score: sum of w_r * ln(r + 1), written without the library's
/// rank factors.
inline double ref_score(const std::vector<double>& weights) {
    double s = 0.0;
    for (std::size_t r = 0; r < weights.size(); ++r)
        s += weights[r] * std::log(static_cast<double>(r) + 2.0);
    return s;
}

/// ln(n!) via the log-gamma function.
inline double ln_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

inline constexpr double kTol = 1e-9;

}  // namespace ipaths::testing
