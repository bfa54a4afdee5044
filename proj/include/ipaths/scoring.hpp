#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ipaths/search_graph.hpp"
#include "ipaths/signature.hpp"

namespace ipaths {

/// Natural log of (1 + rank). Every solver accumulates w * rank_factor(r)
/// left to right, so one path scores to the same bits on every code path.
double rank_factor(int rank);

/// rank_factor(r) for r = 0..max_rank (index 0 holds 0).
std::vector<double> rank_factors(int max_rank);

inline constexpr const char* kLogBase = "e";

/// Sum of w_r * log(1 + r) over ranks r = 1..k, accumulated left to right.
/// Throws ParameterError on an empty list, InputError on a negative weight.
double score(std::span<const double> weights);

/// Directed simple path whose concrete edge signatures all agree.
struct InterestingPath {
    std::vector<EdgeId> edges;
    ResolvedSignature signature;
    double score = 0.0;

    int length() const noexcept { return static_cast<int>(edges.size()); }
    friend bool operator==(const InterestingPath&, const InterestingPath&) = default;
};

/// Vertex sequence traversed by a path (edges.size() + 1 entries).
std::vector<VertexId> path_vertices(const SearchGraph& g, std::span<const EdgeId> edges);

/// Score of an edge sequence in g, no validity checks.
double path_score(const SearchGraph& g, std::span<const EdgeId> edges);

enum class PathViolation {
    Empty,
    UnknownEdge,
    Disconnected,     // consecutive edges are not head-to-tail
    RepeatedVertex,
    SignatureMismatch,
    PairReused,       // both orientations of a bidirected link
};

std::string to_string(PathViolation v);

struct PathRejection {
    PathViolation reason;
    int position;  // index into the edge list where the violation was detected
    std::string message;
};

using PathCheck = std::variant<InterestingPath, PathRejection>;

/// Checks the interesting-path conditions and scores the path.
PathCheck validate_path(const SearchGraph& g, std::span<const EdgeId> edges);

}  // namespace ipaths
