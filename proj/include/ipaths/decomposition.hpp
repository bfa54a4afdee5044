#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ipaths/scoring.hpp"
#include "ipaths/search_graph.hpp"

namespace ipaths {

enum class DecompositionMode { IP, KIP, AtLeastKIP, OneIP, TwoIP };

std::string to_string(DecompositionMode mode);

/// Edge-disjoint family of interesting paths. The two orientations of a
/// bidirected pair count as one edge for disjointness and coverage.
struct PathCollection {
    std::vector<InterestingPath> paths;
    double total_score = 0.0;
    int covered_edges = 0;
    DecompositionMode mode = DecompositionMode::IP;
    int k = 0;  // path length for KIP / minimum length for AtLeastKIP
};

struct ScoreBounds {
    double lower = 0.0;
    double upper = 0.0;
};

struct GreedyOptions {
    std::optional<int> max_paths;  // stop once this many paths are collected
};

/// Every edge as its own path.
PathCollection one_ip(const SearchGraph& g);

/// Exact 2-IP: maximum-weight matching on the graph whose nodes are the
/// edges of g and whose links are interesting 2-paths. Compatibility graphs
/// with at most 16 nodes are re-solved exhaustively and the two optima are
/// cross-checked (std::logic_error on disagreement).
PathCollection two_ip(const SearchGraph& g);

/// Repeatedly extracts a maximum interesting path and deletes its edges
/// until none remain. Requires a DAG.
PathCollection greedy_ip(const SearchGraph& g, const GreedyOptions& options = {});

/// Greedy k-IP: repeatedly extracts a best path of exactly k edges.
/// Requires a DAG and 1 <= k <= n - 1.
PathCollection greedy_k_ip(const SearchGraph& g, int k, const GreedyOptions& options = {});

/// Greedy extraction of best paths with at least k edges.
PathCollection at_least_k_ip(const SearchGraph& g, int k, const GreedyOptions& options = {});

/// Lower bound: every edge alone. Upper bound: sum over edges of the best
/// path ending at that edge. Requires a DAG.
ScoreBounds ip_bounds(const SearchGraph& g);

/// Sum of recomputed path scores.
double total_score(const SearchGraph& g, const std::vector<InterestingPath>& paths);

/// Returns a description of the first violated PathCollection invariant
/// (validity, disjointness, per-mode length and coverage, total), or nothing.
std::optional<std::string> check_collection(const SearchGraph& g, const PathCollection& c,
                                            double tolerance = 1e-9);

}  // namespace ipaths
