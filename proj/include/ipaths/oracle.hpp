#pragma once

#include <optional>
#include <vector>

#include "ipaths/decomposition.hpp"
#include "ipaths/max_ip.hpp"

namespace ipaths {

/// Every interesting path of g with length in [min_length, max_length],
/// found by depth-first search from each edge. Works on cyclic graphs:
/// vertices never repeat and a bidirected pair is used at most once.
std::vector<InterestingPath> enumerate_interesting_paths(const SearchGraph& g, int min_length = 1,
                                                         std::optional<int> max_length = {});

struct OracleOptions {
    int max_edges = 24;  // enumeration guard on m
    int min_length = 1;
    std::optional<int> max_length;
};

/// Exhaustive Max-IP. Ties resolve like the dynamic program: shorter path
/// first, then the smaller last edge id, then the smaller id walking backwards.
MaxIpResult brute_force_max_ip(const SearchGraph& g, const OracleOptions& options = {});

/// Best family of edge-disjoint interesting k-paths (partial coverage).
/// Guard: m <= max_edges (at most 63).
PathCollection brute_force_k_ip(const SearchGraph& g, int k, int max_edges = 12);

/// Best exact cover of the edges by interesting paths.
PathCollection brute_force_ip(const SearchGraph& g, int max_edges = 12);

}  // namespace ipaths
