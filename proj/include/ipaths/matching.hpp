#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ipaths {

template <class W>
struct MatchEdge {
    int u;
    int v;
    W weight;
};

/// Maximum-weight matching on a general undirected graph (Edmonds' blossom
/// algorithm with a primal-dual update, O(n^3)). Integer weights keep every
/// dual update exact. Edges with nonpositive weight never improve a matching
/// and are ignored. Returns mate[v] (the partner vertex, or -1).
std::vector<int> max_weight_matching(int vertex_count,
                                     std::span<const MatchEdge<std::int64_t>> edges);

/// Real-weighted front end: weights are scaled to 64-bit integers (scale
/// reported through *scale_out) before running the integer solver.
std::vector<int> max_weight_matching(int vertex_count, std::span<const MatchEdge<double>> edges,
                                     double* scale_out = nullptr);

/// Exhaustive maximum-weight matching by dynamic programming over vertex
/// subsets. Certification oracle for small graphs; throws SizeGuardError
/// above max_vertices.
std::vector<int> brute_force_matching(int vertex_count, std::span<const MatchEdge<double>> edges,
                                      int max_vertices = 20);

/// Sum of weights of edges whose endpoints are mated to each other. With
/// parallel edges the heaviest one between a mated pair counts.
double matching_weight(std::span<const int> mate, std::span<const MatchEdge<double>> edges);

}  // namespace ipaths
