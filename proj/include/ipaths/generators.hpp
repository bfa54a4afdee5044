#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ipaths/search_graph.hpp"

namespace ipaths {

/// Score constants attached to a reduction instance.
struct GadgetConstants {
    std::string kind;             // "dirhc", "x3c" or "xkc"
    int k = 0;                    // path length of the matching decision problem
    int p = 0;                    // number of sets (also the heavy edge weight)
    int q = 0;                    // cover size
    std::optional<double> w_in;   // score of a gadget whose set is in the cover
    std::optional<double> w_out;  // score of a gadget whose set is not
    double s0 = 0.0;              // decision target
};

struct GeneratedInstance {
    SearchGraph graph;
    GadgetConstants constants;
};

struct Digraph {
    int n = 0;
    std::vector<std::pair<int, int>> arcs;
};

/// Splits vertex 0 of the input digraph into a source copy (keeps id 0, owns
/// the arcs leaving 0) and a sink copy (new id n, owns the arcs entering 0).
/// Unit weights, one shared signature, s0 = log((n + 1)!). Arc order is kept.
GeneratedInstance gen_dirhc(const Digraph& input);

/// Exact-k-cover reduction over elements 0..k*q-1 and the given k-sets.
///
/// Canonical labeling: element x owns vertices 2x -> 2x+1 and edge id x (the
/// heavy edge, weight p). Per set s, in order, internal vertices are added as
/// the connector chain vertices a[i][1..k-2] for each member i, then the spine
/// w[0..k]; edges are, for each member i, the chain
///     head(x_i) -> a[i][1] -> ... -> a[i][k-2] -> w[i]
/// followed by the spine edges w[i] -> w[i+1] for i = 0..k-1.
/// With the element edge in front, chain i is the x_i-path; the spine is the
/// extra k-path of a chosen set; chain i plus spine edge i are the k-paths
/// of an unchosen set.
GeneratedInstance gen_xkc(int k, int q, const std::vector<std::vector<int>>& sets);

/// k = 3 convenience wrapper.
GeneratedInstance gen_x3c(int q, const std::vector<std::array<int, 3>>& sets);

/// q disjoint sets {0..k-1}, {k..2k-1}, ... (a planted exact cover) followed
/// by p - q random k-subsets drawn with the given seed.
std::vector<std::vector<int>> planted_cover_sets(int k, int p, int q, std::uint64_t seed);

/// Whether some subfamily of sets partitions 0..universe-1 (backtracking).
bool has_exact_cover(int universe, const std::vector<std::vector<int>>& sets);

struct RandomDagSpec {
    int n = 10;
    double density = 0.5;           // probability of each forward pair
    int signature_count = 1;
    double weight_min = 0.0;
    double weight_max = 1.0;
    std::uint64_t seed = 0;
    std::optional<long long> edge_count;  // sample exactly this many edges instead
};

/// Vertices placed in a random topological order; forward pairs sampled
/// independently (or exactly edge_count distinct pairs); weights uniform in
/// [weight_min, weight_max]; signatures uniform over signature_count bit
/// patterns of width max(1, ceil(log2(signature_count))). Deterministic per
/// seed on every platform.
SearchGraph gen_random_dag(const RandomDagSpec& spec);

}  // namespace ipaths
