#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ipaths/signature.hpp"

namespace ipaths {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

/// Edge-directing rule. A: ascending vertex weight. B: bidirected when the
/// endpoint weights differ by at most tau, Rule A otherwise.
enum class Rule { A, B };

std::string to_string(Rule rule);
Rule parse_rule(const std::string& text);

struct Vertex {
    VertexId id = 0;
    double weight = 0.0;          // mean target value of the cluster
    std::vector<double> filters;  // mean filter values; empty for synthetic graphs
    std::optional<int> size;      // member count, unknown for bare skeletons
};

struct Edge {
    EdgeId id = 0;
    VertexId source = 0;
    VertexId target = 0;
    double weight = 0.0;
    Signature signature = Signature::wildcard();
    std::optional<int> pair_id;  // shared by the two orientations of a bidirected link
};

struct GraphStats {
    int n = 0;
    int m = 0;
    int max_indegree = 0;
    std::optional<int> diameter;  // longest path in edges; only defined on DAGs
    bool is_dag = true;
    int distinct_signatures = 0;
};

/// Undirected vertex-weighted graph, i.e. a Mapper 1-skeleton before directing.
struct UndirectedGraph {
    std::vector<Vertex> vertices;
    std::vector<std::pair<VertexId, VertexId>> links;
};

/// Weighted, signed, directed graph searched for interesting paths.
///
/// Vertex ids and edge ids are dense: vertex i has id i and edge j has id j.
/// The graph is immutable once constructed; the constructor validates every
/// structural invariant and throws InputError on violation.
class SearchGraph {
public:
    SearchGraph(std::vector<Vertex> vertices, std::vector<Edge> edges, int h, Rule rule = Rule::A,
                double tau = 0.0);

    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }

    int vertex_count() const noexcept { return static_cast<int>(vertices_.size()); }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    int h() const noexcept { return h_; }
    Rule rule() const noexcept { return rule_; }
    double tau() const noexcept { return tau_; }
    const GraphStats& stats() const noexcept { return stats_; }
    bool is_dag() const noexcept { return stats_.is_dag; }

    /// Outgoing / incoming edge ids of a vertex, ascending.
    std::span<const EdgeId> out_edges(VertexId v) const;
    std::span<const EdgeId> in_edges(VertexId v) const;

    /// Vertices in topological order; empty optional when the graph is cyclic.
    const std::optional<std::vector<VertexId>>& topological_order() const noexcept { return topo_; }

    /// Concrete signatures present in the graph, sorted; edges refer to them
    /// by class index. Wildcard edges have class -1.
    const std::vector<Signature>& signature_classes() const noexcept { return classes_; }
    int signature_class(EdgeId e) const { return edge_class_.at(e); }

    /// Index of the underlying undirected link: both orientations of a
    /// bidirected pair share one index.
    int underlying(EdgeId e) const { return underlying_.at(e); }
    int underlying_count() const noexcept { return underlying_count_; }
    std::optional<EdgeId> partner(EdgeId e) const;

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    int h_;
    Rule rule_;
    double tau_;

    std::vector<int> out_offsets_, in_offsets_;
    std::vector<EdgeId> out_list_, in_list_;
    std::optional<std::vector<VertexId>> topo_;
    std::vector<Signature> classes_;
    std::vector<int> edge_class_;
    std::vector<int> underlying_;
    std::vector<EdgeId> partner_;
    int underlying_count_ = 0;
    GraphStats stats_;
};

/// Directs and signs every link of a vertex-weighted skeleton.
///
/// Rule A sends each link from the lighter to the heavier endpoint, ties from
/// the smaller to the larger vertex id. Rule B (which requires tau) emits both
/// orientations with wildcard signatures and a shared pair id when the weights
/// differ by at most tau. Edge weight is the absolute weight difference.
SearchGraph direct_edges(const UndirectedGraph& skeleton, Rule rule,
                         std::optional<double> tau = std::nullopt);

/// Edge ids in a caller-chosen subset, used by solvers that work on the
/// remainder of a graph after previous extractions.
class EdgeMask {
public:
    explicit EdgeMask(const SearchGraph& g) : active_(g.edge_count(), 1), count_(g.edge_count()) {}

    bool active(EdgeId e) const { return active_[e] != 0; }
    int active_count() const noexcept { return count_; }
    int size() const noexcept { return static_cast<int>(active_.size()); }

    /// Deactivates e and, on a bidirected pair, its partner orientation.
    void remove_underlying(const SearchGraph& g, EdgeId e);

private:
    void remove(EdgeId e) {
        if (active_[e]) {
            active_[e] = 0;
            --count_;
        }
    }

    std::vector<char> active_;
    int count_ = 0;
};

}  // namespace ipaths
