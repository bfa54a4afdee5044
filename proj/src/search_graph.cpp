#include "ipaths/search_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ipaths/errors.hpp"

namespace ipaths {

std::string to_string(Rule rule) { return rule == Rule::A ? "a" : "b"; }

Rule parse_rule(const std::string& text) {
    if (text == "a" || text == "A")
        return Rule::A;
    if (text == "b" || text == "B")
        return Rule::B;
    throw ParameterError("unknown rule '" + text + "' (expected a or b)");
}

namespace {

void build_csr(int n, const std::vector<Edge>& edges, bool outgoing, std::vector<int>& offsets,
               std::vector<EdgeId>& list) {
    offsets.assign(n + 1, 0);
    for (const auto& e : edges)
        ++offsets[(outgoing ? e.source : e.target) + 1];
    for (int v = 0; v < n; ++v)
        offsets[v + 1] += offsets[v];
    list.assign(edges.size(), 0);
    std::vector<int> cursor(offsets.begin(), offsets.end() - 1);
    // edges are visited in id order, so each adjacency run is ascending
    for (const auto& e : edges)
        list[cursor[outgoing ? e.source : e.target]++] = e.id;
}

}  // namespace

SearchGraph::SearchGraph(std::vector<Vertex> vertices, std::vector<Edge> edges, int h, Rule rule,
                         double tau)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), h_(h), rule_(rule), tau_(tau) {
    if (h_ < 1)
        throw InputError("signature width h must be >= 1");
    if (!(tau_ >= 0.0) || !std::isfinite(tau_))
        throw InputError("tau must be a finite nonnegative number");

    const int n = vertex_count();
    const int m = edge_count();
    for (int v = 0; v < n; ++v) {
        const auto& vx = vertices_[v];
        if (vx.id != v)
            throw InputError("vertices[" + std::to_string(v) + "].id: expected " + std::to_string(v));
        if (!vx.filters.empty() && static_cast<int>(vx.filters.size()) != h_)
            throw InputError("vertices[" + std::to_string(v) + "].filters: expected " +
                             std::to_string(h_) + " values");
        if (vx.size && *vx.size < 1)
            throw InputError("vertices[" + std::to_string(v) + "].size: must be positive");
    }

    std::set<std::pair<VertexId, VertexId>> seen;
    std::map<int, std::vector<EdgeId>> pairs;
    for (int i = 0; i < m; ++i) {
        const auto& e = edges_[i];
        const std::string where = "edges[" + std::to_string(i) + "]";
        if (e.id != i)
            throw InputError(where + ".id: expected " + std::to_string(i));
        if (e.source < 0 || e.source >= n || e.target < 0 || e.target >= n)
            throw InputError(where + ": endpoint references an unknown vertex");
        if (e.source == e.target)
            throw InputError(where + ": self-loop");
        if (!seen.insert({e.source, e.target}).second)
            throw InputError(where + ": duplicate edge " + std::to_string(e.source) + "->" +
                             std::to_string(e.target));
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
            throw InputError(where + ".weight: must be finite and nonnegative");
        if (!e.signature.is_wildcard() && static_cast<int>(e.signature.width()) != h_)
            throw InputError(where + ".signature: expected " + std::to_string(h_) + " bits");
        if (e.signature.is_wildcard() && !e.pair_id)
            throw InputError(where + ".signature: wildcard is only allowed on bidirected pairs");
        if (e.pair_id)
            pairs[*e.pair_id].push_back(e.id);
    }

    partner_.assign(m, -1);
    for (const auto& [pid, ids] : pairs) {
        const std::string where = "pairId " + std::to_string(pid);
        if (ids.size() != 2)
            throw InputError(where + ": must link exactly two edges");
        const auto& a = edges_[ids[0]];
        const auto& b = edges_[ids[1]];
        if (a.source != b.target || a.target != b.source)
            throw InputError(where + ": paired edges must have swapped endpoints");
        if (a.weight != b.weight)
            throw InputError(where + ": paired edges must have equal weight");
        if (!a.signature.is_wildcard() || !b.signature.is_wildcard())
            throw InputError(where + ": paired edges must carry the wildcard signature");
        partner_[a.id] = b.id;
        partner_[b.id] = a.id;
    }

    build_csr(n, edges_, true, out_offsets_, out_list_);
    build_csr(n, edges_, false, in_offsets_, in_list_);

    std::set<Signature> distinct;
    for (const auto& e : edges_)
        if (!e.signature.is_wildcard())
            distinct.insert(e.signature);
    classes_.assign(distinct.begin(), distinct.end());
    edge_class_.assign(m, -1);
    for (const auto& e : edges_)
        if (!e.signature.is_wildcard())
            edge_class_[e.id] = static_cast<int>(
                std::lower_bound(classes_.begin(), classes_.end(), e.signature) - classes_.begin());

    underlying_.assign(m, -1);
    for (const auto& e : edges_) {
        if (underlying_[e.id] >= 0)
            continue;
        underlying_[e.id] = underlying_count_;
        if (partner_[e.id] >= 0)
            underlying_[partner_[e.id]] = underlying_count_;
        ++underlying_count_;
    }

    // Kahn's algorithm; smallest ready vertex first for a canonical order.
    std::vector<int> indeg(n, 0);
    for (const auto& e : edges_)
        ++indeg[e.target];
    std::set<VertexId> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0)
            ready.insert(v);
    std::vector<VertexId> order;
    order.reserve(n);
    while (!ready.empty()) {
        VertexId v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (EdgeId e : out_edges(v))
            if (--indeg[edges_[e].target] == 0)
                ready.insert(edges_[e].target);
    }

    stats_.n = n;
    stats_.m = m;
    stats_.distinct_signatures = static_cast<int>(classes_.size());
    for (int v = 0; v < n; ++v)
        stats_.max_indegree = std::max(stats_.max_indegree, in_offsets_[v + 1] - in_offsets_[v]);
    stats_.is_dag = static_cast<int>(order.size()) == n;
    if (stats_.is_dag) {
        std::vector<int> depth(n, 0);
        int longest = 0;
        for (VertexId v : order)
            for (EdgeId e : out_edges(v)) {
                auto& d = depth[edges_[e].target];
                d = std::max(d, depth[v] + 1);
                longest = std::max(longest, d);
            }
        stats_.diameter = longest;
        topo_ = std::move(order);
    }
}

std::span<const EdgeId> SearchGraph::out_edges(VertexId v) const {
    return {out_list_.data() + out_offsets_.at(v), out_list_.data() + out_offsets_.at(v + 1)};
}

std::span<const EdgeId> SearchGraph::in_edges(VertexId v) const {
    return {in_list_.data() + in_offsets_.at(v), in_list_.data() + in_offsets_.at(v + 1)};
}

std::optional<EdgeId> SearchGraph::partner(EdgeId e) const {
    EdgeId p = partner_.at(e);
    if (p < 0)
        return std::nullopt;
    return p;
}

void EdgeMask::remove_underlying(const SearchGraph& g, EdgeId e) {
    remove(e);
    if (auto p = g.partner(e))
        remove(*p);
}

SearchGraph direct_edges(const UndirectedGraph& skeleton, Rule rule, std::optional<double> tau) {
    if (tau && !(*tau >= 0.0))
        throw ParameterError("tau must be nonnegative");
    if (rule == Rule::B && !tau)
        throw ParameterError("rule b requires an explicit tau");
    const double cutoff = rule == Rule::B ? *tau : 0.0;

    const int n = static_cast<int>(skeleton.vertices.size());
    int h = 0;
    for (int v = 0; v < n; ++v) {
        const auto& vx = skeleton.vertices[v];
        if (vx.id != v)
            throw InputError("skeleton vertex " + std::to_string(v) + " has id " + std::to_string(vx.id));
        if (v == 0)
            h = static_cast<int>(vx.filters.size());
        else if (static_cast<int>(vx.filters.size()) != h)
            throw InputError("skeleton vertices disagree on the number of filter values");
    }
    if (n > 0 && h < 1)
        throw InputError("skeleton vertices carry no filter values");

    std::set<std::pair<VertexId, VertexId>> seen;
    std::vector<Edge> edges;
    edges.reserve(skeleton.links.size());
    int next_pair = 0;
    for (std::size_t i = 0; i < skeleton.links.size(); ++i) {
        auto [a, b] = skeleton.links[i];
        const std::string where = "links[" + std::to_string(i) + "]";
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw InputError(where + ": references an unknown vertex");
        if (a == b)
            throw InputError(where + ": self-loop on vertex " + std::to_string(a));
        if (!seen.insert(std::minmax(a, b)).second)
            throw InputError(where + ": duplicate link " + std::to_string(a) + "-" + std::to_string(b));

        const auto& va = skeleton.vertices[a];
        const auto& vb = skeleton.vertices[b];
        // Rule A orientation: lighter to heavier, ties by id.
        VertexId src = a, dst = b;
        if (va.weight > vb.weight || (va.weight == vb.weight && a > b))
            std::swap(src, dst);
        const double w = std::abs(va.weight - vb.weight);
        const auto& s = skeleton.vertices[src];
        const auto& t = skeleton.vertices[dst];

        if (rule == Rule::B && w <= cutoff) {
            const int pid = next_pair++;
            edges.push_back({static_cast<EdgeId>(edges.size()), src, dst, w, Signature::wildcard(), pid});
            edges.push_back({static_cast<EdgeId>(edges.size()), dst, src, w, Signature::wildcard(), pid});
        } else {
            edges.push_back({static_cast<EdgeId>(edges.size()), src, dst, w,
                             compute_signature(s.filters, t.filters), std::nullopt});
        }
    }
    return SearchGraph(skeleton.vertices, std::move(edges), std::max(h, 1), rule, cutoff);
}

}  // namespace ipaths
