#include "ipaths/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <unordered_map>

#include "ipaths/errors.hpp"

namespace ipaths {

namespace {

struct Walker {
    const SearchGraph& g;
    int min_length;
    int max_length;
    std::function<void(const std::vector<EdgeId>&, const ResolvedSignature&, double)> emit;

    std::vector<EdgeId> path;
    std::vector<char> on_path;
    std::vector<char> link_used;

    void extend(VertexId head, const ResolvedSignature& sig, double score) {
        if (static_cast<int>(path.size()) >= max_length)
            return;
        const int rank = static_cast<int>(path.size()) + 1;
        for (EdgeId e : g.out_edges(head)) {
            const auto& edge = g.edge(e);
            if (on_path[edge.target] || link_used[g.underlying(e)])
                continue;
            auto match = signature_compatible(sig, edge.signature);
            if (!match.accepted)
                continue;
            const double next = score + edge.weight * rank_factor(rank);
            path.push_back(e);
            on_path[edge.target] = 1;
            link_used[g.underlying(e)] = 1;
            if (rank >= min_length)
                emit(path, match.resolved, next);
            extend(edge.target, match.resolved, next);
            link_used[g.underlying(e)] = 0;
            on_path[edge.target] = 0;
            path.pop_back();
        }
    }

    void run() {
        on_path.assign(g.vertex_count(), 0);
        link_used.assign(g.underlying_count(), 0);
        // Every path starts with its first edge: seed from each vertex, which
        // enumerates all first edges in ascending source order.
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            on_path[v] = 1;
            extend(v, std::nullopt, 0.0);
            on_path[v] = 0;
        }
    }
};

void walk(const SearchGraph& g, int min_length, std::optional<int> max_length,
          std::function<void(const std::vector<EdgeId>&, const ResolvedSignature&, double)> emit) {
    Walker w{g, std::max(1, min_length), max_length.value_or(std::max(1, g.vertex_count() - 1)),
             std::move(emit), {}, {}, {}};
    w.run();
}

// a precedes b under the dynamic program's tie rule (equal scores assumed)
bool tie_precedes(const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

// Maximum-weight packing (or exact cover) of underlying-edge bitmasks.
class PackingSearch {
public:
    struct Item {
        std::uint64_t mask;
        double score;
        int index;  // into the caller's path list
    };

    PackingSearch(int edges, std::vector<Item> items, bool exact_cover)
        : edges_(edges), exact_(exact_cover), buckets_(edges) {
        for (auto& it : items)
            buckets_[__builtin_ctzll(it.mask)].push_back(it);
    }

    std::vector<int> solve(double* total) {
        const double best = go(0, 0);
        *total = best;
        std::vector<int> picked;
        std::uint64_t used = 0;
        for (int i = 0; i < edges_; ++i) {
            if (used >> i & 1)
                continue;
            const auto& entry = memo_.at(key(i, used));
            if (entry.choice >= 0) {
                const auto& item = buckets_[i][entry.choice];
                picked.push_back(item.index);
                used |= item.mask;
            }
        }
        return picked;
    }

private:
    static constexpr double kInfeasible = -std::numeric_limits<double>::infinity();

    struct Entry {
        double value;
        int choice;  // index into buckets_[i], -1 when edge i stays uncovered
    };

    struct KeyHash {
        std::size_t operator()(const std::pair<int, std::uint64_t>& k) const noexcept {
            return std::hash<std::uint64_t>{}(k.second * 0x9E3779B97F4A7C15ull ^ k.first);
        }
    };

    static std::pair<int, std::uint64_t> key(int i, std::uint64_t used) {
        const std::uint64_t keep = i >= 64 ? 0 : (~std::uint64_t{0} << i);
        return {i, used & keep};
    }

    double go(int i, std::uint64_t used) {
        while (i < edges_ && (used >> i & 1))
            ++i;
        if (i == edges_)
            return 0.0;
        auto k = key(i, used);
        if (auto it = memo_.find(k); it != memo_.end())
            return it->second.value;
        Entry best{exact_ ? kInfeasible : go(i + 1, used), -1};
        const auto& bucket = buckets_[i];
        for (int c = 0; c < static_cast<int>(bucket.size()); ++c) {
            if (bucket[c].mask & used)
                continue;
            const double rest = go(i + 1, used | bucket[c].mask);
            if (rest == kInfeasible)
                continue;
            const double v = bucket[c].score + rest;
            if (v > best.value)
                best = {v, c};
        }
        memo_[k] = best;
        return best.value;
    }

    int edges_;
    bool exact_;
    std::vector<std::vector<Item>> buckets_;
    std::unordered_map<std::pair<int, std::uint64_t>, Entry, KeyHash> memo_;
};

PathCollection pack(const SearchGraph& g, std::vector<InterestingPath> paths, bool exact_cover,
                    DecompositionMode mode, int k) {
    std::vector<PackingSearch::Item> items;
    items.reserve(paths.size());
    for (int i = 0; i < static_cast<int>(paths.size()); ++i) {
        std::uint64_t mask = 0;
        for (EdgeId e : paths[i].edges)
            mask |= std::uint64_t{1} << g.underlying(e);
        items.push_back({mask, paths[i].score, i});
    }
    PackingSearch search(g.underlying_count(), std::move(items), exact_cover);
    double total = 0.0;
    auto picked = search.solve(&total);

    PathCollection out;
    out.mode = mode;
    out.k = k;
    for (int idx : picked) {
        out.covered_edges += paths[idx].length();
        out.paths.push_back(std::move(paths[idx]));
    }
    std::sort(out.paths.begin(), out.paths.end(),
              [](const auto& a, const auto& b) { return a.edges < b.edges; });
    out.total_score = total_score(g, out.paths);
    return out;
}

void guard(const SearchGraph& g, int max_edges, int hard_cap) {
    if (g.edge_count() > max_edges)
        throw SizeGuardError("oracle enumeration limited to m <= " + std::to_string(max_edges) +
                             " (graph has m = " + std::to_string(g.edge_count()) + ")");
    if (g.underlying_count() > hard_cap)
        throw SizeGuardError("oracle cannot represent more than " + std::to_string(hard_cap) +
                             " edges");
}

}  // namespace

std::vector<InterestingPath> enumerate_interesting_paths(const SearchGraph& g, int min_length,
                                                         std::optional<int> max_length) {
    std::vector<InterestingPath> out;
    walk(g, min_length, max_length,
         [&](const std::vector<EdgeId>& p, const ResolvedSignature& sig, double s) {
             out.push_back({p, sig, s});
         });
    return out;
}

MaxIpResult brute_force_max_ip(const SearchGraph& g, const OracleOptions& options) {
    if (g.edge_count() > options.max_edges)
        throw SizeGuardError("brute-force Max-IP limited to m <= " +
                             std::to_string(options.max_edges) + " (graph has m = " +
                             std::to_string(g.edge_count()) + ")");
    MaxIpResult result;
    std::size_t visited = 0;
    walk(g, options.min_length, options.max_length,
         [&](const std::vector<EdgeId>& p, const ResolvedSignature& sig, double s) {
             ++visited;
             auto& best = result.path;
             if (!best || s > best->score || (s == best->score && tie_precedes(p, best->edges)))
                 best = InterestingPath{p, sig, s};
         });
    result.stats.stored_cells = visited;
    return result;
}

PathCollection brute_force_k_ip(const SearchGraph& g, int k, int max_edges) {
    guard(g, max_edges, 63);
    if (k < 1)
        throw ParameterError("k must be >= 1");
    return pack(g, enumerate_interesting_paths(g, k, k), false, DecompositionMode::KIP, k);
}

PathCollection brute_force_ip(const SearchGraph& g, int max_edges) {
    guard(g, max_edges, 63);
    return pack(g, enumerate_interesting_paths(g), true, DecompositionMode::IP, 0);
}

}  // namespace ipaths
