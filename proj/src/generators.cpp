#include "ipaths/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <unordered_set>

#include "ipaths/errors.hpp"
#include "ipaths/scoring.hpp"

namespace ipaths {

namespace {

// log((k+1)!) as the score of a unit-weight k-path.
double unit_path_score(int k) {
    double total = 0.0;
    for (int r = 1; r <= k; ++r)
        total = total + rank_factor(r);
    return total;
}

// Portable draws from mt19937_64 (whose output sequence is fixed by the
// standard, unlike the distribution classes).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

private:
    std::mt19937_64 engine_;
};

const Signature& unit_signature() {
    static const Signature sig("1");
    return sig;
}

}  // namespace

GeneratedInstance gen_dirhc(const Digraph& input) {
    const int n = input.n;
    if (n < 3)
        throw ParameterError("Hamiltonian-cycle reduction needs n >= 3");
    std::vector<Vertex> vertices;
    for (int v = 0; v <= n; ++v)
        vertices.push_back(Vertex{v, 0.0, {}, std::nullopt});
    std::vector<Edge> edges;
    for (auto [u, w] : input.arcs) {
        if (u < 0 || u >= n || w < 0 || w >= n || u == w)
            throw InputError("digraph arc " + std::to_string(u) + "->" + std::to_string(w) +
                             " is invalid");
        const VertexId src = u;                // arcs leaving 0 keep the source copy
        const VertexId dst = w == 0 ? n : w;   // arcs entering 0 go to the sink copy
        edges.push_back(Edge{static_cast<EdgeId>(edges.size()), src, dst, 1.0, unit_signature(),
                             std::nullopt});
    }
    GadgetConstants c;
    c.kind = "dirhc";
    c.k = n;
    c.s0 = unit_path_score(n);
    return {SearchGraph(std::move(vertices), std::move(edges), 1), c};
}

GeneratedInstance gen_xkc(int k, int q, const std::vector<std::vector<int>>& sets) {
    const int p = static_cast<int>(sets.size());
    if (k < 3)
        throw ParameterError("exact-cover gadgets need k >= 3");
    if (q < 1)
        throw ParameterError("q must be >= 1");
    if (p < q)
        throw ParameterError("need at least q sets (p >= q)");
    const int universe = k * q;
    for (std::size_t s = 0; s < sets.size(); ++s) {
        std::set<int> distinct(sets[s].begin(), sets[s].end());
        if (static_cast<int>(sets[s].size()) != k || static_cast<int>(distinct.size()) != k)
            throw ParameterError("set " + std::to_string(s) + " must contain " + std::to_string(k) +
                                 " distinct elements");
        if (*distinct.begin() < 0 || *distinct.rbegin() >= universe)
            throw ParameterError("set " + std::to_string(s) + " has an element outside [0, " +
                                 std::to_string(universe) + ")");
    }

    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    auto add_vertex = [&] {
        const VertexId id = static_cast<VertexId>(vertices.size());
        vertices.push_back(Vertex{id, 0.0, {}, std::nullopt});
        return id;
    };
    auto add_edge = [&](VertexId a, VertexId b, double w) {
        edges.push_back(Edge{static_cast<EdgeId>(edges.size()), a, b, w, unit_signature(),
                             std::nullopt});
    };

    const double heavy = static_cast<double>(p);
    for (int x = 0; x < universe; ++x) {
        const VertexId tail = add_vertex();
        const VertexId head = add_vertex();
        add_edge(tail, head, heavy);
    }
    for (const auto& set : sets) {
        std::vector<std::vector<VertexId>> connectors(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k - 2; ++j)
                connectors[i].push_back(add_vertex());
        std::vector<VertexId> spine;
        for (int i = 0; i <= k; ++i)
            spine.push_back(add_vertex());
        for (int i = 0; i < k; ++i) {
            VertexId at = 2 * set[i] + 1;  // head of the element edge
            for (VertexId c : connectors[i]) {
                add_edge(at, c, 1.0);
                at = c;
            }
            add_edge(at, spine[i], 1.0);
        }
        for (int i = 0; i < k; ++i)
            add_edge(spine[i], spine[i + 1], 1.0);
    }

    GadgetConstants c;
    c.kind = k == 3 ? "x3c" : "xkc";
    c.k = k;
    c.p = p;
    c.q = q;
    const double unit = unit_path_score(k);  // log((k+1)!)
    const double log2 = rank_factor(1);
    c.w_in = (k + 1) * unit + k * (p - 1) * log2;
    c.w_out = k * unit;
    c.s0 = p * *c.w_out + k * (p - 1) * q * log2 + q * unit;
    return {SearchGraph(std::move(vertices), std::move(edges), 1), c};
}

GeneratedInstance gen_x3c(int q, const std::vector<std::array<int, 3>>& sets) {
    std::vector<std::vector<int>> v;
    for (const auto& s : sets)
        v.emplace_back(s.begin(), s.end());
    return gen_xkc(3, q, v);
}

std::vector<std::vector<int>> planted_cover_sets(int k, int p, int q, std::uint64_t seed) {
    if (k < 1 || q < 1 || p < q)
        throw ParameterError("planted cover needs k >= 1 and p >= q >= 1");
    std::vector<std::vector<int>> sets;
    for (int s = 0; s < q; ++s) {
        std::vector<int> set;
        for (int i = 0; i < k; ++i)
            set.push_back(s * k + i);
        sets.push_back(std::move(set));
    }
    Rng rng(seed);
    const int universe = k * q;
    std::vector<int> pool(universe);
    for (int s = q; s < p; ++s) {
        for (int i = 0; i < universe; ++i)
            pool[i] = i;
        for (int i = 0; i < k; ++i)
            std::swap(pool[i], pool[i + rng.below(universe - i)]);
        std::vector<int> set(pool.begin(), pool.begin() + k);
        std::sort(set.begin(), set.end());
        sets.push_back(std::move(set));
    }
    return sets;
}

bool has_exact_cover(int universe, const std::vector<std::vector<int>>& sets) {
    std::vector<char> covered(universe, 0);
    std::function<bool()> search = [&]() -> bool {
        const auto first = std::find(covered.begin(), covered.end(), 0);
        if (first == covered.end())
            return true;
        const int x = static_cast<int>(first - covered.begin());
        for (const auto& set : sets) {
            if (std::find(set.begin(), set.end(), x) == set.end())
                continue;
            if (std::any_of(set.begin(), set.end(), [&](int y) { return covered[y] != 0; }))
                continue;
            for (int y : set)
                covered[y] = 1;
            if (search())
                return true;
            for (int y : set)
                covered[y] = 0;
        }
        return false;
    };
    return search();
}

SearchGraph gen_random_dag(const RandomDagSpec& spec) {
    if (spec.n < 0)
        throw ParameterError("n must be nonnegative");
    if (!spec.edge_count && !(spec.density > 0.0 && spec.density <= 1.0))
        throw ParameterError("density must lie in (0, 1]");
    if (spec.signature_count < 1)
        throw ParameterError("signature count must be >= 1");
    if (!(spec.weight_min >= 0.0) || spec.weight_max < spec.weight_min)
        throw ParameterError("weight range must satisfy 0 <= min <= max");
    const long long max_pairs = static_cast<long long>(spec.n) * (spec.n - 1) / 2;
    if (spec.edge_count && (*spec.edge_count < 0 || *spec.edge_count > max_pairs))
        throw ParameterError("edge count exceeds the number of forward pairs");

    Rng rng(spec.seed);
    const int n = spec.n;
    std::vector<VertexId> order(n);
    for (int i = 0; i < n; ++i)
        order[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);

    std::vector<std::pair<int, int>> pairs;  // positions in the topological order
    if (spec.edge_count) {
        std::unordered_set<std::uint64_t> taken;
        while (static_cast<long long>(pairs.size()) < *spec.edge_count) {
            int a = static_cast<int>(rng.below(n));
            int b = static_cast<int>(rng.below(n));
            if (a == b)
                continue;
            if (a > b)
                std::swap(a, b);
            if (taken.insert(static_cast<std::uint64_t>(a) * n + b).second)
                pairs.emplace_back(a, b);
        }
        std::sort(pairs.begin(), pairs.end());
    } else {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rng.uniform01() < spec.density)
                    pairs.emplace_back(a, b);
    }

    int width = 1;
    while ((1 << width) < spec.signature_count)
        ++width;
    std::vector<Signature> patterns;
    for (int s = 0; s < spec.signature_count; ++s) {
        std::string bits(width, '0');
        for (int b = 0; b < width; ++b)
            if (s >> (width - 1 - b) & 1)
                bits[b] = '1';
        patterns.emplace_back(bits);
    }

    std::vector<Vertex> vertices;
    vertices.reserve(n);
    for (int v = 0; v < n; ++v)
        vertices.push_back(Vertex{v, 0.0, {}, std::nullopt});
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    const double span = spec.weight_max - spec.weight_min;
    for (auto [a, b] : pairs) {
        const double w = spec.weight_min + span * rng.uniform01();
        const auto& sig = patterns[rng.below(spec.signature_count)];
        edges.push_back(Edge{static_cast<EdgeId>(edges.size()), order[a], order[b], w, sig,
                             std::nullopt});
    }
    return SearchGraph(std::move(vertices), std::move(edges), width);
}

}  // namespace ipaths
