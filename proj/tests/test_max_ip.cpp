#include <gtest/gtest.h>

#include <map>
#include <random>

#include "ipaths/errors.hpp"
#include "ipaths/generators.hpp"
#include "ipaths/max_ip.hpp"
#include "ipaths/oracle.hpp"
#include "support.hpp"

using namespace ipaths;
using namespace ipaths::testing;

namespace {

SearchGraph random_dag(std::uint64_t seed, int n, double density, int sigs) {
    RandomDagSpec spec;
    spec.n = n;
    spec.density = density;
    spec.signature_count = sigs;
    spec.weight_min = 0.0;
    spec.weight_max = 2.0;
    spec.seed = seed;
    return gen_random_dag(spec);
}

// Best enumerated score for every (last edge, length).
std::map<std::pair<EdgeId, int>, double> enumerated_cells(const SearchGraph& g) {
    std::map<std::pair<EdgeId, int>, double> best;
    for (const auto& p : enumerate_interesting_paths(g)) {
        auto key = std::make_pair(p.edges.back(), p.length());
        auto [it, fresh] = best.emplace(key, p.score);
        if (!fresh)
            it->second = std::max(it->second, p.score);
    }
    return best;
}

}  // namespace

TEST(MaxIp, TwoEdgeChain) {
    auto g = chain(2, {1.0, 2.0});
    for (auto r : {max_ip(g), max_ip_sparse(g)}) {
        ASSERT_TRUE(r.found());
        EXPECT_EQ(r.path->edges, (std::vector<EdgeId>{0, 1}));
        EXPECT_NEAR(r.path->score, std::log(2.0) + 2 * std::log(3.0), kTol);
        EXPECT_NEAR(r.path->score, 2.8904, 1e-4);
    }
}

TEST(MaxIp, ParallelChainsPreferAscendingWeights) {
    auto g = make_graph(6, {{0, 1, 2.0}, {1, 2, 1.0}, {3, 4, 1.0}, {4, 5, 2.0}});
    auto r = max_ip(g);
    ASSERT_TRUE(r.found());
    EXPECT_EQ(r.path->edges, (std::vector<EdgeId>{2, 3}));
    auto oracle = brute_force_max_ip(g);
    EXPECT_EQ(oracle.path->edges, r.path->edges);
    EXPECT_EQ(enumerate_interesting_paths(g).size(), 6u);
}

TEST(MaxIp, SignatureMismatchBlocksChain) {
    auto g = make_graph(3, {{0, 1, 1.0, "1"}, {1, 2, 1.0, "0"}});
    for (auto r : {max_ip(g), max_ip_sparse(g)}) {
        ASSERT_TRUE(r.found());
        EXPECT_EQ(r.path->length(), 1);
        EXPECT_EQ(r.path->edges.front(), 0);  // tie: smallest edge id
        EXPECT_NEAR(r.path->score, std::log(2.0), kTol);
    }
}

TEST(MaxIp, HamiltonianReductionOfFourCycle) {
    auto inst = gen_dirhc(Digraph{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}});
    auto r = max_ip(inst.graph);
    ASSERT_TRUE(r.found());
    EXPECT_NEAR(r.path->score, std::log(120.0), kTol);
    EXPECT_NEAR(r.path->score, 4.7875, 1e-4);
}

TEST(MaxIp, EmptyAndEdgeless) {
    auto g = make_graph(3, {});
    EXPECT_FALSE(max_ip(g).found());
    EXPECT_FALSE(max_ip_sparse(g).found());
    EXPECT_TRUE(per_edge_best(g).empty());
}

TEST(MaxIp, CyclicGraphIsRefused) {
    auto g = make_graph(2, {{0, 1, 1.0, "*", 0}, {1, 0, 1.0, "*", 0}});
    EXPECT_THROW(max_ip(g), DomainError);
    EXPECT_THROW(max_ip_sparse(g), DomainError);
    EXPECT_THROW(per_edge_best(g), DomainError);
    try {
        max_ip(g);
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("oracle max-ip"), std::string::npos);
    }
}

TEST(MaxIp, LengthOptionErrors) {
    auto g = chain(3);
    EXPECT_THROW(max_ip(g, {0, {}, nullptr}), ParameterError);
    EXPECT_THROW(max_ip(g, {3, 2, nullptr}), ParameterError);
}

TEST(MaxIpSparse, ChainListsAndIterations) {
    auto g = chain(3);
    ScoreTable t(g);
    EXPECT_EQ(t.lengths(0), (std::vector<int>{1}));
    EXPECT_EQ(t.lengths(1), (std::vector<int>{1, 2}));
    EXPECT_EQ(t.lengths(2), (std::vector<int>{1, 2, 3}));
    EXPECT_LE(t.iterations(), g.stats().diameter.value() + 1);
    EXPECT_EQ(t.iterations(), 3);
}

TEST(MaxIpSparse, StarIntoSinkEdge) {
    std::vector<E> spec;
    for (int leaf = 0; leaf < 5; ++leaf)
        spec.push_back({leaf, 5, 1.0});
    spec.push_back({5, 6, 1.0});
    auto g = make_graph(7, spec);
    ScoreTable t(g);
    EXPECT_EQ(t.lengths(5), (std::vector<int>{1, 2}));
    EXPECT_EQ(t.iterations(), 2);
}

TEST(PerEdgeBest, UnitChain) {
    auto best = per_edge_best(chain(2));
    ASSERT_EQ(best.size(), 2u);
    EXPECT_NEAR(best.at(0), std::log(2.0), kTol);
    EXPECT_NEAR(best.at(1), std::log(2.0) + std::log(3.0), kTol);
}

TEST(PerEdgeBest, DistinctSignaturesLeaveSingletons) {
    auto g = make_graph(4, {{0, 1, 1.5, "00"}, {1, 2, 2.0, "01"}, {2, 3, 0.5, "10"}, {0, 2, 3.0, "11"}});
    for (auto [e, s] : per_edge_best(g))
        EXPECT_NEAR(s, g.edge(e).weight * std::log(2.0), kTol);
}

TEST(MaxIp, MinAndMaxLengthOptions) {
    auto g = chain(4, {3.0, 0.1, 0.1, 0.1});
    auto exact2 = max_ip(g, {2, 2, nullptr});
    ASSERT_TRUE(exact2.found());
    EXPECT_EQ(exact2.path->length(), 2);
    auto none = max_ip(g, {5, {}, nullptr});
    EXPECT_FALSE(none.found());
    auto sparse_none = max_ip_sparse(g, {5, {}, nullptr});
    EXPECT_FALSE(sparse_none.found());
}

TEST(MaxIp, MaskHidesEdges) {
    auto g = chain(3);
    EdgeMask mask(g);
    mask.remove_underlying(g, 1);
    for (auto r : {max_ip(g, {1, {}, &mask}), max_ip_sparse(g, {1, {}, &mask})}) {
        ASSERT_TRUE(r.found());
        EXPECT_EQ(r.path->edges, (std::vector<EdgeId>{0}));
    }
}

// ---- properties ----

TEST(MaxIpProperty, DenseSparseOracleAgree) {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const double density = std::array{0.2, 0.5, 0.9}[seed % 3];
        auto g = random_dag(seed, 2 + static_cast<int>(seed % 9), density, 1 + static_cast<int>(seed % 4));
        auto dense = max_ip(g);
        auto sparse = max_ip_sparse(g);
        OracleOptions wide;
        wide.max_edges = 64;
        auto oracle = brute_force_max_ip(g, wide);
        ASSERT_EQ(dense.found(), oracle.found()) << "seed " << seed;
        if (!oracle.found())
            continue;
        ++checked;
        EXPECT_NEAR(dense.path->score, oracle.path->score, kTol) << "seed " << seed;
        EXPECT_EQ(dense.path->edges, oracle.path->edges) << "seed " << seed;
        EXPECT_EQ(*sparse.path, *dense.path) << "seed " << seed;
    }
    EXPECT_GT(checked, 100);
}

TEST(MaxIpProperty, LengthWindowsAgreeWithOracle) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto g = random_dag(seed + 1000, 8, 0.6, 1 + static_cast<int>(seed % 2));
        const int lo = 1 + static_cast<int>(seed % 3);
        const int hi = lo + static_cast<int>(seed % 2);
        MaxIpOptions opts{lo, hi, nullptr};
        OracleOptions oopts;
        oopts.max_edges = 64;
        oopts.min_length = lo;
        oopts.max_length = hi;
        auto oracle = brute_force_max_ip(g, oopts);
        auto dense = max_ip(g, opts);
        auto sparse = max_ip_sparse(g, opts);
        ASSERT_EQ(dense.found(), oracle.found());
        ASSERT_EQ(sparse.found(), oracle.found());
        if (oracle.found()) {
            EXPECT_EQ(dense.path->edges, oracle.path->edges) << "seed " << seed;
            EXPECT_EQ(sparse.path->edges, oracle.path->edges) << "seed " << seed;
        }
    }
}

TEST(MaxIpProperty, EveryCellIsRealizedAndOptimal) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto g = random_dag(seed + 2000, 8, 0.5, 1 + static_cast<int>(seed % 3));
        const auto expected = enumerated_cells(g);
        DenseScoreTable dense(g);
        ScoreTable sparse(g);
        std::size_t finite = 0;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            for (int len = 1; len <= dense.columns(); ++len) {
                const double v = dense.value(e, len);
                auto it = expected.find({e, len});
                if (it == expected.end()) {
                    ASSERT_EQ(v, kNoScore);
                    ASSERT_EQ(sparse.value(e, len), kNoScore);
                    continue;
                }
                ++finite;
                ASSERT_NEAR(v, it->second, kTol);
                ASSERT_EQ(sparse.value(e, len), v);
                for (auto path : {dense.backtrack({e, len}), sparse.backtrack({e, len})}) {
                    ASSERT_EQ(static_cast<int>(path.size()), len);
                    ASSERT_EQ(path.back(), e);
                    auto check = validate_path(g, path);
                    ASSERT_TRUE(std::holds_alternative<InterestingPath>(check));
                    ASSERT_EQ(std::get<InterestingPath>(check).score, v);
                }
            }
        }
        EXPECT_EQ(finite, dense.stored_cells());
        EXPECT_EQ(finite, sparse.stored_cells());
    }
}

TEST(MaxIpProperty, AddingAnEdgeNeverLowersTheOptimum) {
    std::mt19937_64 rng(41);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto g = random_dag(seed + 3000, 9, 0.3, 2);
        const auto& order = *g.topological_order();
        std::vector<Edge> edges = g.edges();
        // add a forward edge (keeps the DAG) not already present
        for (int attempt = 0; attempt < 50; ++attempt) {
            int a = static_cast<int>(rng() % order.size()), b = static_cast<int>(rng() % order.size());
            if (a == b)
                continue;
            if (a > b)
                std::swap(a, b);
            const VertexId u = order[a], v = order[b];
            bool exists = false;
            for (const auto& e : edges)
                exists = exists || (e.source == u && e.target == v);
            if (exists)
                continue;
            edges.push_back(Edge{static_cast<EdgeId>(edges.size()), u, v, 1.0,
                                 g.signature_classes().empty() ? Signature(std::string(g.h(), '0')) : g.signature_classes().front(),
                                 std::nullopt});
            break;
        }
        SearchGraph bigger(g.vertices(), edges, g.h());
        ASSERT_TRUE(bigger.is_dag());
        const auto before = max_ip(g);
        const auto after = max_ip(bigger);
        if (before.found())
            EXPECT_GE(after.path->score, before.path->score);
    }
}

TEST(MaxIpProperty, SparseIterationsBoundedByDiameter) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto g = random_dag(seed + 4000, 5 + static_cast<int>(seed % 40), 0.3, 1 + static_cast<int>(seed % 4));
        ScoreTable t(g);
        ASSERT_LE(t.iterations(), g.stats().diameter.value_or(0) + 1) << "seed " << seed;
    }
}

TEST(MaxIpProperty, StatsReportTableSize) {
    auto g = random_dag(7, 30, 0.3, 2);
    auto dense = max_ip(g);
    auto sparse = max_ip_sparse(g);
    EXPECT_EQ(dense.stats.columns, g.stats().diameter.value());
    EXPECT_GT(dense.stats.table_bytes, 0u);
    EXPECT_GT(sparse.stats.iterations, 0);
    EXPECT_EQ(dense.stats.stored_cells, sparse.stats.stored_cells);
}
