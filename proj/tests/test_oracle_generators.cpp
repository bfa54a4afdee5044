#include <gtest/gtest.h>

#include "ipaths/errors.hpp"
#include "ipaths/generators.hpp"
#include "ipaths/max_ip.hpp"
#include "ipaths/oracle.hpp"
#include "support.hpp"

using namespace ipaths;
using namespace ipaths::testing;

namespace {

Digraph cycle(int n) {
    Digraph d{n, {}};
    for (int v = 0; v < n; ++v)
        d.arcs.emplace_back(v, (v + 1) % n);
    return d;
}

// s0 for the exact-cover reduction, written from its defining formula.
double expected_s0(int k, int p, int q) {
    const double unit = ln_factorial(k + 1);
    const double w_out = k * unit;
    return p * w_out + k * (p - 1) * q * std::log(2.0) + q * unit;
}

}  // namespace

TEST(BruteForceMaxIp, AgreesWithDpOnFixtures) {
    for (const auto& g : {chain(3), chain(2, {1, 2}), make_graph(4, {{0, 2, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}})}) {
        auto a = brute_force_max_ip(g);
        auto b = max_ip(g);
        ASSERT_TRUE(a.found());
        EXPECT_EQ(a.path->edges, b.path->edges);
        EXPECT_NEAR(a.path->score, b.path->score, kTol);
    }
}

TEST(BruteForceMaxIp, BidirectedPairUsedOnce) {
    auto g = make_graph(2, {{0, 1, 1.0, "*", 0}, {1, 0, 1.0, "*", 0}});
    auto r = brute_force_max_ip(g);
    ASSERT_TRUE(r.found());
    EXPECT_EQ(r.path->length(), 1);
    EXPECT_NEAR(r.path->score, std::log(2.0), kTol);
}

TEST(BruteForceMaxIp, EmptyGraphHasNoPath) {
    EXPECT_FALSE(brute_force_max_ip(make_graph(0, {})).found());
    EXPECT_FALSE(brute_force_max_ip(make_graph(3, {})).found());
}

TEST(BruteForceMaxIp, SizeGuard) {
    RandomDagSpec spec;
    spec.n = 12;
    spec.density = 1.0;
    auto g = gen_random_dag(spec);
    EXPECT_THROW(brute_force_max_ip(g), SizeGuardError);
    OracleOptions wide;
    wide.max_edges = 100;
    EXPECT_NO_THROW(brute_force_max_ip(g, wide));
}

TEST(BruteForcePacking, Examples) {
    auto three = chain(3);
    auto ip = brute_force_ip(three);
    ASSERT_EQ(ip.paths.size(), 1u);
    EXPECT_NEAR(ip.total_score, std::log(24.0), kTol);

    auto gadget = gen_x3c(1, {{0, 1, 2}});
    auto k3 = brute_force_k_ip(gadget.graph, 3, 24);
    EXPECT_EQ(k3.paths.size(), 4u);
    EXPECT_NEAR(k3.total_score, 4 * std::log(24.0), kTol);
    EXPECT_NEAR(k3.total_score, 12.7122, 1e-4);

    auto distinct = make_graph(4, {{0, 1, 1.0, "00"}, {1, 2, 1.0, "01"}, {2, 3, 1.0, "10"}});
    auto none = brute_force_k_ip(distinct, 2);
    EXPECT_TRUE(none.paths.empty());
    EXPECT_EQ(none.total_score, 0.0);

    auto two = gen_x3c(2, {{0, 1, 2}, {3, 4, 5}});
    EXPECT_THROW(brute_force_k_ip(two.graph, 3), SizeGuardError);
}

TEST(BruteForcePacking, ExactCoverOfSmallGraphs) {
    // 4 partitions of a 3-chain; whole chain is best
    auto g = chain(3, {1, 1, 1});
    EXPECT_EQ(enumerate_interesting_paths(g).size(), 6u);
    auto c = brute_force_ip(g);
    EXPECT_EQ(c.covered_edges, 3);
}

TEST(GenDirHc, CyclesReachLogFactorial) {
    for (int n = 3; n <= 6; ++n) {
        auto inst = gen_dirhc(cycle(n));
        EXPECT_EQ(inst.graph.vertex_count(), n + 1);
        EXPECT_NEAR(inst.constants.s0, ln_factorial(n + 1), kTol);
        auto r = brute_force_max_ip(inst.graph);
        ASSERT_TRUE(r.found());
        EXPECT_NEAR(r.path->score, ln_factorial(n + 1), kTol) << "n = " << n;
    }
    EXPECT_NEAR(gen_dirhc(cycle(4)).constants.s0, 4.7875, 1e-4);
}

TEST(GenDirHc, NonHamiltonianFallsShort) {
    // two disjoint 2-cycles
    Digraph d{4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}}};
    auto inst = gen_dirhc(d);
    auto r = brute_force_max_ip(inst.graph);
    ASSERT_TRUE(r.found());
    EXPECT_LT(r.path->score, inst.constants.s0 - 1e-6);
}

TEST(GenDirHc, RejectsBadInput) {
    EXPECT_THROW(gen_dirhc(Digraph{2, {{0, 1}}}), ParameterError);
    EXPECT_THROW(gen_dirhc(Digraph{3, {{0, 5}}}), InputError);
}

TEST(GenXkc, SingleGadgetCounts) {
    auto inst = gen_x3c(1, {{0, 1, 2}});
    EXPECT_EQ(inst.graph.vertex_count(), 13);
    EXPECT_EQ(inst.graph.edge_count(), 12);
    EXPECT_TRUE(inst.graph.is_dag());
    ASSERT_TRUE(inst.constants.w_in.has_value());
    EXPECT_NEAR(*inst.constants.w_in, 4 * std::log(24.0), kTol);
    EXPECT_NEAR(*inst.constants.w_out, 3 * std::log(24.0), kTol);

    auto k4 = gen_xkc(4, 1, {{0, 1, 2, 3}});
    EXPECT_EQ(k4.graph.edge_count(), 20);
    EXPECT_EQ(k4.graph.vertex_count(), 21);
}

TEST(GenXkc, CountsWithinBounds) {
    for (int k = 3; k <= 5; ++k)
        for (int q = 1; q <= 3; ++q)
            for (int p = q; p <= q + 2; ++p) {
                auto inst = gen_xkc(k, q, planted_cover_sets(k, p, q, 7));
                EXPECT_LE(inst.graph.vertex_count(), (k * (k + 1) + 1) * p);
                EXPECT_LE(inst.graph.edge_count(), k * (k + 1) * p);
                EXPECT_EQ(inst.graph.edge_count(), k * q + p * k * k);
            }
}

TEST(GenXkc, ConstantsMatchFormula) {
    for (int k = 3; k <= 5; ++k)
        for (int p = 1; p <= 4; ++p) {
            auto inst = gen_xkc(k, 1, planted_cover_sets(k, p, 1, 3));
            const double unit = ln_factorial(k + 1);
            EXPECT_NEAR(*inst.constants.w_in, (k + 1) * unit + k * (p - 1) * std::log(2.0), kTol);
            EXPECT_NEAR(*inst.constants.w_out, k * unit, kTol);
            EXPECT_NEAR(inst.constants.s0, expected_s0(k, p, 1), kTol);
        }
}

TEST(GenXkc, PlantedCoverReachesTarget) {
    auto sets = planted_cover_sets(3, 2, 2, 11);
    ASSERT_TRUE(has_exact_cover(6, sets));
    auto inst = gen_xkc(3, 2, sets);
    auto c = brute_force_k_ip(inst.graph, 3, 63);
    EXPECT_NEAR(c.total_score, expected_s0(3, 2, 2), kTol);
    EXPECT_NEAR(c.total_score, inst.constants.s0, kTol);
}

TEST(GenXkc, NoCoverFallsShort) {
    std::vector<std::vector<int>> sets{{0, 1, 2}, {0, 3, 4}, {1, 3, 5}};
    ASSERT_FALSE(has_exact_cover(6, sets));
    auto inst = gen_xkc(3, 2, sets);
    auto c = brute_force_k_ip(inst.graph, 3, 63);
    EXPECT_LT(c.total_score, inst.constants.s0 - 1e-6);
}

TEST(GenXkc, RejectsBadSets) {
    EXPECT_THROW(gen_xkc(2, 1, {{0, 1}}), ParameterError);
    EXPECT_THROW(gen_xkc(3, 1, {{0, 1, 1}}), ParameterError);
    EXPECT_THROW(gen_xkc(3, 1, {{0, 1, 3}}), ParameterError);
    EXPECT_THROW(gen_xkc(3, 2, {{0, 1, 2}}), ParameterError);
}

TEST(HasExactCover, Small) {
    EXPECT_TRUE(has_exact_cover(0, {}));
    EXPECT_TRUE(has_exact_cover(6, {{0, 1, 2}, {1, 2, 3}, {3, 4, 5}}));
    EXPECT_FALSE(has_exact_cover(6, {{0, 1, 2}, {2, 3, 4}}));
}

TEST(GenRandomDag, Deterministic) {
    RandomDagSpec spec;
    spec.n = 30;
    spec.density = 0.3;
    spec.signature_count = 4;
    spec.seed = 1234;
    auto a = gen_random_dag(spec), b = gen_random_dag(spec);
    ASSERT_EQ(a.edge_count(), b.edge_count());
    for (EdgeId e = 0; e < a.edge_count(); ++e) {
        EXPECT_EQ(a.edge(e).source, b.edge(e).source);
        EXPECT_EQ(a.edge(e).target, b.edge(e).target);
        EXPECT_EQ(a.edge(e).weight, b.edge(e).weight);
        EXPECT_EQ(a.edge(e).signature, b.edge(e).signature);
    }
    spec.seed = 1235;
    auto c = gen_random_dag(spec);
    bool differs = c.edge_count() != a.edge_count();
    for (EdgeId e = 0; !differs && e < a.edge_count(); ++e)
        differs = a.edge(e).source != c.edge(e).source || a.edge(e).weight != c.edge(e).weight;
    EXPECT_TRUE(differs);
}

TEST(GenRandomDag, CompleteDagHasHamiltonianBestPath) {
    for (int n = 2; n <= 7; ++n) {
        RandomDagSpec spec;
        spec.n = n;
        spec.density = 1.0;
        spec.signature_count = 1;
        spec.weight_min = 1.0;
        spec.weight_max = 1.0;
        spec.seed = static_cast<std::uint64_t>(n);
        auto g = gen_random_dag(spec);
        EXPECT_EQ(g.edge_count(), n * (n - 1) / 2);
        auto oracle = brute_force_max_ip(g);
        ASSERT_TRUE(oracle.found());
        EXPECT_EQ(oracle.path->length(), n - 1);
        EXPECT_EQ(max_ip(g).path->length(), n - 1);
    }
}

TEST(GenRandomDag, EdgeCountModeAndSmallCases) {
    RandomDagSpec spec;
    spec.n = 1;
    EXPECT_EQ(gen_random_dag(spec).edge_count(), 0);
    spec.n = 50;
    spec.edge_count = 300;
    spec.signature_count = 4;
    auto g = gen_random_dag(spec);
    EXPECT_EQ(g.edge_count(), 300);
    EXPECT_TRUE(g.is_dag());
    EXPECT_EQ(g.h(), 2);
    spec.edge_count = 50 * 49;
    EXPECT_THROW(gen_random_dag(spec), ParameterError);
}
