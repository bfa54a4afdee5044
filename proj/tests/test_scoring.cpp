#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ipaths/errors.hpp"
#include "ipaths/max_ip.hpp"
#include "ipaths/scoring.hpp"
#include "support.hpp"

using namespace ipaths;
using namespace ipaths::testing;

TEST(Score, SingleEdge) {
    for (double w : {0.0, 0.5, 1.0, 7.25}) {
        std::vector<double> ws{w};
        EXPECT_NEAR(score(ws), w * std::log(2.0), kTol);
    }
}

TEST(Score, UnitThreePathIsLog24) {
    std::vector<double> ws{1, 1, 1};
    EXPECT_NEAR(score(ws), std::log(24.0), kTol);
    EXPECT_NEAR(score(ws), 3.1781, 1e-4);
}

TEST(Score, UnitPathsGiveLogFactorial) {
    for (int n = 1; n <= 12; ++n) {
        std::vector<double> ws(n, 1.0);
        EXPECT_NEAR(score(ws), ln_factorial(n + 1), kTol) << "n = " << n;
    }
    std::vector<double> four(4, 1.0);
    EXPECT_NEAR(score(four), 4.7875, 1e-4);
}

TEST(Score, Errors) {
    std::vector<double> empty;
    EXPECT_THROW(score(empty), ParameterError);
    std::vector<double> neg{1.0, -0.5};
    EXPECT_THROW(score(neg), InputError);
}

TEST(Score, RearrangementExample) {
    std::vector<double> up{1, 2}, down{2, 1};
    EXPECT_NEAR(score(up), std::log(2.0) + 2 * std::log(3.0), kTol);
    EXPECT_NEAR(score(up), 2.8904, 1e-4);
    EXPECT_NEAR(score(down), 2.4849, 1e-4);
    EXPECT_GT(score(up), score(down));
}

TEST(Score, MatchesReference) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> w(0.0, 10.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> ws(1 + trial % 30);
        for (auto& x : ws)
            x = w(rng);
        EXPECT_NEAR(score(ws), ref_score(ws), 1e-9 * (1 + ref_score(ws)));
    }
}

TEST(ScoreProperty, Homogeneity) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> w(0.0, 5.0), c(0.0, 4.0);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> ws(1 + trial % 12);
        for (auto& x : ws)
            x = w(rng);
        const double k = c(rng);
        auto scaled = ws;
        for (auto& x : scaled)
            x *= k;
        EXPECT_NEAR(score(scaled), k * score(ws), 1e-9 * (1 + k * score(ws)));
    }
}

TEST(ScoreProperty, PrefixMonotone) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> w(0.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> ws(1 + trial % 15);
        for (auto& x : ws)
            x = w(rng);
        for (std::size_t len = 1; len < ws.size(); ++len) {
            std::span<const double> prefix(ws.data(), len);
            ASSERT_LE(score(prefix), score(ws));
        }
    }
}

TEST(ScoreProperty, AscendingOrderMaximizesOverAllPermutations) {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> w(0.0, 5.0);
    for (int k = 1; k <= 6; ++k) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> ws(k);
            for (auto& x : ws)
                x = std::round(w(rng));  // repeated values on purpose
            std::sort(ws.begin(), ws.end());
            const double ascending = score(ws);
            auto perm = ws;
            do {
                ASSERT_LE(score(perm), ascending + 1e-12);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
}

TEST(ScoreProperty, ArgmaxInvariantUnderWeightScaling) {
    // two parallel chains; scaling every weight keeps the same winner
    std::vector<E> spec{{0, 1, 1.0}, {1, 2, 2.0}, {3, 4, 2.0}, {4, 5, 1.0}, {6, 7, 2.5}};
    auto base = make_graph(8, spec);
    auto best = max_ip(base);
    for (double c : {0.1, 3.0, 1000.0}) {
        auto scaled_spec = spec;
        for (auto& e : scaled_spec)
            e.weight *= c;
        auto r = max_ip(make_graph(8, scaled_spec));
        ASSERT_TRUE(r.found());
        EXPECT_EQ(r.path->edges, best.path->edges);
        EXPECT_NEAR(r.path->score, c * best.path->score, 1e-9 * c * 10);
    }
}

TEST(ValidatePath, SameSignatureChain) {
    auto g = make_graph(3, {{0, 1, 1.5, "10"}, {1, 2, 2.5, "10"}});
    std::vector<EdgeId> p{0, 1};
    auto r = validate_path(g, p);
    ASSERT_TRUE(std::holds_alternative<InterestingPath>(r));
    const auto& ip = std::get<InterestingPath>(r);
    EXPECT_EQ(to_string(ip.signature), "10");
    EXPECT_NEAR(ip.score, 1.5 * std::log(2.0) + 2.5 * std::log(3.0), kTol);
}

TEST(ValidatePath, SignatureMismatch) {
    auto g = make_graph(3, {{0, 1, 1.0, "10"}, {1, 2, 1.0, "11"}});
    std::vector<EdgeId> p{0, 1};
    auto r = validate_path(g, p);
    ASSERT_TRUE(std::holds_alternative<PathRejection>(r));
    EXPECT_EQ(std::get<PathRejection>(r).reason, PathViolation::SignatureMismatch);
    EXPECT_EQ(std::get<PathRejection>(r).position, 1);
}

TEST(ValidatePath, WildcardResolvesToFollowingEdge) {
    auto g = make_graph(3, {{0, 1, 1.0, "*", 0}, {1, 0, 1.0, "*", 0}, {1, 2, 1.0, "01"}});
    std::vector<EdgeId> p{0, 2};
    auto r = validate_path(g, p);
    ASSERT_TRUE(std::holds_alternative<InterestingPath>(r));
    EXPECT_EQ(to_string(std::get<InterestingPath>(r).signature), "01");

    std::vector<EdgeId> only_wild{1};
    auto w = validate_path(g, only_wild);
    ASSERT_TRUE(std::holds_alternative<InterestingPath>(w));
    EXPECT_EQ(to_string(std::get<InterestingPath>(w).signature), "*");
}

TEST(ValidatePath, Rejections) {
    auto g = make_graph(4, {{0, 1, 1.0, "*", 0}, {1, 0, 1.0, "*", 0}, {1, 2, 1.0}, {2, 0, 1.0}, {2, 3, 1.0}});
    auto reason = [&](std::vector<EdgeId> p) {
        auto r = validate_path(g, p);
        return std::get<PathRejection>(r).reason;
    };
    EXPECT_EQ(reason({}), PathViolation::Empty);
    EXPECT_EQ(reason({9}), PathViolation::UnknownEdge);
    EXPECT_EQ(reason({2, 0}), PathViolation::Disconnected);
    EXPECT_EQ(reason({0, 1}), PathViolation::PairReused);
    EXPECT_EQ(reason({0, 2, 3}), PathViolation::RepeatedVertex);
}

TEST(PathVertices, FollowsEdges) {
    auto g = chain(3);
    std::vector<EdgeId> p{0, 1, 2};
    EXPECT_EQ(path_vertices(g, p), (std::vector<VertexId>{0, 1, 2, 3}));
}
