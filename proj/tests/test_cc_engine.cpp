#include <gtest/gtest.h>

#include <random>

#include "hardgadget/cc_engine.hpp"
#include "hardgadget/cc_reduction.hpp"
#include "hardgadget/generators.hpp"
#include "oracles.hpp"

using namespace hardgadget;

namespace {

// K4 with the pair {3,4} negative
SignedGraph k4_minus_pair() { return SignedGraph(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}}); }

}  // namespace

TEST(Disagreements, MatchesHandCount) {
    auto g = k4_minus_pair();
    auto d = disagreements(g, Partition(std::vector<int>{0, 0, 0, 0}));
    EXPECT_EQ(d.counts, (std::vector<int>{0, 0, 1, 1}));
    d = disagreements(g, Partition(std::vector<int>{0, 0, 0, 1}));
    EXPECT_EQ(d.counts, (std::vector<int>{1, 1, 0, 2}));
    EXPECT_THROW(disagreements(g, Partition(std::vector<int>{0, 0, 0})), std::invalid_argument);
}

TEST(Disagreements, MatchesPairScanOnRandomGraphs) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        auto g = oracle::random_signed_graph(n, 0.4, rng);
        std::vector<int> labels(static_cast<std::size_t>(n));
        for (auto& l : labels) l = static_cast<int>(rng() % 4);
        Partition p(labels);
        EXPECT_EQ(disagreements(g, p).counts, oracle::naive_disagreements(g, p));
    }
}

TEST(LqNorm, Values) {
    DisagreementsVector d{{1, 1, 0, 0}};
    EXPECT_DOUBLE_EQ(lq_norm(d, linf), 1.0);
    EXPECT_DOUBLE_EQ(lq_norm(d, 1.0), 2.0);
    EXPECT_DOUBLE_EQ(lq_norm(DisagreementsVector{{3, 4}}, 2.0), 5.0);
    EXPECT_THROW(lq_norm(d, 0.5), std::invalid_argument);
    EXPECT_THROW(lq_norm(d, std::nan("")), std::invalid_argument);
}

TEST(CcBruteforce, SmallExamples) {
    auto g = k4_minus_pair();
    EXPECT_DOUBLE_EQ(cc_opt_bruteforce(g, 1.0).value, 2.0);
    EXPECT_DOUBLE_EQ(cc_opt_bruteforce(g, linf).value, 1.0);
    // a path 1-2-3: keep together (1 mistake at 1 and 3) or cut one edge (1 at two vertices)
    SignedGraph path(3, {{1, 2}, {2, 3}});
    EXPECT_DOUBLE_EQ(cc_opt_bruteforce(path, 1.0).value, 2.0);
    EXPECT_DOUBLE_EQ(cc_opt_bruteforce(path, linf).value, 1.0);
    EXPECT_DOUBLE_EQ(cc_opt_bruteforce(SignedGraph(0, {}), linf).value, 0.0);
    EXPECT_THROW(cc_opt_bruteforce(SignedGraph(14, {}), linf), std::invalid_argument);
}

TEST(CcBruteforce, ReportedValueMatchesPartition) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        auto g = oracle::random_signed_graph(n, 0.5, rng);
        for (double q : {1.0, 2.0, linf}) {
            auto s = cc_opt_bruteforce(g, q);
            EXPECT_DOUBLE_EQ(lq_norm(disagreements(g, s.partition), q), s.value);
            // no single-vertex move improves an optimum
            for (int v = 1; v <= n; ++v)
                for (int c = 0; c <= s.partition.cluster_count(); ++c) {
                    auto labels = s.partition.labels();
                    labels[static_cast<std::size_t>(v - 1)] = c;
                    EXPECT_GE(lq_norm(disagreements(g, Partition(labels)), q), s.value - 1e-12);
                }
        }
    }
}

TEST(FeasibleLinf, SmallExamples) {
    auto g = k4_minus_pair();
    auto r = feasible_linf(g, 1);
    ASSERT_EQ(r.verdict, Verdict::feasible);
    ASSERT_TRUE(r.partition);
    EXPECT_LE(disagreements(g, *r.partition).max(), 1);
    EXPECT_EQ(feasible_linf(g, 0).verdict, Verdict::infeasible);
    EXPECT_FALSE(feasible_linf(g, 0).partition);
    EXPECT_EQ(feasible_linf(SignedGraph(0, {}), 0).verdict, Verdict::feasible);
}

TEST(FeasibleLinf, AgreesWithBruteForce) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        const double p = 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0;
        auto g = oracle::random_signed_graph(n, p, rng);
        const int opt = static_cast<int>(cc_opt_bruteforce(g, linf).value);
        for (int t = 0; t <= 4; ++t) {
            FeasibilityOptions o;
            if (trial % 2) o.shuffle_seed = static_cast<std::uint64_t>(trial);
            if (trial % 3 == 0) o.ordering = SearchOrder::fewest_options;
            auto r = feasible_linf(g, t, o);
            ASSERT_NE(r.verdict, Verdict::timeout);
            EXPECT_EQ(r.verdict == Verdict::feasible, opt <= t) << "trial " << trial << " t " << t;
            if (r.partition) {
                EXPECT_LE(disagreements(g, *r.partition).max(), t);
            }
        }
    }
}

TEST(FeasibleLinf, SingleTripleReductionHasThreeButNotTwo) {
    auto r = reduce_cc(Hypergraph3{3, {{1, 2, 3}}});
    EXPECT_EQ(feasible_linf(r.graph, 3).verdict, Verdict::feasible);
    EXPECT_EQ(feasible_linf(r.graph, 2).verdict, Verdict::infeasible);
}

TEST(FeasibleLinf, TimesOutOnTinyBudget) {
    auto h = gen_h3(7, 7, 1, H3Mode::odd_cycle_style);
    FeasibilityOptions o;
    o.budget = std::chrono::milliseconds(20);
    EXPECT_EQ(feasible_linf(reduce_cc(h).graph, 3, o).verdict, Verdict::timeout);
}

TEST(TwoColoring, AgreesWithExhaustiveCheck) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const int n = 3 + static_cast<int>(seed % 5);
        const int max_m = n * (n - 1) * (n - 2) / 6;
        const int m = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(max_m));
        auto h = gen_h3(n, m, seed, H3Mode::random);
        auto c = find_two_coloring(h);
        EXPECT_EQ(c.has_value(), oracle::naive_two_colorable(h)) << to_text(h);
        if (c) {
            EXPECT_TRUE(is_proper_coloring(h, *c));
        }
    }
}

TEST(TwoColoring, KnownInstances) {
    Hypergraph3 k4{4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}};
    EXPECT_TRUE(find_two_coloring(k4));
    Hypergraph3 fano{7, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}}};
    EXPECT_FALSE(find_two_coloring(fano));
    EXPECT_FALSE(oracle::naive_two_colorable(fano));
    EXPECT_FALSE(find_two_coloring(gen_h3(7, 7, 5, H3Mode::odd_cycle_style)));
}

// Four triples on four vertices is K4^(3), which a 2-2 split colours properly.
TEST(TwoColoring, EveryFourByFourInstanceIsColorable) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_TRUE(find_two_coloring(gen_h3(4, 4, seed, H3Mode::random)));
}

TEST(Coloring, RoundTrips) {
    Coloring c{Color::orange, Color::blue, Color::orange};
    EXPECT_EQ(parse_coloring(to_text(c)), c);
}
