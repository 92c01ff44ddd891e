#include <gtest/gtest.h>

#include <set>

#include "hardgadget/cc_engine.hpp"
#include "hardgadget/cc_lemmas.hpp"
#include "hardgadget/cc_reduction.hpp"
#include "hardgadget/generators.hpp"

using namespace hardgadget;

namespace {

const Hypergraph3 single{3, {{1, 2, 3}}};

Coloring colors(std::string_view s) {
    Coloring c;
    for (char ch : s) c.push_back(ch == 'O' ? Color::orange : Color::blue);
    return c;
}

std::set<int> cluster_with(const Partition& p, int v) {
    const auto all = p.clusters();
    const auto& c = all[static_cast<std::size_t>(p.cluster_of(v))];
    return {c.begin(), c.end()};
}

}  // namespace

TEST(YesClustering, OrangeOrangeBlue) {
    auto r = reduce_cc(single);
    auto p = yes_clustering(single, colors("OOB"), r.layout);
    const auto& b = r.layout.bouquets()[0];
    // the blue member's odd petal joins A1, A2; the orange members' even petals join B1, B2
    auto [odd3, even3] = r.layout.occurrence_petals(3, 1);
    EXPECT_EQ(cluster_with(p, b.a1), (std::set<int>{b.a1, b.a2, odd3}));
    const auto even1 = r.layout.occurrence_petals(1, 1).second, even2 = r.layout.occurrence_petals(2, 1).second;
    EXPECT_EQ(cluster_with(p, b.b1), (std::set<int>{b.b1, b.b2, even1, even2}));
    EXPECT_LE(disagreements(r.graph, p).max(), 3);
}

TEST(YesClustering, BlueBlueOrange) {
    auto r = reduce_cc(single);
    auto p = yes_clustering(single, colors("BBO"), r.layout);
    const auto& b = r.layout.bouquets()[0];
    EXPECT_EQ(cluster_with(p, b.a1).size(), 4U);
    EXPECT_EQ(cluster_with(p, b.b1).size(), 3U);
    EXPECT_LE(disagreements(r.graph, p).max(), 3);
}

TEST(YesClustering, RejectsMonochromaticTriple) {
    auto r = reduce_cc(single);
    EXPECT_THROW(yes_clustering(single, colors("OOO"), r.layout), std::invalid_argument);
    EXPECT_THROW(yes_clustering(single, colors("OB"), r.layout), std::invalid_argument);
}

TEST(YesClustering, AtMostThreeMistakesAndDecodesBack) {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const int n = 3 + static_cast<int>(seed % 5);
        const int m = 1 + static_cast<int>(seed % 6);
        auto h = gen_h3(n, std::min(m, n * (n - 1) * (n - 2) / 6), seed, H3Mode::two_colorable);
        auto c = find_two_coloring(h);
        ASSERT_TRUE(c);
        auto r = reduce_cc(h);
        auto p = yes_clustering(h, *c, r.layout);
        EXPECT_LE(disagreements(r.graph, p).max(), 3);
        auto d = decode_coloring(p, r.layout);
        ASSERT_TRUE(d.ok()) << d.witness;
        for (int v = 1; v <= h.n; ++v)
            if (r.layout.flower_index(v) >= 0) {
                EXPECT_EQ((*d.coloring)[static_cast<std::size_t>(v - 1)], (*c)[static_cast<std::size_t>(v - 1)]);
            }
        EXPECT_TRUE(is_proper_coloring(h, *d.coloring));
        auto report = verify_lemmas(r.graph, p, r.layout);
        EXPECT_FALSE(report.vacuous);
        EXPECT_TRUE(report.all_pass()) << to_text(report);
        ++checked;
    }
    EXPECT_EQ(checked, 60);
}

TEST(Decode, AllSingletonsHasNoParity) {
    auto r = reduce_cc(single);
    std::vector<int> labels(static_cast<std::size_t>(r.graph.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i);
    auto d = decode_coloring(Partition(labels), r.layout);
    EXPECT_FALSE(d.ok());
    EXPECT_NE(d.witness.find("flower 1"), std::string::npos);
    auto report = verify_lemmas(r.graph, Partition(labels), r.layout);
    EXPECT_TRUE(report.vacuous);
    EXPECT_EQ(report.max_mistakes, 6);
}

TEST(Decode, UnusedVertexIsOrange) {
    Hypergraph3 h{4, {{1, 2, 4}}};
    auto r = reduce_cc(h);
    auto d = decode_coloring(yes_clustering(h, colors("BOOO"), r.layout), r.layout);
    ASSERT_TRUE(d.ok());
    EXPECT_EQ(*d.coloring, colors("BOOO"));
}

TEST(Diamond, IsTheOuterPetalWithItsEdgeAndInnerPetal) {
    auto r = reduce_cc(Hypergraph3{4, {{1, 2, 3}, {1, 2, 4}}});
    for (const auto& f : r.layout.flowers())
        for (int e = 1; e <= f.edge_count(); ++e) {
            auto d = detail::diamond_of(f, e);
            int positive = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) positive += r.graph.is_positive(d[i], d[j]);
            EXPECT_EQ(positive, 5);
            EXPECT_FALSE(r.graph.is_positive(f.outer_petal(e), f.inner_petal(e)));
        }
}

TEST(VerifyLemmas, FeasibleWitnessesPass) {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        auto h = gen_h3(4 + static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 2), seed, H3Mode::random);
        auto r = reduce_cc(h);
        FeasibilityOptions o;
        o.shuffle_seed = seed;
        auto f = feasible_linf(r.graph, 3, o);
        ASSERT_EQ(f.verdict, Verdict::feasible);
        auto report = verify_lemmas(r.graph, *f.partition, r.layout);
        EXPECT_FALSE(report.vacuous);
        EXPECT_TRUE(report.all_pass()) << to_text(report);
        auto d = decode_coloring(*f.partition, r.layout);
        ASSERT_TRUE(d.ok());
        EXPECT_TRUE(is_proper_coloring(h, *d.coloring));
    }
}

// Any clustering within 3 mistakes of the real reduction satisfies the checks, so a
// violation needs a graph the layout does not describe: all pairs positive, one cluster.
TEST(VerifyLemmas, ReportsViolationsAgainstForeignGraph) {
    auto r = reduce_cc(single);
    const int n = r.graph.size();
    std::vector<std::pair<int, int>> all;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) all.emplace_back(u, v);
    auto report = verify_lemmas(SignedGraph(n, all), Partition(std::vector<int>(static_cast<std::size_t>(n), 0)), r.layout);
    EXPECT_FALSE(report.vacuous);
    EXPECT_EQ(report.max_mistakes, 0);
    EXPECT_FALSE(report.lemma(6).pass);
    EXPECT_FALSE(report.lemma(7).pass);
    EXPECT_NE(to_text(report).find("lemma 6 fail"), std::string::npos);
}

TEST(VerifyLemmas, ReportFormat) {
    auto r = reduce_cc(single);
    auto text = to_text(verify_lemmas(r.graph, yes_clustering(single, colors("OOB"), r.layout), r.layout));
    EXPECT_EQ(text.rfind("report checked linf ", 0), 0U);
    EXPECT_NE(text.find("lemma 4 pass"), std::string::npos);
    EXPECT_NE(text.find("flower 3 parity even"), std::string::npos);
    EXPECT_EQ(source_hypergraph(r.layout), single);
}
