#include <gtest/gtest.h>

#include <set>

#include "hardgadget/cc_reduction.hpp"
#include "hardgadget/generators.hpp"

using namespace hardgadget;

namespace {

std::vector<int> positive_degrees(const SignedGraph& g) {
    std::vector<int> d(static_cast<std::size_t>(g.size()), 0);
    for (auto [u, v] : g.positive_edges()) {
        ++d[static_cast<std::size_t>(u - 1)];
        ++d[static_cast<std::size_t>(v - 1)];
    }
    return d;
}

int expected_vertices(const Hypergraph3& h) {
    int total = 4 * h.edge_count();
    for (int s : h.occurrences())
        if (s > 0) total += 6 * std::max(s, 2);
    return total;
}

}  // namespace

TEST(ReduceCc, SingleTripleHasFortyVertices) {
    auto r = reduce_cc(Hypergraph3{3, {{1, 2, 3}}});
    EXPECT_EQ(r.graph.size(), 3 * 12 + 4);
    // 10 t positive edges per flower (t = 2) and 14 per bouquet
    EXPECT_EQ(r.graph.positive_edges().size(), 3U * 20 + 14);
}

TEST(ReduceCc, FlowerOfTwoOccurrences) {
    auto r = reduce_cc(Hypergraph3{4, {{1, 2, 3}, {1, 2, 4}}});
    const auto& f = r.layout.flower(1);
    EXPECT_EQ(f.occurrences, 2);
    EXPECT_EQ(f.cycle.size() + f.outer.size() + f.inner.size(), 12U);
    EXPECT_EQ(f.outer.size(), 4U);
    EXPECT_EQ(f.inner.size(), 4U);
}

TEST(ReduceCc, EmptyHypergraphGivesEmptyGraph) {
    auto r = reduce_cc(Hypergraph3{5, {}});
    EXPECT_EQ(r.graph.size(), 0);
    EXPECT_TRUE(r.layout.flowers().empty());
}

TEST(ReduceCc, UnusedVerticesGetNoFlower) {
    auto r = reduce_cc(Hypergraph3{5, {{1, 2, 4}}});
    EXPECT_EQ(r.layout.flower_index(3), -1);
    EXPECT_EQ(r.layout.flower_index(5), -1);
    EXPECT_THROW(r.layout.flower(3), std::out_of_range);
    EXPECT_EQ(r.graph.size(), 40);
}

TEST(ReduceCc, OccurrenceUsesPetalPair) {
    Hypergraph3 h{5, {{1, 2, 3}, {1, 4, 5}, {1, 2, 4}}};
    auto r = reduce_cc(h);
    const auto& f = r.layout.flower(1);
    for (int o = 1; o <= 3; ++o) {
        const auto& b = r.layout.bouquets()[static_cast<std::size_t>(o - 1)];
        EXPECT_EQ(b.slots[0].vertex, 1);
        EXPECT_EQ(b.slots[0].occurrence, o);
        auto [odd, even] = r.layout.occurrence_petals(1, o);
        EXPECT_EQ(odd, f.outer_petal(2 * o - 1));
        EXPECT_EQ(even, f.outer_petal(2 * o));
        EXPECT_TRUE(r.graph.is_positive(b.a1, odd));
        EXPECT_TRUE(r.graph.is_positive(b.a2, odd));
        EXPECT_TRUE(r.graph.is_positive(b.b1, even));
        EXPECT_TRUE(r.graph.is_positive(b.b2, even));
        EXPECT_FALSE(r.graph.is_positive(b.a1, even));
    }
}

TEST(ReduceCc, DegreeFactsAndCountsOnGeneratedInstances) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const int n = 3 + static_cast<int>(seed % 5);
        const int m = 1 + static_cast<int>(seed % 4);
        auto h = gen_h3(n, std::min(m, n * (n - 1) * (n - 2) / 6), seed, H3Mode::random);
        auto r = reduce_cc(h);
        ASSERT_EQ(r.graph.size(), expected_vertices(h));
        const auto deg = positive_degrees(r.graph);
        for (int id = 1; id <= r.graph.size(); ++id) {
            const auto role = r.layout.role(id);
            const int d = deg[static_cast<std::size_t>(id - 1)];
            switch (role.role) {
                case GadgetRole::cycle: EXPECT_EQ(d, 6) << id; break;
                case GadgetRole::inner: EXPECT_EQ(d, 2) << id; break;
                case GadgetRole::outer: {
                    const auto& f = r.layout.flower(role.owner);
                    EXPECT_EQ(d, f.attached(role.index) ? 4 : 2) << id;
                    break;
                }
                default: EXPECT_EQ(d, 4) << id;
            }
        }
        std::size_t expect_edges = 14 * h.edges.size();
        for (const auto& f : r.layout.flowers()) expect_edges += 10U * static_cast<std::size_t>(f.padded_size());
        EXPECT_EQ(r.graph.positive_edges().size(), expect_edges);
    }
}

TEST(ReduceCc, IdsAreDenseAndDistinct) {
    auto r = reduce_cc(Hypergraph3{6, {{1, 2, 3}, {3, 4, 5}, {1, 5, 6}}});
    std::set<int> ids;
    for (const auto& f : r.layout.flowers())
        for (const auto* v : {&f.cycle, &f.outer, &f.inner}) ids.insert(v->begin(), v->end());
    for (const auto& b : r.layout.bouquets()) ids.insert({b.a1, b.a2, b.b1, b.b2});
    EXPECT_EQ(static_cast<int>(ids.size()), r.graph.size());
    EXPECT_EQ(*ids.begin(), 1);
    EXPECT_EQ(*ids.rbegin(), r.graph.size());
}

TEST(LayoutRole, NamesRoles) {
    auto r = reduce_cc(Hypergraph3{3, {{1, 2, 3}}});
    const auto first = layout_role(r.layout, 1);
    EXPECT_TRUE(first.in_flower);
    EXPECT_EQ(first.owner, 1);
    EXPECT_EQ(first.role, GadgetRole::cycle);
    EXPECT_EQ(first.index, 1);
    const auto a1 = layout_role(r.layout, r.layout.bouquets()[0].a1);
    EXPECT_FALSE(a1.in_flower);
    EXPECT_EQ(a1.owner, 1);
    EXPECT_EQ(a1.role, GadgetRole::a1);
    EXPECT_THROW(layout_role(r.layout, r.graph.size() + 1), std::out_of_range);
    EXPECT_THROW(layout_role(r.layout, 0), std::out_of_range);
}

TEST(Layout, RoundTripsAndRejects) {
    auto r = reduce_cc(Hypergraph3{5, {{1, 2, 3}, {2, 4, 5}}});
    const auto text = to_text(r.layout);
    EXPECT_EQ(parse_layout(text), r.layout);
    EXPECT_EQ(to_text(parse_layout(text)), text);
    EXPECT_THROW(parse_layout("layout 3 4\nbouquet 1 1 2 3 4 1 1 2 1 3 1\n"), std::exception);
}

TEST(ReduceCc, Deterministic) {
    Hypergraph3 h{6, {{1, 2, 3}, {3, 4, 5}, {1, 5, 6}}};
    EXPECT_EQ(to_text(reduce_cc(h).graph), to_text(reduce_cc(h).graph));
    EXPECT_EQ(to_text(reduce_cc(h).layout), to_text(reduce_cc(h).layout));
}
