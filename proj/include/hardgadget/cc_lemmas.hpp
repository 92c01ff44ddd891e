#pragma once

// Structure of low-mistake clusterings on flower/bouquet graphs: the YES-case clustering
// built from a proper 2-colouring, the decoder that reads a colouring back off any
// clustering with at most 3 mistakes per vertex, and checks of the structural facts that
// make the decoder sound.

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardgadget/cc_engine.hpp"
#include "hardgadget/cc_reduction.hpp"

namespace hardgadget {

/// Which parity class of a flower's outer petals sits in diamond clusters.
enum class FlowerParity { odd_diamonds, even_diamonds, none };

inline const char* parity_name(FlowerParity p) {
    switch (p) {
        case FlowerParity::odd_diamonds: return "odd";
        case FlowerParity::even_diamonds: return "even";
        case FlowerParity::none: return "none";
    }
    return "?";
}

/// The hypergraph a layout was built from (triples in bouquet order).
inline Hypergraph3 source_hypergraph(const GadgetLayout& layout) {
    Hypergraph3 h;
    h.n = layout.hypergraph_vertices();
    for (const auto& b : layout.bouquets()) h.edges.push_back({b.slots[0].vertex, b.slots[1].vertex, b.slots[2].vertex});
    return h;
}

namespace detail {

inline std::array<int, 4> diamond_of(const FlowerLayout& f, int e) {
    auto [q1, q2] = f.endpoints(e);
    std::array<int, 4> d{f.outer_petal(e), q1, q2, f.inner_petal(e)};
    std::sort(d.begin(), d.end());
    return d;
}

/// Membership view of a partition: cluster members by cluster id.
struct ClusterView {
    const Partition& p;
    std::vector<std::vector<int>> members;

    explicit ClusterView(const Partition& part) : p(part), members(part.clusters()) {}

    const std::vector<int>& of(int v) const { return members[static_cast<std::size_t>(p.cluster_of(v))]; }
    bool together(int u, int v) const { return p.cluster_of(u) == p.cluster_of(v); }

    bool is_diamond(const FlowerLayout& f, int e) const {
        const auto& c = of(f.outer_petal(e));
        if (c.size() != 4) return false;
        auto d = diamond_of(f, e);
        return std::equal(c.begin(), c.end(), d.begin());
    }
};

inline FlowerParity flower_parity(const ClusterView& view, const FlowerLayout& f) {
    bool odd = true, even = true;
    for (int e = 1; e <= f.edge_count(); ++e) {
        const bool d = view.is_diamond(f, e);
        if (e % 2 == 1) odd = odd && d;
        else even = even && d;
    }
    if (odd) return FlowerParity::odd_diamonds;
    if (even) return FlowerParity::even_diamonds;
    return FlowerParity::none;
}

inline std::string cluster_string(const std::vector<int>& c) {
    std::string s = "{";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "}";
}

}  // namespace detail

/// Clustering with at most 3 mistakes per vertex from a proper 2-colouring: orange
/// flowers keep their odd diamonds, blue flowers their even ones; each bouquet's A-edge
/// collects the odd petals of its blue members and its B-edge the even petals of its
/// orange members.
inline Partition yes_clustering(const Hypergraph3& h, const Coloring& coloring, const GadgetLayout& layout) {
    if (static_cast<int>(coloring.size()) != h.n) throw std::invalid_argument("colouring size does not match hypergraph");
    for (int j = 0; j < h.edge_count(); ++j)
        if (!bichromatic(h, coloring, j)) throw std::invalid_argument("triple " + std::to_string(j + 1) + " is monochromatic");

    std::vector<int> label(static_cast<std::size_t>(layout.vertex_count()), -1);
    int next = 0;
    auto put = [&](std::initializer_list<int> ids, int c) {
        for (int id : ids) label[static_cast<std::size_t>(id - 1)] = c;
    };

    for (const auto& f : layout.flowers()) {
        const int diamond_parity = coloring[static_cast<std::size_t>(f.vertex - 1)] == Color::orange ? 1 : 0;
        for (int e = 1; e <= f.edge_count(); ++e) {
            if (e % 2 == diamond_parity) {
                auto [q1, q2] = f.endpoints(e);
                put({f.outer_petal(e), q1, q2, f.inner_petal(e)}, next++);
            } else {
                put({f.inner_petal(e)}, next++);
                if (!f.attached(e)) put({f.outer_petal(e)}, next++);
            }
        }
    }
    for (const auto& b : layout.bouquets()) {
        const int alpha = next++, beta = next++;
        put({b.a1, b.a2}, alpha);
        put({b.b1, b.b2}, beta);
        for (const auto& s : b.slots) {
            auto [odd, even] = layout.occurrence_petals(s.vertex, s.occurrence);
            if (coloring[static_cast<std::size_t>(s.vertex - 1)] == Color::blue) put({odd}, alpha);
            else put({even}, beta);
        }
    }
    return Partition(label);
}

struct DecodeResult {
    std::optional<Coloring> coloring;
    std::vector<FlowerParity> parity;  // per flower, in layout order
    std::string witness;                // first flower with no parity class, on failure

    bool ok() const { return coloring.has_value(); }
};

/// Orange where all odd outer petals sit in diamonds, blue where all even ones do.
/// Vertices without a flower are reported orange.
inline DecodeResult decode_coloring(const Partition& p, const GadgetLayout& layout) {
    if (p.size() != layout.vertex_count()) throw std::invalid_argument("partition size does not match layout");
    detail::ClusterView view(p);
    DecodeResult r;
    Coloring c(static_cast<std::size_t>(layout.hypergraph_vertices()), Color::orange);
    for (const auto& f : layout.flowers()) {
        const auto parity = detail::flower_parity(view, f);
        r.parity.push_back(parity);
        if (parity == FlowerParity::even_diamonds) c[static_cast<std::size_t>(f.vertex - 1)] = Color::blue;
        if (parity == FlowerParity::none && r.witness.empty())
            r.witness = "flower " + std::to_string(f.vertex) + ": neither all odd nor all even outer petals form diamonds";
    }
    if (r.witness.empty()) r.coloring = std::move(c);
    return r;
}

struct LemmaCheck {
    int lemma = 0;
    bool pass = true;
    std::string witness;
};

struct LemmaReport {
    bool vacuous = false;  // the partition has more than 3 mistakes somewhere
    int max_mistakes = 0;
    std::array<LemmaCheck, 5> lemmas{{{4, true, {}}, {5, true, {}}, {6, true, {}}, {7, true, {}}, {8, true, {}}}};
    std::vector<std::pair<int, FlowerParity>> parity;  // (hypergraph vertex, parity)
    std::vector<std::string> notes;  // non-failing observations, e.g. paired inner petals

    LemmaCheck& lemma(int k) { return lemmas.at(static_cast<std::size_t>(k - 4)); }
    const LemmaCheck& lemma(int k) const { return lemmas.at(static_cast<std::size_t>(k - 4)); }

    bool all_pass() const {
        return std::all_of(lemmas.begin(), lemmas.end(), [](const auto& l) { return l.pass; });
    }
};

/// Checks, on a clustering with at most 3 mistakes per vertex, that
///  4: an attached outer petal away from its bouquet edges sits in its diamond;
///  5: an outer petal with its bouquet edges shares the cluster with no other vertex of its
///     flower, its inner petal has both positive edges cut (reported as a note when it is not
///     a singleton) and both neighbouring cycle edges are diamonds;
///  6: every attached outer petal's cluster is {P,A}, {P,A1,A2}, {P,P',A1,A2} or its diamond
///     (B1/B2 for even petals);
///  7: every flower has all odd or all even outer petals in diamonds;
///  8: no bouquet sees the same parity on all three of its flowers.
inline LemmaReport verify_lemmas(const SignedGraph& g, const Partition& p, const GadgetLayout& layout) {
    if (g.size() != layout.vertex_count()) throw std::invalid_argument("graph size does not match layout");
    LemmaReport report;
    report.max_mistakes = disagreements(g, p).max();
    if (report.max_mistakes > 3) {
        report.vacuous = true;
        return report;
    }
    detail::ClusterView view(p);
    auto fail = [&](int k, std::string witness) {
        auto& l = report.lemma(k);
        if (l.pass) {
            l.pass = false;
            l.witness = std::move(witness);
        }
    };

    for (const auto& b : layout.bouquets()) {
        const std::set<int> ends{b.a1, b.a2, b.b1, b.b2};
        for (std::size_t k = 0; k < 3; ++k) {
            const auto& slot = b.slots[k];
            const auto& f = layout.flower(slot.vertex);
            for (int parity = 0; parity < 2; ++parity) {
                const int e = 2 * slot.occurrence - 1 + parity;  // odd petal wires to A, even to B
                const int petal = f.outer_petal(e);
                const auto& cluster = view.of(petal);
                const std::string where = "flower " + std::to_string(f.vertex) + " outer " + std::to_string(e) +
                                          " cluster " + detail::cluster_string(cluster);
                const bool with_ends = std::any_of(cluster.begin(), cluster.end(), [&](int v) { return ends.count(v) > 0; });

                if (!with_ends && !view.is_diamond(f, e)) fail(4, where);

                if (with_ends) {
                    for (int v : cluster) {
                        const auto r = layout.role(v);
                        if (v != petal && r.in_flower && r.owner == f.vertex) {
                            fail(5, where + " (shares cluster with own flower)");
                            break;
                        }
                    }
                    // Both positive edges of the inner petal must be cut. It may still pair with
                    // another stranded vertex (2 cut edges + 1 in-cluster non-edge = 3 mistakes),
                    // so a literal singleton is not forced.
                    const int ip = f.inner_petal(e);
                    const auto& inner = view.of(ip);
                    const bool joined = std::any_of(inner.begin(), inner.end(), [&](int v) { return v != ip && g.is_positive(v, ip); });
                    if (joined) fail(5, where + " (inner petal clustered with a cycle endpoint)");
                    else if (inner.size() != 1)
                        report.notes.push_back("lemma 5 inner petal " + std::to_string(ip) +
                                               " not a singleton: cluster " + detail::cluster_string(inner));
                    const int k_edges = f.edge_count();
                    const int prev = e == 1 ? k_edges : e - 1;
                    const int next = e == k_edges ? 1 : e + 1;
                    if (!view.is_diamond(f, prev) || !view.is_diamond(f, next))
                        fail(5, where + " (neighbouring cycle edge not a diamond)");
                }

                // Lemma 6 shapes
                const int x1 = parity == 0 ? b.a1 : b.b1;
                const int x2 = parity == 0 ? b.a2 : b.b2;
                std::set<int> partners;  // same-parity petals of the other two slots
                for (std::size_t o = 0; o < 3; ++o) {
                    if (o == k) continue;
                    auto [odd, even] = layout.occurrence_petals(b.slots[o].vertex, b.slots[o].occurrence);
                    partners.insert(parity == 0 ? odd : even);
                }
                std::vector<int> rest;
                for (int v : cluster)
                    if (v != petal) rest.push_back(v);
                bool shape_ok = view.is_diamond(f, e);
                if (!shape_ok) {
                    const bool has1 = std::count(rest.begin(), rest.end(), x1) > 0;
                    const bool has2 = std::count(rest.begin(), rest.end(), x2) > 0;
                    if (rest.size() == 1) shape_ok = has1 || has2;
                    else if (rest.size() == 2) shape_ok = has1 && has2;
                    else if (rest.size() == 3) {
                        const int other = *std::find_if(rest.begin(), rest.end(), [&](int v) { return v != x1 && v != x2; });
                        shape_ok = has1 && has2 && partners.count(other) > 0;
                    }
                }
                if (!shape_ok) fail(6, where);
            }
        }
    }

    for (const auto& f : layout.flowers()) {
        const auto parity = detail::flower_parity(view, f);
        report.parity.emplace_back(f.vertex, parity);
        if (parity == FlowerParity::none)
            fail(7, "flower " + std::to_string(f.vertex) + " has neither parity class in diamonds");
    }

    for (const auto& b : layout.bouquets()) {
        std::array<FlowerParity, 3> ps{};
        for (std::size_t k = 0; k < 3; ++k) ps[k] = detail::flower_parity(view, layout.flower(b.slots[k].vertex));
        if (ps[0] != FlowerParity::none && ps[0] == ps[1] && ps[1] == ps[2])
            fail(8, "bouquet " + std::to_string(b.edge) + " has all three flowers " + parity_name(ps[0]));
    }
    return report;
}

inline std::string to_text(const LemmaReport& r) {
    std::string out = std::string("report ") + (r.vacuous ? "vacuous" : "checked") + " linf " +
                      std::to_string(r.max_mistakes) + "\n";
    for (const auto& l : r.lemmas) {
        out += "lemma " + std::to_string(l.lemma) + " " + (r.vacuous ? "vacuous" : l.pass ? "pass" : "fail");
        if (!l.pass) out += " " + l.witness;
        out += "\n";
    }
    for (const auto& [v, p] : r.parity) out += "flower " + std::to_string(v) + " parity " + parity_name(p) + "\n";
    for (const auto& n : r.notes) out += "note " + n + "\n";
    return out;
}

}  // namespace hardgadget
