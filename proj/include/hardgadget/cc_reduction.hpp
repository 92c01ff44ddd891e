#pragma once

// Flower/bouquet reduction from a 3-uniform hypergraph to a complete signed graph.
//
// Every hypergraph vertex i with s_i >= 1 gets a flower of padded size t_i = max(s_i, 2):
// a cycle Q_1..Q_{2t}, and for every cycle edge e = (Q_e, Q_{e+1}) an outer petal P_e and
// an inner petal R_e joined to both endpoints. Occurrence o of vertex i uses the petal
// pair (2o-1, 2o); petals past 2*s_i stay inside the flower. Every hyperedge j gets a
// bouquet: an edge A1-A2 joined to the odd outer petal of its three occurrences and an
// edge B1-B2 joined to the even ones.
//
// Ids are assigned flower by flower (cycle, then outer, then inner petals), then bouquet
// by bouquet (A1, A2, B1, B2).

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hardgadget/instances.hpp"

namespace hardgadget {

enum class GadgetRole { cycle, outer, inner, a1, a2, b1, b2 };

inline const char* role_name(GadgetRole r) {
    switch (r) {
        case GadgetRole::cycle: return "cycle";
        case GadgetRole::outer: return "outer";
        case GadgetRole::inner: return "inner";
        case GadgetRole::a1: return "A1";
        case GadgetRole::a2: return "A2";
        case GadgetRole::b1: return "B1";
        case GadgetRole::b2: return "B2";
    }
    return "?";
}

struct RoleRecord {
    bool in_flower = true;
    int owner = 0;  // hypergraph vertex (flower) or hyperedge index (bouquet), 1-based
    GadgetRole role = GadgetRole::cycle;
    int index = 0;  // 1-based position for cycle/outer/inner, 0 for bouquet roles

    friend bool operator==(const RoleRecord&, const RoleRecord&) = default;
};

struct FlowerLayout {
    int vertex = 0;       // hypergraph vertex
    int occurrences = 0;  // s_i
    std::vector<int> cycle;  // 2t ids in cyclic order; cycle edge e joins cycle[e-1], cycle[e % 2t]
    std::vector<int> outer;  // outer petal of cycle edge e at [e-1]
    std::vector<int> inner;

    int padded_size() const { return static_cast<int>(cycle.size()) / 2; }
    int edge_count() const { return static_cast<int>(cycle.size()); }

    /// Cycle endpoints of cycle edge e (1-based).
    std::pair<int, int> endpoints(int e) const {
        const int k = edge_count();
        return {cycle[static_cast<std::size_t>(e - 1)], cycle[static_cast<std::size_t>(e % k)]};
    }

    int outer_petal(int e) const { return outer.at(static_cast<std::size_t>(e - 1)); }
    int inner_petal(int e) const { return inner.at(static_cast<std::size_t>(e - 1)); }

    /// Outer petals at indices <= 2 * s_i are wired to a bouquet.
    bool attached(int e) const { return e <= 2 * occurrences; }

    friend bool operator==(const FlowerLayout&, const FlowerLayout&) = default;
};

struct BouquetSlot {
    int vertex = 0;
    int occurrence = 0;

    friend bool operator==(const BouquetSlot&, const BouquetSlot&) = default;
};

struct BouquetLayout {
    int edge = 0;  // hyperedge index, 1-based
    int a1 = 0, a2 = 0, b1 = 0, b2 = 0;
    std::array<BouquetSlot, 3> slots{};

    friend bool operator==(const BouquetLayout&, const BouquetLayout&) = default;
};

class GadgetLayout {
public:
    GadgetLayout() = default;

    GadgetLayout(int hypergraph_vertices, std::vector<FlowerLayout> flowers, std::vector<BouquetLayout> bouquets)
        : flowers_(std::move(flowers)), bouquets_(std::move(bouquets)),
          flower_of_vertex_(static_cast<std::size_t>(hypergraph_vertices), -1) {
        for (std::size_t f = 0; f < flowers_.size(); ++f) {
            const auto& fl = flowers_[f];
            if (fl.vertex < 1 || fl.vertex > hypergraph_vertices) throw invalid_instance("flower vertex out of range");
            if (fl.cycle.size() < 4 || fl.cycle.size() % 2 || fl.outer.size() != fl.cycle.size() ||
                fl.inner.size() != fl.cycle.size())
                throw invalid_instance("malformed flower " + std::to_string(fl.vertex));
            if (flower_of_vertex_[static_cast<std::size_t>(fl.vertex - 1)] != -1)
                throw invalid_instance("duplicate flower " + std::to_string(fl.vertex));
            flower_of_vertex_[static_cast<std::size_t>(fl.vertex - 1)] = static_cast<int>(f);
            for (int e = 1; e <= fl.edge_count(); ++e) {
                assign(fl.cycle[static_cast<std::size_t>(e - 1)], {true, fl.vertex, GadgetRole::cycle, e});
                assign(fl.outer[static_cast<std::size_t>(e - 1)], {true, fl.vertex, GadgetRole::outer, e});
                assign(fl.inner[static_cast<std::size_t>(e - 1)], {true, fl.vertex, GadgetRole::inner, e});
            }
        }
        for (const auto& b : bouquets_) {
            assign(b.a1, {false, b.edge, GadgetRole::a1, 0});
            assign(b.a2, {false, b.edge, GadgetRole::a2, 0});
            assign(b.b1, {false, b.edge, GadgetRole::b1, 0});
            assign(b.b2, {false, b.edge, GadgetRole::b2, 0});
            for (const auto& slot : b.slots) {
                int f = flower_index(slot.vertex);
                if (f < 0 || slot.occurrence < 1 || slot.occurrence > flowers_[static_cast<std::size_t>(f)].occurrences)
                    throw invalid_instance("bouquet " + std::to_string(b.edge) + " references a missing petal slot");
            }
        }
        for (std::size_t i = 0; i < roles_.size(); ++i)
            if (!roles_[i]) throw invalid_instance("gadget id " + std::to_string(i + 1) + " has no role");
    }

    int vertex_count() const { return static_cast<int>(roles_.size()); }
    int hypergraph_vertices() const { return static_cast<int>(flower_of_vertex_.size()); }
    const std::vector<FlowerLayout>& flowers() const { return flowers_; }
    const std::vector<BouquetLayout>& bouquets() const { return bouquets_; }

    /// Index into flowers() for hypergraph vertex v, or -1 when v occurs in no triple.
    int flower_index(int v) const {
        if (v < 1 || v > hypergraph_vertices()) return -1;
        return flower_of_vertex_[static_cast<std::size_t>(v - 1)];
    }

    const FlowerLayout& flower(int v) const {
        int f = flower_index(v);
        if (f < 0) throw std::out_of_range("no flower for vertex " + std::to_string(v));
        return flowers_[static_cast<std::size_t>(f)];
    }

    /// Odd (2o-1) and even (2o) outer petal ids used by occurrence o of vertex v.
    std::pair<int, int> occurrence_petals(int v, int o) const {
        const auto& f = flower(v);
        return {f.outer_petal(2 * o - 1), f.outer_petal(2 * o)};
    }

    /// Role of gadget vertex id; throws std::out_of_range for unknown ids.
    RoleRecord role(int id) const {
        if (id < 1 || id > vertex_count()) throw std::out_of_range("gadget id " + std::to_string(id) + " out of range");
        return *roles_[static_cast<std::size_t>(id - 1)];
    }

    friend bool operator==(const GadgetLayout& a, const GadgetLayout& b) {
        return a.flowers_ == b.flowers_ && a.bouquets_ == b.bouquets_ && a.flower_of_vertex_ == b.flower_of_vertex_;
    }

private:
    void assign(int id, RoleRecord r) {
        if (id < 1) throw invalid_instance("gadget id must be positive");
        if (static_cast<std::size_t>(id) > roles_.size()) roles_.resize(static_cast<std::size_t>(id));
        auto& slot = roles_[static_cast<std::size_t>(id - 1)];
        if (slot) throw invalid_instance("gadget id " + std::to_string(id) + " used twice");
        slot = r;
    }

    std::vector<FlowerLayout> flowers_;
    std::vector<BouquetLayout> bouquets_;
    std::vector<int> flower_of_vertex_;
    std::vector<std::optional<RoleRecord>> roles_;
};

inline RoleRecord layout_role(const GadgetLayout& layout, int id) { return layout.role(id); }

struct CcReduction {
    SignedGraph graph;
    GadgetLayout layout;
};

inline CcReduction reduce_cc(const Hypergraph3& h) {
    h.validate();
    const auto s = h.occurrences();
    int next_id = 1;

    std::vector<FlowerLayout> flowers;
    std::vector<std::pair<int, int>> positive;
    for (int v = 1; v <= h.n; ++v) {
        const int occ = s[static_cast<std::size_t>(v - 1)];
        if (occ == 0) continue;
        const int k = 2 * std::max(occ, 2);
        FlowerLayout f;
        f.vertex = v;
        f.occurrences = occ;
        for (auto* ids : {&f.cycle, &f.outer, &f.inner})
            for (int e = 0; e < k; ++e) ids->push_back(next_id++);
        for (int e = 1; e <= k; ++e) {
            auto [q1, q2] = f.endpoints(e);
            positive.emplace_back(q1, q2);
            for (int petal : {f.outer_petal(e), f.inner_petal(e)}) {
                positive.emplace_back(q1, petal);
                positive.emplace_back(q2, petal);
            }
        }
        flowers.push_back(std::move(f));
    }

    std::vector<int> flower_of(static_cast<std::size_t>(h.n), -1);
    for (std::size_t i = 0; i < flowers.size(); ++i) flower_of[static_cast<std::size_t>(flowers[i].vertex - 1)] = static_cast<int>(i);

    std::vector<int> used(static_cast<std::size_t>(h.n), 0);
    std::vector<BouquetLayout> bouquets;
    for (std::size_t j = 0; j < h.edges.size(); ++j) {
        BouquetLayout b;
        b.edge = static_cast<int>(j) + 1;
        b.a1 = next_id++;
        b.a2 = next_id++;
        b.b1 = next_id++;
        b.b2 = next_id++;
        positive.emplace_back(b.a1, b.a2);
        positive.emplace_back(b.b1, b.b2);
        for (std::size_t k = 0; k < 3; ++k) {
            const int v = h.edges[j][k];
            const int o = ++used[static_cast<std::size_t>(v - 1)];
            b.slots[k] = {v, o};
            const auto& f = flowers[static_cast<std::size_t>(flower_of[static_cast<std::size_t>(v - 1)])];
            const int odd = f.outer_petal(2 * o - 1);
            const int even = f.outer_petal(2 * o);
            for (int a : {b.a1, b.a2}) positive.emplace_back(a, odd);
            for (int bb : {b.b1, b.b2}) positive.emplace_back(bb, even);
        }
        bouquets.push_back(b);
    }

    CcReduction out;
    out.graph = SignedGraph(next_id - 1, std::move(positive));
    out.layout = GadgetLayout(h.n, std::move(flowers), std::move(bouquets));
    return out;
}

// Sidecar layout format:
//   layout <n_hypergraph> <n_gadget>
//   flower <i> occurrences <s_i>
//   flower <i> cycle <ids...>
//   flower <i> outer <ids...>
//   flower <i> inner <ids...>
//   bouquet <j> <A1> <A2> <B1> <B2> <v1> <o1> <v2> <o2> <v3> <o3>

inline std::string to_text(const GadgetLayout& layout) {
    std::string out = "layout " + std::to_string(layout.hypergraph_vertices()) + " " +
                      std::to_string(layout.vertex_count()) + "\n";
    auto ids = [](const std::vector<int>& v) {
        std::string s;
        for (int x : v) s += " " + std::to_string(x);
        return s;
    };
    for (const auto& f : layout.flowers()) {
        const auto i = std::to_string(f.vertex);
        out += "flower " + i + " occurrences " + std::to_string(f.occurrences) + "\n";
        out += "flower " + i + " cycle" + ids(f.cycle) + "\n";
        out += "flower " + i + " outer" + ids(f.outer) + "\n";
        out += "flower " + i + " inner" + ids(f.inner) + "\n";
    }
    for (const auto& b : layout.bouquets()) {
        out += "bouquet " + std::to_string(b.edge) + " " + std::to_string(b.a1) + " " + std::to_string(b.a2) + " " +
               std::to_string(b.b1) + " " + std::to_string(b.b2);
        for (const auto& s : b.slots) out += " " + std::to_string(s.vertex) + " " + std::to_string(s.occurrence);
        out += "\n";
    }
    return out;
}

inline GadgetLayout parse_layout(std::string_view text) {
    auto lines = detail::content_lines(text);
    if (lines.empty() || lines[0].tokens[0] != "layout") throw parse_error(lines.empty() ? 0 : lines[0].number, "expected 'layout' header");
    detail::expect_tokens(lines[0], 3, "layout header");
    const int hn = detail::parse_int(lines[0].tokens[1], lines[0].number);
    const int gn = detail::parse_int(lines[0].tokens[2], lines[0].number);
    std::vector<FlowerLayout> flowers;
    std::vector<BouquetLayout> bouquets;
    auto find_flower = [&](int v) -> FlowerLayout& {
        for (auto& f : flowers)
            if (f.vertex == v) return f;
        flowers.push_back({});
        flowers.back().vertex = v;
        return flowers.back();
    };
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        const auto& t = l.tokens;
        if (t[0] == "flower") {
            if (t.size() < 4) throw parse_error(l.number, "malformed flower record");
            auto& f = find_flower(detail::parse_int(t[1], l.number));
            std::vector<int> ids;
            for (std::size_t k = 3; k < t.size(); ++k) ids.push_back(detail::parse_int(t[k], l.number));
            if (t[2] == "occurrences" && ids.size() == 1) f.occurrences = ids[0];
            else if (t[2] == "cycle") f.cycle = std::move(ids);
            else if (t[2] == "outer") f.outer = std::move(ids);
            else if (t[2] == "inner") f.inner = std::move(ids);
            else throw parse_error(l.number, "unknown flower field '" + t[2] + "'");
        } else if (t[0] == "bouquet") {
            detail::expect_tokens(l, 12, "bouquet");
            BouquetLayout b;
            b.edge = detail::parse_int(t[1], l.number);
            b.a1 = detail::parse_int(t[2], l.number);
            b.a2 = detail::parse_int(t[3], l.number);
            b.b1 = detail::parse_int(t[4], l.number);
            b.b2 = detail::parse_int(t[5], l.number);
            for (std::size_t k = 0; k < 3; ++k)
                b.slots[k] = {detail::parse_int(t[6 + 2 * k], l.number), detail::parse_int(t[7 + 2 * k], l.number)};
            bouquets.push_back(b);
        } else {
            throw parse_error(l.number, "unknown layout record '" + t[0] + "'");
        }
    }
    try {
        GadgetLayout layout(hn, std::move(flowers), std::move(bouquets));
        if (layout.vertex_count() != gn) throw invalid_instance("layout covers " + std::to_string(layout.vertex_count()) + " ids, header says " + std::to_string(gn));
        return layout;
    } catch (const invalid_instance& e) {
        throw parse_error(0, e.what());
    }
}

}  // namespace hardgadget
