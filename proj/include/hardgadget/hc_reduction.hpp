#pragma once

// Max-2Lin(q) instances and their reduction to a dissimilarity hierarchical-clustering
// instance over X x {+-1}^q, plus the balanced tree built from a good assignment.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hardgadget/instances.hpp"
#include "hardgadget/text.hpp"

namespace hardgadget {

/// x_j - x_k = a over Z_q.
struct Equation {
    int j = 0;
    int k = 0;
    int a = 0;

    friend bool operator==(const Equation&, const Equation&) = default;
};

struct Lin2Instance {
    int q = 2;
    int n0 = 0;
    std::vector<Equation> equations;

    void validate() const {
        if (q < 1) throw invalid_instance("modulus must be at least 1");
        if (n0 < 0) throw invalid_instance("negative variable count");
        for (const auto& e : equations) {
            if (e.j < 1 || e.j > n0 || e.k < 1 || e.k > n0) throw invalid_instance("variable out of range");
            if (e.j == e.k) throw invalid_instance("equation relates a variable to itself");
            if (e.a < 0 || e.a >= q) throw invalid_instance("right-hand side outside [0, q-1]");
        }
    }

    /// Number of equations mentioning each variable (index v-1).
    std::vector<int> degrees() const {
        std::vector<int> d(static_cast<std::size_t>(n0), 0);
        for (const auto& e : equations) {
            ++d[static_cast<std::size_t>(e.j - 1)];
            ++d[static_cast<std::size_t>(e.k - 1)];
        }
        return d;
    }

    int degree(int v) const { return degrees().at(static_cast<std::size_t>(v - 1)); }

    bool is_regular() const {
        const auto d = degrees();
        return std::all_of(d.begin(), d.end(), [&](int x) { return x == d.front(); });
    }

    friend bool operator==(const Lin2Instance&, const Lin2Instance&) = default;
};

/// sigma(v) stored at index v-1.
struct Assignment {
    int q = 2;
    std::vector<int> values;

    int operator()(int v) const { return values.at(static_cast<std::size_t>(v - 1)); }

    /// sigma + c (mod q).
    Assignment shift(int c) const {
        Assignment s = *this;
        for (auto& x : s.values) x = ((x + c) % q + q) % q;
        return s;
    }

    void validate_for(const Lin2Instance& inst) const {
        if (q != inst.q) throw invalid_instance("assignment modulus differs from the instance");
        if (static_cast<int>(values.size()) != inst.n0) throw invalid_instance("assignment does not cover every variable");
        for (int x : values)
            if (x < 0 || x >= q) throw invalid_instance("assignment value outside [0, q-1]");
    }

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

inline bool satisfies(const Assignment& s, const Equation& e, int q) {
    return (((s(e.j) - s(e.k) - e.a) % q) + q) % q == 0;
}

/// Fraction of equations satisfied; 1 for an instance without equations.
inline double sat_fraction(const Lin2Instance& inst, const Assignment& s) {
    s.validate_for(inst);
    if (inst.equations.empty()) return 1.0;
    std::size_t hit = 0;
    for (const auto& e : inst.equations) hit += satisfies(s, e, inst.q) ? 1 : 0;
    return static_cast<double>(hit) / static_cast<double>(inst.equations.size());
}

// ---------------------------------------------------------------------------
// product vertices

/// (variable, f) with bit r of `mask` set iff f_r = -1.
struct ProductVertex {
    int variable = 1;
    std::uint32_t mask = 0;

    int sign(int r) const { return (mask >> r) & 1U ? -1 : 1; }
    friend bool operator==(const ProductVertex&, const ProductVertex&) = default;
};

inline int product_vertex_count(int n0, int q) { return n0 << q; }

inline int encode(const ProductVertex& v, int q) {
    return ((v.variable - 1) << q) + static_cast<int>(v.mask) + 1;
}

inline ProductVertex decode(int id, int q) {
    if (id < 1) throw std::out_of_range("product vertex id must be positive");
    return {((id - 1) >> q) + 1, static_cast<std::uint32_t>((id - 1) & ((1 << q) - 1))};
}

// ---------------------------------------------------------------------------
// exact reduction

inline constexpr double default_rho = -0.7;
inline constexpr int max_exact_q = 6;
inline constexpr int max_exact_vertices = 4096;

namespace detail {

/// An equation seen from one of its variables: x_partner - x_self = offset.
struct Incidence {
    int partner = 0;
    int offset = 0;
};

inline std::vector<std::vector<Incidence>> incidences(const Lin2Instance& inst) {
    std::vector<std::vector<Incidence>> inc(static_cast<std::size_t>(inst.n0));
    for (const auto& e : inst.equations) {
        inc[static_cast<std::size_t>(e.k - 1)].push_back({e.j, e.a});
        inc[static_cast<std::size_t>(e.j - 1)].push_back({e.k, (inst.q - e.a) % inst.q});
    }
    return inc;
}

/// Joint law of (f, g) given offsets a, b: for every r, (f_{r+a}, g_{r+b}) is a
/// rho-correlated pair. Entry [f][g] is a probability.
inline std::vector<double> sign_pair_law(int q, int a, int b, double rho) {
    const std::size_t size = std::size_t{1} << q;
    const double same = (1.0 + rho) / 4.0, differ = (1.0 - rho) / 4.0;
    std::vector<double> law(size * size);
    for (std::uint32_t f = 0; f < size; ++f) {
        for (std::uint32_t g = 0; g < size; ++g) {
            double p = 1.0;
            for (int r = 0; r < q; ++r) {
                const auto fr = (f >> ((r + a) % q)) & 1U;
                const auto gr = (g >> ((r + b) % q)) & 1U;
                p *= fr == gr ? same : differ;
            }
            law[f * size + g] = p;
        }
    }
    return law;
}

}  // namespace detail

/// Exact weight of every pair under the sampling procedure: pick a variable uniformly, two
/// incident equations independently (with replacement), then rho-correlated sign vectors.
/// Self-pairs are dropped and the rest renormalized; the dropped mass is kept in the result.
inline WeightedGraph reduce_hc_exact(const Lin2Instance& inst, double rho = default_rho) {
    inst.validate();
    if (!(rho >= -1.0 && rho <= 1.0)) throw std::domain_error("rho must lie in [-1, 1]");
    if (inst.q > max_exact_q) throw invalid_instance("modulus too large for exact enumeration");
    if (inst.n0 < 1 || inst.equations.empty()) throw invalid_instance("instance has no equations");
    if (product_vertex_count(inst.n0, inst.q) > max_exact_vertices)
        throw invalid_instance("product graph too large for exact enumeration");
    if (!inst.is_regular()) throw invalid_instance("instance is not regular");

    const int q = inst.q;
    const std::uint32_t size = 1U << q;
    const auto inc = detail::incidences(inst);

    // keyed by (u, v) with u < v; std::map keeps accumulation order fixed
    std::map<std::pair<int, int>, double> weight;
    double dropped = 0.0;
    for (int i = 1; i <= inst.n0; ++i) {
        const auto& mine = inc[static_cast<std::size_t>(i - 1)];
        const double pick = 1.0 / (inst.n0 * static_cast<double>(mine.size()) * static_cast<double>(mine.size()));
        for (const auto& c1 : mine) {
            for (const auto& c2 : mine) {
                const auto law = detail::sign_pair_law(q, c1.offset, c2.offset, rho);
                for (std::uint32_t f = 0; f < size; ++f) {
                    for (std::uint32_t g = 0; g < size; ++g) {
                        const double p = pick * law[f * size + g];
                        if (p == 0.0) continue;
                        const int u = encode({c1.partner, f}, q), v = encode({c2.partner, g}, q);
                        if (u == v) {
                            dropped += p;
                            continue;
                        }
                        weight[{std::min(u, v), std::max(u, v)}] += p;
                    }
                }
            }
        }
    }
    if (!(dropped < 1.0)) throw invalid_instance("every sampled pair is a self-pair");

    WeightedGraph g;
    g.n = product_vertex_count(inst.n0, q);
    g.normalized = true;
    g.dropped_selfpair_mass = dropped;
    g.edges.reserve(weight.size());
    for (const auto& [uv, w] : weight) g.edges.push_back({uv.first, uv.second, w / (1.0 - dropped)});
    return g;
}

/// Probability that both sampled equations are satisfied by s, before self-pairs are dropped.
inline double both_satisfied_probability(const Lin2Instance& inst, const Assignment& s) {
    s.validate_for(inst);
    std::vector<int> sat(static_cast<std::size_t>(inst.n0), 0);
    const auto deg = inst.degrees();
    for (const auto& e : inst.equations) {
        if (!satisfies(s, e, inst.q)) continue;
        ++sat[static_cast<std::size_t>(e.j - 1)];
        ++sat[static_cast<std::size_t>(e.k - 1)];
    }
    double total = 0.0;
    for (std::size_t i = 0; i < sat.size(); ++i) {
        if (deg[i] == 0) continue;
        const double frac = static_cast<double>(sat[i]) / deg[i];
        total += frac * frac;
    }
    return inst.n0 > 0 ? total / inst.n0 : 0.0;
}

// ---------------------------------------------------------------------------
// YES-case tree

/// Coordinate that level r (1-based) splits on for variable v: sigma_c(v) with c = r mod q.
inline int split_coordinate(const Assignment& s, int v, int r) { return (s(v) + r % s.q) % s.q; }

/// Levels 1..q split every group by the sign of f at split_coordinate (the +1 side first);
/// below level q groups are bisected in id order.
inline BinaryTree yes_tree(const Lin2Instance& inst, const Assignment& s) {
    inst.validate();
    s.validate_for(inst);
    const int q = inst.q;
    const int n = product_vertex_count(inst.n0, q);
    if (n < 1) throw invalid_instance("instance has no variables");

    BinaryTree::Builder b;
    // explicit stack of (ids, level, output slot); children are joined once both are built
    struct Frame {
        std::vector<int> ids;
        int level;
        int parent_frame;
        int node = -1;
        int left = -1, right = -1;
        bool expanded = false;
    };
    std::vector<Frame> frames;
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
    frames.push_back({std::move(all), 0, -1});
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int fi = stack.back();
        auto& fr = frames[static_cast<std::size_t>(fi)];
        if (fr.ids.size() == 1) {
            fr.node = b.leaf(fr.ids.front());
            stack.pop_back();
        } else if (!fr.expanded) {
            fr.expanded = true;
            std::vector<int> lo, hi;
            const int r = fr.level + 1;
            if (r <= q) {
                for (int id : fr.ids) {
                    const auto pv = decode(id, q);
                    (pv.sign(split_coordinate(s, pv.variable, r)) > 0 ? lo : hi).push_back(id);
                }
            } else {
                const auto half = static_cast<std::ptrdiff_t>(fr.ids.size() / 2);
                lo.assign(fr.ids.begin(), fr.ids.begin() + half);
                hi.assign(fr.ids.begin() + half, fr.ids.end());
            }
            const int level = fr.level + 1;
            frames.push_back({std::move(lo), level, fi});
            frames.push_back({std::move(hi), level, fi});
            const int right = static_cast<int>(frames.size()) - 1;
            frames[static_cast<std::size_t>(fi)].left = right - 1;
            frames[static_cast<std::size_t>(fi)].right = right;
            stack.push_back(right);
            stack.push_back(right - 1);
        } else {
            fr.node = b.join(frames[static_cast<std::size_t>(fr.left)].node, frames[static_cast<std::size_t>(fr.right)].node);
            stack.pop_back();
        }
    }
    return std::move(b).build(frames.front().node);
}

// ---------------------------------------------------------------------------
// text formats

inline std::string to_text(const Lin2Instance& inst) {
    std::string out = "lin2 " + std::to_string(inst.q) + " " + std::to_string(inst.n0) + " " +
                      std::to_string(inst.equations.size()) + "\n";
    for (const auto& e : inst.equations)
        out += std::to_string(e.j) + " " + std::to_string(e.k) + " " + std::to_string(e.a) + "\n";
    return out;
}

inline Lin2Instance parse_lin2(std::string_view text) {
    const auto lines = detail::content_lines(text);
    if (lines.empty()) throw parse_error(1, "empty input");
    const auto& hdr = lines.front();
    if (hdr.tokens.empty() || hdr.tokens[0] != "lin2") throw parse_error(hdr.number, "expected header 'lin2 <q> <n0> <m>'");
    detail::expect_tokens(hdr, 4, "lin2 header");
    Lin2Instance inst;
    inst.q = detail::parse_int(hdr.tokens[1], hdr.number);
    inst.n0 = detail::parse_int(hdr.tokens[2], hdr.number);
    const int m = detail::parse_int(hdr.tokens[3], hdr.number);
    if (m < 0) throw parse_error(hdr.number, "negative equation count");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        detail::expect_tokens(l, 3, "equation");
        inst.equations.push_back({detail::parse_int(l.tokens[0], l.number), detail::parse_int(l.tokens[1], l.number),
                                  detail::parse_int(l.tokens[2], l.number)});
        try {
            Lin2Instance partial{inst.q, inst.n0, {inst.equations.back()}};
            partial.validate();
        } catch (const invalid_instance& e) {
            throw parse_error(l.number, e.what());
        }
    }
    if (static_cast<int>(inst.equations.size()) != m)
        throw parse_error(hdr.number, "header announces " + std::to_string(m) + " equations, found " +
                                          std::to_string(inst.equations.size()));
    inst.validate();
    return inst;
}

inline std::string to_text(const Assignment& s) {
    std::string out = "sigma " + std::to_string(s.q) + " " + std::to_string(s.values.size()) + "\n";
    for (std::size_t i = 0; i < s.values.size(); ++i) out += (i ? " " : "") + std::to_string(s.values[i]);
    return out + "\n";
}

inline Assignment parse_assignment(std::string_view text) {
    const auto lines = detail::content_lines(text);
    if (lines.empty()) throw parse_error(1, "empty input");
    const auto& hdr = lines.front();
    if (hdr.tokens.empty() || hdr.tokens[0] != "sigma") throw parse_error(hdr.number, "expected header 'sigma <q> <n0>'");
    detail::expect_tokens(hdr, 3, "sigma header");
    Assignment s;
    s.q = detail::parse_int(hdr.tokens[1], hdr.number);
    const int n0 = detail::parse_int(hdr.tokens[2], hdr.number);
    for (std::size_t i = 1; i < lines.size(); ++i)
        for (const auto& tok : lines[i].tokens) s.values.push_back(detail::parse_int(tok, lines[i].number));
    if (static_cast<int>(s.values.size()) != n0) throw parse_error(hdr.number, "assignment length differs from header");
    for (int x : s.values)
        if (x < 0 || x >= s.q) throw invalid_instance("assignment value outside [0, q-1]");
    return s;
}

}  // namespace hardgadget
