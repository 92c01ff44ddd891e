#pragma once

// Seeded instance generators. Output depends only on the arguments: the RNG is
// mt19937_64 and bounded draws use rejection sampling rather than a library distribution.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hardgadget/hc_reduction.hpp"
#include "hardgadget/instances.hpp"

namespace hardgadget {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("empty range");
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

enum class H3Mode { random, two_colorable, odd_cycle_style };

inline H3Mode parse_h3_mode(std::string_view s) {
    if (s == "random") return H3Mode::random;
    if (s == "2colorable") return H3Mode::two_colorable;
    if (s == "odd-cycle-style") return H3Mode::odd_cycle_style;
    throw std::invalid_argument("unknown mode '" + std::string(s) + "' (random, 2colorable, odd-cycle-style)");
}

inline std::string mode_name(H3Mode m) {
    switch (m) {
        case H3Mode::random: return "random";
        case H3Mode::two_colorable: return "2colorable";
        case H3Mode::odd_cycle_style: return "odd-cycle-style";
    }
    return "?";
}

namespace detail {

using Triple = std::array<int, 3>;

inline Triple sorted_triple(int a, int b, int c) {
    Triple t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

inline std::vector<Triple> all_triples(int n) {
    std::vector<Triple> out;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c) out.push_back({a, b, c});
    return out;
}

/// m distinct triples drawn uniformly from `pool`, appended to `edges` unless already present.
inline void draw_distinct(Rng& rng, std::vector<Triple> pool, std::vector<Triple>& edges, int m) {
    std::set<Triple> have(edges.begin(), edges.end());
    std::erase_if(pool, [&](const Triple& t) { return have.count(t) > 0; });
    if (static_cast<int>(edges.size() + pool.size()) < m) throw std::invalid_argument("not enough distinct triples");
    rng.shuffle(pool);
    for (std::size_t i = 0; static_cast<int>(edges.size()) < m; ++i) edges.push_back(pool[i]);
}

// Fano plane (7 triples) and the complete 3-graph on 5 vertices (10 triples): the smallest
// cores that admit no proper 2-coloring.
inline std::vector<Triple> fano_core() {
    return {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}};
}

inline std::vector<Triple> k5_core() { return all_triples(5); }

}  // namespace detail

/// random: m distinct triples uniformly.
/// 2colorable: plants a coloring with both colors and draws only bichromatic triples.
/// odd-cycle-style: plants a non-2-colorable core when m allows (Fano plane if n >= 7 and
/// m >= 7, else K5 if n >= 5 and m >= 10); otherwise m consecutive windows of a tight cycle
/// through an odd number of vertices. Remaining triples are random. Vertex labels are permuted.
inline Hypergraph3 gen_h3(int n, int m, std::uint64_t seed, H3Mode mode) {
    if (n < 0 || m < 0) throw std::invalid_argument("n and m must be non-negative");
    if (m > 0 && n < 3) throw std::invalid_argument("triples need at least 3 vertices");
    const long long available = static_cast<long long>(n) * (n - 1) * (n - 2) / 6;
    if (m > available) throw std::invalid_argument("more triples requested than exist on n vertices");
    Rng rng(seed);
    std::vector<detail::Triple> edges;

    switch (mode) {
        case H3Mode::random:
            detail::draw_distinct(rng, detail::all_triples(n), edges, m);
            break;
        case H3Mode::two_colorable: {
            if (m == 0) break;
            // most bichromatic triples when the classes are balanced; try random splits first
            std::vector<int> colour(static_cast<std::size_t>(n) + 1, 0);
            std::vector<detail::Triple> pool;
            for (int attempt = 0; attempt < 64; ++attempt) {
                for (int v = 1; v <= n; ++v) colour[static_cast<std::size_t>(v)] = static_cast<int>(rng.below(2));
                if (attempt == 63) {
                    std::vector<int> perm(static_cast<std::size_t>(n));
                    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
                    rng.shuffle(perm);
                    for (int i = 0; i < n; ++i) colour[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i < n / 2 ? 1 : 0;
                }
                pool.clear();
                for (const auto& t : detail::all_triples(n)) {
                    const int s = colour[static_cast<std::size_t>(t[0])] + colour[static_cast<std::size_t>(t[1])] +
                                  colour[static_cast<std::size_t>(t[2])];
                    if (s == 1 || s == 2) pool.push_back(t);
                }
                if (static_cast<int>(pool.size()) >= m) break;
            }
            if (static_cast<int>(pool.size()) < m) throw std::invalid_argument("too many triples for a 2-colorable instance");
            detail::draw_distinct(rng, pool, edges, m);
            break;
        }
        case H3Mode::odd_cycle_style: {
            if (m == 0) break;
            std::vector<int> perm(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
            rng.shuffle(perm);
            auto label = [&](int v) { return perm[static_cast<std::size_t>(v - 1)]; };
            std::vector<detail::Triple> core;
            if (n >= 7 && m >= 7) {
                core = detail::fano_core();
            } else if (n >= 5 && m >= 10) {
                core = detail::k5_core();
            } else {
                const int k = n % 2 == 1 ? n : n - 1;  // odd cycle length
                if (k < 3 || m > k) throw std::invalid_argument("odd-cycle-style needs m <= largest odd k <= n, or a core");
                const int start = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
                for (int i = 0; i < m; ++i) {
                    const int a = (start + i) % k + 1, b = (start + i + 1) % k + 1, c = (start + i + 2) % k + 1;
                    core.push_back({a, b, c});
                }
            }
            for (const auto& t : core) {
                const auto s = detail::sorted_triple(label(t[0]), label(t[1]), label(t[2]));
                if (std::find(edges.begin(), edges.end(), s) == edges.end()) edges.push_back(s);
            }
            detail::draw_distinct(rng, detail::all_triples(n), edges, m);
            break;
        }
    }
    Hypergraph3 h{n, {}};
    for (const auto& t : edges) h.edges.push_back(t);
    h.validate();
    return h;
}

enum class Lin2Mode { satisfiable, random };

inline Lin2Mode parse_lin2_mode(std::string_view s) {
    if (s == "satisfiable") return Lin2Mode::satisfiable;
    if (s == "random") return Lin2Mode::random;
    throw std::invalid_argument("unknown mode '" + std::string(s) + "' (satisfiable, random)");
}

struct GeneratedLin2 {
    Lin2Instance instance;
    Assignment planted;  // satisfies every equation in satisfiable mode
};

/// Regular instance of degree d (even): for each shift s = 1..d/2, equations between
/// variables p(i) and p(i+s mod n0) under a seeded permutation p.
inline GeneratedLin2 gen_lin2(int q, int n0, int d, std::uint64_t seed, Lin2Mode mode) {
    if (q < 1) throw std::invalid_argument("modulus must be at least 1");
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("degree must be even and at least 2");
    if (n0 < 3 || d / 2 > (n0 - 1) / 2) throw std::invalid_argument("degree too large for the variable count");
    Rng rng(seed);
    std::vector<int> perm(static_cast<std::size_t>(n0));
    for (int i = 0; i < n0; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    rng.shuffle(perm);
    GeneratedLin2 out;
    out.planted.q = q;
    out.planted.values.resize(static_cast<std::size_t>(n0));
    for (auto& x : out.planted.values) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
    out.instance.q = q;
    out.instance.n0 = n0;
    for (int s = 1; s <= d / 2; ++s) {
        for (int i = 0; i < n0; ++i) {
            const int j = perm[static_cast<std::size_t>(i)], k = perm[static_cast<std::size_t>((i + s) % n0)];
            const int a = mode == Lin2Mode::satisfiable ? ((out.planted(j) - out.planted(k)) % q + q) % q
                                                        : static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
            out.instance.equations.push_back({j, k, a});
        }
    }
    out.instance.validate();
    return out;
}

}  // namespace hardgadget
