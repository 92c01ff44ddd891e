#pragma once

// Independent reference computations used only by the tests. None of these call the code
// they check.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "hardgadget/cc_engine.hpp"
#include "hardgadget/hc_reduction.hpp"
#include "hardgadget/instances.hpp"

namespace oracle {

using namespace hardgadget;

/// Standard normal CDF from the Maclaurin series of erf; accurate to ~1e-15 for |x| <= 3.
inline double phi_series(double x) {
    const double z = x / std::sqrt(2.0);
    double term = z, sum = z;
    for (int k = 1; k < 200; ++k) {
        term *= -z * z / k;
        const double add = term / (2 * k + 1);
        sum += add;
        if (std::abs(add) < 1e-18) break;
    }
    return 0.5 + sum / std::sqrt(std::acos(-1.0));
}

/// Phi^-1 by bisection on the series CDF (erfc beyond |x| > 3, where the series degrades).
inline double quantile_bisect(double p) {
    double lo = -9.0, hi = 9.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double c = std::abs(mid) <= 3.0 ? phi_series(mid) : 0.5 * std::erfc(-mid / std::sqrt(2.0));
        (c < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Gamma_rho(a, b) = ab + integral from 0 to rho of the bivariate normal density at the
/// thresholds (the derivative in the correlation), by composite Simpson; needs rho > -1.
inline double gamma_along_rho(double rho, double a, double b, int panels = 4000) {
    const double h = quantile_bisect(a), k = quantile_bisect(b);
    const double pi = std::acos(-1.0);
    auto density = [&](double r) {
        const double s = 1.0 - r * r;
        return std::exp(-(h * h - 2.0 * r * h * k + k * k) / (2.0 * s)) / (2.0 * pi * std::sqrt(s));
    };
    const double step = rho / panels;
    double sum = density(0.0) + density(rho);
    for (int i = 1; i < panels; ++i) sum += density(i * step) * (i % 2 ? 4.0 : 2.0);
    return a * b + sum * step / 3.0;
}

struct Estimate {
    double mean = 0.0;
    double se = 0.0;
};

/// Pr[x <= Phi^-1(a), y <= Phi^-1(b)] by sampling correlated normal pairs.
inline Estimate gamma_monte_carlo(double rho, double a, double b, std::size_t samples, std::uint64_t seed) {
    const double ha = quantile_bisect(a), hb = quantile_bisect(b);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const double s = std::sqrt(1.0 - rho * rho);
    std::size_t hit = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = normal(rng);
        const double y = rho * x + s * normal(rng);
        hit += (x <= ha && y <= hb) ? 1 : 0;
    }
    const double p = static_cast<double>(hit) / static_cast<double>(samples);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

/// Per-vertex mistakes by scanning every pair.
inline std::vector<int> naive_disagreements(const SignedGraph& g, const Partition& p) {
    const int n = g.size();
    std::vector<int> d(static_cast<std::size_t>(n), 0);
    for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v) {
            if (u == v) continue;
            const bool together = p.cluster_of(u) == p.cluster_of(v);
            if (together != g.is_positive(u, v)) ++d[static_cast<std::size_t>(u - 1)];
        }
    return d;
}

/// 2-colorability by trying every colouring and every triple.
inline bool naive_two_colorable(const Hypergraph3& h) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << h.n); ++mask) {
        bool ok = true;
        for (const auto& e : h.edges) {
            const auto c0 = (mask >> (e[0] - 1)) & 1U, c1 = (mask >> (e[1] - 1)) & 1U, c2 = (mask >> (e[2] - 1)) & 1U;
            if (c0 == c1 && c1 == c2) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

/// Every positive pair independently with probability p.
inline SignedGraph random_signed_graph(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<int, int>> pos;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (coin(rng)) pos.emplace_back(u, v);
    return SignedGraph(n, pos);
}

/// |T_ij| as the smallest subtree leaf set containing both labels.
inline int lca_size_by_leaf_sets(const BinaryTree& t, int i, int j) {
    std::vector<std::set<int>> leaves(t.nodes().size());
    for (int v : t.post_order()) {
        const auto& nd = t.node(v);
        if (nd.is_leaf()) {
            leaves[static_cast<std::size_t>(v)] = {nd.label};
        } else {
            leaves[static_cast<std::size_t>(v)] = leaves[static_cast<std::size_t>(nd.left)];
            leaves[static_cast<std::size_t>(v)].insert(leaves[static_cast<std::size_t>(nd.right)].begin(),
                                                       leaves[static_cast<std::size_t>(nd.right)].end());
        }
    }
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& s : leaves)
        if (s.count(i) && s.count(j)) best = std::min(best, s.size());
    return static_cast<int>(best);
}

inline double hc_value_pairwise(const WeightedGraph& g, const BinaryTree& t) {
    double total = 0.0;
    for (const auto& e : g.edges) total += e.w * lca_size_by_leaf_sets(t, e.u, e.v);
    return total;
}

/// Optimal objective by DP over vertex subsets: best(S) = max over splits (A, S\A) of
/// best(A) + best(S\A) + |S| * w(A, S\A).
inline double hc_opt_subset_dp(const WeightedGraph& g) {
    const int n = g.n;
    std::vector<std::vector<double>> w(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (const auto& e : g.edges) {
        w[static_cast<std::size_t>(e.u - 1)][static_cast<std::size_t>(e.v - 1)] += e.w;
        w[static_cast<std::size_t>(e.v - 1)][static_cast<std::size_t>(e.u - 1)] += e.w;
    }
    const std::uint32_t full = (1U << n) - 1;
    std::vector<double> best(full + 1, 0.0);
    for (std::uint32_t s = 1; s <= full; ++s) {
        if (std::popcount(s) < 2) continue;
        const std::uint32_t low = s & (~s + 1);  // fix the lowest element in A to count each split once
        double top = -1.0;
        for (std::uint32_t a = (s - 1) & s; a; a = (a - 1) & s) {
            if (!(a & low)) continue;
            const std::uint32_t b = s ^ a;
            double cross = 0.0;
            for (int i = 0; i < n; ++i)
                if ((a >> i) & 1U)
                    for (int j = 0; j < n; ++j)
                        if ((b >> j) & 1U) cross += w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            top = std::max(top, best[a] + best[b] + std::popcount(s) * cross);
        }
        best[s] = top;
    }
    return best[full];
}

/// Runs the sampling procedure literally: variable, two incident equations (with
/// replacement), then per coordinate a rho-correlated sign pair. Returns counts of
/// unordered non-self pairs (by product-vertex id) and the number of self pairs.
struct PairCounts {
    std::map<std::pair<int, int>, std::uint64_t> counts;
    std::uint64_t self_pairs = 0;
};

inline PairCounts sample_hc_pairs(const Lin2Instance& inst, double rho, std::size_t samples, std::uint64_t seed) {
    struct Seen {
        int other, offset;
    };
    std::vector<std::vector<Seen>> by_var(static_cast<std::size_t>(inst.n0));
    for (const auto& e : inst.equations) {
        // x_j - x_k = a  ==  x_j - x_i = a with i = k, and x_k - x_i = -a with i = j
        by_var[static_cast<std::size_t>(e.k - 1)].push_back({e.j, e.a});
        by_var[static_cast<std::size_t>(e.j - 1)].push_back({e.k, ((-e.a) % inst.q + inst.q) % inst.q});
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> var(0, inst.n0 - 1);
    std::uniform_int_distribution<int> sign(0, 1);
    std::bernoulli_distribution same((1.0 + rho) / 2.0);
    PairCounts out;
    const int q = inst.q;
    for (std::size_t s = 0; s < samples; ++s) {
        const auto& list = by_var[static_cast<std::size_t>(var(rng))];
        std::uniform_int_distribution<std::size_t> pick(0, list.size() - 1);
        const Seen c1 = list[pick(rng)], c2 = list[pick(rng)];
        std::vector<int> f(static_cast<std::size_t>(q)), g(static_cast<std::size_t>(q));
        for (int r = 0; r < q; ++r) {
            const int x = sign(rng) ? 1 : -1;
            f[static_cast<std::size_t>((r + c1.offset) % q)] = x;
            g[static_cast<std::size_t>((r + c2.offset) % q)] = same(rng) ? x : -x;
        }
        auto id = [&](int variable, const std::vector<int>& signs) {
            int mask = 0;
            for (int r = 0; r < q; ++r)
                if (signs[static_cast<std::size_t>(r)] < 0) mask |= 1 << r;
            return (variable - 1) * (1 << q) + mask + 1;
        };
        const int u = id(c1.other, f), v = id(c2.other, g);
        if (u == v) {
            ++out.self_pairs;
        } else {
            ++out.counts[{std::min(u, v), std::max(u, v)}];
        }
    }
    return out;
}

}  // namespace oracle
