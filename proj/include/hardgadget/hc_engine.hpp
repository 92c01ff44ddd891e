#pragma once

// Dissimilarity hierarchical clustering: objective sum_{ij} w_ij |T_ij| (leaves under the
// lowest common ancestor), an exhaustive solver, and the bound curves behind the gap.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardgadget/gamma.hpp"
#include "hardgadget/instances.hpp"
#include "hardgadget/parallel.hpp"

namespace hardgadget {

inline double hc_value(const WeightedGraph& g, const BinaryTree& t) {
    if (t.leaf_count() != g.n) throw invalid_instance("tree leaves do not match graph vertices");
    double total = 0.0;
    for (const auto& e : g.edges) total += e.w * t.lca_size(e.u, e.v);
    return total;
}

/// hc_value divided by the number of vertices.
inline double hc_value_normalized(const WeightedGraph& g, const BinaryTree& t) {
    return g.n > 0 ? hc_value(g, t) / g.n : 0.0;
}

struct HcSolution {
    BinaryTree tree;
    double value = 0.0;
};

inline constexpr int max_bruteforce_hc = 10;

namespace detail {

/// Every leaf-labelled binary tree on n leaves, built by inserting leaf k above every
/// existing node of every tree on k-1 leaves. Leaves are nodes 0..n-1, internal nodes n.. .
class TreeEnumerator {
public:
    explicit TreeEnumerator(int n)
        : n_(n), parent_(static_cast<std::size_t>(2 * n - 1), -1), left_(parent_.size(), -1), right_(parent_.size(), -1) {}

    template <class Visit>
    void run(const Visit& visit) {
        root_ = 0;
        insert(1, visit);
    }

    int root() const { return root_; }
    int left(int v) const { return left_[static_cast<std::size_t>(v)]; }
    int right(int v) const { return right_[static_cast<std::size_t>(v)]; }
    bool is_leaf(int v) const { return v < n_; }

private:
    template <class Visit>
    void insert(int k, const Visit& visit) {
        if (k == n_) {
            visit();
            return;
        }
        const int u = n_ + k - 1;
        // existing nodes: leaves 0..k-1, internal n..n+k-2
        for (int v = 0; v < n_ + k - 1; ++v) {
            if (v >= k && v < n_) continue;
            const int p = parent_[static_cast<std::size_t>(v)];
            attach(u, v, k, p);
            insert(k + 1, visit);
            detach(u, v, k, p);
        }
    }

    void attach(int u, int v, int k, int p) {
        auto at = [](std::vector<int>& a, int i) -> int& { return a[static_cast<std::size_t>(i)]; };
        at(left_, u) = v;
        at(right_, u) = k;
        at(parent_, u) = p;
        at(parent_, v) = u;
        at(parent_, k) = u;
        if (p < 0) {
            root_ = u;
        } else if (at(left_, p) == v) {
            at(left_, p) = u;
        } else {
            at(right_, p) = u;
        }
    }

    void detach(int u, int v, int k, int p) {
        auto at = [](std::vector<int>& a, int i) -> int& { return a[static_cast<std::size_t>(i)]; };
        at(parent_, v) = p;
        at(parent_, k) = -1;
        at(parent_, u) = -1;
        at(left_, u) = at(right_, u) = -1;
        if (p < 0) {
            root_ = v;
        } else if (at(left_, p) == u) {
            at(left_, p) = v;
        } else {
            at(right_, p) = v;
        }
    }

    int n_;
    int root_ = 0;
    std::vector<int> parent_, left_, right_;
};

}  // namespace detail

/// Exhaustive maximiser over all (2n-3)!! trees. Ties are broken toward the smallest
/// canonical serialization; the reported value is recomputed with hc_value.
inline HcSolution hc_opt_bruteforce(const WeightedGraph& g) {
    g.validate();
    const int n = g.n;
    if (n < 1) throw invalid_instance("graph has no vertices");
    if (n > max_bruteforce_hc) throw invalid_instance("exhaustive tree search is limited to 10 vertices");
    if (n == 1) {
        BinaryTree::Builder b;
        const int leaf = b.leaf(1);
        auto t = std::move(b).build(leaf);
        return {t, hc_value(g, t)};
    }

    std::vector<std::vector<double>> w(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (const auto& e : g.edges) {
        w[static_cast<std::size_t>(e.u - 1)][static_cast<std::size_t>(e.v - 1)] += e.w;
        w[static_cast<std::size_t>(e.v - 1)][static_cast<std::size_t>(e.u - 1)] += e.w;
    }

    detail::TreeEnumerator en(n);
    std::vector<std::uint32_t> mask(static_cast<std::size_t>(2 * n - 1));
    std::vector<int> min_leaf(mask.size());
    double best = -1.0;
    std::string best_string;

    auto cross = [&](std::uint32_t a, std::uint32_t b) {
        double s = 0.0;
        for (; a; a &= a - 1) {
            const auto& row = w[static_cast<std::size_t>(std::countr_zero(a))];
            for (std::uint32_t c = b; c; c &= c - 1) s += row[static_cast<std::size_t>(std::countr_zero(c))];
        }
        return s;
    };
    // post-order over the current tree: fills mask / min_leaf, returns the objective
    auto evaluate = [&](auto&& self, int v) -> double {
        const auto i = static_cast<std::size_t>(v);
        if (en.is_leaf(v)) {
            mask[i] = 1U << v;
            min_leaf[i] = v;
            return 0.0;
        }
        const int l = en.left(v), r = en.right(v);
        const double below = self(self, l) + self(self, r);
        mask[i] = mask[static_cast<std::size_t>(l)] | mask[static_cast<std::size_t>(r)];
        min_leaf[i] = std::min(min_leaf[static_cast<std::size_t>(l)], min_leaf[static_cast<std::size_t>(r)]);
        return below + std::popcount(mask[i]) * cross(mask[static_cast<std::size_t>(l)], mask[static_cast<std::size_t>(r)]);
    };
    auto canonical = [&](auto&& self, int v, std::string& out) -> void {
        if (en.is_leaf(v)) {
            out += std::to_string(v + 1);
            return;
        }
        int a = en.left(v), b = en.right(v);
        if (min_leaf[static_cast<std::size_t>(b)] < min_leaf[static_cast<std::size_t>(a)]) std::swap(a, b);
        out += '(';
        self(self, a, out);
        out += ',';
        self(self, b, out);
        out += ')';
    };

    en.run([&] {
        const double value = evaluate(evaluate, en.root());
        const double eps = 1e-12 * (1.0 + std::abs(best));
        if (value > best + eps) {
            best = value;
            best_string.clear();
            canonical(canonical, en.root(), best_string);
        } else if (value >= best - eps) {
            std::string s;
            canonical(canonical, en.root(), s);
            if (s < best_string) best_string = std::move(s);
        }
    });
    auto tree = parse_tree(best_string);
    return {tree, hc_value(g, tree)};
}

// ---------------------------------------------------------------------------
// bound curves and constants

/// Bound on objective/n when the root's largest child holds a beta fraction of the leaves.
inline double no_case_single_bound(double beta, double rho = -0.7) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::domain_error("beta must lie in [0, 1]");
    const double g = gamma(rho, beta, beta);
    return (1.0 - g) + beta * g;
}

/// Bound when two grandchildren hold beta1 and beta2 fractions of the leaves.
inline double no_case_split_bound(double beta1, double beta2, double rho = -0.7) {
    if (!(beta1 >= 0.0 && beta2 >= 0.0 && beta1 + beta2 <= 1.0 + 1e-12))
        throw std::domain_error("need beta1, beta2 >= 0 and beta1 + beta2 <= 1");
    const double g1 = gamma(rho, beta1, beta1), g2 = gamma(rho, beta2, beta2);
    return (1.0 - g1 - g2) + beta1 * g1 + beta2 * g2;
}

/// Limit of the balanced-tree value per vertex as q grows: alpha / (1 - (1 - alpha) / 2).
inline double yes_case_value_limit(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("alpha must lie in [0, 1]");
    return alpha / (1.0 - (1.0 - alpha) / 2.0);
}

/// n * w_sat * sum_{r=1..q} alpha ((1 - alpha) / 2)^(r-1).
inline double yes_case_level_bound(int n, double w_sat, double alpha, int q) {
    double s = 0.0, term = alpha;
    for (int r = 1; r <= q; ++r) {
        s += term;
        term *= (1.0 - alpha) / 2.0;
    }
    return n * w_sat * s;
}

struct ExpansionReport {
    double induced = 0.0;    // weight of pairs inside S
    double threshold = 0.0;  // Gamma_rho(|S|/n, |S|/n)
    double margin = 0.0;     // induced - threshold
};

/// Weight induced inside S, compared with Gamma_rho(|S|/n, |S|/n). Observational only.
inline ExpansionReport check_expansion(const WeightedGraph& g, const std::vector<int>& subset, double rho = -0.7) {
    std::vector<char> in(static_cast<std::size_t>(g.n) + 1, 0);
    for (int v : subset) {
        if (v < 1 || v > g.n) throw invalid_instance("subset vertex out of range");
        if (in[static_cast<std::size_t>(v)]) throw invalid_instance("subset lists a vertex twice");
        in[static_cast<std::size_t>(v)] = 1;
    }
    ExpansionReport r;
    for (const auto& e : g.edges)
        if (in[static_cast<std::size_t>(e.u)] && in[static_cast<std::size_t>(e.v)]) r.induced += e.w;
    const double frac = g.n > 0 ? static_cast<double>(subset.size()) / g.n : 0.0;
    r.threshold = gamma(rho, frac, frac);
    r.margin = r.induced - r.threshold;
    return r;
}

struct HardnessRatio {
    double numerator = 0.9159;    // NO-case bound
    double denominator = 0.9189;  // YES-case value
    double ratio() const { return numerator / denominator; }
};

inline HardnessRatio hardness_ratio() { return {}; }

struct BoundCurvePoint {
    double beta = 0.0;
    double beta2 = 0.0;
    double value = 0.0;
    double rho = -0.7;
    double cap = 0.0;
};

struct CurveOptions {
    double rho = -0.7;
    double step = 1e-3;
    int threads = 0;
};

namespace detail {

inline std::vector<double> grid(double lo, double hi, double step) {
    if (!(hi >= lo) || !(step > 0.0)) throw std::domain_error("need lo <= hi and a positive step");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i) xs[i] = std::min(hi, lo + static_cast<double>(i) * step);
    if (xs.back() < hi - 1e-12) xs.push_back(hi);
    return xs;
}

template <class F>
std::vector<BoundCurvePoint> sample_curve(const std::vector<double>& xs, unsigned threads, const F& point) {
    std::vector<BoundCurvePoint> out(xs.size());
    parallel_for(xs.size(), threads, [&](std::size_t i) { out[i] = point(xs[i]); });
    return out;
}

inline const BoundCurvePoint& best_point(const std::vector<BoundCurvePoint>& pts) {
    // first maximum wins, so ties resolve toward smaller beta
    return *std::max_element(pts.begin(), pts.end(),
                             [](const auto& a, const auto& b) { return a.value < b.value; });
}

}  // namespace detail

inline std::vector<BoundCurvePoint> single_bound_curve(double lo, double hi, const CurveOptions& o = {}) {
    return detail::sample_curve(detail::grid(lo, hi, o.step), resolve_threads(o.threads), [&](double b) {
        return BoundCurvePoint{b, 0.0, no_case_single_bound(b, o.rho), o.rho, b};
    });
}

/// beta2 = cap - beta1 along the grid of beta1.
inline std::vector<BoundCurvePoint> split_bound_curve(double lo, double hi, double cap, const CurveOptions& o = {}) {
    return detail::sample_curve(detail::grid(lo, hi, o.step), resolve_threads(o.threads), [&](double b1) {
        const double b2 = std::max(0.0, cap - b1);
        return BoundCurvePoint{b1, b2, no_case_split_bound(b1, b2, o.rho), o.rho, cap};
    });
}

/// Grid of o.step, then a grid of `fine` around the best point.
inline BoundCurvePoint maximize_single_bound(double lo = 0.6, double hi = 0.88, const CurveOptions& o = {},
                                             double fine = 1e-5) {
    const auto coarse = detail::best_point(single_bound_curve(lo, hi, o));
    CurveOptions f = o;
    f.step = fine;
    return detail::best_point(single_bound_curve(std::max(lo, coarse.beta - o.step), std::min(hi, coarse.beta + o.step), f));
}

inline BoundCurvePoint maximize_split_bound(double lo = 0.44, double hi = 0.88, double cap = 0.88,
                                            const CurveOptions& o = {}, double fine = 1e-5) {
    const auto coarse = detail::best_point(split_bound_curve(lo, hi, cap, o));
    CurveOptions f = o;
    f.step = fine;
    return detail::best_point(
        split_bound_curve(std::max(lo, coarse.beta - o.step), std::min(hi, coarse.beta + o.step), cap, f));
}

// ---------------------------------------------------------------------------
// level structure of a tree

/// Weight whose lowest common ancestor sits at depth r-1, i.e. separated at level r;
/// index 0 unused. Levels beyond max_level are folded into the last entry.
inline std::vector<double> separated_weight_by_level(const WeightedGraph& g, const BinaryTree& t, int max_level) {
    if (t.leaf_count() != g.n) throw invalid_instance("tree leaves do not match graph vertices");
    std::vector<double> out(static_cast<std::size_t>(max_level) + 1, 0.0);
    for (const auto& e : g.edges) {
        const int depth = t.node(t.lca(t.leaf_node(e.u), t.leaf_node(e.v))).depth;
        out[static_cast<std::size_t>(std::min(depth + 1, max_level))] += e.w;
    }
    return out;
}

/// Leaf counts of the nodes at depth r, in post order.
inline std::vector<int> level_sizes(const BinaryTree& t, int r) {
    std::vector<int> sizes;
    for (int i : t.post_order())
        if (t.node(i).depth == r) sizes.push_back(t.node(i).leaves);
    return sizes;
}

}  // namespace hardgadget
