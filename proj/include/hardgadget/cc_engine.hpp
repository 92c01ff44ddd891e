#pragma once

// Local correlation clustering: disagreement evaluation, exact solvers, and the
// exhaustive hypergraph 2-colouring check used as the reduction's ground truth.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hardgadget/instances.hpp"

namespace hardgadget {

/// Per-vertex mistakes: positive pairs cut plus negative pairs kept together.
inline DisagreementsVector disagreements(const SignedGraph& g, const Partition& p) {
    if (p.size() != g.size())
        throw std::invalid_argument("partition covers " + std::to_string(p.size()) + " vertices, graph has " +
                                    std::to_string(g.size()));
    const auto& label = p.labels();
    std::vector<int> cluster_size(static_cast<std::size_t>(p.cluster_count()), 0);
    for (int c : label) ++cluster_size[static_cast<std::size_t>(c)];

    // start from "every same-cluster pair is a negative mistake", then correct for positive pairs
    DisagreementsVector d;
    d.counts.resize(static_cast<std::size_t>(g.size()));
    for (std::size_t v = 0; v < label.size(); ++v) d.counts[v] = cluster_size[static_cast<std::size_t>(label[v])] - 1;
    for (auto [u, v] : g.positive_edges()) {
        const auto a = static_cast<std::size_t>(u - 1), b = static_cast<std::size_t>(v - 1);
        const int delta = label[a] == label[b] ? -1 : +1;
        d.counts[a] += delta;
        d.counts[b] += delta;
    }
    return d;
}

inline constexpr double linf = std::numeric_limits<double>::infinity();

/// l_q norm of a disagreements vector; q = linf gives the max entry.
inline double lq_norm(const DisagreementsVector& d, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("l_q norm needs q >= 1");
    if (std::isinf(q)) return d.max();
    if (q == 1.0) return static_cast<double>(d.total());
    double s = 0.0;
    for (int c : d.counts) s += std::pow(static_cast<double>(c), q);
    return std::pow(s, 1.0 / q);
}

struct CcSolution {
    Partition partition;
    double value = 0.0;
};

inline constexpr int cc_bruteforce_max_vertices = 13;

/// Minimises lq_norm(disagreements(g, .), q) by enumerating every set partition.
inline CcSolution cc_opt_bruteforce(const SignedGraph& g, double q) {
    const int n = g.size();
    if (n > cc_bruteforce_max_vertices)
        throw std::invalid_argument("brute force limited to " + std::to_string(cc_bruteforce_max_vertices) + " vertices");
    if (!(q >= 1.0)) throw std::invalid_argument("l_q norm needs q >= 1");
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (auto [u, v] : g.positive_edges())
        adj[static_cast<std::size_t>(u - 1)][static_cast<std::size_t>(v - 1)] = adj[static_cast<std::size_t>(v - 1)][static_cast<std::size_t>(u - 1)] = 1;

    std::vector<int> label(static_cast<std::size_t>(n), 0), best_label;
    DisagreementsVector counts{std::vector<int>(static_cast<std::size_t>(n), 0)};
    double best = std::numeric_limits<double>::infinity();

    auto recurse = [&](auto&& self, int i, int used) -> void {
        if (i == n) {
            const double value = lq_norm(counts, q);
            if (value < best) {
                best = value;
                best_label = label;
            }
            return;
        }
        for (int c = 0; c <= used; ++c) {
            label[static_cast<std::size_t>(i)] = c;
            std::vector<int> touched;
            for (int j = 0; j < i; ++j) {
                const bool same = label[static_cast<std::size_t>(j)] == c;
                if (same != static_cast<bool>(adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])) {
                    ++counts.counts[static_cast<std::size_t>(i)];
                    ++counts.counts[static_cast<std::size_t>(j)];
                    touched.push_back(j);
                }
            }
            self(self, i + 1, std::max(used, c + 1));
            for (int j : touched) {
                --counts.counts[static_cast<std::size_t>(i)];
                --counts.counts[static_cast<std::size_t>(j)];
            }
        }
    };
    if (n == 0) return {Partition(std::vector<int>{}), 0.0};
    recurse(recurse, 0, 0);
    return {Partition(best_label), best};
}

// ---------------------------------------------------------------------------
// Exact l_inf feasibility by backtracking

enum class Verdict { feasible, infeasible, timeout };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::feasible: return "feasible";
        case Verdict::infeasible: return "infeasible";
        case Verdict::timeout: return "timeout";
    }
    return "?";
}

enum class SearchOrder {
    bfs,             // static BFS order over positive edges
    fewest_options,  // dynamic: most constrained unassigned vertex first, BFS rank breaks ties
};

struct FeasibilityOptions {
    std::chrono::milliseconds budget{60'000};
    SearchOrder ordering = SearchOrder::bfs;
    /// When set, candidate clusters are tried in a seeded random order instead of creation
    /// order. The verdict is unaffected; only the witness may change.
    std::optional<std::uint64_t> shuffle_seed;
};

struct FeasibilityResult {
    Verdict verdict = Verdict::infeasible;
    std::optional<Partition> partition;
    std::uint64_t nodes = 0;
    double seconds = 0.0;
};

namespace detail {

class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t n) : words_((n + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

private:
    std::vector<std::uint64_t> words_;
};

inline int count_and(const Bits& a, const Bits& b) {
    int c = 0;
    for (std::size_t i = 0; i < a.words().size(); ++i) c += std::popcount(a.words()[i] & b.words()[i]);
    return c;
}

/// popcount(a & ~b)
inline int count_and_not(const Bits& a, const Bits& b) {
    int c = 0;
    for (std::size_t i = 0; i < a.words().size(); ++i) c += std::popcount(a.words()[i] & ~b.words()[i]);
    return c;
}

/// popcount(a & b & ~c)
inline int count_and_and_not(const Bits& a, const Bits& b, const Bits& c) {
    int r = 0;
    for (std::size_t i = 0; i < a.words().size(); ++i) r += std::popcount(a.words()[i] & b.words()[i] & ~c.words()[i]);
    return r;
}

template <class F>
void for_each_and_not(const Bits& a, const Bits& b, F&& f) {
    for (std::size_t i = 0; i < a.words().size(); ++i) {
        std::uint64_t w = a.words()[i] & ~b.words()[i];
        while (w) {
            f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
}

template <class F>
void for_each_and_and_not(const Bits& a, const Bits& b, const Bits& c, F&& f) {
    for (std::size_t i = 0; i < a.words().size(); ++i) {
        std::uint64_t w = a.words()[i] & b.words()[i] & ~c.words()[i];
        while (w) {
            f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
}

/// Vertices (0-based) in BFS order over positive edges, restarting at the smallest
/// unvisited vertex for each new component.
inline std::vector<int> bfs_order(const std::vector<std::vector<int>>& adj) {
    const std::size_t n = adj.size();
    std::vector<int> order;
    std::vector<char> seen(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::queue<int> q;
        q.push(static_cast<int>(s));
        seen[s] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            order.push_back(v);
            for (int u : adj[static_cast<std::size_t>(v)]) {
                if (!seen[static_cast<std::size_t>(u - 1)]) {
                    seen[static_cast<std::size_t>(u - 1)] = 1;
                    q.push(u - 1);
                }
            }
        }
    }
    return order;
}

class LinfSearch {
public:
    LinfSearch(const SignedGraph& g, int t, const FeasibilityOptions& opts)
        : n_(static_cast<std::size_t>(g.size())), t_(t), opts_(opts), adj_(n_, Bits(n_)), assigned_(n_),
          cluster_of_(n_, -1), committed_(n_, 0), posdeg_(n_, 0) {
        const auto nbrs = g.neighbours();
        for (std::size_t v = 0; v < n_; ++v) {
            for (int u : nbrs[v]) adj_[v].set(static_cast<std::size_t>(u - 1));
            posdeg_[v] = static_cast<int>(nbrs[v].size());
        }
        order_ = bfs_order(nbrs);
        if (opts_.shuffle_seed) rng_.seed(*opts_.shuffle_seed);
    }

    FeasibilityResult run() {
        const auto start = std::chrono::steady_clock::now();
        deadline_ = start + opts_.budget;
        FeasibilityResult r;
        bool found = false;
        if (t_ < 0) {
            found = false;
        } else {
            found = n_ == 0 || (consistent() && descend(0));
        }
        r.nodes = nodes_;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (timed_out_) {
            r.verdict = Verdict::timeout;
        } else if (found) {
            r.verdict = Verdict::feasible;
            r.partition = Partition(cluster_of_);
        } else {
            r.verdict = Verdict::infeasible;
        }
        return r;
    }

private:
    int join_cost(std::size_t x, std::size_t c) const {
        return count_and_not(members_[c], adj_[x]) + count_and_and_not(assigned_, adj_[x], members_[c]);
    }

    /// Could unassigned x still join cluster c without exceeding t anywhere?
    bool joinable(std::size_t x, std::size_t c) const {
        if (join_cost(x, c) > t_) return false;
        bool ok = true;
        for_each_and_not(members_[c], adj_[x], [&](std::size_t w) {
            if (committed_[w] + 1 > t_) ok = false;
        });
        return ok;
    }

    /// Forward check. Under dynamic ordering also picks the next vertex to branch on: the
    /// unassigned vertex with the fewest remaining options, ties broken by BFS rank.
    bool consistent() {
        const bool count_all = opts_.ordering == SearchOrder::fewest_options;
        int best_options = std::numeric_limits<int>::max();
        next_ = -1;
        for (int x0 : order_) {
            const auto x = static_cast<std::size_t>(x0);
            if (assigned_.test(x)) continue;
            int options = count_and(assigned_, adj_[x]) <= t_ ? 1 : 0;  // opening a new cluster
            for (std::size_t c = 0; c < members_.size() && (count_all || options == 0); ++c)
                options += joinable(x, c) ? 1 : 0;
            if (options == 0) return false;
            if (options < best_options) {
                best_options = options;
                next_ = x0;
            }
        }
        // committed mistakes plus positive neighbours that can no longer come in
        for (std::size_t v = 0; v < n_; ++v) {
            if (!assigned_.test(v)) continue;
            const auto c = static_cast<std::size_t>(cluster_of_[v]);
            int lb = committed_[v];
            bool ok = true;
            for_each_and_not(adj_[v], assigned_, [&](std::size_t u) {
                if (ok && !joinable(u, c) && ++lb > t_) ok = false;
            });
            if (!ok) return false;
        }
        return true;
    }

    // assigns x to cluster c (c == members_.size() opens a new one); returns touched vertices
    std::vector<std::size_t> place(std::size_t x, std::size_t c) {
        if (c == members_.size()) {
            members_.emplace_back(n_);
            sizes_.push_back(0);
        }
        std::vector<std::size_t> touched;
        for_each_and_not(members_[c], adj_[x], [&](std::size_t w) { touched.push_back(w); });
        for_each_and_and_not(assigned_, adj_[x], members_[c], [&](std::size_t w) { touched.push_back(w); });
        for (auto w : touched) ++committed_[w];
        committed_[x] += static_cast<int>(touched.size());
        members_[c].set(x);
        ++sizes_[c];
        assigned_.set(x);
        cluster_of_[x] = static_cast<int>(c);
        return touched;
    }

    void unplace(std::size_t x, std::size_t c, const std::vector<std::size_t>& touched) {
        for (auto w : touched) --committed_[w];
        committed_[x] -= static_cast<int>(touched.size());
        members_[c].reset(x);
        assigned_.reset(x);
        cluster_of_[x] = -1;
        if (--sizes_[c] == 0 && c + 1 == members_.size()) {
            members_.pop_back();
            sizes_.pop_back();
        }
    }

    bool descend(std::size_t depth) {
        if (depth == n_) return true;
        if ((++nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
        if (timed_out_) return false;

        const auto x = static_cast<std::size_t>(opts_.ordering == SearchOrder::bfs ? order_[depth] : next_);
        std::vector<std::size_t> candidates(members_.size());
        std::iota(candidates.begin(), candidates.end(), std::size_t{0});
        if (opts_.shuffle_seed) std::shuffle(candidates.begin(), candidates.end(), rng_);
        candidates.push_back(members_.size());  // new cluster last

        for (auto c : candidates) {
            const bool fresh = c == members_.size();
            if (!fresh) {
                if (!joinable(x, c)) continue;
                // size bound: |C| <= posdeg(w) + t + 1 for every member w
                if (sizes_[c] + 1 > posdeg_[x] + t_ + 1) continue;
            }
            auto touched = place(x, c);
            bool ok = committed_[x] <= t_;
            for (auto w : touched) ok = ok && committed_[w] <= t_;
            if (ok && consistent() && descend(depth + 1)) return true;
            unplace(x, c, touched);
            if (timed_out_) return false;
        }
        return false;
    }

    std::size_t n_;
    int t_;
    FeasibilityOptions opts_;
    std::vector<Bits> adj_;
    Bits assigned_;
    std::vector<Bits> members_;
    std::vector<int> sizes_;
    std::vector<int> cluster_of_;
    std::vector<int> committed_;
    std::vector<int> posdeg_;
    std::vector<int> order_;
    int next_ = -1;
    std::mt19937_64 rng_;
    std::chrono::steady_clock::time_point deadline_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

}  // namespace detail

/// Decides whether some partition has at most t mistakes at every vertex.
inline FeasibilityResult feasible_linf(const SignedGraph& g, int t, const FeasibilityOptions& opts = {}) {
    auto result = detail::LinfSearch(g, t, opts).run();
    if (result.partition && disagreements(g, *result.partition).max() > t)
        throw std::logic_error("feasibility witness exceeds the mistake budget");
    return result;
}

// ---------------------------------------------------------------------------
// Hypergraph 2-colourings

enum class Color : char { orange = 'O', blue = 'B' };

/// Colour of every hypergraph vertex, indexed by v - 1.
using Coloring = std::vector<Color>;

inline bool bichromatic(const Hypergraph3& h, const Coloring& c, int edge) {
    const auto& e = h.edges.at(static_cast<std::size_t>(edge));
    const Color first = c.at(static_cast<std::size_t>(e[0] - 1));
    return c.at(static_cast<std::size_t>(e[1] - 1)) != first || c.at(static_cast<std::size_t>(e[2] - 1)) != first;
}

inline bool is_proper_coloring(const Hypergraph3& h, const Coloring& c) {
    if (static_cast<int>(c.size()) != h.n) return false;
    for (int j = 0; j < h.edge_count(); ++j)
        if (!bichromatic(h, c, j)) return false;
    return true;
}

inline constexpr int two_coloring_max_vertices = 24;

/// Exhaustive search over all 2^n colourings; the first proper one in mask order
/// (bit v-1 set = blue), or nullopt when none exists.
inline std::optional<Coloring> find_two_coloring(const Hypergraph3& h) {
    if (h.n > two_coloring_max_vertices)
        throw std::invalid_argument("exhaustive 2-colouring limited to " + std::to_string(two_coloring_max_vertices) + " vertices");
    std::vector<std::uint32_t> masks;
    for (const auto& e : h.edges) masks.push_back((1U << (e[0] - 1)) | (1U << (e[1] - 1)) | (1U << (e[2] - 1)));
    const std::uint32_t limit = h.n == 0 ? 1U : (1U << h.n);
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        bool ok = true;
        for (auto m : masks) {
            const auto hit = mask & m;
            if (hit == 0 || hit == m) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        Coloring c(static_cast<std::size_t>(h.n));
        for (int v = 0; v < h.n; ++v) c[static_cast<std::size_t>(v)] = (mask >> v) & 1U ? Color::blue : Color::orange;
        return c;
    }
    return std::nullopt;
}

// Colouring format: `col <n>` then one line of n characters from {O, B}.

inline std::string to_text(const Coloring& c) {
    std::string out = "col " + std::to_string(c.size()) + "\n";
    for (Color x : c) out += static_cast<char>(x);
    return out + "\n";
}

inline Coloring parse_coloring(std::string_view text) {
    auto lines = detail::content_lines(text);
    if (lines.empty() || lines[0].tokens[0] != "col") throw parse_error(lines.empty() ? 0 : lines[0].number, "expected 'col' header");
    detail::expect_tokens(lines[0], 2, "col header");
    const int n = detail::parse_int(lines[0].tokens[1], lines[0].number);
    std::string body;
    for (std::size_t i = 1; i < lines.size(); ++i)
        for (const auto& tok : lines[i].tokens) body += tok;
    if (static_cast<int>(body.size()) != n)
        throw parse_error(lines.back().number, "expected " + std::to_string(n) + " colours, found " + std::to_string(body.size()));
    Coloring c;
    for (char ch : body) {
        if (ch != 'O' && ch != 'B') throw parse_error(lines.back().number, std::string("unknown colour '") + ch + "'");
        c.push_back(static_cast<Color>(ch));
    }
    return c;
}

}  // namespace hardgadget
