#pragma once

// Core instance types shared by both reductions, with their canonical text forms.
//
//   h3 <n> <m>              Hypergraph3, then m lines `e <v1> <v2> <v3>`
//   sg <n>                  SignedGraph, then lines `+ <u> <v>` (u < v)
//   wg <n> <m> [normalized] WeightedGraph, then m lines `<u> <v> <w>`
//   p <n> <k>               Partition, then k lines `c <v...>`
//   ((1,2),(3,4))           BinaryTree
//
// Vertices are 1-indexed everywhere; cluster ids are 0-indexed.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hardgadget/text.hpp"

namespace hardgadget {

// ---------------------------------------------------------------------------
// Hypergraph3

struct Hypergraph3 {
    int n = 0;
    std::vector<std::array<int, 3>> edges;

    int edge_count() const { return static_cast<int>(edges.size()); }

    /// s_i for every vertex, indexed by v - 1.
    std::vector<int> occurrences() const {
        std::vector<int> s(static_cast<std::size_t>(std::max(n, 0)), 0);
        for (const auto& e : edges)
            for (int v : e) ++s[static_cast<std::size_t>(v - 1)];
        return s;
    }

    void validate() const {
        if (n < 1) throw invalid_instance("hypergraph needs at least one vertex");
        std::vector<std::array<int, 3>> seen;
        seen.reserve(edges.size());
        for (const auto& e : edges) {
            for (int v : e)
                if (v < 1 || v > n)
                    throw invalid_instance("triple vertex " + std::to_string(v) + " out of range");
            if (e[0] == e[1] || e[0] == e[2] || e[1] == e[2])
                throw invalid_instance("triple members must be distinct");
            auto key = e;
            std::sort(key.begin(), key.end());
            seen.push_back(key);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw invalid_instance("duplicate triple");
    }

    /// Members sorted within each triple, triples sorted lexicographically.
    Hypergraph3 canonical() const {
        Hypergraph3 out{n, edges};
        for (auto& e : out.edges) std::sort(e.begin(), e.end());
        std::sort(out.edges.begin(), out.edges.end());
        return out;
    }

    /// Structural equality: same vertex count and the same set of triples.
    friend bool operator==(const Hypergraph3& a, const Hypergraph3& b) {
        if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
        return a.canonical().edges == b.canonical().edges;
    }
};

// ---------------------------------------------------------------------------
// SignedGraph: complete graph, positive pairs explicit, everything else negative.

class SignedGraph {
public:
    SignedGraph() = default;

    SignedGraph(int n, std::vector<std::pair<int, int>> positive) : n_(n), positive_(std::move(positive)) {
        if (n_ < 0) throw invalid_instance("negative vertex count");
        for (auto& [u, v] : positive_) {
            if (u < 1 || v < 1 || u > n_ || v > n_)
                throw invalid_instance("edge endpoint out of range");
            if (u == v) throw invalid_instance("self pair " + std::to_string(u));
            if (u > v) std::swap(u, v);
        }
        std::sort(positive_.begin(), positive_.end());
        if (std::adjacent_find(positive_.begin(), positive_.end()) != positive_.end())
            throw invalid_instance("duplicate positive pair");
    }

    int size() const { return n_; }
    const std::vector<std::pair<int, int>>& positive_edges() const { return positive_; }

    /// Positive neighbour lists, indexed by v - 1, each sorted.
    std::vector<std::vector<int>> neighbours() const {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
        for (auto [u, v] : positive_) {
            adj[static_cast<std::size_t>(u - 1)].push_back(v);
            adj[static_cast<std::size_t>(v - 1)].push_back(u);
        }
        for (auto& row : adj) std::sort(row.begin(), row.end());
        return adj;
    }

    bool is_positive(int u, int v) const {
        if (u > v) std::swap(u, v);
        return std::binary_search(positive_.begin(), positive_.end(), std::pair{u, v});
    }

    friend bool operator==(const SignedGraph&, const SignedGraph&) = default;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> positive_;
};

// ---------------------------------------------------------------------------
// Partition

class Partition {
public:
    Partition() = default;

    /// labels[v - 1] is an arbitrary non-negative cluster tag; relabelled densely from 0
    /// in order of first appearance over vertices 1..n.
    explicit Partition(const std::vector<int>& labels) : labels_(labels.size()) {
        std::vector<std::pair<int, int>> remap;  // tag -> dense id
        int next = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            int tag = labels[i];
            if (tag < 0) throw invalid_instance("negative cluster tag");
            auto it = std::find_if(remap.begin(), remap.end(), [tag](auto& p) { return p.first == tag; });
            if (it == remap.end()) {
                remap.emplace_back(tag, next);
                labels_[i] = next++;
            } else {
                labels_[i] = it->second;
            }
        }
        clusters_ = next;
    }

    static Partition from_clusters(int n, const std::vector<std::vector<int>>& clusters) {
        std::vector<int> labels(static_cast<std::size_t>(n), -1);
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            if (clusters[c].empty()) throw invalid_instance("empty cluster");
            for (int v : clusters[c]) {
                if (v < 1 || v > n) throw invalid_instance("cluster vertex " + std::to_string(v) + " out of range");
                if (labels[static_cast<std::size_t>(v - 1)] != -1)
                    throw invalid_instance("vertex " + std::to_string(v) + " assigned twice");
                labels[static_cast<std::size_t>(v - 1)] = static_cast<int>(c);
            }
        }
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == -1) throw invalid_instance("vertex " + std::to_string(i + 1) + " unassigned");
        return Partition(labels);
    }

    int size() const { return static_cast<int>(labels_.size()); }
    int cluster_count() const { return clusters_; }
    int cluster_of(int v) const { return labels_.at(static_cast<std::size_t>(v - 1)); }
    const std::vector<int>& labels() const { return labels_; }

    /// Members of every cluster, clusters ordered by id, members ascending.
    std::vector<std::vector<int>> clusters() const {
        std::vector<std::vector<int>> out(static_cast<std::size_t>(clusters_));
        for (std::size_t i = 0; i < labels_.size(); ++i)
            out[static_cast<std::size_t>(labels_[i])].push_back(static_cast<int>(i) + 1);
        return out;
    }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> labels_;
    int clusters_ = 0;
};

struct DisagreementsVector {
    std::vector<int> counts;

    int max() const { return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end()); }
    long long total() const { return std::accumulate(counts.begin(), counts.end(), 0LL); }
};

// ---------------------------------------------------------------------------
// WeightedGraph

struct WeightedEdge {
    int u = 0;
    int v = 0;
    double w = 0.0;

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

struct WeightedGraph {
    static constexpr double normalization_tolerance = 1e-9;

    int n = 0;
    std::vector<WeightedEdge> edges;
    bool normalized = false;
    /// Probability mass removed because the generating procedure produced a self pair.
    std::optional<double> dropped_selfpair_mass;

    double total_weight() const {
        double s = 0.0;
        for (const auto& e : edges) s += e.w;
        return s;
    }

    void validate() const {
        if (n < 0) throw invalid_instance("negative vertex count");
        for (const auto& e : edges) {
            if (e.u < 1 || e.v < 1 || e.u > n || e.v > n) throw invalid_instance("edge endpoint out of range");
            if (e.u == e.v) throw invalid_instance("self pair " + std::to_string(e.u));
            if (!(e.w >= 0.0) || !std::isfinite(e.w)) throw invalid_instance("weights must be finite and non-negative");
        }
        auto sorted = canonical_edges();
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i].u == sorted[i - 1].u && sorted[i].v == sorted[i - 1].v)
                throw invalid_instance("duplicate pair");
        if (normalized && std::abs(total_weight() - 1.0) > normalization_tolerance)
            throw invalid_instance("graph flagged normalized but weights sum to " + format_real(total_weight(), 17));
    }

    std::vector<WeightedEdge> canonical_edges() const {
        auto out = edges;
        for (auto& e : out)
            if (e.u > e.v) std::swap(e.u, e.v);
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            return std::pair{a.u, a.v} < std::pair{b.u, b.v};
        });
        return out;
    }

    friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
        return a.n == b.n && a.normalized == b.normalized && a.dropped_selfpair_mass == b.dropped_selfpair_mass &&
               a.canonical_edges() == b.canonical_edges();
    }
};

// ---------------------------------------------------------------------------
// BinaryTree: full binary tree with leaves labelled 1..n bijectively.

class BinaryTree {
public:
    struct Node {
        int left = -1;
        int right = -1;
        int parent = -1;
        int label = 0;   // leaf label, 0 for internal nodes
        int leaves = 1;  // leaves in the subtree
        int depth = 0;

        bool is_leaf() const { return left < 0; }
    };

    /// Incremental construction; build() validates the result.
    class Builder {
    public:
        int leaf(int label) {
            Node node;
            node.label = label;
            nodes_.push_back(node);
            return static_cast<int>(nodes_.size()) - 1;
        }

        int join(int a, int b) {
            Node node;
            node.left = a;
            node.right = b;
            nodes_.push_back(node);
            return static_cast<int>(nodes_.size()) - 1;
        }

        BinaryTree build(int root) && { return BinaryTree(std::move(nodes_), root); }

    private:
        std::vector<Node> nodes_;
    };

    BinaryTree() = default;

    int leaf_count() const { return n_; }
    int root() const { return root_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const Node& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }

    /// Node index of the leaf with the given label.
    int leaf_node(int label) const { return leaf_index_.at(static_cast<std::size_t>(label - 1)); }

    /// Fraction of all leaves below node i.
    double beta(int i) const { return static_cast<double>(node(i).leaves) / n_; }

    int lca(int a, int b) const {
        while (nodes_[static_cast<std::size_t>(a)].depth > nodes_[static_cast<std::size_t>(b)].depth)
            a = nodes_[static_cast<std::size_t>(a)].parent;
        while (nodes_[static_cast<std::size_t>(b)].depth > nodes_[static_cast<std::size_t>(a)].depth)
            b = nodes_[static_cast<std::size_t>(b)].parent;
        while (a != b) {
            a = nodes_[static_cast<std::size_t>(a)].parent;
            b = nodes_[static_cast<std::size_t>(b)].parent;
        }
        return a;
    }

    /// |T_{i,j}|: leaves under the lowest common ancestor of leaves i and j.
    int lca_size(int label_i, int label_j) const { return node(lca(leaf_node(label_i), leaf_node(label_j))).leaves; }

    /// Nested parentheses, children ordered by smallest leaf label.
    std::string to_string() const {
        std::string out;
        if (root_ < 0) return out;
        std::vector<int> min_label(nodes_.size(), 0);
        for (int i : post_order()) {
            const auto& nd = nodes_[static_cast<std::size_t>(i)];
            min_label[static_cast<std::size_t>(i)] =
                nd.is_leaf() ? nd.label
                             : std::min(min_label[static_cast<std::size_t>(nd.left)],
                                        min_label[static_cast<std::size_t>(nd.right)]);
        }
        // explicit stack: trees over a few thousand leaves can be deep
        struct Frame { int node; int stage; };
        std::vector<Frame> stack{{root_, 0}};
        while (!stack.empty()) {
            auto& f = stack.back();
            const auto& nd = nodes_[static_cast<std::size_t>(f.node)];
            if (nd.is_leaf()) {
                out += std::to_string(nd.label);
                stack.pop_back();
                continue;
            }
            int first = nd.left, second = nd.right;
            if (min_label[static_cast<std::size_t>(second)] < min_label[static_cast<std::size_t>(first)])
                std::swap(first, second);
            if (f.stage == 0) {
                out += '(';
                f.stage = 1;
                stack.push_back({first, 0});
            } else if (f.stage == 1) {
                out += ',';
                f.stage = 2;
                stack.push_back({second, 0});
            } else {
                out += ')';
                stack.pop_back();
            }
        }
        return out;
    }

    std::vector<int> post_order() const {
        std::vector<int> order;
        if (root_ < 0) return order;
        order.reserve(nodes_.size());
        std::vector<std::pair<int, bool>> stack{{root_, false}};
        while (!stack.empty()) {
            auto [i, expanded] = stack.back();
            stack.pop_back();
            const auto& nd = nodes_[static_cast<std::size_t>(i)];
            if (expanded || nd.is_leaf()) {
                order.push_back(i);
            } else {
                stack.push_back({i, true});
                stack.push_back({nd.right, false});
                stack.push_back({nd.left, false});
            }
        }
        return order;
    }

    friend bool operator==(const BinaryTree& a, const BinaryTree& b) {
        return a.n_ == b.n_ && a.to_string() == b.to_string();
    }

private:
    BinaryTree(std::vector<Node> nodes, int root) : nodes_(std::move(nodes)), root_(root) {
        if (root_ < 0 || static_cast<std::size_t>(root_) >= nodes_.size())
            throw invalid_instance("tree root out of range");
        std::vector<int> seen(nodes_.size(), 0);
        // depth, parent and reachability from root
        std::vector<int> stack{root_};
        nodes_[static_cast<std::size_t>(root_)].parent = -1;
        nodes_[static_cast<std::size_t>(root_)].depth = 0;
        int leaves = 0;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            if (seen[static_cast<std::size_t>(i)]++) throw invalid_instance("tree node reachable twice");
            auto& nd = nodes_[static_cast<std::size_t>(i)];
            if ((nd.left < 0) != (nd.right < 0)) throw invalid_instance("internal node without two children");
            if (nd.is_leaf()) {
                ++leaves;
                continue;
            }
            for (int c : {nd.left, nd.right}) {
                if (c < 0 || static_cast<std::size_t>(c) >= nodes_.size())
                    throw invalid_instance("child index out of range");
                nodes_[static_cast<std::size_t>(c)].parent = i;
                nodes_[static_cast<std::size_t>(c)].depth = nd.depth + 1;
                stack.push_back(c);
            }
        }
        if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw invalid_instance("unreachable tree node");
        n_ = leaves;
        leaf_index_.assign(static_cast<std::size_t>(n_), -1);
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const auto& nd = nodes_[i];
            if (!nd.is_leaf()) continue;
            if (nd.label < 1 || nd.label > n_) throw invalid_instance("leaf label " + std::to_string(nd.label) + " out of range");
            if (leaf_index_[static_cast<std::size_t>(nd.label - 1)] != -1)
                throw invalid_instance("duplicate leaf label " + std::to_string(nd.label));
            leaf_index_[static_cast<std::size_t>(nd.label - 1)] = static_cast<int>(i);
        }
        for (int i : post_order()) {
            auto& nd = nodes_[static_cast<std::size_t>(i)];
            if (!nd.is_leaf())
                nd.leaves = nodes_[static_cast<std::size_t>(nd.left)].leaves + nodes_[static_cast<std::size_t>(nd.right)].leaves;
        }
    }

    std::vector<Node> nodes_;
    std::vector<int> leaf_index_;
    int root_ = -1;
    int n_ = 0;
};

// ---------------------------------------------------------------------------
// Text formats

inline std::string to_text(const Hypergraph3& h) {
    auto c = h.canonical();
    std::string out = "h3 " + std::to_string(c.n) + " " + std::to_string(c.edges.size()) + "\n";
    for (const auto& e : c.edges)
        out += "e " + std::to_string(e[0]) + " " + std::to_string(e[1]) + " " + std::to_string(e[2]) + "\n";
    return out;
}

inline std::string to_text(const SignedGraph& g) {
    std::string out = "sg " + std::to_string(g.size()) + "\n";
    for (auto [u, v] : g.positive_edges()) out += "+ " + std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

inline std::string to_text(const Partition& p) {
    auto clusters = p.clusters();
    std::string out = "p " + std::to_string(p.size()) + " " + std::to_string(clusters.size()) + "\n";
    for (const auto& c : clusters) {
        out += "c";
        for (int v : c) out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

inline std::string to_text(const WeightedGraph& g) {
    auto edges = g.canonical_edges();
    std::string out = "wg " + std::to_string(g.n) + " " + std::to_string(edges.size()) +
                      (g.normalized ? " normalized" : "") + "\n";
    if (g.dropped_selfpair_mass) out += "# dropped-selfpair-mass " + format_real(*g.dropped_selfpair_mass, 17) + "\n";
    for (const auto& e : edges)
        out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + format_real(e.w, 17) + "\n";
    return out;
}

inline std::string to_text(const BinaryTree& t) { return t.to_string() + "\n"; }

inline Hypergraph3 parse_hypergraph(std::string_view text) {
    auto lines = detail::content_lines(text);
    if (lines.empty() || lines[0].tokens[0] != "h3") throw parse_error(lines.empty() ? 0 : lines[0].number, "expected 'h3' header");
    detail::expect_tokens(lines[0], 3, "h3 header");
    Hypergraph3 h;
    h.n = detail::parse_int(lines[0].tokens[1], lines[0].number);
    int m = detail::parse_int(lines[0].tokens[2], lines[0].number);
    if (m < 0) throw parse_error(lines[0].number, "negative edge count");
    if (static_cast<int>(lines.size()) - 1 != m)
        throw parse_error(lines.back().number, "header announces " + std::to_string(m) + " triples, found " +
                                                  std::to_string(lines.size() - 1));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.tokens[0] != "e") throw parse_error(l.number, "expected 'e' record");
        detail::expect_tokens(l, 4, "triple");
        h.edges.push_back({detail::parse_int(l.tokens[1], l.number), detail::parse_int(l.tokens[2], l.number),
                           detail::parse_int(l.tokens[3], l.number)});
        try {
            Hypergraph3 partial{h.n, h.edges};
            partial.validate();
        } catch (const invalid_instance& e) {
            throw parse_error(l.number, e.what());
        }
    }
    h.validate();
    return h;
}

inline SignedGraph parse_signed_graph(std::string_view text) {
    auto lines = detail::content_lines(text);
    if (lines.empty() || lines[0].tokens[0] != "sg") throw parse_error(lines.empty() ? 0 : lines[0].number, "expected 'sg' header");
    detail::expect_tokens(lines[0], 2, "sg header");
    int n = detail::parse_int(lines[0].tokens[1], lines[0].number);
    std::vector<std::pair<int, int>> pairs;
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.tokens[0] != "+") throw parse_error(l.number, "expected '+' record");
        detail::expect_tokens(l, 3, "positive edge");
        int u = detail::parse_int(l.tokens[1], l.number);
        int v = detail::parse_int(l.tokens[2], l.number);
        if (u < 1 || v < 1 || u > n || v > n) throw parse_error(l.number, "edge endpoint out of range");
        if (u == v) throw parse_error(l.number, "self pair");
        if (!seen.emplace(std::min(u, v), std::max(u, v)).second) throw parse_error(l.number, "duplicate positive pair");
        pairs.emplace_back(std::min(u, v), std::max(u, v));
    }
    return SignedGraph(n, std::move(pairs));
}

inline Partition parse_partition(std::string_view text) {
    auto lines = detail::content_lines(text);
    if (lines.empty() || lines[0].tokens[0] != "p") throw parse_error(lines.empty() ? 0 : lines[0].number, "expected 'p' header");
    detail::expect_tokens(lines[0], 3, "p header");
    int n = detail::parse_int(lines[0].tokens[1], lines[0].number);
    int k = detail::parse_int(lines[0].tokens[2], lines[0].number);
    if (n < 0 || k < 0) throw parse_error(lines[0].number, "negative size");
    if (static_cast<int>(lines.size()) - 1 != k)
        throw parse_error(lines.back().number, "header announces " + std::to_string(k) + " clusters");
    std::vector<std::vector<int>> clusters;
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.tokens[0] != "c" || l.tokens.size() < 2) throw parse_error(l.number, "expected non-empty 'c' record");
        std::vector<int> members;
        for (std::size_t t = 1; t < l.tokens.size(); ++t) {
            int v = detail::parse_int(l.tokens[t], l.number);
            if (v < 1 || v > n) throw parse_error(l.number, "vertex " + std::to_string(v) + " out of range");
            if (used[static_cast<std::size_t>(v - 1)]++) throw parse_error(l.number, "vertex " + std::to_string(v) + " assigned twice");
            members.push_back(v);
        }
        clusters.push_back(std::move(members));
    }
    for (int v = 1; v <= n; ++v)
        if (!used[static_cast<std::size_t>(v - 1)]) throw parse_error(lines.back().number, "vertex " + std::to_string(v) + " unassigned");
    return Partition::from_clusters(n, clusters);
}

inline WeightedGraph parse_weighted_graph(std::string_view text) {
    auto all = detail::read_lines(text);
    WeightedGraph g;
    std::vector<detail::TextLine> lines;
    for (auto& l : all) {
        if (!l.comment) {
            lines.push_back(l);
        } else if (l.tokens.size() == 2 && l.tokens[0] == "dropped-selfpair-mass") {
            g.dropped_selfpair_mass = detail::parse_real(l.tokens[1], l.number);
        }
    }
    if (lines.empty() || lines[0].tokens[0] != "wg") throw parse_error(lines.empty() ? 0 : lines[0].number, "expected 'wg' header");
    const auto& hdr = lines[0];
    if (hdr.tokens.size() == 4) {
        if (hdr.tokens[3] != "normalized") throw parse_error(hdr.number, "unknown header flag '" + hdr.tokens[3] + "'");
        g.normalized = true;
    } else {
        detail::expect_tokens(hdr, 3, "wg header");
    }
    g.n = detail::parse_int(hdr.tokens[1], hdr.number);
    int m = detail::parse_int(hdr.tokens[2], hdr.number);
    if (static_cast<int>(lines.size()) - 1 != m)
        throw parse_error(lines.back().number, "header announces " + std::to_string(m) + " edges");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        detail::expect_tokens(l, 3, "weighted edge");
        WeightedEdge e{detail::parse_int(l.tokens[0], l.number), detail::parse_int(l.tokens[1], l.number),
                       detail::parse_real(l.tokens[2], l.number)};
        if (e.u < 1 || e.v < 1 || e.u > g.n || e.v > g.n) throw parse_error(l.number, "edge endpoint out of range");
        if (e.u == e.v) throw parse_error(l.number, "self pair");
        if (!(e.w >= 0.0)) throw parse_error(l.number, "negative weight");
        g.edges.push_back(e);
    }
    try {
        g.validate();
    } catch (const invalid_instance& e) {
        throw parse_error(0, e.what());
    }
    g.edges = g.canonical_edges();
    return g;
}

inline BinaryTree parse_tree(std::string_view text) {
    // single logical line; surrounding whitespace ignored
    std::size_t line = 1;
    std::string s;
    for (char ch : text) {
        if (ch == ' ' || ch == '\t' || ch == '\r') continue;
        if (ch == '\n') {
            if (!s.empty()) break;
            ++line;
            continue;
        }
        s += ch;
    }
    if (s.empty()) throw parse_error(line, "empty tree");
    BinaryTree::Builder builder;
    std::size_t pos = 0;
    // iterative recursive-descent: '(' T ',' T ')' | integer
    struct Frame { int left = -1; };
    std::vector<Frame> stack;
    int done = -1;
    while (true) {
        if (done < 0) {
            if (pos >= s.size()) throw parse_error(line, "unexpected end of tree");
            if (s[pos] == '(') {
                stack.push_back({});
                ++pos;
                continue;
            }
            std::size_t start = pos;
            while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
            if (pos == start) throw parse_error(line, std::string("unexpected character '") + s[pos] + "' in tree");
            done = builder.leaf(detail::parse_int(s.substr(start, pos - start), line));
        }
        if (stack.empty()) break;
        auto& top = stack.back();
        if (top.left < 0) {
            if (pos >= s.size() || s[pos] != ',') throw parse_error(line, "expected ',' in tree");
            ++pos;
            top.left = done;
            done = -1;
        } else {
            if (pos >= s.size() || s[pos] != ')') throw parse_error(line, "expected ')' in tree");
            ++pos;
            done = builder.join(top.left, done);
            stack.pop_back();
        }
    }
    if (pos != s.size()) throw parse_error(line, "trailing characters after tree");
    try {
        return std::move(builder).build(done);
    } catch (const invalid_instance& e) {
        throw parse_error(line, e.what());
    }
}

enum class InstanceKind { hypergraph, signed_graph, weighted_graph, partition, tree };

using Instance = std::variant<Hypergraph3, SignedGraph, WeightedGraph, Partition, BinaryTree>;

inline InstanceKind detect_kind(std::string_view text) {
    auto lines = detail::content_lines(text);
    if (lines.empty()) throw parse_error(0, "empty input");
    const auto& tag = lines[0].tokens[0];
    if (tag == "h3") return InstanceKind::hypergraph;
    if (tag == "sg") return InstanceKind::signed_graph;
    if (tag == "wg") return InstanceKind::weighted_graph;
    if (tag == "p") return InstanceKind::partition;
    if (tag[0] == '(' || (tag[0] >= '0' && tag[0] <= '9')) return InstanceKind::tree;
    throw parse_error(lines[0].number, "unknown format tag '" + tag + "'");
}

inline Instance parse_instance(std::string_view text, InstanceKind kind) {
    switch (kind) {
        case InstanceKind::hypergraph: return parse_hypergraph(text);
        case InstanceKind::signed_graph: return parse_signed_graph(text);
        case InstanceKind::weighted_graph: return parse_weighted_graph(text);
        case InstanceKind::partition: return parse_partition(text);
        case InstanceKind::tree: return parse_tree(text);
    }
    throw parse_error(0, "unknown instance kind");
}

inline Instance parse_instance(std::string_view text) { return parse_instance(text, detect_kind(text)); }

inline std::string serialize_instance(const Instance& instance) {
    return std::visit([](const auto& x) { return to_text(x); }, instance);
}

}  // namespace hardgadget
