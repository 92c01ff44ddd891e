// hardgadget: generate, reduce, solve and verify the clustering gadget instances.
//
// Exit status: 0 success, 1 infeasible / failed verdict, 2 input error, 3 timeout.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hardgadget/cc_engine.hpp"
#include "hardgadget/cc_lemmas.hpp"
#include "hardgadget/cc_reduction.hpp"
#include "hardgadget/gamma.hpp"
#include "hardgadget/generators.hpp"
#include "hardgadget/hc_engine.hpp"
#include "hardgadget/hc_reduction.hpp"
#include "hardgadget/instances.hpp"
#include "hardgadget/parallel.hpp"

using namespace hardgadget;

namespace {

enum Exit { ok = 0, failed = 1, input_error = 2, timed_out = 3 };

struct Config {
    std::string input;
    std::string output;
    std::string layout;
    std::string coloring;
    std::string graph;
    std::string partition;
    std::string tree;
    std::string sigma;
    std::string sigma_out;
    std::string mode;
    std::string panel = "single";
    std::string qnorm = "inf";
    double rho = -0.7;
    double a = 0.5;
    double b = 0.5;
    double tolerance = 1e-10;
    std::optional<double> lo;  // per-panel defaults
    std::optional<double> hi;
    double step = 1e-3;
    double cap = 0.88;
    double budget = 60.0;
    int grid = 0;
    int t = 3;
    int n = 6;
    int m = 3;
    int q = 2;
    int n0 = 4;
    int degree = 2;
    int threads = 0;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> shuffle_seed;
};

std::string slurp(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    return read_file(path);
}

void emit(const Config& c, const std::string& text) {
    if (c.output.empty() || c.output == "-") {
        std::cout << text;
    } else {
        write_file(c.output, text);
    }
}

double parse_qnorm(const std::string& s) {
    if (s == "inf" || s == "infinity") return linf;
    std::size_t used = 0;
    const double q = std::stod(s, &used);
    if (used != s.size() || !(q >= 1.0)) throw std::invalid_argument("q-norm must be >= 1 or 'inf'");
    return q;
}

GadgetLayout layout_for(const Config& c, const std::optional<Hypergraph3>& h) {
    if (!c.layout.empty()) return parse_layout(slurp(c.layout));
    if (h) return reduce_cc(*h).layout;
    throw std::invalid_argument("--layout is required");
}

// ---------------------------------------------------------------------------

int gen_h3_cmd(const Config& c) {
    emit(c, to_text(gen_h3(c.n, c.m, c.seed, parse_h3_mode(c.mode.empty() ? "random" : c.mode))));
    return ok;
}

int reduce_cc_cmd(const Config& c) {
    const auto r = reduce_cc(parse_hypergraph(slurp(c.input)));
    emit(c, to_text(r.graph));
    if (!c.layout.empty()) write_file(c.layout, to_text(r.layout));
    return ok;
}

int solve_cc_cmd(const Config& c) {
    const auto g = parse_signed_graph(slurp(c.input));
    const double q = parse_qnorm(c.qnorm);
    const auto s = cc_opt_bruteforce(g, q);
    emit(c, "# lq-norm " + c.qnorm + " value " + format_real(s.value) + "\n" + to_text(s.partition));
    return ok;
}

int feasible_cc_cmd(const Config& c) {
    const auto g = parse_signed_graph(slurp(c.input));
    FeasibilityOptions opts;
    opts.budget = std::chrono::milliseconds(static_cast<long long>(std::llround(c.budget * 1000.0)));
    opts.shuffle_seed = c.shuffle_seed;
    const auto r = feasible_linf(g, c.t, opts);
    std::string out = "# verdict " + std::string(verdict_name(r.verdict)) + " t " + std::to_string(c.t) + " nodes " +
                      std::to_string(r.nodes) + "\n";
    if (r.partition) out += to_text(*r.partition);
    emit(c, out);
    std::cerr << verdict_name(r.verdict) << "\n";
    switch (r.verdict) {
        case Verdict::feasible: return ok;
        case Verdict::infeasible: return failed;
        case Verdict::timeout: return timed_out;
    }
    return failed;
}

int yes_cc_cmd(const Config& c) {
    const auto h = parse_hypergraph(slurp(c.input));
    Coloring col;
    if (!c.coloring.empty()) {
        col = parse_coloring(slurp(c.coloring));
    } else if (auto found = find_two_coloring(h)) {
        col = *found;
    } else {
        std::cerr << "hypergraph has no proper 2-coloring\n";
        return failed;
    }
    const auto layout = layout_for(c, h);
    emit(c, to_text(yes_clustering(h, col, layout)));
    return ok;
}

int decode_cc_cmd(const Config& c) {
    const auto p = parse_partition(slurp(c.input));
    const auto layout = layout_for(c, std::nullopt);
    const auto r = decode_coloring(p, layout);
    if (!r.ok()) {
        std::cerr << "decode failed: " << r.witness << "\n";
        return failed;
    }
    emit(c, to_text(*r.coloring));
    return ok;
}

int verify_lemmas_cmd(const Config& c) {
    const auto g = parse_signed_graph(slurp(c.graph));
    const auto p = parse_partition(slurp(c.partition));
    const auto layout = layout_for(c, std::nullopt);
    const auto report = verify_lemmas(g, p, layout);
    emit(c, to_text(report));
    return report.vacuous || report.all_pass() ? ok : failed;
}

int gen_lin2_cmd(const Config& c) {
    const auto gen = gen_lin2(c.q, c.n0, c.degree, c.seed, parse_lin2_mode(c.mode.empty() ? "satisfiable" : c.mode));
    emit(c, to_text(gen.instance));
    if (!c.sigma_out.empty()) write_file(c.sigma_out, to_text(gen.planted));
    return ok;
}

int reduce_hc_cmd(const Config& c) {
    const auto g = reduce_hc_exact(parse_lin2(slurp(c.input)), c.rho);
    emit(c, "# constraint-sampling with-replacement\n# rho " + format_real(c.rho) + "\n" + to_text(g));
    return ok;
}

int yes_tree_cmd(const Config& c) {
    const auto inst = parse_lin2(slurp(c.input));
    if (c.sigma.empty()) throw std::invalid_argument("--sigma is required");
    emit(c, to_text(yes_tree(inst, parse_assignment(slurp(c.sigma)))));
    return ok;
}

int eval_hc_cmd(const Config& c) {
    const auto g = parse_weighted_graph(slurp(c.graph));
    const auto t = parse_tree(slurp(c.tree));
    const double v = hc_value(g, t);
    emit(c, "value " + format_real(v) + "\nnormalized " + format_real(g.n > 0 ? v / g.n : 0.0) + "\n");
    return ok;
}

int solve_hc_cmd(const Config& c) {
    const auto s = hc_opt_bruteforce(parse_weighted_graph(slurp(c.input)));
    emit(c, "# value " + format_real(s.value) + "\n" + to_text(s.tree));
    return ok;
}

int gamma_cmd(const Config& c) {
    if (c.grid <= 0) {
        emit(c, format_real(gamma(GammaQuery{c.rho, c.a, c.b, c.tolerance})) + "\n");
        return ok;
    }
    const auto k = static_cast<std::size_t>(c.grid) + 1;
    std::vector<double> values(k * k);
    parallel_for(values.size(), resolve_threads(c.threads), [&](std::size_t i) {
        const double a = static_cast<double>(i / k) / c.grid, b = static_cast<double>(i % k) / c.grid;
        values[i] = gamma(GammaQuery{c.rho, a, b, c.tolerance});
    });
    std::string out = "a,b,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        out += format_real(static_cast<double>(i / k) / c.grid) + "," + format_real(static_cast<double>(i % k) / c.grid) +
               "," + format_real(values[i]) + "\n";
    emit(c, out);
    return ok;
}

int curves_cmd(const Config& c) {
    const CurveOptions o{c.rho, c.step, c.threads};
    std::string out;
    if (c.panel == "single") {
        out = "beta,value\n";
        for (const auto& p : single_bound_curve(c.lo.value_or(0.6), c.hi.value_or(0.88), o)) out += format_real(p.beta) + "," + format_real(p.value) + "\n";
    } else if (c.panel == "split") {
        out = "beta1,beta2,value\n";
        for (const auto& p : split_bound_curve(c.lo.value_or(0.44), c.hi.value_or(0.88), c.cap, o))
            out += format_real(p.beta) + "," + format_real(p.beta2) + "," + format_real(p.value) + "\n";
    } else if (c.panel == "gw") {
        out = "rho,value\n";
        for (double r : detail::grid(std::max(-1.0, c.lo.value_or(-1.0)), std::min(0.0, c.hi.value_or(0.0)), c.step))
            out += format_real(r) + "," + format_real(gw_curve(r)) + "\n";
    } else {
        throw std::invalid_argument("unknown panel '" + c.panel + "' (single, split, gw)");
    }
    emit(c, out);
    return ok;
}

int ratio_cmd(const Config& c) {
    const auto r = hardness_ratio();
    emit(c, format_real(r.numerator) + " / " + format_real(r.denominator) + " = " + format_real(r.ratio()) + "\n");
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hardness-reduction gadgets for local correlation clustering and hierarchical clustering"};
    app.require_subcommand(1);
    Config c;

    auto io = [&](CLI::App* s, bool input = true) {
        if (input) s->add_option("input", c.input, "input file ('-' or omitted for stdin)");
        s->add_option("-o,--output", c.output, "output file (default stdout)");
        s->add_option("--threads", c.threads, "worker threads (default $HARDGADGET_THREADS or all cores)");
    };

    auto* gen_h3_app = app.add_subcommand("gen-h3", "generate a 3-uniform hypergraph");
    io(gen_h3_app, false);
    gen_h3_app->add_option("--n", c.n, "vertices")->required();
    gen_h3_app->add_option("--m", c.m, "triples")->required();
    gen_h3_app->add_option("--seed", c.seed, "random seed");
    gen_h3_app->add_option("--mode", c.mode, "random | 2colorable | odd-cycle-style");

    auto* reduce_cc_app = app.add_subcommand("reduce-cc", "hypergraph -> signed graph (+ layout)");
    io(reduce_cc_app);
    reduce_cc_app->add_option("--layout", c.layout, "write the gadget layout here");

    auto* solve_cc_app = app.add_subcommand("solve-cc", "exact l_q-optimal clustering (n <= 13)");
    io(solve_cc_app);
    solve_cc_app->add_option("--q", c.qnorm, "norm: number >= 1 or 'inf'");

    auto* feasible_app = app.add_subcommand("feasible-cc", "decide whether l_inf <= t is achievable");
    io(feasible_app);
    feasible_app->add_option("--t", c.t, "mistake budget per vertex");
    feasible_app->add_option("--budget", c.budget, "time limit in seconds");
    feasible_app->add_option("--shuffle-seed", c.shuffle_seed, "try clusters in a seeded random order");

    auto* yes_app = app.add_subcommand("yes-cc", "clustering with at most 3 mistakes from a 2-coloring");
    io(yes_app);
    yes_app->add_option("--coloring", c.coloring, "coloring file (default: search for one)");
    yes_app->add_option("--layout", c.layout, "layout file (default: rebuild from the hypergraph)");

    auto* decode_app = app.add_subcommand("decode-cc", "recover a 2-coloring from a clustering");
    io(decode_app);
    decode_app->add_option("--layout", c.layout, "layout file")->required();

    auto* lemmas_app = app.add_subcommand("verify-lemmas", "check the structural facts on a clustering");
    io(lemmas_app, false);
    lemmas_app->add_option("--graph", c.graph, "signed graph")->required();
    lemmas_app->add_option("--partition", c.partition, "partition")->required();
    lemmas_app->add_option("--layout", c.layout, "layout file")->required();

    auto* gen_lin2_app = app.add_subcommand("gen-lin2", "generate a regular Max-2Lin(q) instance");
    io(gen_lin2_app, false);
    gen_lin2_app->add_option("--q", c.q, "modulus");
    gen_lin2_app->add_option("--n0", c.n0, "variables");
    gen_lin2_app->add_option("--degree", c.degree, "equations per variable (even)");
    gen_lin2_app->add_option("--seed", c.seed, "random seed");
    gen_lin2_app->add_option("--mode", c.mode, "satisfiable | random");
    gen_lin2_app->add_option("--sigma-out", c.sigma_out, "write the planted assignment here");

    auto* reduce_hc_app = app.add_subcommand("reduce-hc", "Max-2Lin(q) -> weighted graph (exact weights)");
    io(reduce_hc_app);
    reduce_hc_app->add_option("--rho", c.rho, "correlation");

    auto* yes_tree_app = app.add_subcommand("yes-tree", "balanced tree from an assignment");
    io(yes_tree_app);
    yes_tree_app->add_option("--sigma", c.sigma, "assignment file")->required();

    auto* eval_app = app.add_subcommand("eval-hc", "objective of a tree");
    io(eval_app, false);
    eval_app->add_option("--graph", c.graph, "weighted graph")->required();
    eval_app->add_option("--tree", c.tree, "tree")->required();

    auto* solve_hc_app = app.add_subcommand("solve-hc", "exact optimal tree (n <= 10)");
    io(solve_hc_app);

    auto* gamma_app = app.add_subcommand("gamma", "Gamma_rho(a, b)");
    io(gamma_app, false);
    gamma_app->add_option("--rho", c.rho, "correlation in [-1, 0]");
    gamma_app->add_option("--a", c.a, "first quantile level");
    gamma_app->add_option("--b", c.b, "second quantile level");
    gamma_app->add_option("--tolerance", c.tolerance, "absolute error");
    gamma_app->add_option("--grid", c.grid, "emit a CSV over a,b in {0, 1/N, ..., 1}");

    auto* curves_app = app.add_subcommand("curves", "bound curves as CSV");
    io(curves_app, false);
    curves_app->add_option("--panel", c.panel, "single | split | gw");
    curves_app->add_option("--rho", c.rho, "correlation");
    curves_app->add_option("--lo", c.lo, "first abscissa (single 0.6, split 0.44, gw -1)");
    curves_app->add_option("--hi", c.hi, "last abscissa (single and split 0.88, gw 0)");
    curves_app->add_option("--step", c.step, "grid step");
    curves_app->add_option("--cap", c.cap, "beta1 + beta2 for the split panel");

    auto* ratio_app = app.add_subcommand("ratio", "NO/YES value ratio");
    io(ratio_app, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return input_error;
    }

    const std::vector<std::pair<CLI::App*, int (*)(const Config&)>> table{
        {gen_h3_app, gen_h3_cmd},       {reduce_cc_app, reduce_cc_cmd},   {solve_cc_app, solve_cc_cmd},
        {feasible_app, feasible_cc_cmd}, {yes_app, yes_cc_cmd},           {decode_app, decode_cc_cmd},
        {lemmas_app, verify_lemmas_cmd}, {gen_lin2_app, gen_lin2_cmd},    {reduce_hc_app, reduce_hc_cmd},
        {yes_tree_app, yes_tree_cmd},    {eval_app, eval_hc_cmd},         {solve_hc_app, solve_hc_cmd},
        {gamma_app, gamma_cmd},          {curves_app, curves_cmd},        {ratio_app, ratio_cmd},
    };
    try {
        for (const auto& [sub, run] : table)
            if (sub->parsed()) return run(c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    }
    return input_error;
}
