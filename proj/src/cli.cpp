#include "topdag/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "topdag/topdag.hpp"

namespace topdag::cli {

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string input = "-";
    std::string output;
    std::string mode = "dag";
    std::optional<std::uint32_t> k;
    std::uint64_t seed = 1;
    std::size_t edges = 0;
    std::size_t alphabet = 1;
    std::string shape = "uniform";
    std::vector<std::size_t> sizes;
    bool mode_given = false;
};

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) throw IoError("error reading '" + path + "'");
    return text;
}

void write_output(const std::string& path, const std::string& payload, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << payload;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    file << payload;
    if (!file) throw IoError("error writing '" + path + "'");
}

std::string format_ratio(double x) {
    std::ostringstream s;
    s << std::setprecision(6) << x;
    return s.str();
}

void print_stats(const TopDagStats& s, std::ostream& err) {
    err << "n=" << s.n << " k=" << s.k << " sigma=" << s.sigma << " size=" << s.store_nodes
        << " edges=" << s.store_edges << " height=" << s.height << " rounds=" << s.rounds
        << " ratio_nlog=" << format_ratio(s.ratio_nlog) << " ratio_daglog=" << format_ratio(s.ratio_daglog)
        << '\n';
}

bool looks_like_topdag(std::string_view text) {
    auto first = text.find_first_not_of(" \t\r\n");
    return first != std::string_view::npos && text.substr(first, 6) == "TOPDAG";
}

int cmd_compress(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Mode mode = parse_mode(cfg.mode);
    Tree t = parse_tree(read_input(cfg.input));
    if (t.edge_count() == 0) {
        write_output(cfg.output, serialize_topdag(TopDag::single_node(t.symbol(0), mode)), out);
        err << "n=0 single node\n";
        return kOk;
    }
    CompressionTrace trace = compress_traced(t, mode, cfg.k);
    write_output(cfg.output, serialize_topdag(trace.topdag), out);
    print_stats(topdag_stats(trace.topdag, trace.input_dag.size(), trace.assembly.rounds), err);
    return kOk;
}

int cmd_decompress(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    TopDag d = deserialize_topdag(read_input(cfg.input));
    write_output(cfg.output, serialize_tree(decompress(d)) + "\n", out);
    return kOk;
}

class CheckReport {
public:
    explicit CheckReport(std::ostream& out) : out_(out) {}

    void check(bool ok, std::string_view scope, std::string_view name) {
        out_ << (ok ? "PASS " : "FAIL ") << scope << ' ' << name << '\n';
        failed_ |= !ok;
    }
    bool failed() const noexcept { return failed_; }

private:
    std::ostream& out_;
    bool failed_ = false;
};

bool all_reachable(const TopDag& d) {
    return d.store.stats(d.root).reachable_nodes == d.store.size();
}

void verify_tree(const Tree& t, const RunConfig& cfg, CheckReport& report) {
    if (t.edge_count() == 0) {
        TopDag d = TopDag::single_node(t.symbol(0), Mode::Dag);
        report.check(decompress(deserialize_topdag(serialize_topdag(d))) == t, "single", "roundtrip");
        return;
    }
    for (Mode mode : {Mode::Tree, Mode::Dag}) {
        const std::string scope = "mode=" + std::string(mode_name(mode));
        CompressionTrace tr = compress_traced(t, mode, cfg.k);
        const std::uint32_t k = tr.topdag.meta.k;
        const std::uint64_t n = t.edge_count();
        const std::size_t skeleton_edges = tr.shrunk.skeleton.edge_count();

        report.check(decompress(tr.topdag) == t, scope, "roundtrip");
        report.check(tr.shrunk.max_weight() <= 2ULL * k, scope, "weight_cap");
        report.check(tr.shrunk.total_weight() == n, scope, "weight_sum");
        report.check(skeleton_edges <= 1 || skeleton_edges * k <= 8 * n, scope, "skeleton_bound");
        bool fix = is_fixpoint(tr.shrunk, k) && (!tr.shrunk_dag || is_fixpoint(*tr.shrunk_dag, k));
        report.check(fix, scope, "fixpoint");
        bool ranks = true;
        for (NodeId v = 1; v < tr.shrunk.skeleton.size(); ++v)
            ranks &= (tr.working.rank(tr.shrunk.edges[v].cluster) == 0) == tr.shrunk.skeleton.is_leaf(v);
        report.check(ranks, scope, "rank_coherence");
        report.check(tr.topdag.store.is_duplicate_free() && all_reachable(tr.topdag), scope, "sharing");
        report.check(tr.topdag.store.height(tr.topdag.root) <= 2 * k + tr.assembly.rounds, scope, "height");
        const std::string bytes = serialize_topdag(tr.topdag);
        report.check(serialize_topdag(deserialize_topdag(bytes)) == bytes, scope, "codec");
    }
}

void verify_topdag(const TopDag& d, CheckReport& report) {
    const std::string scope = "topdag";
    if (d.is_single_node()) {
        report.check(true, scope, "sharing");
        report.check(decompress(d).edge_count() == 0, scope, "roundtrip");
        return;
    }
    report.check(d.store.is_duplicate_free(), scope, "sharing");
    report.check(all_reachable(d), scope, "reachability");
    Tree t = decompress(d);
    TopDag again = compress(t, d.meta.mode, d.meta.k == 0 ? std::nullopt : std::optional(d.meta.k));
    report.check(decompress(again) == t, scope, "roundtrip");
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const std::string text = read_input(cfg.input);
    CheckReport report(out);
    if (looks_like_topdag(text))
        verify_topdag(deserialize_topdag(text), report);
    else
        verify_tree(parse_tree(text), cfg, report);
    return report.failed() ? kVerifyFailed : kOk;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    Tree t = random_tree(cfg.edges, cfg.alphabet, cfg.seed, parse_shape(cfg.shape));
    write_output(cfg.output, serialize_tree(t) + "\n", out);
    return kOk;
}

// Largest 2^h - 2 not exceeding `size`.
std::size_t full_binary_edges(std::size_t size) {
    std::size_t edges = 0;
    while ((edges + 2) * 2 - 2 <= size) edges = (edges + 2) * 2 - 2;
    return edges;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.sizes.empty()) throw std::invalid_argument("--sizes must list at least one size");
    const Shape shape = parse_shape(cfg.shape);
    std::vector<Mode> modes{Mode::Tree, Mode::Dag};
    if (cfg.mode_given) modes = {parse_mode(cfg.mode)};

    out << "shape,sigma,n,k,mode,topdag_nodes,topdag_height,dag_nodes,ratio_nlog,ratio_daglog,rounds,wall_ms\n";
    for (std::size_t size : cfg.sizes) {
        const std::size_t edges = shape == Shape::FullBinary ? full_binary_edges(size) : size;
        std::optional<Tree> t;
        try {
            t = random_tree(edges, cfg.alphabet, cfg.seed, shape);
        } catch (const std::exception& e) {
            err << "error: generating " << shape_name(shape) << " tree with " << edges << " edges: " << e.what() << '\n';
            return kIoError;
        }
        if (t->edge_count() == 0) {
            err << "skipping size " << size << ": tree has no edges\n";
            continue;
        }
        for (Mode mode : modes) {
            auto start = std::chrono::steady_clock::now();
            CompressionTrace tr = compress_traced(*t, mode, cfg.k);
            auto stop = std::chrono::steady_clock::now();
            const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
            TopDagStats s = topdag_stats(tr.topdag, tr.input_dag.size(), tr.assembly.rounds);
            out << shape_name(shape) << ',' << s.sigma << ',' << s.n << ',' << s.k << ',' << mode_name(mode)
                << ',' << s.store_nodes << ',' << s.height << ',' << tr.input_dag.node_count << ','
                << format_ratio(s.ratio_nlog) << ',' << format_ratio(s.ratio_daglog) << ',' << s.rounds
                << ',' << format_ratio(ms) << '\n';
        }
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Top dag tree compression"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_mode = [&](CLI::App* cmd) {
        cmd->add_option("--mode", cfg.mode, "tree or dag")->check(CLI::IsMember({"tree", "dag"}));
    };
    auto add_k = [&](CLI::App* cmd) {
        cmd->add_option("--k", cfg.k, "merge threshold (default from n and sigma)")->check(CLI::PositiveNumber);
    };

    auto* compress_cmd = app.add_subcommand("compress", "Compress a tree file into a top dag");
    compress_cmd->add_option("input", cfg.input, "tree file, - for stdin");
    compress_cmd->add_option("-o", cfg.output, "output file (default stdout)");
    add_mode(compress_cmd);
    add_k(compress_cmd);

    auto* decompress_cmd = app.add_subcommand("decompress", "Expand a top dag file into a tree");
    decompress_cmd->add_option("input", cfg.input, "top dag file, - for stdin");
    decompress_cmd->add_option("-o", cfg.output, "output file (default stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "Check construction invariants on a tree or top dag file");
    verify_cmd->add_option("input", cfg.input, "tree or top dag file, - for stdin");
    add_k(verify_cmd);

    auto* gen_cmd = app.add_subcommand("gen", "Generate a random tree");
    gen_cmd->add_option("--edges", cfg.edges, "number of edges")->required();
    gen_cmd->add_option("--alphabet", cfg.alphabet, "number of labels")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", cfg.seed, "random seed");
    gen_cmd->add_option("--shape", cfg.shape, "uniform, path, star, caterpillar or full_binary");
    gen_cmd->add_option("-o", cfg.output, "output file (default stdout)");

    auto* bench_cmd = app.add_subcommand("bench", "Compress generated trees and print CSV metrics");
    bench_cmd->add_option("--sizes", cfg.sizes, "comma separated edge counts")->delimiter(',')->required();
    bench_cmd->add_option("--alphabet", cfg.alphabet, "number of labels")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", cfg.seed, "random seed");
    bench_cmd->add_option("--shape", cfg.shape, "tree shape");
    add_mode(bench_cmd);
    add_k(bench_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    }
    cfg.mode_given = bench_cmd->count("--mode") > 0;

    try {
        if (*compress_cmd) return cmd_compress(cfg, out, err);
        if (*decompress_cmd) return cmd_decompress(cfg, out, err);
        if (*verify_cmd) return cmd_verify(cfg, out, err);
        if (*gen_cmd) return cmd_gen(cfg, out, err);
        if (*bench_cmd) return cmd_bench(cfg, out, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const TopDagFormatError& e) {
        err << "error: malformed top dag: " << e.what() << '\n';
        return kMalformedTopDag;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    }
    return kParseError;
}

} // namespace topdag::cli
