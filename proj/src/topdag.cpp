#include "topdag/topdag.hpp"

#include <algorithm>
#include <cmath>

namespace topdag {

Mode parse_mode(std::string_view name) {
    if (name == "tree") return Mode::Tree;
    if (name == "dag") return Mode::Dag;
    throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

std::string_view mode_name(Mode mode) noexcept { return mode == Mode::Tree ? "tree" : "dag"; }

TopDag TopDag::single_node(std::string_view label, Mode mode) {
    TopDag d;
    d.meta = {0, 2, 0, mode};
    d.single_label = std::string(label);
    return d;
}

std::uint32_t effective_sigma(const Tree& t) {
    return static_cast<std::uint32_t>(std::max<std::size_t>(2, t.distinct_labels()));
}

CompressionTrace compress_traced(const Tree& t, Mode mode, std::optional<std::uint32_t> k_override) {
    const std::uint64_t n = t.edge_count();
    if (n == 0) throw std::invalid_argument("cannot compress a tree without edges");
    if (k_override && *k_override == 0) throw std::invalid_argument("k must be at least 1");
    const std::uint32_t sigma = effective_sigma(t);
    const std::uint32_t k = k_override ? *k_override : compute_k(n, sigma);

    ConsStore working(t.alphabet());
    Dag dag = build_min_dag(t);
    const DagStats input_dag = dag_stats(dag);
    ShrinkStats shrink_stats;
    std::optional<ShrunkenDag> shrunk_dag;
    std::optional<ShrunkenTree> shrunk;
    if (mode == Mode::Tree) {
        shrunk = shrink_tree(t, k, working, &shrink_stats);
    } else {
        shrunk_dag = shrink_dag(dag, k, working, &shrink_stats);
        shrunk = unfold(*shrunk_dag);
    }
    AssemblyResult assembly = build_top_tree(*shrunk, working);

    TopDag out;
    out.store = working.seal(assembly.root);
    out.root = TopId{static_cast<std::uint32_t>(out.store.size() - 1)};
    out.meta = {n, sigma, k, mode};
    return {std::move(working), std::move(*shrunk), std::move(shrunk_dag), shrink_stats,
            assembly, input_dag, std::move(out)};
}

TopDag compress(const Tree& t, Mode mode, std::optional<std::uint32_t> k_override) {
    return std::move(compress_traced(t, mode, k_override).topdag);
}

Tree decompress(const TopDag& d) {
    if (d.single_label) return Tree::single(*d.single_label);
    BoundedTree b = d.store.eval(d.root);
    if (b.rank != 0) throw TopDagFormatError("top dag root has rank 1");
    return std::move(b.tree);
}

TopDagStats topdag_stats(const TopDag& d, std::optional<std::size_t> dag_size, std::uint32_t rounds) {
    TopDagStats s;
    s.n = d.meta.n;
    s.k = d.meta.k;
    s.sigma = d.meta.sigma;
    s.rounds = rounds;
    if (d.single_label) {
        s.store_nodes = 1;
        s.height = 1;
        s.dag_size = 1;
    } else {
        TopStats t = d.store.stats(d.root);
        s.store_nodes = t.reachable_nodes;
        s.height = t.height;
        // Only merge nodes have outgoing edges, two each; leaves have none.
        std::size_t leaves = 0;
        std::vector<bool> seen(d.store.size(), false);
        std::vector<std::uint32_t> stack{d.root.value};
        seen[d.root.value] = true;
        while (!stack.empty()) {
            const TopNode& n = d.store.node({stack.back()});
            stack.pop_back();
            if (n.is_leaf()) {
                ++leaves;
                continue;
            }
            for (std::uint32_t c : {n.first, n.second})
                if (!seen[c]) {
                    seen[c] = true;
                    stack.push_back(c);
                }
        }
        s.store_edges = 2 * (s.store_nodes - leaves);
        s.dag_size = dag_size ? *dag_size : dag_stats(build_min_dag(decompress(d))).size();
    }
    const double nn = static_cast<double>(std::max<std::uint64_t>(s.n, 1));
    const double log_sigma_n = std::max(1.0, std::log(nn) / std::log(static_cast<double>(s.sigma)));
    const double log2_n = std::max(1.0, std::log2(nn));
    s.ratio_nlog = static_cast<double>(s.store_nodes) / (nn / log_sigma_n);
    s.ratio_daglog = static_cast<double>(s.store_nodes) / (static_cast<double>(s.dag_size) * log2_n);
    return s;
}

} // namespace topdag
