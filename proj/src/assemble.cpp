#include <stdexcept>

#include "linked_tree.hpp"
#include "topdag/topdag.hpp"

namespace topdag {

AssemblyResult build_top_tree(const ShrunkenTree& s, ConsStore& store) {
    const Tree& t = s.skeleton;
    if (t.edge_count() == 0) throw std::invalid_argument("cannot assemble an empty skeleton");

    detail::LinkedTree tree(t);
    std::vector<TopId> cluster(t.size());
    for (NodeId v = 1; v < t.size(); ++v) cluster[v] = s.edges[v].cluster;

    // Live nodes, compacted at the start of every round; ascending ids keep
    // the sweep order deterministic.
    std::vector<NodeId> live(t.size());
    for (NodeId v = 0; v < t.size(); ++v) live[v] = v;
    std::vector<std::uint32_t> marked(t.size(), 0); // round in which the edge was produced
    std::size_t edges = t.edge_count();

    AssemblyResult result;
    std::vector<std::vector<NodeId>> chains;
    while (edges > 1) {
        const std::uint32_t round = ++result.rounds;
        std::erase_if(live, [&](NodeId v) { return !tree.alive(v); });
        const std::size_t before = edges;
        auto free_edge = [&](NodeId v) { return marked[v] != round; };

        // Horizontal: adjacent unmarked siblings, at least one a leaf edge.
        for (NodeId u : live) {
            NodeId x = tree.first_child(u);
            while (x != kNoNode) {
                NodeId y = tree.next(x);
                if (y == kNoNode) break;
                if (free_edge(x) && free_edge(y) && (store.rank(cluster[x]) == 0 || store.rank(cluster[y]) == 0)) {
                    TopId merged = store.hmerge(cluster[x], cluster[y]);
                    NodeId keep = store.rank(cluster[y]) == 1 ? y : x;
                    tree.remove_leaf(keep == x ? y : x);
                    cluster[keep] = merged;
                    marked[keep] = round;
                    --edges;
                    x = tree.next(keep);
                } else {
                    x = y;
                }
            }
        }

        // Vertical: maximal chains of unmarked edges through unary nodes,
        // merged pairwise from the top.
        chains.clear();
        for (NodeId v : live) {
            if (v == 0 || !tree.alive(v) || !free_edge(v)) continue;
            NodeId p = tree.parent(v);
            if (p != 0 && tree.degree(p) == 1 && free_edge(p)) continue; // not a chain start
            std::vector<NodeId> chain{v};
            for (NodeId c = v; tree.degree(c) == 1;) {
                c = tree.first_child(c);
                if (!free_edge(c)) break;
                chain.push_back(c);
            }
            if (chain.size() >= 2) chains.push_back(std::move(chain));
        }
        for (const auto& chain : chains) {
            for (std::size_t i = 0; i + 1 < chain.size(); i += 2) {
                NodeId upper = chain[i], lower = chain[i + 1];
                cluster[lower] = store.vmerge(cluster[upper], cluster[lower]);
                tree.splice_out(upper);
                marked[lower] = round;
                --edges;
            }
        }

        if (edges == before) throw std::logic_error("assembly round made no progress");
        result.merges += before - edges;
    }

    result.root = cluster[tree.first_child(0)];
    return result;
}

} // namespace topdag
