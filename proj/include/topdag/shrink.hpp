#pragma once

#include <cstdint>
#include <vector>

#include "topdag/cluster.hpp"
#include "topdag/dag.hpp"
#include "topdag/tree.hpp"

namespace topdag {

/// r = 64 (sigma^2 + 1)^2, the base of the logarithm that fixes k.
std::uint64_t cluster_alphabet_base(std::uint32_t sigma);

/// k = max(1, floor(log_r(n) / 2)), clamped to n; computed exactly as the
/// largest k with r^(2k) <= n. Requires n >= 1 and sigma >= 2.
std::uint32_t compute_k(std::uint64_t n, std::uint32_t sigma);

/// 2k * r^k: an upper bound on the number of distinct top trees of size at
/// most 2k. Throws std::overflow_error if the value does not fit 64 bits.
std::uint64_t count_bound(std::uint32_t k, std::uint32_t sigma);

/// Weight and cluster handle carried by a skeleton edge.
struct EdgeData {
    std::uint64_t weight = 0;
    TopId cluster;
};

/// Result of shrinking a tree: the contracted skeleton t' and, for every
/// skeleton edge (identified by its child node), the number of original
/// edges it stands for and a top tree evaluating to that cluster.
struct ShrunkenTree {
    Tree skeleton;
    std::vector<EdgeData> edges;  // indexed by skeleton child node; [0] unused
    std::vector<NodeId> origin;   // skeleton node -> input node

    std::uint64_t total_weight() const;
    std::uint64_t max_weight() const;
};

/// Shrinking performed on a dag: edge data is per (node, child position),
/// indexed by Dag::edge_begin(node) + position.
struct ShrunkenDag {
    Dag skeleton;
    std::vector<EdgeData> edges;
};

enum class MergeCase : std::uint8_t {
    Chain,      // (u,v),(v,w) with w the only child of v
    LeftLeaf,   // leaf v is the left sibling of w
    RightLeaf,  // leaf v is the right sibling of w
};

/// One step of shrink_tree. Edges are named by their child node in the input
/// tree; the edge `absorbed` disappears and `kept` now carries the union.
struct MergeEvent {
    MergeCase kind;
    NodeId absorbed;
    NodeId kept;
};

struct ShrinkStats {
    std::size_t merges = 0;
    std::size_t queue_pops = 0;
    std::size_t initial_queue = 0;
};

/// Contracts `t` with the three merge rules at threshold k until none
/// applies. Cluster top trees are consed into `store` (labels are interned by
/// name). Requires at least one edge and k >= 1.
ShrunkenTree shrink_tree(const Tree& t, std::uint32_t k, ConsStore& store,
                         ShrinkStats* stats = nullptr, std::vector<MergeEvent>* log = nullptr);

/// The same contraction on a dag, where a dag edge stands for all of its
/// occurrences in the unfolded tree.
ShrunkenDag shrink_dag(const Dag& d, std::uint32_t k, ConsStore& store,
                       ShrinkStats* stats = nullptr);

/// Unfolds the skeleton, copying each dag edge's data onto its occurrences.
ShrunkenTree unfold(const ShrunkenDag& s, std::size_t node_limit = kDefaultUnfoldLimit);

/// Exhaustive scan: true iff no pair of edges admits one of the merge rules
/// at threshold k.
bool is_fixpoint(const ShrunkenTree& s, std::uint32_t k);
bool is_fixpoint(const ShrunkenDag& s, std::uint32_t k);

} // namespace topdag
