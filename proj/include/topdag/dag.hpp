#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "topdag/tree.hpp"

namespace topdag {

using DagNodeId = std::uint32_t;

/// Rooted dag with labelled nodes and ordered child lists. Parallel edges
/// are repeated entries in a child list.
///
/// Node ids are topologically ordered: every child id is smaller than its
/// parent's, the root is the last node, and every node is reachable from it.
class Dag {
public:
    Dag(std::vector<std::string> alphabet, std::vector<LabelId> labels,
        const std::vector<std::vector<DagNodeId>>& children);

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return child_list_.size(); }
    DagNodeId root() const noexcept { return static_cast<DagNodeId>(labels_.size() - 1); }

    LabelId label(DagNodeId v) const { return labels_[v]; }
    std::string_view symbol(DagNodeId v) const { return alphabet_[labels_[v]]; }
    std::span<const DagNodeId> children(DagNodeId v) const {
        return {child_list_.data() + child_begin_[v], child_list_.data() + child_begin_[v + 1]};
    }
    std::size_t degree(DagNodeId v) const { return child_begin_[v + 1] - child_begin_[v]; }
    /// Offset of v's first edge in the global edge numbering; edge
    /// (v, position i) has index edge_begin(v) + i.
    std::size_t edge_begin(DagNodeId v) const { return child_begin_[v]; }

    const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }

private:
    std::vector<std::string> alphabet_;
    std::vector<LabelId> labels_;
    std::vector<std::uint32_t> child_begin_;
    std::vector<DagNodeId> child_list_;
};

struct DagStats {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    /// Size metric used for bounds: nodes plus edges.
    std::size_t size() const noexcept { return node_count + edge_count; }
};

/// Minimal dag by hash-consing (label, child ids) bottom-up. Ids are handed
/// out in postorder of first occurrence, so equal trees get equal dags.
Dag build_min_dag(const Tree& t);

inline constexpr std::size_t kDefaultUnfoldLimit = 100'000'000;

/// Expands shared nodes back into a tree. Throws std::length_error when the
/// result would exceed `node_limit` nodes.
Tree unfold(const Dag& d, std::size_t node_limit = kDefaultUnfoldLimit);

/// Number of nodes in unfold(d), saturating at `cap`.
std::size_t unfolded_size(const Dag& d, std::size_t cap = kDefaultUnfoldLimit + 1);

DagStats dag_stats(const Dag& d) noexcept;

} // namespace topdag
