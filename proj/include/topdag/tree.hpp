#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace topdag {

using NodeId = std::uint32_t;
using LabelId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr LabelId kNoLabel = std::numeric_limits<LabelId>::max();

/// True iff `symbol` is a nonempty identifier over [A-Za-z0-9_].
bool is_valid_label(std::string_view symbol) noexcept;

/// Ordered, unranked, node-labelled tree.
///
/// Nodes are numbered 0..size()-1 in preorder, so the root is always node 0
/// and every child has a larger id than its parent. Labels are indices into a
/// per-tree alphabet; equality compares label strings, not indices, so trees
/// built over different alphabets compare correctly.
class Tree {
public:
    /// Builds a tree from preorder data. `parents[0]` must be kNoNode and the
    /// parent sequence must describe a valid preorder numbering.
    Tree(std::vector<std::string> alphabet, std::vector<LabelId> labels,
         std::vector<NodeId> parents);

    static Tree single(std::string_view label);

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return labels_.size() - 1; }
    NodeId root() const noexcept { return 0; }

    LabelId label(NodeId v) const { return labels_[v]; }
    std::string_view symbol(NodeId v) const { return alphabet_[labels_[v]]; }
    NodeId parent(NodeId v) const { return parents_[v]; }
    std::span<const NodeId> children(NodeId v) const {
        return {child_list_.data() + child_begin_[v],
                child_list_.data() + child_begin_[v + 1]};
    }
    std::size_t degree(NodeId v) const { return child_begin_[v + 1] - child_begin_[v]; }
    bool is_leaf(NodeId v) const { return degree(v) == 0; }

    const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
    const std::vector<LabelId>& labels() const noexcept { return labels_; }
    const std::vector<NodeId>& parents() const noexcept { return parents_; }

    /// Number of distinct labels that actually occur in the tree.
    std::size_t distinct_labels() const;

    friend bool operator==(const Tree& s, const Tree& t);

private:
    std::vector<std::string> alphabet_;
    std::vector<LabelId> labels_;
    std::vector<NodeId> parents_;
    std::vector<std::uint32_t> child_begin_;
    std::vector<NodeId> child_list_;
};

/// Incremental tree construction in arbitrary insertion order. Children are
/// appended to the end of their parent's child list; build() renumbers the
/// nodes into preorder.
class TreeBuilder {
public:
    TreeBuilder() = default;
    explicit TreeBuilder(std::vector<std::string> alphabet);

    LabelId intern(std::string_view symbol);
    NodeId add_root(LabelId label);
    NodeId add_child(NodeId parent, LabelId label);

    std::size_t size() const noexcept { return labels_.size(); }
    LabelId label(NodeId v) const { return labels_[v]; }
    bool has_children(NodeId v) const { return first_child_[v] != kNoNode; }

    /// If `new_ids` is given it receives, for every builder node, its id in
    /// the returned tree.
    Tree build(std::vector<NodeId>* new_ids = nullptr) const;

private:
    std::vector<std::string> alphabet_;
    std::unordered_map<std::string, LabelId> index_;
    std::vector<LabelId> labels_;
    std::vector<NodeId> first_child_;
    std::vector<NodeId> last_child_;
    std::vector<NodeId> next_sibling_;
    NodeId root_ = kNoNode;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Parses `LABEL | LABEL "(" TREE ("," TREE)* ")"` with optional whitespace
/// between tokens. Throws ParseError carrying the byte offset of the problem.
Tree parse_tree(std::string_view text);

/// Canonical text: no whitespace, children in order.
std::string serialize_tree(const Tree& t);

enum class Shape { Uniform, Path, Star, Caterpillar, FullBinary };

Shape parse_shape(std::string_view name);
std::string_view shape_name(Shape shape) noexcept;

/// Name of the i-th generated label: a..z, then l26, l27, ...
std::string generated_label(std::size_t index);

/// Deterministic random tree. Uniform shape samples ordered shapes uniformly
/// (cycle lemma over a shuffled step sequence); labels are independent and
/// uniform over `alphabet` generated labels. FullBinary requires
/// edges == 2^h - 2 for some h >= 1.
Tree random_tree(std::size_t edges, std::size_t alphabet, std::uint64_t seed, Shape shape);

inline constexpr std::size_t kMaxEnumerationEdges = 8;

/// Every ordered labelled tree with 1..max_edges edges over the first
/// `alphabet` generated labels, each exactly once.
std::vector<Tree> enumerate_trees(std::size_t max_edges, std::size_t alphabet);

} // namespace topdag
