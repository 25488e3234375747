#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "topdag/tree.hpp"

namespace topdag {

/// Handle into a ConsStore.
struct TopId {
    std::uint32_t value = 0;
    friend auto operator<=>(TopId, TopId) = default;
};

enum class NodeKind : std::uint8_t { Leaf, Vertical, Horizontal };

/// One node of a top tree together with the metadata of the cluster it
/// evaluates to. For a leaf, `first`/`second` are the labels (a, b) of the
/// atomic cluster; for a merge they are the operand ids.
struct TopNode {
    NodeKind kind = NodeKind::Leaf;
    std::uint8_t rank = 0;
    std::uint32_t first = 0;
    std::uint32_t second = 0;
    LabelId root_label = 0;
    LabelId bottom_label = kNoLabel; // present iff rank == 1
    std::uint32_t height = 1;
    std::uint64_t weight = 1;

    bool is_leaf() const noexcept { return kind == NodeKind::Leaf; }
    TopId left() const noexcept { return {first}; }
    TopId right() const noexcept { return {second}; }
};

class MergeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operand ranks do not admit the merge: vertical merge of a rank-0 upper
/// cluster, or horizontal merge of two rank-1 clusters.
class RankViolation : public MergeError {
public:
    using MergeError::MergeError;
};

/// The boundary nodes to be identified carry different labels.
class LabelMismatch : public MergeError {
public:
    using MergeError::MergeError;
};

class UnknownTopId : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// A cluster: a tree whose root is the top boundary node, plus for rank 1 a
/// distinguished non-root leaf as bottom boundary node.
struct BoundedTree {
    Tree tree;
    int rank = 0;
    std::optional<NodeId> bottom;

    friend bool operator==(const BoundedTree&, const BoundedTree&) = default;
};

struct TopStats {
    std::size_t reachable_nodes = 0;
    std::uint32_t height = 0;
    std::uint64_t weight = 0;
    int rank = 0;
};

/// Append-only, hash-consed table of top tree nodes. At most one id exists
/// per structural signature, so every top tree built here is stored as its
/// minimal dag. Merges validate rank and label compatibility eagerly, which
/// makes eval() total on ids produced by atomic/vmerge/hmerge.
class ConsStore {
public:
    explicit ConsStore(std::vector<std::string> alphabet = {});

    LabelId intern(std::string_view symbol);
    const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
    std::string_view symbol(LabelId l) const { return alphabet_.at(l); }

    TopId atomic(LabelId a, LabelId b, int rank);
    TopId atomic(std::string_view a, std::string_view b, int rank);
    /// s ⊘ t: glue t's root onto s's bottom boundary node.
    TopId vmerge(TopId s, TopId t);
    /// s ⊙ t: glue the roots; s's root children precede t's.
    TopId hmerge(TopId s, TopId t);

    /// Appends a node without consulting the sharing index. Operands must
    /// already exist; metadata is recomputed and validated as for the
    /// regular constructors. Used when loading serialized top dags.
    TopId append_unshared(NodeKind kind, std::uint32_t first, std::uint32_t second, int rank);

    std::size_t size() const noexcept { return nodes_.size(); }
    bool contains(TopId id) const noexcept { return id.value < nodes_.size(); }
    const TopNode& node(TopId id) const;

    int rank(TopId id) const { return node(id).rank; }
    std::uint64_t weight(TopId id) const { return node(id).weight; }
    std::uint32_t height(TopId id) const { return node(id).height; }
    LabelId root_label(TopId id) const { return node(id).root_label; }
    std::optional<LabelId> bottom_label(TopId id) const;

    BoundedTree eval(TopId id) const;
    TopStats stats(TopId id) const;

    /// Copy of the part of the store reachable from `root`, renumbered in
    /// first-use (postorder) order so children precede parents. The new root
    /// id is the last one.
    ConsStore seal(TopId root) const;

    /// Rebuilds the signature index over all nodes and reports whether two
    /// distinct ids share a signature.
    bool is_duplicate_free() const;

private:
    struct Key {
        std::uint64_t operands;
        std::uint32_t extra; // kind and rank bit
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };
    static Key key_of(const TopNode& n) noexcept;

    TopNode make_leaf(LabelId a, LabelId b, int rank) const;
    TopNode make_merge(NodeKind kind, TopId s, TopId t) const;
    TopId insert(const TopNode& n);

    std::vector<std::string> alphabet_;
    std::unordered_map<std::string, LabelId> label_index_;
    std::vector<TopNode> nodes_;
    std::unordered_map<Key, TopId, KeyHash> index_;
};

} // namespace topdag
