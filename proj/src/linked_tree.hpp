#pragma once

#include <vector>

#include "topdag/tree.hpp"

namespace topdag::detail {

// Mutable copy of a tree's shape with doubly linked sibling lists, so that
// leaves can be dropped and unary nodes spliced out in O(1).
class LinkedTree {
public:
    explicit LinkedTree(const Tree& t)
        : parent_(t.parents()),
          first_(t.size(), kNoNode),
          last_(t.size(), kNoNode),
          prev_(t.size(), kNoNode),
          next_(t.size(), kNoNode),
          degree_(t.size(), 0),
          alive_(t.size(), 1) {
        for (NodeId v = 0; v < t.size(); ++v) {
            auto kids = t.children(v);
            degree_[v] = static_cast<std::uint32_t>(kids.size());
            if (kids.empty()) continue;
            first_[v] = kids.front();
            last_[v] = kids.back();
            for (std::size_t i = 0; i + 1 < kids.size(); ++i) {
                next_[kids[i]] = kids[i + 1];
                prev_[kids[i + 1]] = kids[i];
            }
        }
    }

    std::size_t capacity() const noexcept { return parent_.size(); }
    NodeId parent(NodeId v) const { return parent_[v]; }
    NodeId first_child(NodeId v) const { return first_[v]; }
    NodeId next(NodeId v) const { return next_[v]; }
    NodeId prev(NodeId v) const { return prev_[v]; }
    std::uint32_t degree(NodeId v) const { return degree_[v]; }
    bool alive(NodeId v) const { return alive_[v] != 0; }

    // Unlinks leaf v from its parent's child list.
    void remove_leaf(NodeId v) {
        NodeId u = parent_[v];
        unlink(v, u);
        --degree_[u];
        alive_[v] = 0;
    }

    // v has exactly one child w; w takes v's position below v's parent.
    void splice_out(NodeId v) {
        NodeId u = parent_[v];
        NodeId w = first_[v];
        prev_[w] = prev_[v];
        next_[w] = next_[v];
        if (prev_[v] != kNoNode) next_[prev_[v]] = w; else first_[u] = w;
        if (next_[v] != kNoNode) prev_[next_[v]] = w; else last_[u] = w;
        parent_[w] = u;
        alive_[v] = 0;
    }

    // Preorder tree over the live nodes; origin[i] is the node that became i.
    Tree to_tree(const Tree& source, std::vector<NodeId>& origin) const {
        std::vector<LabelId> labels;
        std::vector<NodeId> parents;
        origin.clear();
        std::vector<std::pair<NodeId, NodeId>> stack{{0, kNoNode}};
        std::vector<NodeId> kids;
        while (!stack.empty()) {
            auto [v, p] = stack.back();
            stack.pop_back();
            auto id = static_cast<NodeId>(labels.size());
            labels.push_back(source.label(v));
            parents.push_back(p);
            origin.push_back(v);
            kids.clear();
            for (NodeId c = first_[v]; c != kNoNode; c = next_[c]) kids.push_back(c);
            for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.emplace_back(*it, id);
        }
        return Tree(source.alphabet(), std::move(labels), std::move(parents));
    }

private:
    void unlink(NodeId v, NodeId u) {
        if (prev_[v] != kNoNode) next_[prev_[v]] = next_[v]; else first_[u] = next_[v];
        if (next_[v] != kNoNode) prev_[next_[v]] = prev_[v]; else last_[u] = prev_[v];
        prev_[v] = next_[v] = kNoNode;
    }

    std::vector<NodeId> parent_;
    std::vector<NodeId> first_;
    std::vector<NodeId> last_;
    std::vector<NodeId> prev_;
    std::vector<NodeId> next_;
    std::vector<std::uint32_t> degree_;
    std::vector<std::uint8_t> alive_;
};

} // namespace topdag::detail
