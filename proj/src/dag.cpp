#include "topdag/dag.hpp"

#include <stdexcept>
#include <unordered_map>

namespace topdag {

Dag::Dag(std::vector<std::string> alphabet, std::vector<LabelId> labels,
         const std::vector<std::vector<DagNodeId>>& children)
    : alphabet_(std::move(alphabet)), labels_(std::move(labels)) {
    if (labels_.empty()) throw std::invalid_argument("dag must have at least one node");
    if (children.size() != labels_.size())
        throw std::invalid_argument("label and child arrays differ in length");
    child_begin_.reserve(labels_.size() + 1);
    child_begin_.push_back(0);
    for (DagNodeId v = 0; v < labels_.size(); ++v) {
        if (labels_[v] >= alphabet_.size()) throw std::invalid_argument("label id outside alphabet");
        for (DagNodeId c : children[v]) {
            if (c >= v) throw std::invalid_argument("dag child ids must precede their parent");
            child_list_.push_back(c);
        }
        child_begin_.push_back(static_cast<std::uint32_t>(child_list_.size()));
    }
    std::vector<bool> reached(labels_.size(), false);
    reached.back() = true;
    for (DagNodeId v = root() + 1; v-- > 0;) {
        if (!reached[v]) throw std::invalid_argument("dag node not reachable from the root");
        for (DagNodeId c : this->children(v)) reached[c] = true;
    }
}

namespace {

struct Signature {
    LabelId label;
    std::vector<DagNodeId> children;
    bool operator==(const Signature&) const = default;
};

struct SignatureHash {
    std::size_t operator()(const Signature& s) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ s.label;
        for (DagNodeId c : s.children) {
            h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace

Dag build_min_dag(const Tree& t) {
    std::unordered_map<Signature, DagNodeId, SignatureHash> index;
    index.reserve(t.size());
    std::vector<LabelId> labels;
    std::vector<std::vector<DagNodeId>> children;
    std::vector<DagNodeId> class_of(t.size());

    // Iterative postorder: (node, next child position).
    std::vector<std::pair<NodeId, std::size_t>> stack{{t.root(), 0}};
    while (!stack.empty()) {
        auto& [v, next] = stack.back();
        auto kids = t.children(v);
        if (next < kids.size()) {
            NodeId c = kids[next++];
            stack.emplace_back(c, 0);
            continue;
        }
        Signature sig{t.label(v), {}};
        sig.children.reserve(kids.size());
        for (NodeId c : kids) sig.children.push_back(class_of[c]);
        auto [it, inserted] = index.try_emplace(std::move(sig), static_cast<DagNodeId>(labels.size()));
        if (inserted) {
            labels.push_back(it->first.label);
            children.push_back(it->first.children);
        }
        class_of[v] = it->second;
        stack.pop_back();
    }
    return Dag(t.alphabet(), std::move(labels), children);
}

std::size_t unfolded_size(const Dag& d, std::size_t cap) {
    std::vector<std::size_t> size(d.node_count());
    for (DagNodeId v = 0; v < d.node_count(); ++v) {
        std::size_t s = 1;
        for (DagNodeId c : d.children(v)) s = std::min(cap, s + size[c]);
        size[v] = s;
    }
    return size[d.root()];
}

Tree unfold(const Dag& d, std::size_t node_limit) {
    if (unfolded_size(d, node_limit + 1) > node_limit)
        throw std::length_error("unfolded tree exceeds " + std::to_string(node_limit) + " nodes");
    std::vector<LabelId> labels;
    std::vector<NodeId> parents;
    std::vector<std::pair<DagNodeId, NodeId>> stack{{d.root(), kNoNode}};
    while (!stack.empty()) {
        auto [v, p] = stack.back();
        stack.pop_back();
        auto id = static_cast<NodeId>(labels.size());
        labels.push_back(d.label(v));
        parents.push_back(p);
        auto kids = d.children(v);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.emplace_back(*it, id);
    }
    return Tree(d.alphabet(), std::move(labels), std::move(parents));
}

DagStats dag_stats(const Dag& d) noexcept { return {d.node_count(), d.edge_count()}; }

} // namespace topdag
