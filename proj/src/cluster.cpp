#include "topdag/cluster.hpp"

#include <algorithm>

namespace topdag {

ConsStore::ConsStore(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {
    for (LabelId i = 0; i < alphabet_.size(); ++i) label_index_.emplace(alphabet_[i], i);
}

LabelId ConsStore::intern(std::string_view symbol) {
    auto it = label_index_.find(std::string(symbol));
    if (it != label_index_.end()) return it->second;
    auto id = static_cast<LabelId>(alphabet_.size());
    alphabet_.emplace_back(symbol);
    label_index_.emplace(alphabet_.back(), id);
    return id;
}

std::size_t ConsStore::KeyHash::operator()(const Key& k) const noexcept {
    // splitmix64 finalizer
    std::uint64_t x = k.operands ^ (std::uint64_t{k.extra} << 61) ^ (std::uint64_t{k.extra} * 0x9e3779b97f4a7c15ULL);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return static_cast<std::size_t>(x);
}

ConsStore::Key ConsStore::key_of(const TopNode& n) noexcept {
    std::uint32_t extra = static_cast<std::uint32_t>(n.kind);
    if (n.is_leaf()) extra |= std::uint32_t{n.rank} << 2;
    return {(std::uint64_t{n.first} << 32) | n.second, extra};
}

const TopNode& ConsStore::node(TopId id) const {
    if (!contains(id)) throw UnknownTopId("unknown top tree id " + std::to_string(id.value));
    return nodes_[id.value];
}

std::optional<LabelId> ConsStore::bottom_label(TopId id) const {
    const auto& n = node(id);
    if (n.rank == 0) return std::nullopt;
    return n.bottom_label;
}

TopNode ConsStore::make_leaf(LabelId a, LabelId b, int rank) const {
    if (rank != 0 && rank != 1) throw RankViolation("atomic cluster rank must be 0 or 1");
    if (a >= alphabet_.size() || b >= alphabet_.size())
        throw std::invalid_argument("atomic cluster label outside alphabet");
    TopNode n;
    n.kind = NodeKind::Leaf;
    n.rank = static_cast<std::uint8_t>(rank);
    n.first = a;
    n.second = b;
    n.root_label = a;
    n.bottom_label = rank == 1 ? b : kNoLabel;
    return n;
}

TopNode ConsStore::make_merge(NodeKind kind, TopId s, TopId t) const {
    const TopNode& ns = node(s);
    const TopNode& nt = node(t);
    TopNode n;
    n.kind = kind;
    n.first = s.value;
    n.second = t.value;
    n.root_label = ns.root_label;
    n.weight = ns.weight + nt.weight;
    n.height = 1 + std::max(ns.height, nt.height);
    if (kind == NodeKind::Vertical) {
        if (ns.rank != 1) throw RankViolation("vertical merge needs a rank-1 upper cluster");
        if (ns.bottom_label != nt.root_label)
            throw LabelMismatch("vertical merge: bottom label '" + alphabet_[ns.bottom_label] +
                                "' differs from root label '" + alphabet_[nt.root_label] + "'");
        n.rank = nt.rank;
        n.bottom_label = nt.bottom_label;
    } else {
        if (ns.rank + nt.rank > 1) throw RankViolation("horizontal merge of two rank-1 clusters");
        if (ns.root_label != nt.root_label)
            throw LabelMismatch("horizontal merge: root labels '" + alphabet_[ns.root_label] +
                                "' and '" + alphabet_[nt.root_label] + "' differ");
        n.rank = static_cast<std::uint8_t>(ns.rank + nt.rank);
        n.bottom_label = ns.rank == 1 ? ns.bottom_label : nt.bottom_label;
    }
    return n;
}

TopId ConsStore::insert(const TopNode& n) {
    auto [it, inserted] = index_.try_emplace(key_of(n), TopId{static_cast<std::uint32_t>(nodes_.size())});
    if (inserted) {
        if (nodes_.size() == std::numeric_limits<std::uint32_t>::max())
            throw std::length_error("cons store full");
        nodes_.push_back(n);
    }
    return it->second;
}

TopId ConsStore::atomic(LabelId a, LabelId b, int rank) { return insert(make_leaf(a, b, rank)); }

TopId ConsStore::atomic(std::string_view a, std::string_view b, int rank) {
    LabelId la = intern(a);
    LabelId lb = intern(b);
    return atomic(la, lb, rank);
}

TopId ConsStore::vmerge(TopId s, TopId t) { return insert(make_merge(NodeKind::Vertical, s, t)); }

TopId ConsStore::hmerge(TopId s, TopId t) { return insert(make_merge(NodeKind::Horizontal, s, t)); }

TopId ConsStore::append_unshared(NodeKind kind, std::uint32_t first, std::uint32_t second, int rank) {
    TopNode n = kind == NodeKind::Leaf ? make_leaf(first, second, rank)
                                       : make_merge(kind, TopId{first}, TopId{second});
    TopId id{static_cast<std::uint32_t>(nodes_.size())};
    nodes_.push_back(n);
    index_.try_emplace(key_of(n), id);
    return id;
}

BoundedTree ConsStore::eval(TopId id) const {
    node(id);
    TreeBuilder builder(alphabet_);
    NodeId root = builder.add_root(nodes_[id.value].root_label);

    // Each frame expands one top tree node below `top`, which already exists
    // in the output. `result` carries the bottom boundary node created by the
    // most recently finished frame.
    struct Frame {
        TopId id;
        NodeId top;
        int stage;
        NodeId saved;
    };
    std::vector<Frame> stack{{id, root, 0, kNoNode}};
    NodeId result = kNoNode;
    while (!stack.empty()) {
        Frame& f = stack.back();
        const TopNode& n = nodes_[f.id.value];
        if (n.is_leaf()) {
            NodeId child = builder.add_child(f.top, n.second);
            result = n.rank == 1 ? child : kNoNode;
            stack.pop_back();
            continue;
        }
        switch (f.stage++) {
        case 0:
            stack.push_back({n.left(), f.top, 0, kNoNode});
            break;
        case 1:
            if (n.kind == NodeKind::Vertical) {
                stack.push_back({n.right(), result, 0, kNoNode});
            } else {
                f.saved = result;
                stack.push_back({n.right(), f.top, 0, kNoNode});
            }
            break;
        default:
            if (n.kind == NodeKind::Horizontal && f.saved != kNoNode) result = f.saved;
            stack.pop_back();
            break;
        }
    }

    std::vector<NodeId> renumber;
    BoundedTree out{builder.build(&renumber), nodes_[id.value].rank, std::nullopt};
    if (out.rank == 1) out.bottom = renumber[result];
    return out;
}

TopStats ConsStore::stats(TopId id) const {
    const TopNode& n = node(id);
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<std::uint32_t> stack{id.value};
    seen[id.value] = true;
    std::size_t reachable = 0;
    while (!stack.empty()) {
        std::uint32_t v = stack.back();
        stack.pop_back();
        ++reachable;
        const TopNode& m = nodes_[v];
        if (m.is_leaf()) continue;
        for (std::uint32_t c : {m.first, m.second}) {
            if (!seen[c]) {
                seen[c] = true;
                stack.push_back(c);
            }
        }
    }
    return {reachable, n.height, n.weight, n.rank};
}

ConsStore ConsStore::seal(TopId root) const {
    node(root);
    ConsStore out(alphabet_);
    std::vector<std::uint32_t> new_id(nodes_.size(), std::numeric_limits<std::uint32_t>::max());
    constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
    // Postorder, left operand first: ids are handed out on first completion.
    std::vector<std::pair<std::uint32_t, bool>> stack{{root.value, false}};
    while (!stack.empty()) {
        auto [v, expanded] = stack.back();
        stack.pop_back();
        if (new_id[v] != kUnset) continue;
        const TopNode& n = nodes_[v];
        if (n.is_leaf()) {
            new_id[v] = out.atomic(n.first, n.second, n.rank).value;
        } else if (expanded) {
            new_id[v] = (n.kind == NodeKind::Vertical
                             ? out.vmerge({new_id[n.first]}, {new_id[n.second]})
                             : out.hmerge({new_id[n.first]}, {new_id[n.second]}))
                            .value;
        } else {
            stack.emplace_back(v, true);
            if (new_id[n.second] == kUnset) stack.emplace_back(n.second, false);
            if (new_id[n.first] == kUnset) stack.emplace_back(n.first, false);
        }
    }
    return out;
}

bool ConsStore::is_duplicate_free() const {
    std::unordered_map<Key, std::uint32_t, KeyHash> seen;
    seen.reserve(nodes_.size());
    for (std::uint32_t i = 0; i < nodes_.size(); ++i)
        if (!seen.try_emplace(key_of(nodes_[i]), i).second) return false;
    return true;
}

} // namespace topdag
