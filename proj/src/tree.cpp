#include "topdag/tree.hpp"

#include <algorithm>
#include <cctype>

namespace topdag {

bool is_valid_label(std::string_view symbol) noexcept {
    if (symbol.empty()) return false;
    return std::all_of(symbol.begin(), symbol.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

Tree::Tree(std::vector<std::string> alphabet, std::vector<LabelId> labels,
           std::vector<NodeId> parents)
    : alphabet_(std::move(alphabet)), labels_(std::move(labels)), parents_(std::move(parents)) {
    if (labels_.empty()) throw std::invalid_argument("tree must have at least one node");
    if (labels_.size() != parents_.size())
        throw std::invalid_argument("label and parent arrays differ in length");
    if (labels_.size() >= kNoNode) throw std::length_error("tree too large");
    if (parents_[0] != kNoNode) throw std::invalid_argument("node 0 must be the root");
    for (LabelId l : labels_)
        if (l >= alphabet_.size()) throw std::invalid_argument("label id outside alphabet");

    // In preorder the parent of v lies on the path from the root to v-1.
    std::vector<NodeId> path{0};
    for (NodeId v = 1; v < labels_.size(); ++v) {
        NodeId p = parents_[v];
        while (!path.empty() && path.back() != p) path.pop_back();
        if (path.empty()) throw std::invalid_argument("parent array is not in preorder");
        path.push_back(v);
    }

    child_begin_.assign(labels_.size() + 1, 0);
    for (NodeId v = 1; v < labels_.size(); ++v) ++child_begin_[parents_[v] + 1];
    for (std::size_t i = 1; i < child_begin_.size(); ++i) child_begin_[i] += child_begin_[i - 1];
    child_list_.resize(labels_.size() - 1);
    std::vector<std::uint32_t> fill(child_begin_.begin(), child_begin_.end() - 1);
    for (NodeId v = 1; v < labels_.size(); ++v) child_list_[fill[parents_[v]]++] = v;
}

Tree Tree::single(std::string_view label) {
    return Tree({std::string(label)}, {0}, {kNoNode});
}

std::size_t Tree::distinct_labels() const {
    std::vector<bool> seen(alphabet_.size(), false);
    std::size_t count = 0;
    for (LabelId l : labels_) {
        if (!seen[l]) {
            seen[l] = true;
            ++count;
        }
    }
    return count;
}

bool operator==(const Tree& s, const Tree& t) {
    if (s.size() != t.size() || s.parents_ != t.parents_) return false;
    if (s.alphabet_ == t.alphabet_) return s.labels_ == t.labels_;
    for (NodeId v = 0; v < s.size(); ++v)
        if (s.symbol(v) != t.symbol(v)) return false;
    return true;
}

TreeBuilder::TreeBuilder(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {
    for (LabelId i = 0; i < alphabet_.size(); ++i) index_.emplace(alphabet_[i], i);
}

LabelId TreeBuilder::intern(std::string_view symbol) {
    auto it = index_.find(std::string(symbol));
    if (it != index_.end()) return it->second;
    auto id = static_cast<LabelId>(alphabet_.size());
    alphabet_.emplace_back(symbol);
    index_.emplace(alphabet_.back(), id);
    return id;
}

NodeId TreeBuilder::add_root(LabelId label) {
    if (root_ != kNoNode) throw std::logic_error("tree already has a root");
    root_ = static_cast<NodeId>(labels_.size());
    labels_.push_back(label);
    first_child_.push_back(kNoNode);
    last_child_.push_back(kNoNode);
    next_sibling_.push_back(kNoNode);
    return root_;
}

NodeId TreeBuilder::add_child(NodeId parent, LabelId label) {
    auto v = static_cast<NodeId>(labels_.size());
    labels_.push_back(label);
    first_child_.push_back(kNoNode);
    last_child_.push_back(kNoNode);
    next_sibling_.push_back(kNoNode);
    if (last_child_[parent] == kNoNode)
        first_child_[parent] = v;
    else
        next_sibling_[last_child_[parent]] = v;
    last_child_[parent] = v;
    return v;
}

Tree TreeBuilder::build(std::vector<NodeId>* new_ids) const {
    if (root_ == kNoNode) throw std::logic_error("tree has no root");
    std::vector<LabelId> labels;
    std::vector<NodeId> parents;
    labels.reserve(labels_.size());
    parents.reserve(labels_.size());

    // (builder node, new parent id)
    std::vector<std::pair<NodeId, NodeId>> stack{{root_, kNoNode}};
    std::vector<NodeId> reversed;
    if (new_ids) new_ids->assign(labels_.size(), kNoNode);
    while (!stack.empty()) {
        auto [v, p] = stack.back();
        stack.pop_back();
        auto id = static_cast<NodeId>(labels.size());
        if (new_ids) (*new_ids)[v] = id;
        labels.push_back(labels_[v]);
        parents.push_back(p);
        reversed.clear();
        for (NodeId c = first_child_[v]; c != kNoNode; c = next_sibling_[c]) reversed.push_back(c);
        for (auto it = reversed.rbegin(); it != reversed.rend(); ++it) stack.emplace_back(*it, id);
    }
    return Tree(alphabet_, std::move(labels), std::move(parents));
}

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

namespace {

bool is_label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class TreeParser {
public:
    explicit TreeParser(std::string_view text) : text_(text) {}

    Tree parse() {
        skip_space();
        if (pos_ == text_.size()) throw ParseError("empty input", pos_);

        std::vector<NodeId> open;
        NodeId node = builder_.add_root(read_label());
        for (;;) {
            skip_space();
            if (peek() == '(') {
                ++pos_;
                open.push_back(node);
                skip_space();
                node = builder_.add_child(open.back(), read_label());
                continue;
            }
            // `node` is complete; close parents until a sibling follows.
            for (;;) {
                if (open.empty()) {
                    skip_space();
                    if (pos_ != text_.size()) throw ParseError("trailing characters", pos_);
                    return builder_.build();
                }
                skip_space();
                char c = peek();
                if (c == ',') {
                    ++pos_;
                    skip_space();
                    node = builder_.add_child(open.back(), read_label());
                    break;
                }
                if (c == ')') {
                    ++pos_;
                    open.pop_back();
                    continue;
                }
                if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
                throw ParseError(std::string("expected ',' or ')' but found '") + c + "'", pos_);
            }
        }
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    LabelId read_label() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_label_char(text_[pos_])) ++pos_;
        if (pos_ == start) {
            if (start == text_.size()) throw ParseError("expected label but input ended", start);
            throw ParseError(std::string("expected label but found '") + text_[start] + "'", start);
        }
        return builder_.intern(text_.substr(start, pos_ - start));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    TreeBuilder builder_;
};

} // namespace

Tree parse_tree(std::string_view text) { return TreeParser(text).parse(); }

std::string serialize_tree(const Tree& t) {
    std::string out;
    out.reserve(t.size() * 3);
    // Preorder ids: when moving from v-1 to v, close every node that is not
    // an ancestor of v.
    std::vector<NodeId> path;
    for (NodeId v = 0; v < t.size(); ++v) {
        if (v > 0) {
            NodeId p = t.parent(v);
            if (path.back() == p) {
                out += '(';
            } else {
                while (path.back() != p) {
                    path.pop_back();
                    if (path.back() != p) out += ')';
                }
                out += ',';
            }
        }
        out += t.symbol(v);
        path.push_back(v);
    }
    for (std::size_t i = 1; i < path.size(); ++i) out += ')';
    return out;
}

} // namespace topdag
