#include "topdag/shrink.hpp"

#include <algorithm>

#include "linked_tree.hpp"

namespace topdag {

namespace {

// a * b, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
    return r;
}

// Store label id for every label of `t`.
std::vector<LabelId> intern_alphabet(const std::vector<std::string>& alphabet, ConsStore& store) {
    std::vector<LabelId> map;
    map.reserve(alphabet.size());
    for (const auto& s : alphabet) map.push_back(store.intern(s));
    return map;
}

} // namespace

std::uint64_t cluster_alphabet_base(std::uint32_t sigma) {
    std::uint64_t s2 = std::uint64_t{sigma} * sigma + 1;
    auto sq = checked_mul(s2, s2);
    auto r = sq ? checked_mul(64, *sq) : std::nullopt;
    if (!r) throw std::overflow_error("alphabet too large for the cluster count base");
    return *r;
}

std::uint32_t compute_k(std::uint64_t n, std::uint32_t sigma) {
    if (n == 0) throw std::invalid_argument("compute_k needs at least one edge");
    if (sigma < 2) throw std::invalid_argument("sigma must be at least 2");
    const std::uint64_t r = cluster_alphabet_base(sigma);
    auto r2 = checked_mul(r, r);
    std::uint32_t k = 0;
    std::uint64_t power = 1; // r^(2k)
    while (r2) {
        auto next = checked_mul(power, *r2);
        if (!next || *next > n) break;
        power = *next;
        ++k;
    }
    k = std::max<std::uint32_t>(k, 1);
    return static_cast<std::uint32_t>(std::min<std::uint64_t>(k, n));
}

std::uint64_t count_bound(std::uint32_t k, std::uint32_t sigma) {
    if (k == 0) throw std::invalid_argument("count_bound needs k >= 1");
    const std::uint64_t r = cluster_alphabet_base(sigma);
    std::optional<std::uint64_t> acc = 2 * std::uint64_t{k};
    for (std::uint32_t i = 0; i < k && acc; ++i) acc = checked_mul(*acc, r);
    if (!acc) throw std::overflow_error("count bound exceeds 64 bits");
    return *acc;
}

std::uint64_t ShrunkenTree::total_weight() const {
    std::uint64_t sum = 0;
    for (std::size_t v = 1; v < edges.size(); ++v) sum += edges[v].weight;
    return sum;
}

std::uint64_t ShrunkenTree::max_weight() const {
    std::uint64_t m = 0;
    for (std::size_t v = 1; v < edges.size(); ++v) m = std::max(m, edges[v].weight);
    return m;
}

ShrunkenTree shrink_tree(const Tree& t, std::uint32_t k, ConsStore& store, ShrinkStats* stats,
                         std::vector<MergeEvent>* log) {
    if (t.edge_count() == 0) throw std::invalid_argument("cannot shrink a tree without edges");
    if (k == 0) throw std::invalid_argument("shrink threshold k must be at least 1");

    const auto labels = intern_alphabet(t.alphabet(), store);
    detail::LinkedTree tree(t);
    std::vector<std::uint64_t> weight(t.size(), 1);
    std::vector<TopId> cluster(t.size());
    for (NodeId v = 1; v < t.size(); ++v)
        cluster[v] = store.atomic(labels[t.label(t.parent(v))], labels[t.label(v)], t.is_leaf(v) ? 0 : 1);

    // Edge (parent(v), v) is named v. Entries are revalidated on pop.
    auto eligible = [&](NodeId v) {
        return v != 0 && v != kNoNode && tree.alive(v) && weight[v] <= k && tree.degree(v) <= 1;
    };
    std::vector<NodeId> queue;
    queue.reserve(t.size());
    for (NodeId v = 1; v < t.size(); ++v)
        if (eligible(v)) queue.push_back(v);
    auto push = [&](NodeId v) {
        if (eligible(v)) queue.push_back(v);
    };

    ShrinkStats local;
    local.initial_queue = queue.size();
    for (std::size_t head = 0; head < queue.size(); ++head) {
        ++local.queue_pops;
        const NodeId v = queue[head];
        if (!eligible(v)) continue;
        const NodeId u = tree.parent(v);

        if (tree.degree(v) == 1) {
            const NodeId w = tree.first_child(v);
            if (weight[w] > k) continue;
            cluster[w] = store.vmerge(cluster[v], cluster[w]);
            weight[w] += weight[v];
            tree.splice_out(v);
            ++local.merges;
            if (log) log->push_back({MergeCase::Chain, v, w});
            push(w);
            continue;
        }

        // v is a leaf: fold it into the right neighbour, else the left one.
        NodeId w = tree.next(v);
        MergeCase kind = MergeCase::LeftLeaf;
        if (w == kNoNode || weight[w] > k) {
            w = tree.prev(v);
            kind = MergeCase::RightLeaf;
            if (w == kNoNode || weight[w] > k) continue;
        }
        const NodeId other = kind == MergeCase::LeftLeaf ? tree.prev(v) : tree.next(v);
        cluster[w] = kind == MergeCase::LeftLeaf ? store.hmerge(cluster[v], cluster[w])
                                                 : store.hmerge(cluster[w], cluster[v]);
        weight[w] += weight[v];
        tree.remove_leaf(v);
        ++local.merges;
        if (log) log->push_back({kind, v, w});
        push(w);
        push(other);
        if (tree.degree(u) == 1) push(u);
    }

    std::vector<NodeId> origin;
    Tree skeleton = tree.to_tree(t, origin);
    std::vector<EdgeData> edges(skeleton.size());
    for (NodeId v = 1; v < skeleton.size(); ++v) edges[v] = {weight[origin[v]], cluster[origin[v]]};
    if (stats) *stats = local;
    return {std::move(skeleton), std::move(edges), std::move(origin)};
}

bool is_fixpoint(const ShrunkenTree& s, std::uint32_t k) {
    const Tree& t = s.skeleton;
    auto light = [&](NodeId v) { return s.edges[v].weight <= k; };
    for (NodeId v = 1; v < t.size(); ++v) {
        if (t.degree(v) == 1 && light(v) && light(t.children(v)[0])) return false;
    }
    for (NodeId u = 0; u < t.size(); ++u) {
        auto kids = t.children(u);
        for (std::size_t i = 0; i + 1 < kids.size(); ++i) {
            NodeId left = kids[i], right = kids[i + 1];
            if (!light(left) || !light(right)) continue;
            if (t.is_leaf(left) || t.is_leaf(right)) return false;
        }
    }
    return true;
}

} // namespace topdag
