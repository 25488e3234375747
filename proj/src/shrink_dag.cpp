#include "topdag/shrink.hpp"

#include <algorithm>

namespace topdag {

namespace {

constexpr std::uint32_t kNoEdge = std::numeric_limits<std::uint32_t>::max();

// Dag whose child lists are doubly linked lists of edge records. Edges keep
// their identity while their target changes, which is what lets parallel
// edges be merged independently.
struct MutableDag {
    struct Edge {
        DagNodeId parent;
        DagNodeId target;
        std::uint32_t prev = kNoEdge;
        std::uint32_t next = kNoEdge;
        std::uint64_t weight = 1;
        TopId cluster;
        bool alive = true;
    };

    std::vector<Edge> edges;
    std::vector<std::uint32_t> first, last, degree, indegree;
    std::vector<std::uint8_t> alive;
    // Edges that have pointed at a node at some time; filtered on use.
    std::vector<std::vector<std::uint32_t>> incoming;

    explicit MutableDag(const Dag& d)
        : first(d.node_count(), kNoEdge),
          last(d.node_count(), kNoEdge),
          degree(d.node_count(), 0),
          indegree(d.node_count(), 0),
          alive(d.node_count(), 1),
          incoming(d.node_count()) {
        edges.reserve(d.edge_count());
        for (DagNodeId v = 0; v < d.node_count(); ++v) {
            for (DagNodeId c : d.children(v)) {
                auto e = static_cast<std::uint32_t>(edges.size());
                edges.push_back(Edge{.parent = v, .target = c, .cluster = {}});
                if (last[v] == kNoEdge) {
                    first[v] = e;
                } else {
                    edges[last[v]].next = e;
                    edges[e].prev = last[v];
                }
                last[v] = e;
                ++degree[v];
                ++indegree[c];
                incoming[c].push_back(e);
            }
        }
    }

    void unlink(std::uint32_t e) {
        Edge& x = edges[e];
        if (x.prev != kNoEdge) edges[x.prev].next = x.next; else first[x.parent] = x.next;
        if (x.next != kNoEdge) edges[x.next].prev = x.prev; else last[x.parent] = x.prev;
        x.alive = false;
        --degree[x.parent];
    }

    // Drops one reference to v; a node without references is deleted
    // together with its outgoing edges.
    void release(DagNodeId v) {
        if (--indegree[v] > 0) return;
        alive[v] = 0;
        for (std::uint32_t e = first[v]; e != kNoEdge;) {
            std::uint32_t next = edges[e].next;
            edges[e].alive = false;
            release(edges[e].target);
            e = next;
        }
        first[v] = last[v] = kNoEdge;
        degree[v] = 0;
    }
};

} // namespace

ShrunkenDag shrink_dag(const Dag& d, std::uint32_t k, ConsStore& store, ShrinkStats* stats) {
    if (d.edge_count() == 0) throw std::invalid_argument("cannot shrink a dag without edges");
    if (k == 0) throw std::invalid_argument("shrink threshold k must be at least 1");

    std::vector<LabelId> labels;
    for (const auto& s : d.alphabet()) labels.push_back(store.intern(s));
    MutableDag g(d);
    for (auto& e : g.edges)
        e.cluster = store.atomic(labels[d.label(e.parent)], labels[d.label(e.target)],
                                 d.degree(e.target) == 0 ? 0 : 1);

    auto eligible = [&](std::uint32_t e) {
        if (e == kNoEdge) return false;
        const auto& x = g.edges[e];
        return x.alive && x.weight <= k && g.degree[x.target] <= 1;
    };
    std::vector<std::uint32_t> queue;
    auto push = [&](std::uint32_t e) {
        if (eligible(e)) queue.push_back(e);
    };

    // Seed in preorder: each edge is listed where a first-visit DFS over the
    // dag crosses it, which for a tree is the preorder of child endpoints.
    {
        std::vector<std::uint8_t> visited(d.node_count(), 0);
        std::vector<std::pair<DagNodeId, std::size_t>> stack{{d.root(), 0}};
        visited[d.root()] = 1;
        while (!stack.empty()) {
            auto& [v, pos] = stack.back();
            if (pos == d.degree(v)) {
                stack.pop_back();
                continue;
            }
            auto e = static_cast<std::uint32_t>(d.edge_begin(v) + pos++);
            push(e);
            DagNodeId c = g.edges[e].target;
            if (!visited[c]) {
                visited[c] = 1;
                stack.emplace_back(c, 0);
            }
        }
    }

    ShrinkStats local;
    local.initial_queue = queue.size();
    for (std::size_t head = 0; head < queue.size(); ++head) {
        ++local.queue_pops;
        const std::uint32_t e = queue[head];
        if (!eligible(e)) continue;
        auto& edge = g.edges[e];
        const DagNodeId u = edge.parent;
        const DagNodeId v = edge.target;

        if (g.degree[v] == 1) {
            const std::uint32_t f = g.first[v];
            const auto& lower = g.edges[f];
            if (lower.weight > k) continue;
            const DagNodeId w = lower.target;
            edge.cluster = store.vmerge(edge.cluster, lower.cluster);
            edge.weight += lower.weight;
            edge.target = w;
            ++g.indegree[w];
            g.incoming[w].push_back(e);
            g.release(v);
            ++local.merges;
            push(e);
            continue;
        }

        std::uint32_t w = edge.next;
        bool leaf_left = true;
        if (w == kNoEdge || g.edges[w].weight > k) {
            w = edge.prev;
            leaf_left = false;
            if (w == kNoEdge || g.edges[w].weight > k) continue;
        }
        const std::uint32_t other = leaf_left ? edge.prev : edge.next;
        auto& kept = g.edges[w];
        kept.cluster = leaf_left ? store.hmerge(edge.cluster, kept.cluster)
                                 : store.hmerge(kept.cluster, edge.cluster);
        kept.weight += edge.weight;
        g.unlink(e);
        g.release(v);
        ++local.merges;
        push(w);
        push(other);
        if (g.degree[u] == 1) {
            auto& in = g.incoming[u];
            std::erase_if(in, [&](std::uint32_t x) {
                return !g.edges[x].alive || g.edges[x].target != u;
            });
            for (std::uint32_t x : in) push(x);
        }
    }

    // Compact the live part, renumbering nodes in postorder.
    std::vector<DagNodeId> new_id(d.node_count(), kNoNode);
    std::vector<LabelId> out_labels;
    std::vector<std::vector<DagNodeId>> out_children;
    std::vector<EdgeData> out_edges;
    std::vector<std::vector<std::uint32_t>> live_edges;
    {
        std::vector<std::pair<DagNodeId, std::uint32_t>> stack{{d.root(), g.first[d.root()]}};
        std::vector<std::uint8_t> entered(d.node_count(), 0);
        entered[d.root()] = 1;
        while (!stack.empty()) {
            auto& [v, e] = stack.back();
            if (e != kNoEdge) {
                DagNodeId c = g.edges[e].target;
                e = g.edges[e].next;
                if (!entered[c]) {
                    entered[c] = 1;
                    stack.emplace_back(c, g.first[c]);
                }
                continue;
            }
            new_id[v] = static_cast<DagNodeId>(out_labels.size());
            out_labels.push_back(d.label(v));
            std::vector<DagNodeId> kids;
            std::vector<std::uint32_t> ids;
            for (std::uint32_t x = g.first[v]; x != kNoEdge; x = g.edges[x].next) {
                kids.push_back(new_id[g.edges[x].target]);
                ids.push_back(x);
            }
            out_children.push_back(std::move(kids));
            live_edges.push_back(std::move(ids));
            stack.pop_back();
        }
    }
    for (const auto& ids : live_edges)
        for (std::uint32_t x : ids) out_edges.push_back({g.edges[x].weight, g.edges[x].cluster});

    if (stats) *stats = local;
    return {Dag(d.alphabet(), std::move(out_labels), out_children), std::move(out_edges)};
}

ShrunkenTree unfold(const ShrunkenDag& s, std::size_t node_limit) {
    const Dag& d = s.skeleton;
    if (unfolded_size(d, node_limit + 1) > node_limit)
        throw std::length_error("unfolded skeleton exceeds " + std::to_string(node_limit) + " nodes");
    std::vector<LabelId> labels;
    std::vector<NodeId> parents;
    std::vector<EdgeData> edges;
    std::vector<NodeId> origin;
    // (dag node, parent tree node, dag edge index that led here)
    struct Item {
        DagNodeId v;
        NodeId parent;
        std::size_t edge;
    };
    std::vector<Item> stack{{d.root(), kNoNode, 0}};
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        auto id = static_cast<NodeId>(labels.size());
        labels.push_back(d.label(it.v));
        parents.push_back(it.parent);
        origin.push_back(it.v);
        edges.push_back(it.parent == kNoNode ? EdgeData{} : s.edges[it.edge]);
        auto kids = d.children(it.v);
        for (std::size_t i = kids.size(); i-- > 0;) stack.push_back({kids[i], id, d.edge_begin(it.v) + i});
    }
    return {Tree(d.alphabet(), std::move(labels), std::move(parents)), std::move(edges), std::move(origin)};
}

bool is_fixpoint(const ShrunkenDag& s, std::uint32_t k) {
    const Dag& d = s.skeleton;
    auto light = [&](std::size_t e) { return s.edges[e].weight <= k; };
    for (DagNodeId u = 0; u < d.node_count(); ++u) {
        auto kids = d.children(u);
        const std::size_t base = d.edge_begin(u);
        for (std::size_t i = 0; i < kids.size(); ++i) {
            DagNodeId v = kids[i];
            if (d.degree(v) == 1 && light(base + i) && light(d.edge_begin(v))) return false;
            if (i + 1 < kids.size() && light(base + i) && light(base + i + 1) &&
                (d.degree(kids[i]) == 0 || d.degree(kids[i + 1]) == 0))
                return false;
        }
    }
    return true;
}

} // namespace topdag
