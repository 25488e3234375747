#include <doctest.h>

#include "oracles.hpp"
#include "topdag/shrink.hpp"

using namespace topdag;

namespace {

std::vector<std::uint64_t> weights(const ShrunkenTree& s) {
    std::vector<std::uint64_t> w;
    for (NodeId v = 1; v < s.skeleton.size(); ++v) w.push_back(s.edges[v].weight);
    return w;
}

// Every skeleton edge evaluates to the edge set the merge log says it owns.
void check_against_replay(const Tree& t, const ShrunkenTree& s, const ConsStore& store,
                          const std::vector<MergeEvent>& log) {
    auto expected = oracle::replay_shrink(t, s, log);
    for (NodeId v = 1; v < s.skeleton.size(); ++v) {
        BoundedTree c = store.eval(s.edges[v].cluster);
        REQUIRE(oracle::cluster_key(c) == expected[v]);
        CHECK(c.tree.edge_count() == s.edges[v].weight);
        CHECK(c.rank == (s.skeleton.is_leaf(v) ? 0 : 1));
        CHECK(c.tree.symbol(0) == s.skeleton.symbol(s.skeleton.parent(v)));
        if (c.bottom) CHECK(c.tree.symbol(*c.bottom) == s.skeleton.symbol(v));
    }
}

} // namespace

TEST_CASE("k and count bound") {
    CHECK(cluster_alphabet_base(2) == 1600);
    CHECK(cluster_alphabet_base(3) == 6400);
    CHECK(compute_k(1, 2) == 1);
    CHECK(compute_k(100, 2) == 1);
    CHECK(compute_k(2560000, 2) == 1);
    const std::uint64_t r4 = 1600ull * 1600 * 1600 * 1600;
    CHECK(compute_k(r4, 2) == 2);
    CHECK(compute_k(r4 - 1, 2) == 1);
    CHECK(compute_k(std::numeric_limits<std::uint64_t>::max(), 2) == 3);
    CHECK_THROWS(compute_k(0, 2));
    CHECK_THROWS(compute_k(5, 1));
    CHECK(count_bound(1, 2) == 3200);
    CHECK(count_bound(1, 3) == 12800);
    CHECK(count_bound(2, 2) == 10240000);
    CHECK_THROWS_AS(count_bound(8, 2), std::overflow_error);
}

TEST_CASE("shrink examples") {
    SUBCASE("path of three edges, k = 1") {
        ConsStore store;
        Tree t = random_tree(3, 1, 0, Shape::Path);
        ShrunkenTree s = shrink_tree(t, 1, store);
        CHECK(weights(s) == std::vector<std::uint64_t>{2, 1});
        CHECK(is_fixpoint(s, 1));
    }
    SUBCASE("star, k = 4") {
        ConsStore store;
        Tree t = parse_tree("a(b,b,b,b)");
        std::vector<MergeEvent> log;
        ShrunkenTree s = shrink_tree(t, 4, store, nullptr, &log);
        CHECK(weights(s) == std::vector<std::uint64_t>{4});
        CHECK(oracle::cluster_key(store.eval(s.edges[1].cluster)) == "a(b,b,b,b)");
        check_against_replay(t, s, store, log);
    }
    SUBCASE("worked example, k = 2") {
        ConsStore store;
        Tree t = parse_tree("a(b(a,a))");
        std::vector<MergeEvent> log;
        ShrunkenTree s = shrink_tree(t, 2, store, nullptr, &log);
        CHECK(weights(s) == std::vector<std::uint64_t>{3});
        CHECK(store.stats(s.edges[1].cluster).reachable_nodes == 4);
        check_against_replay(t, s, store, log);
    }
    SUBCASE("heavy neighbours block merges") {
        ConsStore store;
        Tree t = parse_tree("a(b,c,d)");
        ShrunkenTree s = shrink_tree(t, 1, store);
        CHECK(weights(s) == std::vector<std::uint64_t>{2, 1});
        CHECK(is_fixpoint(s, 1));
    }
}

TEST_CASE("shrink properties on enumerated trees") {
    for (std::uint32_t k = 1; k <= 3; ++k) {
        for (const auto& t : enumerate_trees(6, 2)) {
            ConsStore store;
            std::vector<MergeEvent> log;
            ShrinkStats stats;
            ShrunkenTree s = shrink_tree(t, k, store, &stats, &log);
            CHECK(stats.queue_pops <= 3 * t.edge_count() + stats.initial_queue);
            CHECK(stats.merges == log.size());
            REQUIRE(s.total_weight() == t.edge_count());
            CHECK(s.max_weight() <= 2 * k);
            CHECK(is_fixpoint(s, k));
            check_against_replay(t, s, store, log);
        }
    }
}

TEST_CASE("shrink properties on random trees") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        for (Shape shape : {Shape::Uniform, Shape::Caterpillar, Shape::Star, Shape::Path}) {
            Tree t = random_tree(300, 1 + seed % 4, seed, shape);
            std::uint32_t k = 1 + static_cast<std::uint32_t>(seed % 5);
            ConsStore store;
            std::vector<MergeEvent> log;
            ShrinkStats stats;
            ShrunkenTree s = shrink_tree(t, k, store, &stats, &log);
            CHECK(stats.queue_pops <= 3 * t.edge_count() + stats.initial_queue);
            CHECK(s.total_weight() == t.edge_count());
            CHECK(s.max_weight() <= 2 * k);
            CHECK(is_fixpoint(s, k));
            const std::size_t m = s.skeleton.edge_count();
            CHECK((m == 1 || m * k <= 8 * t.edge_count()));
            check_against_replay(t, s, store, log);
        }
    }
}

TEST_CASE("is_fixpoint detects available merges") {
    Tree t = parse_tree("a(b,c)");
    ConsStore store;
    ShrunkenTree s = shrink_tree(t, 5, store);
    CHECK(is_fixpoint(s, 5));
    // The unshrunk tree with unit weights is not a fixpoint.
    ShrunkenTree raw{t, std::vector<EdgeData>(3, EdgeData{1, TopId{}}), {0, 1, 2}};
    CHECK_FALSE(is_fixpoint(raw, 1));
    raw.edges[1].weight = 2;
    CHECK(is_fixpoint(raw, 1));
}

TEST_CASE("shrink on the dag agrees with the tree after unfolding") {
    SUBCASE("worked example") {
        ConsStore store;
        Tree t = parse_tree("a(b(a,a))");
        ShrunkenDag sd = shrink_dag(build_min_dag(t), 2, store);
        CHECK(sd.skeleton.node_count() == 2);
        CHECK(sd.skeleton.edge_count() == 1);
        ShrunkenTree s = unfold(sd);
        CHECK(weights(s) == std::vector<std::uint64_t>{3});
        CHECK(store.stats(s.edges[1].cluster).reachable_nodes == 4);
        CHECK(serialize_tree(store.eval(s.edges[1].cluster).tree) == "a(b(a,a))");
    }
    SUBCASE("path") {
        ConsStore store;
        ShrunkenDag sd = shrink_dag(build_min_dag(parse_tree("a(a(a(a)))")), 1, store);
        CHECK(sd.skeleton.edge_count() == 2);
        CHECK(weights(unfold(sd)) == std::vector<std::uint64_t>{2, 1});
    }
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Tree t = random_tree(seed % 2 ? 254 : 400, 1 + seed % 3, seed,
                             seed % 2 ? Shape::FullBinary : Shape::Uniform);
        std::uint32_t k = 1 + static_cast<std::uint32_t>(seed % 4);
        ConsStore store;
        Dag d = build_min_dag(t);
        ShrinkStats stats;
        ShrunkenDag sd = shrink_dag(d, k, store, &stats);
        CHECK(stats.queue_pops <= 3 * d.edge_count() + stats.initial_queue);
        CHECK(is_fixpoint(sd, k));
        CHECK(dag_stats(sd.skeleton).size() <= dag_stats(d).size());
        ShrunkenTree s = unfold(sd);
        CHECK(s.skeleton.parents().size() == s.origin.size());
        CHECK(s.total_weight() == t.edge_count());
        CHECK(s.max_weight() <= 2 * k);
        CHECK(is_fixpoint(s, k));
        const std::size_t m = s.skeleton.edge_count();
        CHECK((m == 1 || m * k <= 8 * t.edge_count()));
        // Each skeleton edge is a cluster whose boundaries carry the skeleton labels.
        for (NodeId v = 1; v < s.skeleton.size(); ++v) {
            BoundedTree c = store.eval(s.edges[v].cluster);
            CHECK(c.tree.edge_count() == s.edges[v].weight);
            CHECK(c.tree.symbol(0) == s.skeleton.symbol(s.skeleton.parent(v)));
            CHECK(c.rank == (s.skeleton.is_leaf(v) ? 0 : 1));
        }
    }
}
