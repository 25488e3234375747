#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "topdag/tree.hpp"

using namespace topdag;

TEST_CASE("parse single node and simple trees") {
    Tree a = parse_tree("a");
    CHECK(a.size() == 1);
    CHECK(a.edge_count() == 0);
    CHECK(a.symbol(0) == "a");

    Tree t = parse_tree("a(b,c)");
    CHECK(t.edge_count() == 2);
    REQUIRE(t.degree(0) == 2);
    CHECK(t.symbol(t.children(0)[0]) == "b");
    CHECK(t.symbol(t.children(0)[1]) == "c");

    Tree ex = parse_tree("a(b(a,a))");
    CHECK(ex.edge_count() == 3);
    CHECK(ex.symbol(1) == "b");
    CHECK(ex.degree(1) == 2);
    CHECK(ex.is_leaf(2));
    CHECK(ex.is_leaf(3));
}

TEST_CASE("serialize is canonical") {
    CHECK(serialize_tree(Tree::single("a")) == "a");
    CHECK(serialize_tree(parse_tree("a( b , c )")) == "a(b,c)");
    CHECK(serialize_tree(parse_tree(" x_1 (y(z , w) ,\n q)\n")) == "x_1(y(z,w),q)");
    CHECK(serialize_tree(parse_tree("a(b(c(d)),e(f,g(h)))")) == "a(b(c(d)),e(f,g(h)))");
}

TEST_CASE("parse errors report byte offsets") {
    auto offset_of = [](std::string_view text) -> std::size_t {
        try {
            parse_tree(text);
        } catch (const ParseError& e) {
            return e.offset();
        }
        FAIL("no parse error for '" << text << "'");
        return 0;
    };
    CHECK(offset_of("") == 0);
    CHECK(offset_of("   \n") == 4);
    CHECK(offset_of("a(") == 2);
    CHECK(offset_of("a(b") == 3);
    CHECK(offset_of("a(b,)") == 4);
    CHECK(offset_of("a()") == 2);
    CHECK(offset_of("a(b c)") == 4);
    CHECK(offset_of("a b") == 2);
    CHECK(offset_of("a(b))") == 4);
    CHECK(offset_of("a(-)") == 2);
}

TEST_CASE("tree equality is ordered and label based") {
    CHECK(parse_tree("a(b,c)") == parse_tree("a(b,c)"));
    CHECK_FALSE(parse_tree("a(b,c)") == parse_tree("a(c,b)"));
    CHECK_FALSE(parse_tree("a(b(a,a))") == parse_tree("a(b(a),a)"));
    // Same shape and labels, different label interning order.
    Tree s({"a", "b"}, {0, 1, 1}, {kNoNode, 0, 0});
    Tree t({"b", "a"}, {1, 0, 0}, {kNoNode, 0, 0});
    CHECK(s == t);
}

TEST_CASE("tree constructor validation") {
    CHECK_NOTHROW(Tree({"a"}, {0, 0, 0, 0}, {kNoNode, 0, 1, 0}));
    // node 2 hangs off the root, so node 1's subtree is closed before node 3
    CHECK_THROWS_AS(Tree({"a"}, {0, 0, 0, 0}, {kNoNode, 0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Tree({"a"}, {0, 0}, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Tree({"a"}, {0, 1}, {kNoNode, 0}), std::invalid_argument);
}

TEST_CASE("random_tree shapes") {
    CHECK(random_tree(0, 3, 7, Shape::Uniform).size() == 1);
    CHECK(serialize_tree(random_tree(3, 1, 1, Shape::Path)) == "a(a(a(a)))");
    CHECK(serialize_tree(random_tree(4, 1, 1, Shape::Star)) == "a(a,a,a,a)");
    CHECK(serialize_tree(random_tree(5, 1, 1, Shape::Caterpillar)) == "a(a,a(a,a(a)))");
    CHECK(serialize_tree(random_tree(6, 1, 1, Shape::FullBinary)) == "a(a(a,a),a(a,a))");
    CHECK(random_tree(0, 1, 1, Shape::FullBinary).size() == 1);
    CHECK_THROWS_AS(random_tree(5, 1, 1, Shape::FullBinary), std::invalid_argument);
    CHECK_THROWS_AS(random_tree(5, 0, 1, Shape::Uniform), std::invalid_argument);
    for (Shape s : {Shape::Uniform, Shape::Path, Shape::Star, Shape::Caterpillar})
        CHECK(random_tree(37, 3, 5, s).edge_count() == 37);
    CHECK(random_tree(1000, 4, 9, Shape::Uniform) == random_tree(1000, 4, 9, Shape::Uniform));
    CHECK_FALSE(random_tree(1000, 4, 9, Shape::Uniform) == random_tree(1000, 4, 10, Shape::Uniform));
}

TEST_CASE("uniform generation over two-edge shapes is balanced") {
    std::map<std::string, int> counts;
    for (std::uint64_t seed = 0; seed < 10000; ++seed)
        ++counts[serialize_tree(random_tree(2, 1, seed, Shape::Uniform))];
    REQUIRE(counts.size() == 2);
    CHECK(counts["a(a,a)"] / 10000.0 == doctest::Approx(0.5).epsilon(0.1));
    CHECK(counts["a(a(a))"] / 10000.0 == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("uniform generation covers all Catalan(4) shapes evenly") {
    std::map<std::string, int> counts;
    const int samples = 28000;
    for (int seed = 0; seed < samples; ++seed)
        ++counts[serialize_tree(random_tree(4, 1, static_cast<std::uint64_t>(seed), Shape::Uniform))];
    REQUIRE(counts.size() == oracle::catalan(4));
    // chi-square with 13 degrees of freedom; 99.9% quantile is 34.5
    double expected = samples / 14.0, chi2 = 0;
    for (auto& [shape, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 34.5);
}

TEST_CASE("enumerate_trees counts match the Catalan formula") {
    CHECK(enumerate_trees(1, 1).size() == 1);
    auto two = enumerate_trees(2, 1);
    CHECK(two.size() == 1 + 2);

    auto trees = enumerate_trees(6, 2);
    std::map<std::size_t, std::size_t> by_edges;
    std::set<std::string> distinct;
    for (const auto& t : trees) {
        ++by_edges[t.edge_count()];
        distinct.insert(serialize_tree(t));
    }
    CHECK(by_edges[6] == 16896);
    std::size_t total = 0;
    for (unsigned j = 1; j <= 6; ++j) {
        CHECK(by_edges[j] == oracle::catalan(j) * (std::size_t{1} << (j + 1)));
        total += oracle::catalan(j) * (std::size_t{1} << (j + 1));
    }
    CHECK(trees.size() == total);
    CHECK(distinct.size() == trees.size());
    CHECK_THROWS_AS(enumerate_trees(9, 1), std::length_error);
}

TEST_CASE("parse and serialize round-trip on enumerated trees") {
    for (const auto& t : enumerate_trees(5, 2)) {
        std::string text = serialize_tree(t);
        Tree back = parse_tree(text);
        REQUIRE(back == t);
        CHECK(serialize_tree(back) == text);
    }
}

TEST_CASE("generated trees satisfy structural invariants") {
    for (Shape s : {Shape::Uniform, Shape::Path, Shape::Star, Shape::Caterpillar}) {
        Tree t = random_tree(500, 3, 42, s);
        CHECK(t.edge_count() + 1 == t.size());
        std::size_t child_entries = 0;
        for (NodeId v = 0; v < t.size(); ++v) {
            std::set<NodeId> kids(t.children(v).begin(), t.children(v).end());
            CHECK(kids.size() == t.degree(v));
            for (NodeId c : kids) CHECK(t.parent(c) == v);
            child_entries += t.degree(v);
        }
        CHECK(child_entries == t.edge_count());
    }
}

TEST_CASE("deep paths parse and serialize without recursion") {
    Tree t = random_tree(200000, 2, 3, Shape::Path);
    Tree back = parse_tree(serialize_tree(t));
    CHECK(back == t);
}
