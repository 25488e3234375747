#include <doctest.h>

#include "topdag/topdag.hpp"

using namespace topdag;

namespace {

const char* kExample =
    "TOPDAG v1 mode=dag n=3 sigma=2 k=2\n"
    "root 3\n"
    "0 L a b 1\n"
    "1 L b a 0\n"
    "2 H 1 1\n"
    "3 V 0 2\n";

std::string error_of(const std::string& text) {
    try {
        deserialize_topdag(text);
    } catch (const TopDagFormatError& e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string& s, std::string_view part) { return s.find(part) != std::string::npos; }

} // namespace

TEST_CASE("serialize the worked example") {
    TopDag d = compress(parse_tree("a(b(a,a))"), Mode::Dag, 2);
    CHECK(serialize_topdag(d) == kExample);
    TopDag back = deserialize_topdag(kExample);
    CHECK(decompress(back) == parse_tree("a(b(a,a))"));
    CHECK(back.meta.mode == Mode::Dag);
    CHECK(back.meta.n == 3);
    CHECK(back.meta.sigma == 2);
    CHECK(back.meta.k == 2);
    CHECK(serialize_topdag(back) == kExample);
}

TEST_CASE("single node sentinel") {
    TopDag d = TopDag::single_node("q", Mode::Tree);
    std::string text = serialize_topdag(d);
    CHECK(text == "TOPDAG v1 mode=tree n=0 sigma=2 k=0\nNODE q\n");
    TopDag back = deserialize_topdag(text);
    REQUIRE(back.is_single_node());
    CHECK(decompress(back) == Tree::single("q"));
    CHECK(contains(error_of("TOPDAG v1 mode=tree n=1 sigma=2 k=0\nNODE q\n"), "n=0"));
    CHECK(contains(error_of("TOPDAG v1 mode=tree n=0 sigma=2 k=0\nNODE q\n0 L a b 0\n"), "after NODE"));
}

TEST_CASE("round trip on random trees") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Tree t = random_tree(1 + seed * 97, 1 + seed % 5, seed, Shape::Uniform);
        Mode mode = seed % 2 ? Mode::Dag : Mode::Tree;
        TopDag d = compress(t, mode, 1 + static_cast<std::uint32_t>(seed % 3));
        std::string text = serialize_topdag(d);
        TopDag back = deserialize_topdag(text);
        CHECK(serialize_topdag(back) == text);
        CHECK(decompress(back) == t);
        CHECK(back.store.is_duplicate_free());
    }
}

TEST_CASE("malformed input is rejected with a reason") {
    CHECK(contains(error_of(""), "version mismatch"));
    CHECK(contains(error_of("TOPDAG v2 mode=dag n=3 sigma=2 k=2\nroot 0\n"), "version mismatch"));
    CHECK(contains(error_of("TOPTREE v1\n"), "version mismatch"));

    std::string base = "TOPDAG v1 mode=dag n=3 sigma=2 k=2\nroot 3\n0 L a b 1\n1 L b a 0\n";
    CHECK(contains(error_of(base + "2 H 1 1\n3 V 0 7\n"), "dangling child id"));
    CHECK(contains(error_of(base + "2 H 1 1\n3 V 0 3\n"), "dangling child id"));
    CHECK(contains(error_of(base + "2 H 0 0\n3 V 0 2\n"), "inconsistent merge"));
    CHECK(contains(error_of(base + "2 H 1 1\n2 V 0 2\n"), "duplicate id"));
    CHECK(contains(error_of(base + "2 H 1 1\n4 V 0 2\n"), "dense"));
    CHECK(contains(error_of("TOPDAG v1 mode=dag n=2 sigma=2 k=2\nroot 2\n0 L a b 1\n1 L a a 0\n2 V 0 1\n"),
                   "inconsistent merge"));
    CHECK(error_of(base + "2 H 1 1\n3 V 0 2\n").empty());
    CHECK(contains(error_of("TOPDAG v1 mode=dag n=4 sigma=2 k=2\nroot 3\n0 L a b 1\n1 L b a 0\n2 H 1 1\n3 V 0 2\n"),
                   "differs from n"));
    CHECK(contains(error_of("TOPDAG v1 mode=dag n=1 sigma=2 k=2\nroot 0\n0 L a b 1\n"), "rank 1"));
    CHECK(contains(error_of("TOPDAG v1 mode=dag n=1 sigma=2 k=2\nroot 5\n0 L a b 0\n"), "dangling root"));
    CHECK(contains(error_of("TOPDAG v1 mode=dag n=1 sigma=2 k=2\nroot 0\n0 L a b 2\n"), "rank bit"));
    CHECK(contains(error_of("TOPDAG v1 mode=dag n=1 sigma=2 k=2\nroot 0\n0 L a b- 0\n"), "invalid label"));
    CHECK(contains(error_of("TOPDAG v1 mode=bush n=1 sigma=2 k=2\nroot 0\n0 L a b 0\n"), "unknown mode"));
    CHECK(contains(error_of("TOPDAG v1 mode=dag n=x sigma=2 k=2\nroot 0\n0 L a b 0\n"), "bad n"));
    CHECK(contains(error_of("TOPDAG v1 mode=dag n=1 sigma=2 k=2\nroot 0\n0 Q a b 0\n"), "malformed"));
    CHECK(contains(error_of("TOPDAG v1 mode=dag n=1 sigma=2 k=2\nroot 0\n"), "no records"));
}
