#include "oracles.hpp"
#include "tcpdl/allen.hpp"

#include <doctest.h>

#include <random>

using namespace tcpdl::allen;

TEST_CASE("converse examples") {
    CHECK(converse(Relation::Before) == Relation::After);
    CHECK(converse(Relation::Equals) == Relation::Equals);
    CHECK(converse(Relation::Overlaps) == Relation::OverlappedBy);
}

TEST_CASE("converse is an involution and a bijection") {
    RelationSet image;
    for (Relation r : kAllRelations) {
        CHECK(converse(converse(r)) == r);
        image.insert(converse(r));
    }
    CHECK(image.is_full());
}

TEST_CASE("composition matches endpoint enumeration on all 169 pairs") {
    const auto table = oracle::composition_by_enumeration(0, 12);
    for (Relation r1 : kAllRelations)
        for (Relation r2 : kAllRelations) {
            INFO(short_name(r1), " ; ", short_name(r2));
            CHECK(compose(r1, r2) == table[index_of(r1)][index_of(r2)]);
        }
}

TEST_CASE("composition examples") {
    CHECK(compose(Relation::Before, Relation::Before) == RelationSet{Relation::Before});
    CHECK(compose(Relation::Meets, Relation::Meets) == RelationSet{Relation::Before});
    for (Relation r : kAllRelations) {
        CHECK(compose(Relation::Equals, r) == RelationSet{r});
        CHECK(compose(r, Relation::Equals) == RelationSet{r});
    }
    // o ; o = {b, m, o}
    CHECK(compose(Relation::Overlaps, Relation::Overlaps) ==
          RelationSet{Relation::Before, Relation::Meets, Relation::Overlaps});
}

TEST_CASE("converse coherence of composition") {
    for (Relation r1 : kAllRelations)
        for (Relation r2 : kAllRelations)
            for (Relation s : kAllRelations)
                CHECK(compose(r1, r2).contains(s) == compose(converse(r2), converse(r1)).contains(converse(s)));
}

TEST_CASE("compose_sets") {
    CHECK(compose_sets({Relation::Before}, {Relation::Before}) == RelationSet{Relation::Before});
    CHECK(compose_sets(RelationSet::empty(), RelationSet::full()).is_empty());
    CHECK(compose_sets(RelationSet::full(), RelationSet::empty()).is_empty());
    CHECK(compose_sets(RelationSet::full(), RelationSet::full()).is_full());

    // Every relation is realisable, so the oracle's FULL;FULL is FULL too.
    const auto table = oracle::composition_by_enumeration(0, 12);
    RelationSet all;
    for (const auto& row : table)
        for (const auto& cell : row) all |= cell;
    CHECK(all.is_full());
}

TEST_CASE("intersect") {
    CHECK(intersect({Relation::Before, Relation::Meets}, {Relation::Meets, Relation::Overlaps}) ==
          RelationSet{Relation::Meets});
    CHECK(intersect({Relation::Before}, {Relation::After}).is_empty());
    RelationSet s{Relation::During, Relation::Starts};
    CHECK(intersect(s, RelationSet::full()) == s);
}

TEST_CASE("relation_of_timestamped") {
    CHECK(relation_of_timestamped({1, 2}, {3, 4}) == Relation::Before);
    CHECK(relation_of_timestamped({1, 2}, {1, 2}) == Relation::Equals);
    CHECK(relation_of_timestamped({1, 3}, {2, 4}) == Relation::Overlaps);
    CHECK_THROWS_AS(relation_of_timestamped({3, 1}, {0, 4}), InvalidInterval);
}

TEST_CASE("point intervals classify deterministically") {
    CHECK(relation_of_timestamped({5, 5}, {5, 5}) == Relation::Equals);
    CHECK(relation_of_timestamped({2, 2}, {2, 5}) == Relation::Starts);
    CHECK(relation_of_timestamped({5, 5}, {2, 5}) == Relation::Finishes);
    CHECK(relation_of_timestamped({3, 3}, {2, 5}) == Relation::During);
    CHECK(relation_of_timestamped({1, 1}, {2, 5}) == Relation::Before);
    // Converse symmetry holds for degenerate pairs as well.
    for (int a = 0; a < 5; ++a)
        for (int b = a; b < 5; ++b)
            for (int c = 0; c < 5; ++c)
                for (int d = c; d < 5; ++d)
                    CHECK(relation_of_timestamped({c, d}, {a, b}) == converse(relation_of_timestamped({a, b}, {c, d})));
}

TEST_CASE("relation_of_timestamped is exclusive and exhaustive on random intervals") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pt(-50, 50);
    for (int i = 0; i < 5000; ++i) {
        int a = pt(rng), b = pt(rng), c = pt(rng), d = pt(rng);
        if (a > b) std::swap(a, b);
        if (c > d) std::swap(c, d);
        if (a == b || c == d) continue;
        // The oracle classifier agrees, and exactly one relation's endpoint
        // pattern holds.
        CHECK(relation_of_timestamped({a, b}, {c, d}) == oracle::classify({a, b}, {c, d}));
    }
}

TEST_CASE("names") {
    CHECK(parse_relation("before") == Relation::Before);
    CHECK(parse_relation("b") == Relation::Before);
    CHECK(parse_relation("=") == Relation::Equals);
    CHECK(parse_relation("eq") == Relation::Equals);
    CHECK(parse_relation("met-by") == Relation::MetBy);
    CHECK(parse_relation("after") == Relation::After);
    CHECK(parse_relation("fi") == Relation::FinishedBy);
    // Reserved for timestamps.
    CHECK_FALSE(parse_relation("finished-by").has_value());
    CHECK_FALSE(parse_relation("starts").has_value());
    CHECK_FALSE(parse_relation("sideways").has_value());
    for (Relation r : kAllRelations) CHECK(parse_relation(short_name(r)) == r);

    CHECK(parse_relation_set("{b, m}") == RelationSet{Relation::Before, Relation::Meets});
    CHECK(parse_relation_set("before") == RelationSet{Relation::Before});
    CHECK(RelationSet({Relation::Before, Relation::Meets}).to_string() == "{b,m}");
    CHECK_THROWS_AS(parse_relation_set("{b, x}"), std::invalid_argument);
}
