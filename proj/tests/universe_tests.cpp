#include <doctest.h>

#include <algorithm>
#include <set>

#include "mereo/universe.hpp"

using namespace mereo;

TEST_CASE("universe creation validates names and bounds") {
    auto u = Universe::create({"x", "y", "z"});
    CHECK(u->size() == 3);
    CHECK(u->name(1) == "y");
    CHECK(u->index("z") == 2);
    CHECK(u->index("w") == -1);
    CHECK(u->require("x") == 0);
    CHECK_THROWS_AS(u->require("w"), ModelError);

    CHECK_THROWS_WITH_AS(Universe::create({}), "universe must contain at least one element",
                         ModelError);
    CHECK_THROWS_WITH_AS(Universe::create({"a", "a"}), "duplicate universe element: a",
                         ModelError);
    CHECK_THROWS_AS(Universe::create({""}), ModelError);
    CHECK_THROWS_AS(Universe::create({"a", "b", "c"}, 2), ModelError);
    CHECK_THROWS_AS(Universe::create({"a"}, 65), ModelError);
}

TEST_CASE("canonical universe names elements 1..n") {
    auto u = Universe::canonical(4);
    CHECK(u->names() == std::vector<std::string>{"1", "2", "3", "4"});
    CHECK(u->full_mask() == 0b1111);
    CHECK(u->same_as(*Universe::create({"1", "2", "3", "4"})));
}

TEST_CASE("subset values support the boolean operations") {
    auto u = Universe::canonical(4);
    auto a = SubsetValue::from_names(u, {"1", "3"});
    auto b = SubsetValue::from_names(u, {"3", "4"});

    CHECK(a.count() == 2);
    CHECK(a.contains(0));
    CHECK_FALSE(a.contains(1));
    CHECK(a.to_string() == "{1,3}");
    CHECK(SubsetValue::empty_set(u).to_string() == "{}");
    CHECK(a.intersects(b));
    CHECK_FALSE(a.subset_of(b));
    CHECK(a.union_with(b).to_string() == "{1,3,4}");
    CHECK(a.intersect(b).to_string() == "{3}");
    CHECK(a.difference(b).to_string() == "{1}");
    CHECK(a.complement().to_string() == "{2,4}");
    CHECK(a.member_names() == std::vector<std::string>{"1", "3"});
    CHECK(SubsetValue::full_set(u).count() == 4);

    auto v = Universe::canonical(3);
    auto c = SubsetValue::from_names(v, {"1"});
    CHECK_THROWS_WITH_AS(a.union_with(c), "universe mismatch between subset operands",
                         ModelError);
    CHECK_THROWS_AS(SubsetValue(u, 0xFFFF), ModelError); // bits outside a 4-element universe
}

TEST_CASE("binary relations expose pairs in row-major order") {
    auto u = Universe::canonical(3);
    auto r = BinaryRelation::from_pairs(u, {{"1", "2"}, {"2", "3"}});
    CHECK(r.contains(0, 1));
    CHECK_FALSE(r.contains(1, 0));
    CHECK(r.pairs() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

    auto d = BinaryRelation::diagonal(u);
    CHECK(d.pairs() == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 2}});

    auto refl = reflexive_completion(r);
    CHECK(refl.contains(0, 0));
    CHECK(refl.contains(0, 1));

    auto closed = transitive_closure(r);
    CHECK(closed.contains(0, 2)); // 1 -> 2 -> 3 composes
    CHECK_FALSE(closed.contains(0, 0));
}

TEST_CASE("relation properties report minimal witnesses") {
    auto u = Universe::canonical(3);

    auto r = BinaryRelation::from_pairs(u, {{"1", "2"}, {"2", "3"}});
    auto p = relation_properties(r);
    CHECK_FALSE(p.reflexive.holds);
    CHECK(p.reflexive.witness == std::vector<int>{0});
    CHECK_FALSE(p.symmetric.holds);
    CHECK(p.symmetric.witness == std::vector<int>{0, 1});
    CHECK_FALSE(p.transitive.holds);
    CHECK(p.transitive.witness == std::vector<int>{0, 1, 2});
    CHECK(p.antisymmetric.holds);

    auto eq = BinaryRelation::from_pairs(u, {{"1", "1"}, {"2", "2"}, {"3", "3"},
                                             {"1", "2"}, {"2", "1"}});
    auto q = relation_properties(eq);
    CHECK(q.reflexive.holds);
    CHECK(q.symmetric.holds);
    CHECK(q.transitive.holds);
    CHECK_FALSE(q.antisymmetric.holds);
    CHECK(q.antisymmetric.witness == std::vector<int>{0, 1});
}

TEST_CASE("partitions enforce their invariants by name") {
    auto u = Universe::canonical(3);
    auto block = [&](std::vector<std::string> names) {
        return SubsetValue::from_names(u, names);
    };

    auto p = Partition::from_blocks({block({"3"}), block({"1", "2"})});
    // Blocks are reordered by least element.
    CHECK(p.blocks()[0].to_string() == "{1,2}");
    CHECK(p.blocks()[1].to_string() == "{3}");
    CHECK(p.block_of(2) == 1);
    CHECK(p.rgs() == std::vector<int>{0, 0, 1});

    CHECK_THROWS_WITH_AS(Partition::from_blocks({block({"1", "2"}), block({"2", "3"})}),
                         "partition blocks are not pairwise disjoint: {2,3} overlaps an earlier block",
                         ModelError);
    CHECK_THROWS_WITH_AS(Partition::from_blocks({block({"1", "2"})}),
                         "partition blocks do not cover the universe", ModelError);
    CHECK_THROWS_WITH_AS(Partition::from_blocks({}),
                         "partition requires at least one block", ModelError);
    CHECK_THROWS_AS(Partition::from_blocks({block({"1", "2", "3"}), SubsetValue::empty_set(u)}),
                    ModelError);

    auto q = Partition::from_rgs(u, {0, 0, 1});
    CHECK(q == p);
    CHECK_THROWS_AS(Partition::from_rgs(u, {0, 2, 0}), ModelError); // skips block 1
    CHECK_THROWS_AS(Partition::from_rgs(u, {0, 0}), ModelError);
}

TEST_CASE("covers allow overlap but reject duplicates and gaps") {
    auto u = Universe::canonical(3);
    auto block = [&](std::vector<std::string> names) {
        return SubsetValue::from_names(u, names);
    };

    auto c = Cover::from_blocks({block({"2", "3"}), block({"1", "2"})});
    CHECK(c.block_count() == 2);
    // Sorted by mask value: {1,2} = 0b011 before {2,3} = 0b110.
    CHECK(c.blocks()[0].to_string() == "{1,2}");
    CHECK(c.is_proper());
    CHECK_FALSE(Cover::from_blocks({block({"1", "2", "3"}), block({"1"})}).is_proper());
    CHECK(Cover::from_blocks({block({"1", "2", "3"})}).is_proper());

    CHECK_THROWS_WITH_AS(Cover::from_blocks({block({"1", "2"})}),
                         "cover blocks do not cover the universe", ModelError);
    CHECK_THROWS_WITH_AS(Cover::from_blocks({block({"1", "2"}), block({"1", "2"}), block({"3"})}),
                         "duplicate cover block: {1,2}", ModelError);
}

TEST_CASE("equivalence classes require an actual equivalence") {
    auto u = Universe::canonical(3);
    auto eq = BinaryRelation::from_pairs(u, {{"1", "1"}, {"2", "2"}, {"3", "3"},
                                             {"1", "2"}, {"2", "1"}});
    auto p = equivalence_classes(eq);
    CHECK(p.block_count() == 2);
    CHECK(p.blocks()[0].to_string() == "{1,2}");

    auto bad = BinaryRelation::from_pairs(u, {{"1", "1"}, {"2", "2"}, {"3", "3"}, {"1", "2"}});
    CHECK_THROWS_AS(equivalence_classes(bad), ModelError);
}

TEST_CASE("partition stream counts match the Bell numbers") {
    CHECK(PartitionStream::count(1) == 1);
    CHECK(PartitionStream::count(2) == 2);
    CHECK(PartitionStream::count(3) == 5);
    CHECK(PartitionStream::count(4) == 15);
    CHECK(PartitionStream::count(5) == 52);
    CHECK(PartitionStream::count(6) == 203);
}

TEST_CASE("partition stream yields restricted-growth order") {
    auto u = Universe::canonical(3);
    PartitionStream s(u);
    std::vector<std::vector<int>> seen;
    while (auto p = s.next()) seen.push_back(p->rgs());
    CHECK(seen == std::vector<std::vector<int>>{
              {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {0, 1, 2}});
}

TEST_CASE("partition stream seeks by rank") {
    auto u = Universe::canonical(4);
    // Walk the full stream once, then confirm every rank seeks to the
    // partition the walk produced.
    std::vector<Partition> all;
    {
        PartitionStream s(u);
        while (auto p = s.next()) all.push_back(*p);
    }
    CHECK(all.size() == 15);
    for (std::uint64_t r = 0; r < all.size(); ++r) {
        PartitionStream s(u, r);
        CHECK(s.rank() == r);
        auto p = s.next();
        REQUIRE(p.has_value());
        CHECK(*p == all[r]);
    }
    PartitionStream past(u, 15);
    CHECK_FALSE(past.next().has_value());
}

TEST_CASE("enumerate_partitions materializes the stream") {
    auto u = Universe::canonical(4);
    auto all = enumerate_partitions(u);
    CHECK(all.size() == 15);
    std::set<std::vector<int>> distinct;
    for (const auto& p : all) distinct.insert(p.rgs());
    CHECK(distinct.size() == 15);

    CHECK_THROWS_WITH_AS(enumerate_partitions(Universe::canonical(13, 16)),
                         "refusing to materialize partitions of a universe larger than 12",
                         ModelError);
}
