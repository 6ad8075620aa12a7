#include <doctest.h>

#include <set>

#include "mereo/approximation.hpp"

using namespace mereo;

namespace {

ApproximationSpace partition_space(int n, std::vector<std::vector<std::string>> blocks) {
    auto u = Universe::canonical(n);
    std::vector<SubsetValue> subs;
    for (auto& b : blocks) subs.push_back(SubsetValue::from_names(u, b));
    return ApproximationSpace(Partition::from_blocks(std::move(subs)));
}

// Every subset of the space's universe, in mask order.
std::vector<SubsetValue> powerset(const ApproximationSpace& s) {
    std::vector<SubsetValue> out;
    for (std::uint64_t m = 0; m <= s.universe()->full_mask(); ++m)
        out.emplace_back(s.universe(), m);
    return out;
}

} // namespace

TEST_CASE("partition approximations are block unions") {
    auto s = partition_space(5, {{"1", "2", "3"}, {"4"}, {"5"}});
    auto a = SubsetValue::from_names(s.universe(), {"1", "2", "4"});
    CHECK(s.lower(a).to_string() == "{4}");
    CHECK(s.upper(a).to_string() == "{1,2,3,4}");

    auto r = regions(s, a);
    CHECK(r.positive.to_string() == "{4}");
    CHECK(r.negative.to_string() == "{5}");
    CHECK(r.boundary.to_string() == "{1,2,3}");
}

TEST_CASE("cover approximations use the same block-union operators") {
    auto u = Universe::canonical(3);
    auto c = Cover::from_blocks({SubsetValue::from_names(u, {"1", "2"}),
                                 SubsetValue::from_names(u, {"2", "3"})});
    ApproximationSpace s(c);
    CHECK(s.mode() == GranulationMode::cover);

    auto a = SubsetValue::from_names(u, {"1", "2"});
    CHECK(s.lower(a).to_string() == "{1,2}");
    CHECK(s.upper(a).to_string() == "{1,2,3}"); // {2,3} meets a

    auto b = SubsetValue::from_names(u, {"2"});
    CHECK(s.lower(b).to_string() == "{}");
    CHECK(s.upper(b).to_string() == "{1,2,3}");
}

TEST_CASE("approximation operators satisfy the lattice laws on every small partition") {
    for (int n = 1; n <= 4; ++n) {
        auto u = Universe::canonical(n);
        PartitionStream ps(u);
        while (auto p = ps.next()) {
            ApproximationSpace s(*p);
            auto all = powerset(s);
            for (const auto& a : all) {
                auto la = s.lower(a), ua = s.upper(a);
                CHECK(la.subset_of(a));
                CHECK(a.subset_of(ua));
                CHECK(s.lower(la) == la);  // idempotent
                CHECK(s.upper(ua) == ua);  // partitions: upper is closure
                CHECK(s.lower(ua) == ua);  // block unions are definite
                for (const auto& b : all) {
                    if (!a.subset_of(b)) continue;
                    CHECK(s.lower(a).subset_of(s.lower(b)));
                    CHECK(s.upper(a).subset_of(s.upper(b)));
                }
            }
        }
    }
}

TEST_CASE("cover upper approximations grow under iteration") {
    // On covers u is monotone and inflationary but not idempotent in
    // general; A^u ⊆ A^uu must still hold.
    auto u = Universe::canonical(3);
    auto c = Cover::from_blocks({SubsetValue::from_names(u, {"1", "2"}),
                                 SubsetValue::from_names(u, {"2", "3"})});
    ApproximationSpace s(c);
    for (std::uint64_t m = 0; m <= u->full_mask(); ++m) {
        SubsetValue a(u, m);
        CHECK(s.upper(a).subset_of(s.upper(s.upper(a))));
        CHECK(s.lower(a).subset_of(a));
    }
    // Witness that upper need not be idempotent on covers: {1} climbs.
    auto one = SubsetValue::from_names(u, {"1"});
    CHECK(s.upper(one).to_string() == "{1,2}");
    CHECK(s.upper(s.upper(one)).to_string() == "{1,2,3}");
}

TEST_CASE("rough inclusion and equality compare approximation pairs") {
    auto s = partition_space(3, {{"1", "2"}, {"3"}});
    auto u = s.universe();
    auto x = SubsetValue::from_names(u, {"1"});
    auto y = SubsetValue::from_names(u, {"2"});
    auto z = SubsetValue::from_names(u, {"1", "3"});

    // {1} and {2} have equal approximations (∅, {1,2}).
    CHECK(rough_equal(s, x, y));
    CHECK(rough_included(s, x, y));
    CHECK_FALSE(rough_equal(s, x, z));
    CHECK(rough_included(s, x, SubsetValue::from_names(u, {"1", "2"})));
    CHECK_FALSE(rough_included(s, z, x));
}

TEST_CASE("definiteness distinguishes the five crispness notions") {
    auto s = partition_space(5, {{"1", "2", "3"}, {"4"}, {"5"}});
    auto u = s.universe();

    auto d_block = definiteness(s, SubsetValue::from_names(u, {"4"}));
    CHECK(d_block.lower_definite);
    CHECK(d_block.upper_definite);
    CHECK(d_block.definite);
    CHECK(d_block.weakly_upper_definite);
    CHECK(d_block.weakly_definite);

    // {1,2,4}: lower {4}, upper {1,2,3,4}; on a partition upper is closed,
    // so the set is weakly upper definite but nothing stronger.
    auto d_mixed = definiteness(s, SubsetValue::from_names(u, {"1", "2", "4"}));
    CHECK_FALSE(d_mixed.lower_definite);
    CHECK_FALSE(d_mixed.upper_definite);
    CHECK_FALSE(d_mixed.definite);
    CHECK(d_mixed.weakly_upper_definite);
    CHECK_FALSE(d_mixed.weakly_definite);

    // On a cover, weak upper definiteness can fail outright.
    auto cu = Universe::canonical(3);
    ApproximationSpace cs(Cover::from_blocks({SubsetValue::from_names(cu, {"1", "2"}),
                                              SubsetValue::from_names(cu, {"2", "3"})}));
    auto d_cover = definiteness(cs, SubsetValue::from_names(cu, {"1"}));
    CHECK_FALSE(d_cover.weakly_upper_definite);

    // Lower-definite without upper-definite: {1,2} in the cover is its own
    // lower approximation but its upper reaches {3}.
    auto d_lower = definiteness(cs, SubsetValue::from_names(cu, {"1", "2"}));
    CHECK(d_lower.lower_definite);
    CHECK_FALSE(d_lower.upper_definite);
}

TEST_CASE("rough object enumeration over a two-block partition") {
    auto s = partition_space(3, {{"1", "2"}, {"3"}});

    // Definite sets are the four block unions; five strict pairs among them.
    auto pairs = enumerate_rough_objects(s, RoughObjectKind::definite_pair);
    CHECK(pairs.size() == 5);
    for (const auto& [a, b] : pairs) {
        CHECK(a.subset_of(b));
        CHECK(a != b);
        CHECK(s.lower(a) == a);
        CHECK(s.upper(b) == b);
    }

    // Adding the four reflexive pairs gives the definite intervals.
    CHECK(enumerate_rough_objects(s, RoughObjectKind::definite_interval).size() == 9);

    // Distinct proper (l, u) pairs: ({}, {1,2}) from {1} or {2}, and
    // ({3}, {1,2,3}) from {1,3} or {2,3}.
    auto lu = enumerate_rough_objects(s, RoughObjectKind::lu_pair);
    REQUIRE(lu.size() == 2);
    CHECK(lu[0].first.to_string() == "{}");
    CHECK(lu[0].second.to_string() == "{1,2}");
    CHECK(lu[1].first.to_string() == "{3}");
    CHECK(lu[1].second.to_string() == "{1,2,3}");

    // All distinct (l, u) pairs, degenerate included: the two above plus
    // (∅,∅), ({3},{3}), ({1,2},{1,2}), (U,U).
    CHECK(enumerate_rough_objects(s, RoughObjectKind::lu_interval).size() == 6);
}

TEST_CASE("rough object pairs are deterministic and duplicate-free") {
    auto s = partition_space(4, {{"1", "2"}, {"3", "4"}});
    for (auto kind : {RoughObjectKind::definite_pair, RoughObjectKind::lu_pair,
                      RoughObjectKind::lu_interval, RoughObjectKind::definite_interval}) {
        auto pairs = enumerate_rough_objects(s, kind);
        std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
        std::pair<std::uint64_t, std::uint64_t> prev{0, 0};
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            std::pair<std::uint64_t, std::uint64_t> key{pairs[i].first.bits(),
                                                        pairs[i].second.bits()};
            CHECK(seen.insert(key).second);
            if (i > 0) CHECK(prev < key);
            prev = key;
        }
    }
}

TEST_CASE("approximations reject subsets over a different universe") {
    auto s = partition_space(3, {{"1", "2"}, {"3"}});
    auto other = Universe::canonical(4);
    CHECK_THROWS_AS(s.lower(SubsetValue::from_names(other, {"1"})), ModelError);
}
