#include <doctest.h>

#include <vector>

#include "mereo/granular_space.hpp"

using namespace mereo;

namespace {

GranularSpaceModel partition_model(int n, std::vector<std::vector<std::string>> blocks) {
    auto u = Universe::canonical(n);
    std::vector<SubsetValue> subs;
    for (auto& b : blocks) subs.push_back(SubsetValue::from_names(u, b));
    return GranularSpaceModel::from_space(
        ApproximationSpace(Partition::from_blocks(std::move(subs))));
}

GranularSpaceModel cover_model(int n, std::vector<std::vector<std::string>> blocks) {
    auto u = Universe::canonical(n);
    std::vector<SubsetValue> subs;
    for (auto& b : blocks) subs.push_back(SubsetValue::from_names(u, b));
    return GranularSpaceModel::from_space(ApproximationSpace(Cover::from_blocks(std::move(subs))));
}

// Four-point boolean algebra with identity approximations; granules are the
// two atoms. The smallest fully abstract lattice model.
GranularSpaceModel::AbstractTables diamond_tables() {
    GranularSpaceModel::AbstractTables t;
    t.carrier = {"bot", "x", "y", "top"};
    t.granules = {"x", "y"};
    for (const auto& e : t.carrier) {
        t.lower.emplace_back(e, e);
        t.upper.emplace_back(e, e);
    }
    auto order = [&](std::vector<std::pair<std::string, std::string>>& rel) {
        for (const auto& e : t.carrier) {
            rel.emplace_back("bot", e);
            rel.emplace_back(e, e);
            rel.emplace_back(e, "top");
        }
    };
    order(t.parthood);
    order(t.leq);
    auto join = [&](const std::string& a, const std::string& b) {
        if (a == "bot") return b;
        if (b == "bot") return a;
        if (a == b) return a;
        return std::string("top");
    };
    auto meet = [&](const std::string& a, const std::string& b) {
        if (a == "top") return b;
        if (b == "top") return a;
        if (a == b) return a;
        return std::string("bot");
    };
    for (const auto& a : t.carrier)
        for (const auto& b : t.carrier) {
            t.join.push_back({a, b, join(a, b)});
            t.meet.push_back({a, b, meet(a, b)});
        }
    t.bottom = "bot";
    t.top = "top";
    return t;
}

} // namespace

TEST_CASE("partial terms render and evaluate") {
    auto t = PartialTerm::meet(PartialTerm::join(PartialTerm::variable(0), PartialTerm::variable(1)),
                               PartialTerm::variable(2));
    CHECK(t.to_string() == "(x0 v x1) ^ x2");
    CHECK(t.to_string({"a", "b", "c"}) == "(a v b) ^ c");
    CHECK(t.variable_count() == 3);
    CHECK_THROWS_AS(PartialTerm::variable(-1), ModelError);

    // Set-backed carrier indices are subset masks, so join is union.
    auto m = partition_model(2, {{"1"}, {"2"}});
    auto jt = PartialTerm::join(PartialTerm::variable(0), PartialTerm::variable(1));
    CHECK(eval_partial_term(m, jt, {1, 2}) == 3);
    auto mt = PartialTerm::meet(PartialTerm::variable(0), PartialTerm::variable(1));
    CHECK(eval_partial_term(m, mt, {1, 2}) == 0);
    CHECK_THROWS_WITH_AS(eval_partial_term(m, jt, {1}), "term mentions an unbound variable",
                         ModelError);
}

TEST_CASE("omega equalities treat undefined sides differently") {
    std::optional<int> none;
    CHECK(omega_equal(none, none));
    CHECK(omega_equal(none, 1));
    CHECK(omega_equal(1, none));
    CHECK(omega_equal(1, 1));
    CHECK_FALSE(omega_equal(1, 2));

    CHECK(omega_star_equal(none, none));
    CHECK_FALSE(omega_star_equal(none, 1));
    CHECK(omega_star_equal(1, 1));
    CHECK_FALSE(omega_star_equal(1, 2));
}

TEST_CASE("set-backed models expose the powerset carrier") {
    auto m = partition_model(2, {{"1"}, {"2"}});
    CHECK(m.set_backed());
    CHECK(m.carrier_size() == 4);
    CHECK(m.element_name(0) == "{}");
    CHECK(m.element_name(3) == "{1,2}");
    CHECK(m.element_index("{2}") == 2);
    CHECK(m.element_index("{1,2}") == 3);
    CHECK_THROWS_AS(m.element_index("{1,5}"), ModelError);
    CHECK_THROWS_AS(m.element_index("plain"), ModelError);

    CHECK(m.granules() == std::vector<int>{1, 2});
    CHECK(m.is_granule(1));
    CHECK_FALSE(m.is_granule(3));

    CHECK(m.bottom() == 0);
    CHECK(m.top() == 3);
    CHECK(m.part(1, 3));
    CHECK_FALSE(m.part(3, 1));
    CHECK(m.leq(1, 3));
    CHECK(m.join(1, 2) == 3);
    CHECK(m.meet(1, 2) == 0);
    CHECK(m.join_total());
    CHECK(m.meet_total());
    CHECK(m.lower_of(1) == 1);
    CHECK(m.upper_of(1) == 1);

    // Coarser partition: {1} approximates to ∅ below and the block above.
    auto c = partition_model(2, {{"1", "2"}});
    CHECK(c.lower_of(1) == 0);
    CHECK(c.upper_of(1) == 3);
    CHECK(c.granules() == std::vector<int>{3});
}

TEST_CASE("to_tables round-trips through from_tables") {
    auto m = partition_model(2, {{"1"}, {"2"}});
    auto back = GranularSpaceModel::from_tables(m.to_tables());
    CHECK_FALSE(back.set_backed());
    CHECK(back.carrier_size() == m.carrier_size());
    for (int a = 0; a < m.carrier_size(); ++a) {
        CHECK(back.element_name(a) == m.element_name(a));
        CHECK(back.lower_of(a) == m.lower_of(a));
        CHECK(back.upper_of(a) == m.upper_of(a));
        for (int b = 0; b < m.carrier_size(); ++b) {
            CHECK(back.part(a, b) == m.part(a, b));
            CHECK(back.leq(a, b) == m.leq(a, b));
            CHECK(back.join(a, b) == m.join(a, b));
            CHECK(back.meet(a, b) == m.meet(a, b));
        }
    }
    CHECK(back.bottom() == m.bottom());
    CHECK(back.top() == m.top());
}

TEST_CASE("abstract table validation names the offending entry") {
    auto t = diamond_tables();

    auto dup = t;
    dup.carrier.push_back("x");
    CHECK_THROWS_WITH_AS(GranularSpaceModel::from_tables(dup), "duplicate carrier element: x",
                         ModelError);

    auto badg = t;
    badg.granules.push_back("q");
    CHECK_THROWS_WITH_AS(GranularSpaceModel::from_tables(badg),
                         "granule list refers to unknown element: q", ModelError);

    auto missing = t;
    missing.lower.erase(missing.lower.begin() + 1); // drop x's entry
    CHECK_THROWS_WITH_AS(GranularSpaceModel::from_tables(missing),
                         "lower operator table is not total: missing x", ModelError);

    auto twice = t;
    twice.upper.emplace_back("x", "top");
    CHECK_THROWS_WITH_AS(GranularSpaceModel::from_tables(twice),
                         "upper operator table has a duplicate entry for x", ModelError);

    auto empty = t;
    empty.carrier.clear();
    CHECK_THROWS_WITH_AS(GranularSpaceModel::from_tables(empty), "abstract carrier must be nonempty",
                         ModelError);
}

TEST_CASE("axiom report lists the space axioms in a fixed order") {
    auto m = partition_model(2, {{"1"}, {"2"}});
    auto rep = check_ggs_axioms(m);
    std::vector<std::string> ids;
    for (const auto& v : rep.verdicts) ids.push_back(v.id);
    CHECK(ids == std::vector<std::string>{
              "join-commutes", "meet-commutes", "join-idempotent", "meet-idempotent",
              "join-absorption", "meet-absorption", "join-distributes-over-meet",
              "meet-distributes-over-join", "order-link", "lower-part", "lower-idempotent",
              "upper-iterate", "approx-monotone", "bottom-approx", "bottom-least", "top-approx",
              "top-greatest"});
    CHECK(rep.all_passed());
    CHECK(rep.failed_ids().empty());
}

TEST_CASE("every small partition and cover model satisfies the space axioms") {
    for (int n = 1; n <= 3; ++n) {
        auto u = Universe::canonical(n);
        PartitionStream ps(u);
        while (auto p = ps.next()) {
            auto m = GranularSpaceModel::from_space(ApproximationSpace(*p));
            CHECK(check_ggs_axioms(m).all_passed());
        }
    }
    // A genuinely overlapping cover behaves the same way.
    auto m = cover_model(3, {{"1", "2"}, {"2", "3"}});
    CHECK(check_ggs_axioms(m).all_passed());
}

TEST_CASE("axioms are vacuous where the operations are undefined") {
    GranularSpaceModel::AbstractTables t;
    t.carrier = {"x", "y"};
    t.granules = {"x"};
    for (const auto& e : t.carrier) {
        t.lower.emplace_back(e, e);
        t.upper.emplace_back(e, e);
        t.parthood.emplace_back(e, e);
        t.leq.emplace_back(e, e);
    }
    auto m = GranularSpaceModel::from_tables(t);
    CHECK_FALSE(m.join_total());
    CHECK_FALSE(m.meet_total());
    CHECK(m.join(0, 1) == std::nullopt);

    auto rep = check_ggs_axioms(m);
    CHECK(rep.find("join-commutes")->passed());
    CHECK(rep.find("join-absorption")->passed());
    CHECK(rep.find("bottom-approx")->status == VerdictStatus::skipped);
    CHECK(rep.find("bottom-approx")->note == "no designated bottom");
    CHECK(rep.find("top-greatest")->status == VerdictStatus::skipped);
    CHECK(rep.find("top-greatest")->note == "no designated top");
    CHECK(rep.all_passed()); // skips do not fail the report
}

TEST_CASE("axiom failures carry a witness") {
    GranularSpaceModel::AbstractTables t;
    t.carrier = {"x", "y"};
    t.granules = {"x"};
    t.lower = {{"x", "y"}, {"y", "y"}}; // lower(x) = y, but y is not part of x
    t.upper = {{"x", "x"}, {"y", "y"}};
    t.parthood = {{"x", "x"}, {"y", "y"}};
    t.leq = {{"x", "x"}, {"y", "y"}};
    auto m = GranularSpaceModel::from_tables(t);

    auto rep = check_ggs_axioms(m);
    const auto* v = rep.find("lower-part");
    REQUIRE(v != nullptr);
    CHECK(v->failed());
    REQUIRE(v->witness.size() == 1);
    CHECK(v->witness[0].var == "a");
    CHECK(v->witness[0].elements == std::vector<std::string>{"x"});
    CHECK_FALSE(rep.all_passed());
    CHECK(rep.failed_ids() == std::vector<std::string>{"lower-part"});
}

TEST_CASE("classification walks the specialization chain") {
    CHECK(std::string(to_string(SpaceClass::ggs)) == "GGS");
    CHECK(std::string(to_string(SpaceClass::set_hgos)) == "set-HGOS");

    // Set-backed partition: the most specific class.
    auto sc = classify_space(partition_model(2, {{"1"}, {"2"}}));
    CHECK(sc.axioms_pass);
    CHECK(sc.is_gs);
    CHECK(sc.is_hgos);
    CHECK(sc.is_set_hgos);
    CHECK(sc.most_specific == SpaceClass::set_hgos);

    // The same algebra presented abstractly cannot be set-backed.
    auto hgos = classify_space(GranularSpaceModel::from_tables(diamond_tables()));
    CHECK(hgos.axioms_pass);
    CHECK(hgos.is_hgos);
    CHECK_FALSE(hgos.is_set_hgos);
    CHECK(hgos.most_specific == SpaceClass::hgos);

    // Dropping the operations leaves a GS: orders agree, join is partial.
    auto gs_tables = diamond_tables();
    gs_tables.join.clear();
    gs_tables.meet.clear();
    auto gs = classify_space(GranularSpaceModel::from_tables(gs_tables));
    CHECK(gs.axioms_pass);
    CHECK(gs.is_gs);
    CHECK_FALSE(gs.is_hgos);
    CHECK(gs.most_specific == SpaceClass::gs);

    // Splitting parthood from the order leaves a bare GGS.
    auto ggs_tables = gs_tables;
    ggs_tables.leq.clear();
    for (const auto& e : ggs_tables.carrier) ggs_tables.leq.emplace_back(e, e);
    auto ggs = classify_space(GranularSpaceModel::from_tables(ggs_tables));
    CHECK(ggs.axioms_pass);
    CHECK_FALSE(ggs.is_gs);
    CHECK(ggs.most_specific == SpaceClass::ggs);

    // Without designated bounds nothing in the chain applies.
    GranularSpaceModel::AbstractTables bare;
    bare.carrier = {"x"};
    bare.granules = {"x"};
    bare.lower = {{"x", "x"}};
    bare.upper = {{"x", "x"}};
    bare.parthood = {{"x", "x"}};
    bare.leq = {{"x", "x"}};
    auto unbounded = classify_space(GranularSpaceModel::from_tables(bare));
    CHECK(unbounded.axioms_pass);
    CHECK_FALSE(unbounded.most_specific.has_value());
}

TEST_CASE("admissibility holds on partition models with exact certificates") {
    for (int n = 1; n <= 3; ++n) {
        auto u = Universe::canonical(n);
        PartitionStream ps(u);
        while (auto p = ps.next()) {
            auto m = GranularSpaceModel::from_space(ApproximationSpace(*p));
            auto rep = check_admissibility(m);
            CHECK(rep.admissible());
            CHECK(rep.wra.passed());
            CHECK(rep.ls.passed());
            CHECK(rep.fu.passed());
            // Every certificate re-evaluates to the recorded approximation.
            for (int x = 0; x < m.carrier_size(); ++x) {
                REQUIRE(rep.lower_certificates[x].has_value());
                REQUIRE(rep.upper_certificates[x].has_value());
                CHECK(evaluate_certificate(m, *rep.lower_certificates[x]) == m.lower_of(x));
                CHECK(evaluate_certificate(m, *rep.upper_certificates[x]) == m.upper_of(x));
            }
        }
    }
}

TEST_CASE("a full-universe granule beside others breaks admissibility") {
    // FU needs a definite element strictly above both granules; nothing can
    // sit strictly above the whole universe.
    auto m = cover_model(2, {{"1"}, {"1", "2"}});
    auto rep = check_admissibility(m);
    CHECK(rep.wra.passed());
    CHECK(rep.ls.passed());
    CHECK(rep.fu.failed());
    CHECK_FALSE(rep.admissible());
    REQUIRE(rep.fu.witness.size() == 2);
    CHECK(rep.fu.witness[0].var == "x");
    CHECK(rep.fu.witness[0].elements == std::vector<std::string>{"{1}"});
    CHECK(rep.fu.witness[1].var == "a");
    CHECK(rep.fu.witness[1].elements == std::vector<std::string>{"{1,2}"});
    CHECK(rep.fu.note == "no definite element has both granules as proper parts");

    // The one-block cover keeps FU vacuous.
    CHECK(check_admissibility(cover_model(2, {{"1", "2"}})).admissible());

    CHECK_THROWS_WITH_AS(check_admissibility(m, 0), "term depth must be at least 1", ModelError);
}

TEST_CASE("certificate evaluation distinguishes bottom from malformed input") {
    auto m = partition_model(2, {{"1"}, {"2"}});
    WraCertificate empty;
    empty.value = 0;
    CHECK(evaluate_certificate(m, empty) == 0); // empty fold names bottom

    WraCertificate broken;
    broken.granules = {1};
    CHECK_THROWS_WITH_AS(evaluate_certificate(m, broken), "certificate with granules but no term",
                         ModelError);
}

TEST_CASE("tractability requires every element to meet a granule") {
    auto two_blocks = partition_model(4, {{"1", "2"}, {"3", "4"}});
    auto r = check_tractability(two_blocks);
    CHECK_FALSE(r.tractable);
    REQUIRE(r.witness.has_value());
    CHECK(two_blocks.element_name(*r.witness) == "{1,3}");

    CHECK(check_tractability(partition_model(2, {{"1", "2"}})).tractable);
    CHECK(check_tractability(partition_model(2, {{"1"}, {"2"}})).tractable);

    // Singleton blocks rescue mixed subsets: any set containing 3 or 4 has
    // a granule inside it, and anything else sits inside {1,2}.
    CHECK(check_tractability(partition_model(4, {{"1", "2"}, {"3"}, {"4"}})).tractable);

    // The two readings are one predicate.
    for (int n = 1; n <= 4; ++n) {
        auto u = Universe::canonical(n);
        PartitionStream ps(u);
        while (auto p = ps.next()) {
            auto m = GranularSpaceModel::from_space(ApproximationSpace(*p));
            auto a = check_tractability(m, TractabilityReading::element_itself);
            auto b = check_tractability(m, TractabilityReading::universal_closure);
            CHECK(a.tractable == b.tractable);
            CHECK(a.witness == b.witness);
        }
    }
}

TEST_CASE("granule-aware elements are the sets containing a block") {
    auto m = partition_model(3, {{"1", "2"}, {"3"}});
    CHECK(granule_aware_elements(m) == std::vector<int>{3, 4, 5, 6, 7});

    auto fine = partition_model(2, {{"1"}, {"2"}});
    CHECK(granule_aware_elements(fine) == std::vector<int>{1, 2, 3});
}
