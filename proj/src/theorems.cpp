#include "mereo/theorems.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "mereo/approximation.hpp"
#include "mereo/contact.hpp"
#include "mereo/search.hpp"

namespace mereo {

ParthoodStructure example_parthood_structure() {
    return ParthoodStructure::from_pairs(
        {"a", "b", "c", "e", "f"},
        {{"a", "c"}, {"b", "c"}, {"a", "e"}, {"b", "e"}},
        /*reflexive_close=*/true);
}

namespace {

std::string describe_structure(int index, const ParthoodStructure& s) {
    std::ostringstream out;
    out << "structure " << index << " (n=" << s.size() << ", pairs:";
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b)
            if (a != b && s.part(a, b)) out << " " << s.name(a) << "<" << s.name(b);
    out << ")";
    return out.str();
}

void tally_clause(const AxiomVerdict& v, SuiteResult& res, const std::string& where) {
    if (v.status == VerdictStatus::skipped) {
        ++res.checks_skipped;
        return;
    }
    ++res.checks_run;
    if (v.failed() && res.passed) {
        res.passed = false;
        res.detail = where + ": " + render_verdict(v);
    }
}

} // namespace

SuiteResult run_theorem1_suite(int max_universe, int random_structures) {
    SuiteResult res;
    res.name = "theorem1";
    int max_n = std::clamp(max_universe, 2, 6);

    std::vector<std::pair<std::string, ParthoodStructure>> structures;
    structures.emplace_back("worked example", example_parthood_structure());

    std::mt19937_64 rng(0x5eed0fa11ull);
    const double densities[] = {0.25, 0.4, 0.6};
    for (int i = 0; i < random_structures; ++i) {
        int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n - 1));
        auto u = Universe::canonical(n);
        BinaryRelation rel = BinaryRelation::diagonal(u);
        std::bernoulli_distribution edge(densities[i % 3]);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (a != b && edge(rng)) rel.add(a, b);
        if (i % 2 == 0) rel = transitive_closure(rel);
        ParthoodStructure s = ParthoodStructure::from_relation(rel);
        structures.emplace_back(describe_structure(i + 1, s), std::move(s));
    }

    long transitive_separative = 0;
    for (const auto& [where, s] : structures) {
        ++res.models_checked;
        TheoremOneReport rep = verify_theorem1(s);
        if (rep.transitive && rep.separative) ++transitive_separative;
        tally_clause(rep.clause_i, res, where);
        tally_clause(rep.clause_ii, res, where);
        tally_clause(rep.clause_iii, res, where);
    }
    std::ostringstream note;
    note << transitive_separative << " of " << res.models_checked
         << " structures were transitive and separative";
    res.note = note.str();
    return res;
}

SuiteResult run_theorem2_suite(int max_universe) {
    SuiteResult res;
    res.name = "theorem2";
    long tractable_models = 0;
    for (int n = 1; n <= max_universe; ++n) {
        PartitionStream ps(Universe::canonical(n));
        while (auto p = ps.next()) {
            GranularSpaceModel m = GranularSpaceModel::from_space(ApproximationSpace(*p));
            ++res.models_checked;
            std::ostringstream where;
            where << "partition model " << res.models_checked << " (n=" << n << ", granules";
            for (int g : m.granules()) where << " " << m.element_name(g);
            where << ")";

            auto fail = [&](const std::string& what, const std::vector<WitnessBinding>& w) {
                if (!res.passed) return;
                res.passed = false;
                res.detail = where.str() + ": " + what +
                             (w.empty() ? std::string() : "  witness " + render_witness(w));
            };

            NamedRelation ra = NamedRelation::materialize(m, ContactKind::type_a);
            NamedRelation ro = NamedRelation::materialize(m, ContactKind::type_o);
            NamedRelation r1 = NamedRelation::materialize(m, ContactKind::type_1);
            NamedRelation r2 = NamedRelation::materialize(m, ContactKind::type_2);
            NamedRelation r3 = NamedRelation::materialize(m, ContactKind::type_3);

            for (const NamedRelation* r : {&ra, &ro, &r2, &r3}) {
                ++res.checks_run;
                if (auto w = property_violation(std::string(r->label()) + "-violates-symmetry", m))
                    fail(r->label() + " is not symmetric", *w);
            }
            ++res.checks_run;
            if (auto w = property_violation("Re_1-violates-reflexivity", m))
                fail("Re_1 is not reflexive", *w);

            for (int x : granule_aware_elements(m)) {
                ++res.checks_run;
                if (!ro.contains(x, x))
                    fail("Re_o misses a granule-aware self-contact",
                         {WitnessBinding{"x", {m.element_name(x)}}});
                ++res.checks_run;
                if (!r2.contains(x, x))
                    fail("Re_2 misses a granule-aware self-contact",
                         {WitnessBinding{"x", {m.element_name(x)}}});
            }

            if (check_tractability(m).tractable) {
                ++tractable_models;
                auto bot = m.bottom();
                for (int x = 0; x < m.carrier_size(); ++x) {
                    if (bot && x == *bot) continue;
                    ++res.checks_run;
                    if (!ra.contains(x, x))
                        fail("tractable model misses a nonzero self-contact in Re_a",
                             {WitnessBinding{"x", {m.element_name(x)}}});
                }
            }
        }
    }
    std::ostringstream note;
    note << tractable_models << " of " << res.models_checked << " partition models tractable";
    res.note = note.str();
    return res;
}

SuiteResult run_theorem3_suite(int max_universe, int max_blocks) {
    SuiteResult res;
    res.name = "theorem3";
    long covers_seen = 0;
    for (int n = 1; n <= max_universe; ++n) {
        for (const auto& blocks : enumerate_covers(n, max_blocks)) {
            ++covers_seen;
            auto u = Universe::canonical(n);
            std::vector<SubsetValue> bs;
            for (std::uint64_t b : blocks) bs.emplace_back(u, b);
            GranularSpaceModel m =
                GranularSpaceModel::from_space(ApproximationSpace(Cover::from_blocks(std::move(bs))));
            if (!check_admissibility(m).admissible()) {
                ++res.checks_skipped;
                continue;
            }
            ++res.models_checked;
            std::ostringstream where;
            where << "cover model " << covers_seen << " (n=" << n << ", granules";
            for (int g : m.granules()) where << " " << m.element_name(g);
            where << ")";

            auto expect_axiom = [&](ContactKind kind, const char* axiom) {
                ++res.checks_run;
                if (!res.passed) return;
                std::string id = std::string(to_string(kind)) + "-violates-" + axiom;
                if (auto w = property_violation(id, m)) {
                    res.passed = false;
                    res.detail = where.str() + ": " + to_string(kind) + " violates " + axiom +
                                 "  witness " + render_witness(*w);
                }
            };

            for (const char* ax : {"C1", "C2", "C3", "C4", "C5"})
                expect_axiom(ContactKind::type_a, ax);
            for (ContactKind k : {ContactKind::type_o, ContactKind::type_2, ContactKind::type_3})
                for (const char* ax : {"C1", "C2", "C3"}) expect_axiom(k, ax);
        }
    }
    std::ostringstream note;
    note << res.models_checked << " of " << covers_seen << " covers admissible";
    res.note = note.str();
    return res;
}

} // namespace mereo
