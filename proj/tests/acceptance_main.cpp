// Acceptance gate: nine end-to-end checks with pinned time budgets, one
// pass/fail line each. Exits nonzero when any check fails or overruns.
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "mereo/granular_space.hpp"
#include "mereo/mereology.hpp"
#include "mereo/model_io.hpp"
#include "mereo/search.hpp"
#include "mereo/theorems.hpp"

using namespace mereo;

namespace {

struct Criterion {
    int number;
    long budget_ms;
    std::function<bool(std::string&)> check;
};

bool expect(bool cond, std::string& why, const std::string& msg) {
    if (!cond && why.empty()) why = msg;
    return cond;
}

// Diagnosis table: fusions of the full symptom set exist, sums and upper
// bounds do not.
bool check_table_example(std::string& why) {
    std::vector<std::pair<std::string, std::string>> pairs = {
        {"a", "c"}, {"b", "c"}, {"a", "e"}, {"b", "e"}};
    IngestResult r =
        ingest_decision_table(read_text_file(std::string(MEREO_FIXTURE_DIR "/table1.csv")), pairs);
    const ParthoodStructure& s = r.structure;
    Bitset K = s.subset_of_names({"a", "b", "c", "e"});

    std::vector<std::string> fusions, sums;
    for (int a = 0; a < s.size(); ++a) {
        if (s.is_fusion(a, K)) fusions.push_back(s.name(a));
        if (s.is_sum(a, K)) sums.push_back(s.name(a));
    }
    bool ok = expect(fusions == std::vector<std::string>{"c", "e"}, why,
                     "fusions of {a,b,c,e} are not exactly {c,e}");
    ok = expect(sums.empty(), why, "a sum of {a,b,c,e} appeared") && ok;
    ok = expect(s.bounds(K).first.none(), why, "an upper bound of {a,b,c,e} appeared") && ok;
    ok = expect(!s.is_separative().separative, why, "structure claims to be separative") && ok;
    return ok;
}

bool check_reproduction(std::string& why, const std::string& case_id) {
    CounterexampleRecord rec = reproduce_appendix(case_id);
    bool ok = expect(rec.verdict == SearchVerdict::refuted, why, case_id + " did not refute");
    ok = expect(reverify(rec), why, case_id + " witness failed to re-verify") && ok;
    return ok;
}

bool check_suite(std::string& why, const SuiteResult& suite, long expected_models) {
    bool ok = expect(suite.passed, why, suite.name + " suite failed: " + suite.detail);
    ok = expect(suite.models_checked == expected_models, why,
                suite.name + " scanned an unexpected model count") &&
         ok;
    return ok;
}

bool check_searches(std::string& why) {
    auto run = [](const char* prop, int mu) {
        SearchConfig cfg;
        cfg.property_id = prop;
        cfg.max_universe = mu;
        return find_counterexample(cfg);
    };
    auto c4 = run("Re_o-violates-C4", 5);
    auto c5 = run("Re_o-violates-C5", 5);
    auto c2 = run("Re_a-violates-C2", 4);
    bool ok = expect(c4.verdict == SearchVerdict::refuted && reverify(c4), why,
                     "Re_o-violates-C4 did not refute at size 5");
    ok = expect(c5.verdict == SearchVerdict::refuted && reverify(c5), why,
                "Re_o-violates-C5 did not refute at size 5") &&
         ok;
    ok = expect(c2.verdict == SearchVerdict::confirmed_up_to_bound && c2.models_scanned == 23, why,
                "Re_a-violates-C2 was not confirmed over the 23 partitions") &&
         ok;
    return ok;
}

// Every partition of up to four elements: approximations recomputed from
// the raw blocks match the space, and the operator axioms all pass.
bool check_approximations(std::string& why) {
    for (int n = 1; n <= 4; ++n) {
        auto u = Universe::canonical(n);
        PartitionStream stream(u);
        while (auto p = stream.next()) {
            ApproximationSpace sp(*p);
            std::uint64_t full = u->full_mask();
            for (std::uint64_t mask = 0; mask <= full; ++mask) {
                SubsetValue a(u, mask);
                std::uint64_t lo = 0, up = 0;
                for (const auto& b : p->blocks()) {
                    if ((b.bits() & mask) == b.bits()) lo |= b.bits();
                    if ((b.bits() & mask) != 0) up |= b.bits();
                }
                if (!expect(sp.lower(a).bits() == lo, why, "lower approximation mismatch"))
                    return false;
                if (!expect(sp.upper(a).bits() == up, why, "upper approximation mismatch"))
                    return false;
            }
            auto rep = check_ggs_axioms(GranularSpaceModel::from_space(sp));
            if (!expect(rep.all_passed(), why,
                        "operator axioms failed on a partition space"))
                return false;
        }
    }
    return true;
}

// Every partition of up to four elements admits the three admissibility
// conditions, and each stored certificate re-evaluates to its element.
bool check_admissibility_certificates(std::string& why) {
    for (int n = 1; n <= 4; ++n) {
        PartitionStream stream(Universe::canonical(n));
        while (auto p = stream.next()) {
            auto m = GranularSpaceModel::from_space(ApproximationSpace(*p));
            AdmissibilityReport rep = check_admissibility(m);
            if (!expect(rep.admissible(), why, "a partition space was inadmissible"))
                return false;
            for (const auto* side : {&rep.lower_certificates, &rep.upper_certificates})
                for (const auto& cert : *side) {
                    if (!cert) continue;
                    auto got = evaluate_certificate(m, *cert);
                    if (!expect(got && *got == cert->value, why,
                                "a certificate did not re-evaluate to its value"))
                        return false;
                }
        }
    }
    return true;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, 1000, check_table_example},
        {2, 1000,
         [](std::string& why) {
             return check_reproduction(why, "B-ReO-C4") && check_reproduction(why, "B-ReO-C5");
         }},
        {3, 1000, [](std::string& why) { return check_reproduction(why, "A-Re1-asymmetry"); }},
        {4, 30000,
         [](std::string& why) { return check_suite(why, run_theorem2_suite(4), 23); }},
        {5, 60000,
         [](std::string& why) { return check_suite(why, run_theorem3_suite(3, 4), 42); }},
        {6, 120000, check_searches},
        {7, 60000,
         [](std::string& why) { return check_suite(why, run_theorem1_suite(6, 200), 201); }},
        {8, 10000, check_approximations},
        {9, 10000, check_admissibility_certificates},
    };

    bool all_ok = true;
    for (auto& c : criteria) {
        std::string why;
        bool ok = false;
        auto start = std::chrono::steady_clock::now();
        try {
            ok = c.check(why);
        } catch (const std::exception& e) {
            why = e.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        if (ok && ms > c.budget_ms) {
            ok = false;
            why = "exceeded " + std::to_string(c.budget_ms) + " ms budget";
        }
        std::cout << "criterion " << c.number << ": " << (ok ? "pass" : "fail") << " (" << ms
                  << " ms)";
        if (!ok && !why.empty()) std::cout << " " << why;
        std::cout << "\n";
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
