#ifndef MEREO_SEARCH_HPP
#define MEREO_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mereo/contact.hpp"
#include "mereo/granular_space.hpp"
#include "mereo/report.hpp"

namespace mereo {

enum class GranulationFamily { partitions, proper_covers };

const char* to_string(GranulationFamily f);
// Accepts "partitions", "covers", "proper-covers".
std::optional<GranulationFamily> granulation_family_from_string(std::string_view s);

struct SearchConfig {
    std::string property_id;
    int max_universe = 4;
    GranulationFamily family = GranulationFamily::partitions;
    // Covers only; partitions are never block-limited.
    int max_blocks = 4;
    int parallelism = 1;
    // Drop granulations equal to an earlier one up to element relabeling.
    bool canonicalize = false;
};

enum class SearchVerdict { refuted, confirmed_up_to_bound };

const char* to_string(SearchVerdict v);

// Outcome of a property search, or a compiled-in reproduction case. For a
// refutation the record carries the violating model, a positional witness,
// and the model's index in the canonical enumeration order; re-checking the
// witness on the model reproduces the verdict.
struct CounterexampleRecord {
    std::string property_id;
    SearchVerdict verdict = SearchVerdict::confirmed_up_to_bound;
    std::optional<GranularSpaceModel> model;
    std::vector<WitnessBinding> witness;
    long model_index = -1; // -1 for fixture-backed records
    long models_scanned = 0;
};

// Registered property ids: Re_<kind>-violates-<axiom> for the five contact
// kinds crossed with C1..C7, symmetry, reflexivity, transitivity and
// extensionality, plus theorem1-violates-{i,ii,iii}.
const std::vector<std::string>& property_catalog();
bool property_registered(const std::string& id);

// First violation of the property on this model in deterministic scan
// order, or nullopt. Axioms whose prerequisites the model lacks (a
// designated bottom for C1/C5, a total join for C4/C6/C7) cannot be
// violated and yield nullopt.
std::optional<std::vector<WitnessBinding>> property_violation(const std::string& property_id,
                                                              const GranularSpaceModel& m);

// Re-evaluates the property on one named tuple instead of scanning.
bool witness_violates(const std::string& property_id, const GranularSpaceModel& m,
                      const std::vector<WitnessBinding>& witness);

// Every cover of an n-element universe using at most max_blocks distinct
// nonempty blocks, as ascending mask sequences in lexicographic order.
// Supports n <= 6.
std::vector<std::vector<std::uint64_t>> enumerate_covers(int n, int max_blocks);

// Canonical-order stream of set-backed models: universe sizes ascending,
// partitions in restricted-growth-string order, covers in lexicographic
// block-sequence order. Granulations are materialized up front; models are
// built on demand, so at(i) gives cheap random access for parallel scans.
class ModelStream {
public:
    ModelStream(int max_universe, GranulationFamily family, int max_blocks = 4,
                bool canonicalize = false);
    explicit ModelStream(const SearchConfig& cfg);

    long total() const { return static_cast<long>(entries_.size()); }
    GranularSpaceModel at(long index) const;
    std::optional<GranularSpaceModel> next();
    void reset() { pos_ = 0; }

private:
    struct Entry {
        int n;
        bool partition;
        std::vector<std::uint64_t> blocks;
    };
    std::vector<Entry> entries_;
    long pos_ = 0;
};

// Scans the stream for the least-index model violating the property.
// Deterministic for a fixed config regardless of parallelism.
CounterexampleRecord find_counterexample(const SearchConfig& cfg);

// True when the record's content re-checks: a refutation's witness still
// violates the property on the stored model. Confirmation records carry
// nothing to re-check and return true; re-confirm those by re-running
// find_counterexample at parallelism 1.
bool reverify(const CounterexampleRecord& rec);

// Compiled-in reproduction cases: A-Re1-asymmetry, B-ReO-C4, B-ReO-C5.
const std::vector<std::string>& appendix_case_catalog();
CounterexampleRecord reproduce_appendix(const std::string& case_id);

} // namespace mereo

#endif
