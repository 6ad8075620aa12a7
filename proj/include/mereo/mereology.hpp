#ifndef MEREO_MEREOLOGY_HPP
#define MEREO_MEREOLOGY_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mereo/bits.hpp"
#include "mereo/granular_space.hpp"
#include "mereo/report.hpp"
#include "mereo/universe.hpp"

namespace mereo {

// A carrier with a bare parthood predicate. Overlap witnesses skip the
// designated zero element when one exists; every other predicate reads the
// table as given. Relation properties are computed once on demand and
// cached.
class ParthoodStructure {
public:
    // Carrier and parthood straight from a relation; no zero element.
    static ParthoodStructure from_relation(const BinaryRelation& r);

    // Named carrier with declared pairs, optionally reflexively completed.
    static ParthoodStructure from_pairs(std::vector<std::string> carrier,
                                        const std::vector<std::pair<std::string, std::string>>& pairs,
                                        bool reflexive_close);

    // Carrier and parthood of a granular space model. A designated bottom
    // is an indivisible part of everything, which collapses overlap and the
    // bound/sum predicates; by default it is dropped from the carrier.
    // keep_bottom retains it as the designated zero instead.
    static ParthoodStructure from_model(const GranularSpaceModel& m, bool keep_bottom = false);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
    int index(const std::string& name) const; // throws ModelError when unknown
    std::optional<int> zero() const { return zero_; }

    bool part(int a, int b) const { return part_.test(static_cast<std::size_t>(a), static_cast<std::size_t>(b)); }
    bool proper_part(int a, int b) const { return part(a, b) && !part(b, a); }

    // Overlap: a nonzero common part exists.
    bool overlap(int a, int b) const;
    Bitset o_set(int a) const;
    Bitset pc_set(int a) const;

    // Upper bounds {a : every x in X has x part of a} and lower bounds.
    std::pair<Bitset, Bitset> bounds(const Bitset& X) const;

    struct SeparativityResult {
        bool separative = true;
        std::optional<std::pair<int, int>> witness; // (a,b) with no separating z
    };
    SeparativityResult is_separative() const;

    // Sum: B is below a, and every nonzero part of a overlaps some member
    // of B (a designated zero is exempt on the covering side).
    bool is_sum(int a, const Bitset& B) const;
    // Fusion: a's overlappers are exactly the union of B's overlappers.
    bool is_fusion(int a, const Bitset& B) const;

    const RelationProperties& properties() const;

    Bitset subset_of_names(const std::vector<std::string>& members) const;

private:
    std::vector<std::string> names_;
    BitMatrix part_;
    std::optional<int> zero_;
    mutable std::optional<RelationProperties> props_;
    mutable std::optional<SeparativityResult> separative_;
};

struct TheoremOneReport {
    bool reflexive = false;
    bool transitive = false;
    bool separative = false;
    // Clause (i): reflexive parthood, B below a, fusion => sum.
    // Clauses (ii)/(iii): under transitive+separative, sum <=> fusion and
    // binary fusion => binary sum. Skipped when the hypothesis fails.
    AxiomVerdict clause_i, clause_ii, clause_iii;

    bool all_passed() const {
        return !clause_i.failed() && !clause_ii.failed() && !clause_iii.failed();
    }
};

// Exhaustive over all (a, B) pairs; carrier is capped at 16 elements since
// B ranges over the whole powerset of the carrier.
TheoremOneReport verify_theorem1(const ParthoodStructure& s);

} // namespace mereo

#endif
