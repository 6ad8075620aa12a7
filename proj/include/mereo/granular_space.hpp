#ifndef MEREO_GRANULAR_SPACE_HPP
#define MEREO_GRANULAR_SPACE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mereo/approximation.hpp"
#include "mereo/bits.hpp"
#include "mereo/report.hpp"
#include "mereo/universe.hpp"

namespace mereo {

// Term tree over indexed variables and the two partial lattice operations.
// Nodes are stored in a flat vector; the root is the last node.
class PartialTerm {
public:
    enum class Kind { variable, join, meet };

    struct Node {
        Kind kind;
        int var = -1; // variable index when kind == variable
        int lhs = -1; // node indices otherwise
        int rhs = -1;
    };

    static PartialTerm variable(int index);
    static PartialTerm join(PartialTerm a, PartialTerm b);
    static PartialTerm meet(PartialTerm a, PartialTerm b);

    const std::vector<Node>& nodes() const { return nodes_; }
    int root() const { return static_cast<int>(nodes_.size()) - 1; }

    // 1 + highest variable index mentioned.
    int variable_count() const;

    // "(x0 v x1) ^ x2"; names substitute for xK when provided.
    std::string to_string(const std::vector<std::string>& var_names = {}) const;

private:
    static PartialTerm combine(Kind kind, PartialTerm a, PartialTerm b);

    std::vector<Node> nodes_;
};

// Both-defined-implies-equal and either-defined-implies-both-equal, the two
// weak equalities of partial algebra.
inline bool omega_equal(std::optional<int> a, std::optional<int> b) {
    return !a || !b || *a == *b;
}
inline bool omega_star_equal(std::optional<int> a, std::optional<int> b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || *a == *b;
}

// A granular operator space instance: carrier, marked granules, total l/u
// operators, parthood and order predicates, partial join/meet, optional
// bottom/top. Two backings share the interface:
//   - set-backed: the carrier is the full powerset of an approximation
//     space's universe, indexed by subset bits; parthood and order are both
//     inclusion, join/meet are union/intersection, l/u come from the space.
//   - abstract: every table is supplied explicitly.
class GranularSpaceModel {
public:
    // Empty placeholder; assign a factory result before use.
    GranularSpaceModel() = default;

    struct AbstractTables {
        std::vector<std::string> carrier;
        std::vector<std::string> granules;
        // Total maps element -> element, one entry per carrier member.
        std::vector<std::pair<std::string, std::string>> lower, upper;
        std::vector<std::pair<std::string, std::string>> parthood, leq;
        // Partial operations as (left, right, result) triples.
        std::vector<std::array<std::string, 3>> join, meet;
        std::optional<std::string> bottom, top;
    };

    static GranularSpaceModel from_space(ApproximationSpace space);
    static GranularSpaceModel from_tables(const AbstractTables& tables);

    bool set_backed() const { return space_.has_value(); }
    const std::optional<ApproximationSpace>& space() const { return space_; }

    int carrier_size() const { return carrier_size_; }
    std::string element_name(int i) const;
    // Accepts abstract names, or "{a,b}" subset literals for set-backed
    // carriers. Throws ModelError when unknown.
    int element_index(const std::string& name) const;

    bool is_granule(int i) const;
    // Carrier indices of the granules, ascending.
    const std::vector<int>& granules() const { return granules_; }

    int lower_of(int i) const;
    int upper_of(int i) const;
    bool part(int a, int b) const;
    bool leq(int a, int b) const;
    std::optional<int> join(int a, int b) const;
    std::optional<int> meet(int a, int b) const;
    bool join_total() const;
    bool meet_total() const;
    std::optional<int> bottom() const { return bottom_; }
    std::optional<int> top() const { return top_; }

    // Exports the abstract view (set-backed models are converted; mainly
    // for tests and serialization of small models).
    AbstractTables to_tables() const;

    friend bool operator==(const GranularSpaceModel& a, const GranularSpaceModel& b);

private:
    // Set-backed state.
    std::optional<ApproximationSpace> space_;
    std::vector<std::uint32_t> lower_bits_, upper_bits_; // indexed by subset bits
    std::vector<char> granule_flag_;                     // per carrier index

    // Abstract state.
    std::vector<std::string> names_;
    std::map<std::string, int> name_index_;
    std::vector<int> lower_map_, upper_map_;
    BitMatrix part_, leq_;
    std::vector<int> join_map_, meet_map_; // n*n, -1 = undefined

    // Shared.
    int carrier_size_ = 0;
    std::vector<int> granules_;
    std::optional<int> bottom_, top_;
};

// Evaluates t bottom-up under env (variable index -> carrier index).
// Undefined join/meet propagates to an empty result.
std::optional<int> eval_partial_term(const GranularSpaceModel& m, const PartialTerm& t,
                                     const std::vector<int>& env);

// Definition-level axioms of a granular operator space, one verdict per
// axiom. Equational axioms are read with omega semantics (vacuous when a
// side is undefined); bottom/top laws are skipped when undesignated.
AxiomReport check_ggs_axioms(const GranularSpaceModel& m);

enum class SpaceClass { ggs, gs, hgos, set_hgos };

const char* to_string(SpaceClass c);

struct SpaceClassification {
    AxiomReport axioms;
    bool axioms_pass = false;
    bool is_gs = false;      // parthood coincides with order
    bool is_hgos = false;    // additionally, join/meet total
    bool is_set_hgos = false; // additionally, powerset carrier with union/intersection
    std::optional<SpaceClass> most_specific; // empty when axioms fail
};

SpaceClassification classify_space(const GranularSpaceModel& m);

// Certificate that a granule term reproduces an approximation value: the
// term evaluated under `granules` yields the recorded element. An empty
// granule list with no term denotes the empty union, i.e. bottom.
struct WraCertificate {
    int element = -1; // carrier index whose approximation is certified
    int value = -1;   // the certified approximation value
    std::vector<int> granules;
    std::optional<PartialTerm> term;
};

std::optional<int> evaluate_certificate(const GranularSpaceModel& m, const WraCertificate& c);

struct AdmissibilityReport {
    AxiomVerdict wra, ls, fu;
    // Indexed by carrier element; absent where no representation was found.
    std::vector<std::optional<WraCertificate>> lower_certificates;
    std::vector<std::optional<WraCertificate>> upper_certificates;
    int term_depth = 0;

    bool admissible() const { return wra.passed() && ls.passed() && fu.passed(); }
};

// WRA first tries pure join folds over granule subsets (unbounded), then
// falls back to a breadth-first search over join/meet terms of operator
// depth at most term_depth. Throws for term_depth < 1 or carriers too large
// to scan exhaustively.
AdmissibilityReport check_admissibility(const GranularSpaceModel& m, int term_depth = 3);

enum class TractabilityReading {
    // Each element must itself be comparable with some granule.
    element_itself,
    // Literal universal closure of the defining formula's free variable;
    // collapses to the same predicate modulo renaming, kept inspectable.
    universal_closure
};

struct TractabilityResult {
    bool tractable = true;
    std::optional<int> witness; // incomparable element when not tractable
};

TractabilityResult check_tractability(const GranularSpaceModel& m,
                                      TractabilityReading reading = TractabilityReading::element_itself,
                                      bool include_bottom = false);

// {x : some granule is part of x}.
std::vector<int> granule_aware_elements(const GranularSpaceModel& m);

} // namespace mereo

#endif
