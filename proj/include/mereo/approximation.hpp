#ifndef MEREO_APPROXIMATION_HPP
#define MEREO_APPROXIMATION_HPP

#include <memory>
#include <string>
#include <vector>

#include "mereo/universe.hpp"

namespace mereo {

enum class GranulationMode { partition, cover };

// Granulated universe with lower/upper approximation operators. In both
// modes the operators are block unions: lower(A) joins the blocks included
// in A, upper(A) joins the blocks meeting A. For partitions these are the
// classical class-union operators; for covers they are the default operator
// pair (other cover operators would slot in behind the same interface).
class ApproximationSpace {
public:
    explicit ApproximationSpace(Partition p);
    explicit ApproximationSpace(Cover c);

    GranulationMode mode() const { return mode_; }
    const std::vector<SubsetValue>& blocks() const { return blocks_; }
    const std::shared_ptr<const Universe>& universe() const { return universe_; }

    SubsetValue lower(const SubsetValue& a) const;
    SubsetValue upper(const SubsetValue& a) const;

private:
    void require_same_universe(const SubsetValue& a) const;

    GranulationMode mode_;
    std::shared_ptr<const Universe> universe_;
    std::vector<SubsetValue> blocks_;
};

struct Regions {
    SubsetValue positive;  // lower approximation
    SubsetValue negative;  // complement of the upper approximation
    SubsetValue boundary;  // upper minus lower
};

Regions regions(const ApproximationSpace& s, const SubsetValue& a);

// A is roughly included in B when both approximations are included.
bool rough_included(const ApproximationSpace& s, const SubsetValue& a, const SubsetValue& b);
// Rough equality is inclusion both ways.
bool rough_equal(const ApproximationSpace& s, const SubsetValue& a, const SubsetValue& b);

struct Definiteness {
    bool lower_definite = false;        // A^l = A
    bool upper_definite = false;        // A^u = A
    bool definite = false;              // both
    bool weakly_upper_definite = false; // A^u = A^uu
    bool weakly_definite = false;       // A^u = A^uu and A^l = A
};

Definiteness definiteness(const ApproximationSpace& s, const SubsetValue& a);

// The four finite representations of rough objects: pairs of definite sets,
// proper approximation pairs, approximation intervals, definite intervals.
enum class RoughObjectKind {
    definite_pair,    // (a, b) definite with a strictly below b
    lu_pair,          // distinct (x^l, x^u) with x^l != x^u
    lu_interval,      // distinct (x^l, x^u) over all subsets, degenerate included
    definite_interval // (a, b) definite with a below-or-equal b
};

// Deterministic order: pairs sorted by (first, second) bit patterns.
std::vector<std::pair<SubsetValue, SubsetValue>>
enumerate_rough_objects(const ApproximationSpace& s, RoughObjectKind kind);

} // namespace mereo

#endif
