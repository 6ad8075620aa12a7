#ifndef MEREO_THEOREMS_HPP
#define MEREO_THEOREMS_HPP

#include <string>

#include "mereo/mereology.hpp"

namespace mereo {

struct SuiteResult {
    std::string name;
    bool passed = true;
    long models_checked = 0;
    long checks_run = 0;     // evaluated clause or axiom instances
    long checks_skipped = 0; // instances whose hypothesis failed
    std::string note;        // informational summary
    std::string detail;      // first failure, with witness
};

// The worked five-expert structure: carrier {a,b,c,e,f}, parthood the
// reflexive completion of a,b below c and a,b below e.
ParthoodStructure example_parthood_structure();

// Sum/fusion clauses on the worked structure plus seeded pseudorandom
// reflexive structures of 2..max_universe elements (half transitively
// closed, mixed edge densities). max_universe is clamped to [2, 6].
SuiteResult run_theorem1_suite(int max_universe = 6, int random_structures = 200);

// Contact-relation shape over every partition model up to max_universe:
// symmetry of the four symmetric kinds, reflexivity of the part-based
// kind everywhere, reflexivity of the granule-witnessed kinds on
// granule-aware elements, and self-contact of nonzero elements in
// tractable models.
SuiteResult run_theorem2_suite(int max_universe = 4);

// Contact axioms over every admissible cover model up to max_universe
// (at most max_blocks blocks): C1..C5 for the meeting-granule kind,
// C1..C3 for the other granule-witnessed kinds.
SuiteResult run_theorem3_suite(int max_universe = 3, int max_blocks = 4);

} // namespace mereo

#endif
