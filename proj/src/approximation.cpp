#include "mereo/approximation.hpp"

#include <algorithm>
#include <set>

namespace mereo {

ApproximationSpace::ApproximationSpace(Partition p)
    : mode_(GranulationMode::partition),
      universe_(p.universe()),
      blocks_(p.blocks()) {}

ApproximationSpace::ApproximationSpace(Cover c)
    : mode_(GranulationMode::cover),
      universe_(c.universe()),
      blocks_(c.blocks()) {}

void ApproximationSpace::require_same_universe(const SubsetValue& a) const {
    if (a.universe() != universe_ && (!a.universe() || !a.universe()->same_as(*universe_)))
        throw ModelError("subset does not live over the approximation space's universe");
}

SubsetValue ApproximationSpace::lower(const SubsetValue& a) const {
    require_same_universe(a);
    std::uint64_t out = 0;
    for (const auto& g : blocks_)
        if ((g.bits() & ~a.bits()) == 0) out |= g.bits();
    return SubsetValue(universe_, out);
}

SubsetValue ApproximationSpace::upper(const SubsetValue& a) const {
    require_same_universe(a);
    std::uint64_t out = 0;
    for (const auto& g : blocks_)
        if (g.bits() & a.bits()) out |= g.bits();
    return SubsetValue(universe_, out);
}

Regions regions(const ApproximationSpace& s, const SubsetValue& a) {
    SubsetValue lo = s.lower(a);
    SubsetValue up = s.upper(a);
    return Regions{lo, up.complement(), up.difference(lo)};
}

bool rough_included(const ApproximationSpace& s, const SubsetValue& a, const SubsetValue& b) {
    return s.lower(a).subset_of(s.lower(b)) && s.upper(a).subset_of(s.upper(b));
}

bool rough_equal(const ApproximationSpace& s, const SubsetValue& a, const SubsetValue& b) {
    return rough_included(s, a, b) && rough_included(s, b, a);
}

Definiteness definiteness(const ApproximationSpace& s, const SubsetValue& a) {
    Definiteness d;
    SubsetValue lo = s.lower(a);
    SubsetValue up = s.upper(a);
    d.lower_definite = lo == a;
    d.upper_definite = up == a;
    d.definite = d.lower_definite && d.upper_definite;
    d.weakly_upper_definite = s.upper(up) == up;
    d.weakly_definite = d.weakly_upper_definite && d.lower_definite;
    return d;
}

std::vector<std::pair<SubsetValue, SubsetValue>>
enumerate_rough_objects(const ApproximationSpace& s, RoughObjectKind kind) {
    const auto& u = s.universe();
    if (u->size() > Universe::default_bound)
        throw ModelError("rough-object enumeration is limited to universes of at most 16 elements");
    std::uint64_t full = u->full_mask();
    std::vector<std::pair<SubsetValue, SubsetValue>> out;

    if (kind == RoughObjectKind::definite_pair || kind == RoughObjectKind::definite_interval) {
        std::vector<std::uint64_t> definite;
        for (std::uint64_t x = 0;; ++x) {
            SubsetValue v(u, x);
            if (s.lower(v) == v && s.upper(v) == v) definite.push_back(x);
            if (x == full) break;
        }
        bool strict = kind == RoughObjectKind::definite_pair;
        for (auto a : definite)
            for (auto b : definite) {
                if ((a & ~b) != 0) continue; // not a subset
                if (strict && a == b) continue;
                out.emplace_back(SubsetValue(u, a), SubsetValue(u, b));
            }
        return out;
    }

    bool proper_only = kind == RoughObjectKind::lu_pair;
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    for (std::uint64_t x = 0;; ++x) {
        SubsetValue v(u, x);
        std::uint64_t lo = s.lower(v).bits();
        std::uint64_t up = s.upper(v).bits();
        if (!proper_only || lo != up) seen.emplace(lo, up);
        if (x == full) break;
    }
    for (const auto& [lo, up] : seen) out.emplace_back(SubsetValue(u, lo), SubsetValue(u, up));
    return out;
}

} // namespace mereo
