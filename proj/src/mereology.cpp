#include "mereo/mereology.hpp"

#include <algorithm>
#include <set>

namespace mereo {

ParthoodStructure ParthoodStructure::from_relation(const BinaryRelation& r) {
    ParthoodStructure s;
    s.names_ = r.universe()->names();
    s.part_ = BitMatrix(s.names_.size());
    for (int a = 0; a < r.size(); ++a)
        for (int b = 0; b < r.size(); ++b)
            if (r.contains(a, b)) s.part_.set(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    return s;
}

ParthoodStructure ParthoodStructure::from_pairs(
    std::vector<std::string> carrier,
    const std::vector<std::pair<std::string, std::string>>& pairs, bool reflexive_close) {
    auto u = Universe::create(std::move(carrier));
    BinaryRelation r = BinaryRelation::from_pairs(u, pairs);
    if (reflexive_close) r = reflexive_completion(r);
    return from_relation(r);
}

ParthoodStructure ParthoodStructure::from_model(const GranularSpaceModel& m, bool keep_bottom) {
    ParthoodStructure s;
    int n = m.carrier_size();
    if (n > 4096)
        throw ModelError("carrier too large for a parthood structure (limit 4096)");
    std::vector<int> kept;
    for (int i = 0; i < n; ++i) {
        if (!keep_bottom && m.bottom() && i == *m.bottom()) continue;
        kept.push_back(i);
    }
    if (kept.empty()) throw ModelError("parthood carrier is empty after dropping the bottom");
    s.names_.reserve(kept.size());
    for (int i : kept) s.names_.push_back(m.element_name(i));
    s.part_ = BitMatrix(kept.size());
    for (std::size_t a = 0; a < kept.size(); ++a)
        for (std::size_t b = 0; b < kept.size(); ++b)
            if (m.part(kept[a], kept[b])) s.part_.set(a, b);
    if (keep_bottom && m.bottom()) {
        for (std::size_t i = 0; i < kept.size(); ++i)
            if (kept[i] == *m.bottom()) s.zero_ = static_cast<int>(i);
    }
    return s;
}

int ParthoodStructure::index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names_[static_cast<std::size_t>(i)] == name) return i;
    throw ModelError("unknown carrier element: " + name);
}

bool ParthoodStructure::overlap(int a, int b) const {
    for (int z = 0; z < size(); ++z) {
        if (zero_ && z == *zero_) continue;
        if (part(z, a) && part(z, b)) return true;
    }
    return false;
}

Bitset ParthoodStructure::o_set(int a) const {
    Bitset out(static_cast<std::size_t>(size()));
    for (int x = 0; x < size(); ++x)
        if (overlap(a, x)) out.set(static_cast<std::size_t>(x));
    return out;
}

Bitset ParthoodStructure::pc_set(int a) const {
    Bitset out(static_cast<std::size_t>(size()));
    for (int x = 0; x < size(); ++x)
        if (part(x, a)) out.set(static_cast<std::size_t>(x));
    return out;
}

std::pair<Bitset, Bitset> ParthoodStructure::bounds(const Bitset& X) const {
    Bitset ub(static_cast<std::size_t>(size())), lb(static_cast<std::size_t>(size()));
    for (int a = 0; a < size(); ++a) {
        bool upper = true, lower = true;
        for (std::size_t x = X.next(0); x < X.size(); x = X.next(x + 1)) {
            if (!part(static_cast<int>(x), a)) upper = false;
            if (!part(a, static_cast<int>(x))) lower = false;
            if (!upper && !lower) break;
        }
        if (upper) ub.set(static_cast<std::size_t>(a));
        if (lower) lb.set(static_cast<std::size_t>(a));
    }
    return {ub, lb};
}

ParthoodStructure::SeparativityResult ParthoodStructure::is_separative() const {
    if (separative_) return *separative_;
    SeparativityResult r;
    // Strong supplementation: a non-part must own a part disjoint from the
    // other element. Disjoint means no common part, not mere incomparability;
    // the weaker reading would let fusion outrun sum on structures like the
    // five-element diagnosis order.
    for (int a = 0; a < size() && r.separative; ++a)
        for (int b = 0; b < size() && r.separative; ++b) {
            if (part(a, b)) continue;
            bool found = false;
            for (int z = 0; z < size() && !found; ++z) {
                if (zero_ && z == *zero_) continue; // zero overlaps nothing; no supplement
                if (part(z, a) && !overlap(z, b)) found = true;
            }
            if (!found) r = {false, {{a, b}}};
        }
    separative_ = r;
    return r;
}

bool ParthoodStructure::is_sum(int a, const Bitset& B) const {
    Bitset pc = pc_set(a);
    // B below a.
    if (!B.subset_of(pc)) return false;
    // Every nonzero part of a overlaps some member of B. A designated zero
    // is part of everything by fiat and overlaps nothing, so it is exempt.
    if (zero_) pc.reset(static_cast<std::size_t>(*zero_));
    Bitset cover(static_cast<std::size_t>(size()));
    for (std::size_t x = B.next(0); x < B.size(); x = B.next(x + 1))
        cover |= o_set(static_cast<int>(x));
    return pc.subset_of(cover);
}

bool ParthoodStructure::is_fusion(int a, const Bitset& B) const {
    Bitset cover(static_cast<std::size_t>(size()));
    for (std::size_t x = B.next(0); x < B.size(); x = B.next(x + 1))
        cover |= o_set(static_cast<int>(x));
    return o_set(a) == cover;
}

const RelationProperties& ParthoodStructure::properties() const {
    if (props_) return *props_;
    RelationProperties p;
    int n = size();
    for (int a = 0; a < n && p.reflexive.holds; ++a)
        if (!part(a, a)) p.reflexive = {false, {a}};
    for (int a = 0; a < n && p.symmetric.holds; ++a)
        for (int b = 0; b < n && p.symmetric.holds; ++b)
            if (part(a, b) && !part(b, a)) p.symmetric = {false, {a, b}};
    for (int a = 0; a < n && p.antisymmetric.holds; ++a)
        for (int b = 0; b < n && p.antisymmetric.holds; ++b)
            if (a != b && part(a, b) && part(b, a)) p.antisymmetric = {false, {a, b}};
    for (int a = 0; a < n && p.transitive.holds; ++a)
        for (int b = 0; b < n && p.transitive.holds; ++b) {
            if (!part(a, b)) continue;
            for (int c = 0; c < n; ++c)
                if (part(b, c) && !part(a, c)) {
                    p.transitive = {false, {a, b, c}};
                    break;
                }
        }
    props_ = p;
    return *props_;
}

Bitset ParthoodStructure::subset_of_names(const std::vector<std::string>& members) const {
    Bitset out(static_cast<std::size_t>(size()));
    for (const auto& m : members) out.set(static_cast<std::size_t>(index(m)));
    return out;
}

TheoremOneReport verify_theorem1(const ParthoodStructure& s) {
    int n = s.size();
    if (n > 16)
        throw ModelError("theorem verification enumerates all carrier subsets; limit is 16 elements");
    const RelationProperties& p = s.properties();
    TheoremOneReport rep;
    rep.reflexive = p.reflexive.holds;
    rep.transitive = p.transitive.holds;
    rep.separative = s.is_separative().separative;

    auto witness = [&](int a, std::uint64_t B) {
        std::vector<WitnessBinding> w;
        w.push_back({"a", {s.name(a)}});
        std::vector<std::string> members;
        std::uint64_t rest = B;
        while (rest) members.push_back(s.name(pop_lowest(rest)));
        w.push_back({"B", std::move(members)});
        return w;
    };

    // Precompute o_set unions are cheap enough to redo per (a,B); sizes here
    // are tiny. Collect per-element sets once.
    std::vector<Bitset> osets, pcsets, pcnz;
    for (int a = 0; a < n; ++a) {
        osets.push_back(s.o_set(a));
        pcsets.push_back(s.pc_set(a));
        Bitset nz = pcsets.back(); // the covering side of msum exempts the zero
        if (s.zero()) nz.reset(static_cast<std::size_t>(*s.zero()));
        pcnz.push_back(std::move(nz));
    }
    auto as_bitset = [&](std::uint64_t mask) {
        Bitset b(static_cast<std::size_t>(n));
        std::uint64_t rest = mask;
        while (rest) b.set(static_cast<std::size_t>(pop_lowest(rest)));
        return b;
    };

    rep.clause_i = {"fusion-below-implies-sum", VerdictStatus::pass, {}, ""};
    if (!rep.reflexive) {
        rep.clause_i.status = VerdictStatus::skipped;
        rep.clause_i.note = "parthood is not reflexive";
    }
    bool ts = rep.transitive && rep.separative;
    rep.clause_ii = {"sum-iff-fusion", VerdictStatus::pass, {}, ""};
    rep.clause_iii = {"binary-fusion-implies-sum", VerdictStatus::pass, {}, ""};
    if (!ts) {
        const char* why = "parthood is not both transitive and separative";
        rep.clause_ii.status = VerdictStatus::skipped;
        rep.clause_ii.note = why;
        rep.clause_iii.status = VerdictStatus::skipped;
        rep.clause_iii.note = why;
    }

    std::uint64_t limit = std::uint64_t{1} << n;
    for (int a = 0; a < n; ++a) {
        for (std::uint64_t mask = 0; mask < limit; ++mask) {
            Bitset B = as_bitset(mask);
            Bitset cover(static_cast<std::size_t>(n));
            std::uint64_t rest = mask;
            while (rest) cover |= osets[static_cast<std::size_t>(pop_lowest(rest))];
            bool fusion = osets[static_cast<std::size_t>(a)] == cover;
            bool below = B.subset_of(pcsets[static_cast<std::size_t>(a)]);
            bool sum = below && pcnz[static_cast<std::size_t>(a)].subset_of(cover);

            if (rep.clause_i.status == VerdictStatus::pass && rep.reflexive && below && fusion &&
                !sum)
                rep.clause_i = {"fusion-below-implies-sum", VerdictStatus::fail, witness(a, mask), ""};
            if (ts && rep.clause_ii.status == VerdictStatus::pass && sum != fusion)
                rep.clause_ii = {"sum-iff-fusion", VerdictStatus::fail, witness(a, mask),
                                 sum ? "sum without fusion" : "fusion without sum"};
            if (ts && rep.clause_iii.status == VerdictStatus::pass && B.count() == 2 && fusion &&
                !sum)
                rep.clause_iii = {"binary-fusion-implies-sum", VerdictStatus::fail, witness(a, mask),
                                  ""};
        }
    }
    return rep;
}

} // namespace mereo
