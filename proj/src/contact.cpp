#include "mereo/contact.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace mereo {

const char* to_string(ContactKind k) {
    switch (k) {
        case ContactKind::type_a: return "Re_a";
        case ContactKind::type_o: return "Re_o";
        case ContactKind::type_1: return "Re_1";
        case ContactKind::type_2: return "Re_2";
        case ContactKind::type_3: return "Re_3";
    }
    return "?";
}

std::optional<ContactKind> contact_kind_from_code(std::string_view code) {
    if (code == "a") return ContactKind::type_a;
    if (code == "o") return ContactKind::type_o;
    if (code == "1") return ContactKind::type_1;
    if (code == "2") return ContactKind::type_2;
    if (code == "3") return ContactKind::type_3;
    return std::nullopt;
}

bool rough_contact(const GranularSpaceModel& m, ContactKind kind, int a, int b) {
    int n = m.carrier_size();
    if (a < 0 || a >= n || b < 0 || b >= n) throw ModelError("carrier index out of range");
    auto bot = m.bottom();
    auto nonzero = [&](int e) { return !bot || e != *bot; };

    switch (kind) {
        case ContactKind::type_a:
            for (int g : m.granules()) {
                bool in_a = false, in_b = false;
                for (int e = 0; e < n && !(in_a && in_b); ++e) {
                    if (!nonzero(e) || !m.part(e, g)) continue;
                    in_a = in_a || m.part(e, a);
                    in_b = in_b || m.part(e, b);
                }
                if (in_a && in_b) return true;
            }
            return false;
        case ContactKind::type_o:
            for (int e : m.granules())
                if (m.part(e, a) && m.part(e, b)) return true;
            return false;
        case ContactKind::type_1: {
            int ub = m.upper_of(b);
            for (int f = 0; f < n; ++f) {
                if (!m.part(f, a)) continue;
                int uf = m.upper_of(f);
                if (m.leq(uf, ub) && m.leq(ub, uf)) return true;
            }
            return false;
        }
        case ContactKind::type_2: {
            int la = m.lower_of(a), ua = m.upper_of(a);
            int lb = m.lower_of(b), ub = m.upper_of(b);
            bool e_ok = false, f_ok = false;
            for (int e : m.granules())
                if (m.part(e, la) && m.part(e, ub)) {
                    e_ok = true;
                    break;
                }
            for (int f : m.granules())
                if (m.part(f, ua) && m.part(f, lb)) {
                    f_ok = true;
                    break;
                }
            return e_ok && f_ok;
        }
        case ContactKind::type_3: {
            int ua = m.upper_of(a), ub = m.upper_of(b);
            for (int e : m.granules())
                if (m.part(e, ua) && m.part(e, ub)) return true;
            return false;
        }
    }
    return false;
}

namespace {

// Bit-parallel row fill for powerset carriers: per element, the masks of
// granules meeting it and granules inside it turn each contact test into a
// mask intersection.
void fill_rows_set_backed(const GranularSpaceModel& m, ContactKind kind, BitMatrix& table,
                          int row_begin, int row_end) {
    int n = m.carrier_size();
    const auto& gs = m.granules();
    std::vector<std::uint64_t> meets(static_cast<std::size_t>(n), 0);
    std::vector<std::uint64_t> inside(static_cast<std::size_t>(n), 0);
    for (int x = 0; x < n; ++x)
        for (std::size_t gi = 0; gi < gs.size(); ++gi) {
            std::uint64_t g = static_cast<std::uint64_t>(gs[gi]);
            std::uint64_t xb = static_cast<std::uint64_t>(x);
            if (g & xb) meets[static_cast<std::size_t>(x)] |= std::uint64_t{1} << gi;
            if ((g & ~xb) == 0) inside[static_cast<std::size_t>(x)] |= std::uint64_t{1} << gi;
        }
    auto at = [&](int x) { return static_cast<std::size_t>(x); };
    for (int a = row_begin; a < row_end; ++a) {
        switch (kind) {
            case ContactKind::type_a:
                for (int b = 0; b < n; ++b)
                    if (meets[at(a)] & meets[at(b)]) table.set(at(a), at(b));
                break;
            case ContactKind::type_o:
                for (int b = 0; b < n; ++b)
                    if (inside[at(a)] & inside[at(b)]) table.set(at(a), at(b));
                break;
            case ContactKind::type_2:
                for (int b = 0; b < n; ++b)
                    if ((inside[at(m.lower_of(a))] & inside[at(m.upper_of(b))]) &&
                        (inside[at(m.upper_of(a))] & inside[at(m.lower_of(b))]))
                        table.set(at(a), at(b));
                break;
            case ContactKind::type_3:
                for (int b = 0; b < n; ++b)
                    if (inside[at(m.upper_of(a))] & inside[at(m.upper_of(b))])
                        table.set(at(a), at(b));
                break;
            case ContactKind::type_1: {
                // Reachable upper approximations over parts of a.
                Bitset reach(static_cast<std::size_t>(n));
                std::uint32_t am = static_cast<std::uint32_t>(a);
                for (std::uint32_t f = am;; f = (f - 1) & am) {
                    reach.set(static_cast<std::size_t>(m.upper_of(static_cast<int>(f))));
                    if (f == 0) break;
                }
                for (int b = 0; b < n; ++b)
                    if (reach.test(static_cast<std::size_t>(m.upper_of(b)))) table.set(at(a), at(b));
                break;
            }
        }
    }
}

void fill_rows_general(const GranularSpaceModel& m, ContactKind kind, BitMatrix& table,
                       int row_begin, int row_end) {
    int n = m.carrier_size();
    for (int a = row_begin; a < row_end; ++a)
        for (int b = 0; b < n; ++b)
            if (rough_contact(m, kind, a, b))
                table.set(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
}

} // namespace

NamedRelation NamedRelation::materialize(const GranularSpaceModel& m, ContactKind kind,
                                         int workers) {
    int n = m.carrier_size();
    bool fast = m.set_backed() && m.granules().size() <= 64;
    if (n > (fast ? 4096 : 512))
        throw ModelError("carrier too large to materialize a contact table");
    NamedRelation r;
    r.table_ = BitMatrix(static_cast<std::size_t>(n));
    r.label_ = to_string(kind);
    r.kind_ = kind;
    r.names_.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r.names_.push_back(m.element_name(i));

    auto fill = [&](int lo, int hi) {
        if (fast)
            fill_rows_set_backed(m, kind, r.table_, lo, hi);
        else
            fill_rows_general(m, kind, r.table_, lo, hi);
    };
    int w = std::max(1, std::min(workers, n));
    if (w == 1) {
        fill(0, n);
    } else {
        // Rows live in disjoint words of the table, so concurrent fills of
        // distinct row ranges do not race.
        std::vector<std::thread> pool;
        int chunk = (n + w - 1) / w;
        for (int k = 0; k < w; ++k) {
            int lo = k * chunk, hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(fill, lo, hi);
        }
        for (auto& t : pool) t.join();
    }
    return r;
}

NamedRelation NamedRelation::custom(std::vector<std::string> names, BitMatrix table,
                                    std::string label) {
    if (names.size() != table.size())
        throw ModelError("relation table size does not match the carrier");
    NamedRelation r;
    r.names_ = std::move(names);
    r.table_ = std::move(table);
    r.label_ = std::move(label);
    return r;
}

AxiomReport contact_axiom_report(const GranularSpaceModel& m, const NamedRelation& r) {
    int n = r.size();
    if (n != m.carrier_size())
        throw ModelError("relation and model carriers have different sizes");
    if (n > 512) throw ModelError("carrier too large for exhaustive axiom checking (limit 512)");

    AxiomReport rep;
    auto bind = [&](const char* var, int i) {
        return WitnessBinding{var, {m.element_name(i)}};
    };
    auto pass = [&](const char* id, const char* note = "") {
        rep.verdicts.push_back({id, VerdictStatus::pass, {}, note});
    };
    auto fail = [&](const char* id, std::vector<WitnessBinding> w, const char* note = "") {
        rep.verdicts.push_back({id, VerdictStatus::fail, std::move(w), note});
    };
    auto skip = [&](const char* id, const char* why) {
        rep.verdicts.push_back({id, VerdictStatus::skipped, {}, why});
    };

    auto bot = m.bottom();
    bool joinable = m.join_total();

    // C1: contact needs nonzero arguments.
    if (!bot) {
        skip("C1", "no designated bottom");
    } else {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b)
                if (r.contains(a, b) && (a == *bot || b == *bot)) {
                    fail("C1", {bind("a", a), bind("b", b)});
                    ok = false;
                }
        if (ok) pass("C1");
    }

    // C2: symmetry.
    {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b)
                if (r.contains(a, b) && !r.contains(b, a)) {
                    fail("C2", {bind("a", a), bind("b", b)});
                    ok = false;
                }
        if (ok) pass("C2");
    }

    // C3: contact extends along the order on the right.
    {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b) {
                if (!r.contains(a, b)) continue;
                for (int e = 0; e < n; ++e)
                    if (m.leq(b, e) && !r.contains(a, e)) {
                        fail("C3", {bind("a", a), bind("b", b), bind("e", e)});
                        ok = false;
                        break;
                    }
                if (!ok) break;
            }
        if (ok) pass("C3");
    }

    // C4: contact with a join implies contact with a joinand.
    if (!joinable) {
        skip("C4", "join is partial");
    } else {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b)
                for (int e = 0; e < n; ++e) {
                    int j = *m.join(b, e);
                    if (r.contains(a, j) && !r.contains(a, b) && !r.contains(a, e)) {
                        fail("C4", {bind("a", a), bind("b", b), bind("e", e)});
                        ok = false;
                        break;
                    }
                }
        if (ok) pass("C4");
    }

    // C5: nonzero meet forces contact.
    if (!bot) {
        skip("C5", "no designated bottom");
    } else {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b) {
                auto w = m.meet(a, b);
                if (w && *w != *bot && !r.contains(a, b)) {
                    fail("C5", {bind("a", a), bind("b", b)});
                    ok = false;
                }
            }
        if (ok) pass("C5", m.meet_total() ? "" : "pairs with undefined meet are vacuous");
    }

    // C6: contact with a join is equivalent to contact with a joinand.
    if (!joinable) {
        skip("C6", "join is partial");
    } else {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b)
                for (int e = 0; e < n; ++e) {
                    int j = *m.join(b, e);
                    if (r.contains(a, j) != (r.contains(a, b) || r.contains(a, e))) {
                        fail("C6", {bind("a", a), bind("b", b), bind("e", e)});
                        ok = false;
                        break;
                    }
                }
        if (ok) pass("C6");
    }

    // C7: the mirrored equivalence.
    if (!joinable) {
        skip("C7", "join is partial");
    } else {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b)
                for (int e = 0; e < n; ++e) {
                    int j = *m.join(b, e);
                    if (r.contains(j, a) != (r.contains(b, a) || r.contains(e, a))) {
                        fail("C7", {bind("a", a), bind("b", b), bind("e", e)});
                        ok = false;
                        break;
                    }
                }
        if (ok) pass("C7");
    }

    // Relation properties.
    {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b)
                if (r.contains(a, b) != r.contains(b, a)) {
                    fail("symmetric", {bind("a", a), bind("b", b)});
                    ok = false;
                }
        if (ok) pass("symmetric");
    }
    {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            if (!r.contains(a, a)) {
                fail("reflexive", {bind("a", a)});
                ok = false;
            }
        if (ok) pass("reflexive");
    }
    {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b) {
                if (!r.contains(a, b)) continue;
                for (int e = 0; e < n; ++e)
                    if (r.contains(b, e) && !r.contains(a, e)) {
                        fail("transitive", {bind("a", a), bind("b", b), bind("e", e)});
                        ok = false;
                        break;
                    }
                if (!ok) break;
            }
        if (ok) pass("transitive");
    }
    {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = a + 1; b < n && ok; ++b)
                if (r.table().row(static_cast<std::size_t>(a)) ==
                    r.table().row(static_cast<std::size_t>(b))) {
                    fail("extensional", {bind("a", a), bind("b", b)},
                         "distinct elements share a neighborhood");
                    ok = false;
                }
        if (ok) pass("extensional");
    }
    return rep;
}

const char* to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        case Tri::undetermined: return "undetermined";
    }
    return "?";
}

ContactClassification classify_contact(const AxiomReport& report) {
    ContactClassification c;
    for (const auto& v : report.verdicts) {
        if (v.failed()) c.failed.push_back(v.id);
        if (v.status == VerdictStatus::skipped) c.skipped.push_back(v.id);
    }
    auto judge = [&](const std::vector<std::string>& ids) {
        bool any_skip = false;
        for (const auto& id : ids) {
            const AxiomVerdict* v = report.find(id);
            if (!v || v->status == VerdictStatus::skipped) {
                any_skip = true;
                continue;
            }
            if (v->failed()) return Tri::no;
        }
        return any_skip ? Tri::undetermined : Tri::yes;
    };
    c.contact = judge({"C1", "C2", "C3", "C4", "C5"});
    c.precontact = judge({"C1", "C6", "C7"});
    return c;
}

DerivedRelations derived_relations(const GranularSpaceModel& m, const NamedRelation& r) {
    int n = r.size();
    if (n != m.carrier_size())
        throw ModelError("relation and model carriers have different sizes");
    if (n > 512) throw ModelError("carrier too large for derived relations (limit 512)");
    if (!r.symmetric()) throw ModelError("derived relations require a symmetric relation");

    auto bot = m.bottom();
    BitMatrix ov(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (m.set_backed()) {
                if (a & b) ov.set(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
                continue;
            }
            for (int z = 0; z < n; ++z) {
                if (bot && z == *bot) continue;
                if (m.part(z, a) && m.part(z, b)) {
                    ov.set(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
                    break;
                }
            }
        }

    DerivedRelations d{BitMatrix(static_cast<std::size_t>(n)), BitMatrix(static_cast<std::size_t>(n)),
                       BitMatrix(static_cast<std::size_t>(n))};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::size_t ai = static_cast<std::size_t>(a), bi = static_cast<std::size_t>(b);
            if (!r.contains(a, b)) d.disconnected.set(ai, bi);
            if (r.contains(a, b) && !ov.test(ai, bi)) d.externally_connected.set(ai, bi);
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!(m.part(a, b) && !m.part(b, a))) continue;
            for (int c = 0; c < n; ++c)
                if (d.externally_connected.test(static_cast<std::size_t>(c), static_cast<std::size_t>(a)) &&
                    d.externally_connected.test(static_cast<std::size_t>(c), static_cast<std::size_t>(b))) {
                    d.tangential_proper_part.set(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
                    break;
                }
        }
    return d;
}

ProbeAssignment::ProbeAssignment(std::shared_ptr<const Universe> u,
                                 std::vector<std::vector<double>> features)
    : universe_(std::move(u)), features_(std::move(features)) {
    if (static_cast<int>(features_.size()) != universe_->size())
        throw ModelError("probe assignment must cover every universe element");
    if (features_.empty() || features_.front().empty())
        throw ModelError("probe feature vectors must have at least one component");
    dimension_ = static_cast<int>(features_.front().size());
    for (const auto& f : features_)
        if (static_cast<int>(f.size()) != dimension_)
            throw ModelError("probe feature vectors must share one dimension");
}

SubsetValue descriptive_intersection(const ProbeAssignment& p, const SubsetValue& a,
                                     const SubsetValue& b) {
    const auto& u = p.universe();
    if ((a.universe() != u && !a.universe()->same_as(*u)) ||
        (b.universe() != u && !b.universe()->same_as(*u)))
        throw ModelError("subsets do not live over the probe's universe");
    std::set<std::vector<double>> image_a, image_b;
    for (int i = 0; i < u->size(); ++i) {
        if (a.contains(i)) image_a.insert(p.feature(i));
        if (b.contains(i)) image_b.insert(p.feature(i));
    }
    std::uint64_t bits = 0;
    for (int i = 0; i < u->size(); ++i) {
        if (!a.contains(i) && !b.contains(i)) continue;
        const auto& f = p.feature(i);
        if (image_a.count(f) && image_b.count(f)) bits |= std::uint64_t{1} << i;
    }
    return SubsetValue(u, bits);
}

bool descriptively_near(const ProbeAssignment& p, const SubsetValue& a, const SubsetValue& b) {
    return !descriptive_intersection(p, a, b).is_empty();
}

} // namespace mereo
