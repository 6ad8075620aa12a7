#include "mereo/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "mereo/approximation.hpp"
#include "mereo/errors.hpp"
#include "mereo/mereology.hpp"

namespace mereo {

const char* to_string(GranulationFamily f) {
    return f == GranulationFamily::partitions ? "partitions" : "proper-covers";
}

std::optional<GranulationFamily> granulation_family_from_string(std::string_view s) {
    if (s == "partitions") return GranulationFamily::partitions;
    if (s == "covers" || s == "proper-covers") return GranulationFamily::proper_covers;
    return std::nullopt;
}

const char* to_string(SearchVerdict v) {
    return v == SearchVerdict::refuted ? "refuted" : "confirmed-up-to-bound";
}

namespace {

enum class AxiomId {
    c1,
    c2,
    c3,
    c4,
    c5,
    c6,
    c7,
    symmetry,
    reflexivity,
    transitivity,
    extensionality
};

const std::vector<std::pair<const char*, AxiomId>>& axiom_names() {
    static const std::vector<std::pair<const char*, AxiomId>> table = {
        {"C1", AxiomId::c1},
        {"C2", AxiomId::c2},
        {"C3", AxiomId::c3},
        {"C4", AxiomId::c4},
        {"C5", AxiomId::c5},
        {"C6", AxiomId::c6},
        {"C7", AxiomId::c7},
        {"symmetry", AxiomId::symmetry},
        {"reflexivity", AxiomId::reflexivity},
        {"transitivity", AxiomId::transitivity},
        {"extensionality", AxiomId::extensionality},
    };
    return table;
}

struct ParsedProperty {
    bool theorem1 = false;
    int clause = 0; // 1..3 when theorem1
    ContactKind kind = ContactKind::type_a;
    AxiomId axiom = AxiomId::c1;
};

std::optional<ParsedProperty> parse_property(const std::string& id) {
    ParsedProperty p;
    if (id.rfind("theorem1-violates-", 0) == 0) {
        std::string clause = id.substr(18);
        p.theorem1 = true;
        p.clause = clause == "i" ? 1 : clause == "ii" ? 2 : clause == "iii" ? 3 : 0;
        if (p.clause == 0) return std::nullopt;
        return p;
    }
    const std::string prefix = "Re_";
    const std::string infix = "-violates-";
    if (id.size() < prefix.size() + 1 + infix.size() || id.compare(0, prefix.size(), prefix) != 0)
        return std::nullopt;
    auto kind = contact_kind_from_code(std::string_view(id).substr(prefix.size(), 1));
    if (!kind || id.compare(prefix.size() + 1, infix.size(), infix) != 0) return std::nullopt;
    std::string axiom = id.substr(prefix.size() + 1 + infix.size());
    for (const auto& [name, ax] : axiom_names())
        if (axiom == name) {
            p.kind = *kind;
            p.axiom = ax;
            return p;
        }
    return std::nullopt;
}

WitnessBinding bind(const GranularSpaceModel& m, const char* var, int i) {
    return WitnessBinding{var, {m.element_name(i)}};
}

// First violating tuple of one axiom, ascending scan order. Axioms needing
// a designated bottom or total join yield nullopt when the model lacks it.
std::optional<std::vector<WitnessBinding>> axiom_violation(const GranularSpaceModel& m,
                                                           const NamedRelation& r, AxiomId axiom) {
    int n = r.size();
    auto bot = m.bottom();
    using W = std::vector<WitnessBinding>;
    switch (axiom) {
        case AxiomId::c1:
            if (!bot) return std::nullopt;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (r.contains(a, b) && (a == *bot || b == *bot))
                        return W{bind(m, "a", a), bind(m, "b", b)};
            return std::nullopt;
        case AxiomId::c2:
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (r.contains(a, b) && !r.contains(b, a))
                        return W{bind(m, "a", a), bind(m, "b", b)};
            return std::nullopt;
        case AxiomId::c3:
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    if (!r.contains(a, b)) continue;
                    for (int e = 0; e < n; ++e)
                        if (m.leq(b, e) && !r.contains(a, e))
                            return W{bind(m, "a", a), bind(m, "b", b), bind(m, "e", e)};
                }
            return std::nullopt;
        case AxiomId::c4:
            if (!m.join_total()) return std::nullopt;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int e = 0; e < n; ++e)
                        if (r.contains(a, *m.join(b, e)) && !r.contains(a, b) &&
                            !r.contains(a, e))
                            return W{bind(m, "a", a), bind(m, "b", b), bind(m, "e", e)};
            return std::nullopt;
        case AxiomId::c5:
            if (!bot) return std::nullopt;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    auto w = m.meet(a, b);
                    if (w && *w != *bot && !r.contains(a, b))
                        return W{bind(m, "a", a), bind(m, "b", b)};
                }
            return std::nullopt;
        case AxiomId::c6:
            if (!m.join_total()) return std::nullopt;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int e = 0; e < n; ++e)
                        if (r.contains(a, *m.join(b, e)) !=
                            (r.contains(a, b) || r.contains(a, e)))
                            return W{bind(m, "a", a), bind(m, "b", b), bind(m, "e", e)};
            return std::nullopt;
        case AxiomId::c7:
            if (!m.join_total()) return std::nullopt;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int e = 0; e < n; ++e)
                        if (r.contains(*m.join(b, e), a) !=
                            (r.contains(b, a) || r.contains(e, a)))
                            return W{bind(m, "a", a), bind(m, "b", b), bind(m, "e", e)};
            return std::nullopt;
        case AxiomId::symmetry:
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (r.contains(a, b) != r.contains(b, a))
                        return W{bind(m, "a", a), bind(m, "b", b)};
            return std::nullopt;
        case AxiomId::reflexivity:
            for (int a = 0; a < n; ++a)
                if (!r.contains(a, a)) return W{bind(m, "a", a)};
            return std::nullopt;
        case AxiomId::transitivity:
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    if (!r.contains(a, b)) continue;
                    for (int e = 0; e < n; ++e)
                        if (r.contains(b, e) && !r.contains(a, e))
                            return W{bind(m, "a", a), bind(m, "b", b), bind(m, "e", e)};
                }
            return std::nullopt;
        case AxiomId::extensionality:
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    if (r.table().row(static_cast<std::size_t>(a)) ==
                        r.table().row(static_cast<std::size_t>(b)))
                        return W{bind(m, "a", a), bind(m, "b", b)};
            return std::nullopt;
    }
    return std::nullopt;
}

// Re-evaluates one axiom on a fixed tuple of carrier indices.
bool axiom_violated_at(const GranularSpaceModel& m, const NamedRelation& r, AxiomId axiom,
                       const std::vector<int>& t) {
    auto bot = m.bottom();
    switch (axiom) {
        case AxiomId::c1:
            return t.size() == 2 && bot && r.contains(t[0], t[1]) &&
                   (t[0] == *bot || t[1] == *bot);
        case AxiomId::c2:
            return t.size() == 2 && r.contains(t[0], t[1]) && !r.contains(t[1], t[0]);
        case AxiomId::c3:
            return t.size() == 3 && r.contains(t[0], t[1]) && m.leq(t[1], t[2]) &&
                   !r.contains(t[0], t[2]);
        case AxiomId::c4: {
            if (t.size() != 3) return false;
            auto j = m.join(t[1], t[2]);
            return j && r.contains(t[0], *j) && !r.contains(t[0], t[1]) &&
                   !r.contains(t[0], t[2]);
        }
        case AxiomId::c5: {
            if (t.size() != 2 || !bot) return false;
            auto w = m.meet(t[0], t[1]);
            return w && *w != *bot && !r.contains(t[0], t[1]);
        }
        case AxiomId::c6: {
            if (t.size() != 3) return false;
            auto j = m.join(t[1], t[2]);
            return j && r.contains(t[0], *j) != (r.contains(t[0], t[1]) || r.contains(t[0], t[2]));
        }
        case AxiomId::c7: {
            if (t.size() != 3) return false;
            auto j = m.join(t[1], t[2]);
            return j && r.contains(*j, t[0]) != (r.contains(t[1], t[0]) || r.contains(t[2], t[0]));
        }
        case AxiomId::symmetry:
            return t.size() == 2 && r.contains(t[0], t[1]) != r.contains(t[1], t[0]);
        case AxiomId::reflexivity:
            return t.size() == 1 && !r.contains(t[0], t[0]);
        case AxiomId::transitivity:
            return t.size() == 3 && r.contains(t[0], t[1]) && r.contains(t[1], t[2]) &&
                   !r.contains(t[0], t[2]);
        case AxiomId::extensionality:
            return t.size() == 2 && t[0] != t[1] &&
                   r.table().row(static_cast<std::size_t>(t[0])) ==
                       r.table().row(static_cast<std::size_t>(t[1]));
    }
    return false;
}

// True when the cover family, viewed as sorted masks, is minimal among all
// relabelings of the universe.
bool permutation_minimal(int n, const std::vector<std::uint64_t>& blocks) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::vector<std::uint64_t> mapped(blocks.size());
    while (std::next_permutation(perm.begin(), perm.end())) {
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            std::uint64_t image = 0;
            for (int i = 0; i < n; ++i)
                if ((blocks[k] >> i) & 1) image |= std::uint64_t{1} << perm[static_cast<std::size_t>(i)];
            mapped[k] = image;
        }
        std::sort(mapped.begin(), mapped.end());
        if (mapped < blocks) return false;
    }
    return true;
}

} // namespace

const std::vector<std::string>& property_catalog() {
    static const std::vector<std::string> catalog = [] {
        std::vector<std::string> ids;
        for (ContactKind k : {ContactKind::type_a, ContactKind::type_o, ContactKind::type_1,
                              ContactKind::type_2, ContactKind::type_3})
            for (const auto& [name, ax] : axiom_names()) {
                (void)ax;
                ids.push_back(std::string(to_string(k)) + "-violates-" + name);
            }
        ids.push_back("theorem1-violates-i");
        ids.push_back("theorem1-violates-ii");
        ids.push_back("theorem1-violates-iii");
        return ids;
    }();
    return catalog;
}

bool property_registered(const std::string& id) { return parse_property(id).has_value(); }

std::optional<std::vector<WitnessBinding>> property_violation(const std::string& property_id,
                                                              const GranularSpaceModel& m) {
    auto parsed = parse_property(property_id);
    if (!parsed) throw ModelError("unknown property id: " + property_id);
    if (parsed->theorem1) {
        ParthoodStructure s = ParthoodStructure::from_model(m);
        TheoremOneReport rep = verify_theorem1(s);
        const AxiomVerdict& v = parsed->clause == 1   ? rep.clause_i
                                : parsed->clause == 2 ? rep.clause_ii
                                                      : rep.clause_iii;
        if (v.failed()) return v.witness;
        return std::nullopt;
    }
    NamedRelation r = NamedRelation::materialize(m, parsed->kind);
    return axiom_violation(m, r, parsed->axiom);
}

bool witness_violates(const std::string& property_id, const GranularSpaceModel& m,
                      const std::vector<WitnessBinding>& witness) {
    auto parsed = parse_property(property_id);
    if (!parsed) throw ModelError("unknown property id: " + property_id);
    if (parsed->theorem1) {
        if (witness.size() != 2 || witness[0].elements.size() != 1) return false;
        ParthoodStructure s = ParthoodStructure::from_model(m);
        int a;
        Bitset B(static_cast<std::size_t>(s.size()));
        try {
            a = s.index(witness[0].elements.front());
            for (const auto& nm : witness[1].elements) B.set(static_cast<std::size_t>(s.index(nm)));
        } catch (const ModelError&) {
            return false;
        }
        const auto& props = s.properties();
        switch (parsed->clause) {
            case 1: {
                if (!props.reflexive.holds) return false;
                for (std::size_t x : B.indices())
                    if (!s.part(static_cast<int>(x), a)) return false;
                return s.is_fusion(a, B) && !s.is_sum(a, B);
            }
            case 2:
                return props.transitive.holds && s.is_separative().separative &&
                       s.is_sum(a, B) != s.is_fusion(a, B);
            default:
                return props.transitive.holds && s.is_separative().separative &&
                       B.count() == 2 && s.is_fusion(a, B) && !s.is_sum(a, B);
        }
    }
    std::vector<int> tuple;
    try {
        for (const auto& w : witness) {
            if (w.elements.size() != 1) return false;
            tuple.push_back(m.element_index(w.elements.front()));
        }
    } catch (const ModelError&) {
        return false;
    }
    NamedRelation r = NamedRelation::materialize(m, parsed->kind);
    return axiom_violated_at(m, r, parsed->axiom, tuple);
}

std::vector<std::vector<std::uint64_t>> enumerate_covers(int n, int max_blocks) {
    if (n < 1 || n > 6) throw ModelError("cover enumeration supports universes of 1 to 6 elements");
    if (max_blocks < 1) throw ModelError("max_blocks must be at least 1");
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> cur;
    // Ascending extension in depth-first preorder emits lexicographic order.
    auto dfs = [&](auto&& self, std::uint64_t last, std::uint64_t covered) -> void {
        for (std::uint64_t mask = last + 1; mask <= full; ++mask) {
            cur.push_back(mask);
            if ((covered | mask) == full) out.push_back(cur);
            if (static_cast<int>(cur.size()) < max_blocks) self(self, mask, covered | mask);
            cur.pop_back();
        }
    };
    dfs(dfs, 0, 0);
    return out;
}

ModelStream::ModelStream(int max_universe, GranulationFamily family, int max_blocks,
                         bool canonicalize) {
    if (max_universe < 1) throw ModelError("max_universe must be at least 1");
    if (family == GranulationFamily::proper_covers) {
        if (max_universe > 6)
            throw ModelError("bound exceeded: cover enumeration supports at most 6 elements");
    } else if (max_universe > 8) {
        throw ModelError("bound exceeded: partition enumeration supports at most 8 elements");
    }
    for (int n = 1; n <= max_universe; ++n) {
        if (family == GranulationFamily::partitions) {
            std::set<std::vector<int>> seen_shapes;
            PartitionStream ps(Universe::canonical(n));
            while (auto p = ps.next()) {
                std::vector<std::uint64_t> blocks;
                for (const auto& b : p->blocks()) blocks.push_back(b.bits());
                if (canonicalize) {
                    std::vector<int> shape;
                    for (std::uint64_t b : blocks) shape.push_back(std::popcount(b));
                    std::sort(shape.begin(), shape.end());
                    if (!seen_shapes.insert(std::move(shape)).second) continue;
                }
                entries_.push_back(Entry{n, true, std::move(blocks)});
            }
        } else {
            for (auto& c : enumerate_covers(n, max_blocks)) {
                if (canonicalize && !permutation_minimal(n, c)) continue;
                entries_.push_back(Entry{n, false, std::move(c)});
            }
        }
    }
}

ModelStream::ModelStream(const SearchConfig& cfg)
    : ModelStream(cfg.max_universe, cfg.family, cfg.max_blocks, cfg.canonicalize) {}

GranularSpaceModel ModelStream::at(long index) const {
    const Entry& e = entries_.at(static_cast<std::size_t>(index));
    auto u = Universe::canonical(e.n);
    std::vector<SubsetValue> blocks;
    blocks.reserve(e.blocks.size());
    for (std::uint64_t b : e.blocks) blocks.emplace_back(u, b);
    if (e.partition)
        return GranularSpaceModel::from_space(
            ApproximationSpace(Partition::from_blocks(std::move(blocks))));
    return GranularSpaceModel::from_space(ApproximationSpace(Cover::from_blocks(std::move(blocks))));
}

std::optional<GranularSpaceModel> ModelStream::next() {
    if (pos_ >= total()) return std::nullopt;
    return at(pos_++);
}

CounterexampleRecord find_counterexample(const SearchConfig& cfg) {
    auto parsed = parse_property(cfg.property_id);
    if (!parsed) throw ModelError("unknown property id: " + cfg.property_id);
    if (parsed->theorem1 && cfg.max_universe > 4)
        throw ModelError("bound exceeded: parthood clause search supports at most 4 elements");

    ModelStream stream(cfg);
    const long total = stream.total();
    long best = total;
    std::vector<WitnessBinding> best_witness;

    int workers = std::max(1, std::min(cfg.parallelism, 16));
    if (workers == 1 || total < 2) {
        for (long i = 0; i < total; ++i) {
            if (auto viol = property_violation(cfg.property_id, stream.at(i))) {
                best = i;
                best_witness = std::move(*viol);
                break;
            }
        }
    } else {
        std::atomic<long> best_at{total};
        std::mutex mu;
        std::map<long, std::vector<WitnessBinding>> found;
        long chunk = (total + workers - 1) / workers;
        std::vector<std::thread> pool;
        for (int k = 0; k < workers; ++k) {
            long lo = k * chunk, hi = std::min(total, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (long i = lo; i < hi; ++i) {
                    // A smaller refutation index already exists; nothing at
                    // or above i can beat it.
                    if (best_at.load(std::memory_order_relaxed) < i) return;
                    if (auto viol = property_violation(cfg.property_id, stream.at(i))) {
                        long cur = best_at.load();
                        while (i < cur && !best_at.compare_exchange_weak(cur, i)) {
                        }
                        std::lock_guard<std::mutex> guard(mu);
                        found.emplace(i, std::move(*viol));
                        return;
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        best = best_at.load();
        if (best < total) best_witness = found.at(best);
    }

    CounterexampleRecord rec;
    rec.property_id = cfg.property_id;
    if (best < total) {
        rec.verdict = SearchVerdict::refuted;
        rec.model = stream.at(best);
        rec.witness = std::move(best_witness);
        rec.model_index = best;
        rec.models_scanned = best + 1;
    } else {
        rec.verdict = SearchVerdict::confirmed_up_to_bound;
        rec.models_scanned = total;
    }
    return rec;
}

bool reverify(const CounterexampleRecord& rec) {
    if (rec.verdict == SearchVerdict::confirmed_up_to_bound) return true;
    if (!rec.model) return false;
    return witness_violates(rec.property_id, *rec.model, rec.witness);
}

const std::vector<std::string>& appendix_case_catalog() {
    static const std::vector<std::string> cases = {"A-Re1-asymmetry", "B-ReO-C4", "B-ReO-C5"};
    return cases;
}

namespace {

GranularSpaceModel partition_model(int n, const std::vector<std::vector<int>>& block_elems) {
    auto u = Universe::canonical(n);
    std::vector<SubsetValue> blocks;
    for (const auto& elems : block_elems) {
        std::uint64_t mask = 0;
        for (int e : elems) mask |= std::uint64_t{1} << (e - 1);
        blocks.emplace_back(u, mask);
    }
    return GranularSpaceModel::from_space(ApproximationSpace(Partition::from_blocks(std::move(blocks))));
}

std::string subset_name(const GranularSpaceModel& m, std::initializer_list<int> elems) {
    std::uint64_t mask = 0;
    for (int e : elems) mask |= std::uint64_t{1} << (e - 1);
    return m.element_name(static_cast<int>(mask));
}

} // namespace

CounterexampleRecord reproduce_appendix(const std::string& case_id) {
    CounterexampleRecord rec;
    rec.model_index = -1;
    rec.models_scanned = 1;
    rec.verdict = SearchVerdict::refuted;

    if (case_id == "A-Re1-asymmetry") {
        // Three two-element granules; a spans one element of each, b spans
        // two. Re_1(a, b) holds through f = b but no part of b has the
        // upper approximation of a.
        GranularSpaceModel m = partition_model(6, {{1, 2}, {3, 4}, {5, 6}});
        rec.property_id = "Re_1-violates-symmetry";
        rec.witness = {WitnessBinding{"a", {subset_name(m, {1, 3, 5})}},
                       WitnessBinding{"b", {subset_name(m, {1, 3})}}};
        rec.model = std::move(m);
    } else if (case_id == "B-ReO-C4") {
        // b and c jointly cover the wide granule but neither contains it.
        GranularSpaceModel m = partition_model(5, {{1, 2, 3}, {4}, {5}});
        rec.property_id = "Re_o-violates-C4";
        rec.witness = {WitnessBinding{"a", {subset_name(m, {1, 2, 3})}},
                       WitnessBinding{"b", {subset_name(m, {1, 2, 4})}},
                       WitnessBinding{"c", {subset_name(m, {3, 5})}}};
        rec.model = std::move(m);
    } else if (case_id == "B-ReO-C5") {
        // a and b intersect inside the wide granule yet share no granule.
        GranularSpaceModel m = partition_model(5, {{1, 2, 3}, {4}, {5}});
        rec.property_id = "Re_o-violates-C5";
        rec.witness = {WitnessBinding{"a", {subset_name(m, {1, 2, 3})}},
                       WitnessBinding{"b", {subset_name(m, {1, 2, 4})}}};
        rec.model = std::move(m);
    } else {
        throw ModelError("unknown appendix case: " + case_id);
    }

    if (!witness_violates(rec.property_id, *rec.model, rec.witness))
        throw ModelError("appendix case failed to verify: " + case_id);
    return rec;
}

} // namespace mereo
