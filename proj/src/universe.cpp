#include "mereo/universe.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "mereo/bits.hpp"

namespace mereo {

Universe::Universe(std::vector<std::string> names) : names_(std::move(names)) {
    for (int i = 0; i < static_cast<int>(names_.size()); ++i)
        index_.emplace(names_[static_cast<std::size_t>(i)], i);
}

std::shared_ptr<const Universe> Universe::create(std::vector<std::string> names, int bound) {
    if (bound < 1 || bound > hard_limit)
        throw ModelError("universe bound must be between 1 and 64, got " + std::to_string(bound));
    if (names.empty())
        throw ModelError("universe must contain at least one element");
    if (static_cast<int>(names.size()) > bound)
        throw ModelError("universe has " + std::to_string(names.size()) +
                         " elements, exceeding the bound " + std::to_string(bound));
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) throw ModelError("universe element names must be nonempty");
        if (!seen.insert(n).second) throw ModelError("duplicate universe element: " + n);
    }
    return std::shared_ptr<const Universe>(new Universe(std::move(names)));
}

std::shared_ptr<const Universe> Universe::canonical(int n, int bound) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));
    return create(std::move(names), bound);
}

int Universe::index(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

int Universe::require(const std::string& name) const {
    int i = index(name);
    if (i < 0) throw ModelError("unknown universe element: " + name);
    return i;
}

SubsetValue::SubsetValue(std::shared_ptr<const Universe> u, std::uint64_t bits)
    : universe_(std::move(u)), bits_(bits) {
    if (!universe_) throw ModelError("subset requires a universe");
    if (bits_ & ~universe_->full_mask())
        throw ModelError("subset bits fall outside the universe");
}

SubsetValue SubsetValue::full_set(std::shared_ptr<const Universe> u) {
    std::uint64_t m = u->full_mask();
    return SubsetValue(std::move(u), m);
}

SubsetValue SubsetValue::from_names(std::shared_ptr<const Universe> u,
                                    const std::vector<std::string>& members) {
    std::uint64_t bits = 0;
    for (const auto& m : members) bits |= std::uint64_t{1} << u->require(m);
    return SubsetValue(std::move(u), bits);
}

int SubsetValue::count() const { return std::popcount(bits_); }

void SubsetValue::require_same_universe(const SubsetValue& o) const {
    if (!universe_ || !o.universe_)
        throw ModelError("subset operation on a value with no universe");
    if (universe_ != o.universe_ && !universe_->same_as(*o.universe_))
        throw ModelError("universe mismatch between subset operands");
}

bool SubsetValue::subset_of(const SubsetValue& o) const {
    require_same_universe(o);
    return (bits_ & ~o.bits_) == 0;
}

bool SubsetValue::intersects(const SubsetValue& o) const {
    require_same_universe(o);
    return (bits_ & o.bits_) != 0;
}

SubsetValue SubsetValue::union_with(const SubsetValue& o) const {
    require_same_universe(o);
    return SubsetValue(universe_, bits_ | o.bits_);
}

SubsetValue SubsetValue::intersect(const SubsetValue& o) const {
    require_same_universe(o);
    return SubsetValue(universe_, bits_ & o.bits_);
}

SubsetValue SubsetValue::difference(const SubsetValue& o) const {
    require_same_universe(o);
    return SubsetValue(universe_, bits_ & ~o.bits_);
}

SubsetValue SubsetValue::complement() const {
    return SubsetValue(universe_, ~bits_ & universe_->full_mask());
}

std::vector<std::string> SubsetValue::member_names() const {
    std::vector<std::string> out;
    for (int i = 0; i < universe_->size(); ++i)
        if (contains(i)) out.push_back(universe_->name(i));
    return out;
}

std::string SubsetValue::to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int i = 0; i < universe_->size(); ++i) {
        if (!contains(i)) continue;
        if (!first) os << ',';
        os << universe_->name(i);
        first = false;
    }
    os << '}';
    return os.str();
}

bool operator==(const SubsetValue& a, const SubsetValue& b) {
    if (a.bits_ != b.bits_) return false;
    if (a.universe_ == b.universe_) return true;
    if (!a.universe_ || !b.universe_) return false;
    return a.universe_->same_as(*b.universe_);
}

BinaryRelation::BinaryRelation(std::shared_ptr<const Universe> u)
    : universe_(std::move(u)), rows_(static_cast<std::size_t>(universe_->size()), 0) {}

BinaryRelation BinaryRelation::from_pairs(
    std::shared_ptr<const Universe> u,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    BinaryRelation r(u);
    for (const auto& [x, y] : pairs) r.add(u->require(x), u->require(y));
    return r;
}

BinaryRelation BinaryRelation::from_index_pairs(std::shared_ptr<const Universe> u,
                                                const std::vector<std::pair<int, int>>& pairs) {
    BinaryRelation r(std::move(u));
    for (auto [x, y] : pairs) {
        if (x < 0 || x >= r.size() || y < 0 || y >= r.size())
            throw ModelError("relation pair index out of range");
        r.add(x, y);
    }
    return r;
}

BinaryRelation BinaryRelation::diagonal(std::shared_ptr<const Universe> u) {
    BinaryRelation r(std::move(u));
    for (int i = 0; i < r.size(); ++i) r.add(i, i);
    return r;
}

std::vector<std::pair<int, int>> BinaryRelation::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a) {
        std::uint64_t row = successors(a);
        while (row) out.emplace_back(a, pop_lowest(row));
    }
    return out;
}

bool operator==(const BinaryRelation& a, const BinaryRelation& b) {
    return a.rows_ == b.rows_ &&
           (a.universe_ == b.universe_ || a.universe_->same_as(*b.universe_));
}

BinaryRelation reflexive_completion(const BinaryRelation& r) {
    BinaryRelation out = r;
    for (int i = 0; i < out.size(); ++i) out.add(i, i);
    return out;
}

BinaryRelation transitive_closure(const BinaryRelation& r) {
    BinaryRelation out = r;
    int n = out.size();
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (out.contains(i, k))
                for (int j = 0; j < n; ++j)
                    if (out.contains(k, j)) out.add(i, j);
    return out;
}

RelationProperties relation_properties(const BinaryRelation& r) {
    RelationProperties p;
    int n = r.size();
    for (int a = 0; a < n && p.reflexive.holds; ++a)
        if (!r.contains(a, a)) p.reflexive = {false, {a}};
    for (int a = 0; a < n && p.symmetric.holds; ++a)
        for (int b = 0; b < n && p.symmetric.holds; ++b)
            if (r.contains(a, b) && !r.contains(b, a)) p.symmetric = {false, {a, b}};
    for (int a = 0; a < n && p.antisymmetric.holds; ++a)
        for (int b = 0; b < n && p.antisymmetric.holds; ++b)
            if (a != b && r.contains(a, b) && r.contains(b, a)) p.antisymmetric = {false, {a, b}};
    for (int a = 0; a < n && p.transitive.holds; ++a)
        for (int b = 0; b < n && p.transitive.holds; ++b) {
            if (!r.contains(a, b)) continue;
            // a->b holds; any b->c without a->c breaks transitivity.
            std::uint64_t missing = r.successors(b) & ~r.successors(a);
            if (missing) p.transitive = {false, {a, b, std::countr_zero(missing)}};
        }
    return p;
}

Partition Partition::from_blocks(std::vector<SubsetValue> blocks) {
    if (blocks.empty()) throw ModelError("partition requires at least one block");
    const auto& u = blocks.front().universe();
    std::uint64_t seen = 0;
    for (const auto& b : blocks) {
        if (b.universe() != u && !b.universe()->same_as(*u))
            throw ModelError("partition blocks drawn from different universes");
        if (b.is_empty()) throw ModelError("partition blocks must be nonempty");
        if (seen & b.bits())
            throw ModelError("partition blocks are not pairwise disjoint: " + b.to_string() +
                             " overlaps an earlier block");
        seen |= b.bits();
    }
    if (seen != u->full_mask())
        throw ModelError("partition blocks do not cover the universe");
    std::sort(blocks.begin(), blocks.end(), [](const SubsetValue& a, const SubsetValue& b) {
        return std::countr_zero(a.bits()) < std::countr_zero(b.bits());
    });
    return Partition(std::move(blocks));
}

Partition Partition::from_rgs(std::shared_ptr<const Universe> u, const std::vector<int>& rgs) {
    int n = u->size();
    if (static_cast<int>(rgs.size()) != n)
        throw ModelError("restricted growth string length does not match the universe size");
    int maxd = -1;
    std::vector<std::uint64_t> masks;
    for (int i = 0; i < n; ++i) {
        int d = rgs[static_cast<std::size_t>(i)];
        if (d < 0 || d > maxd + 1)
            throw ModelError("malformed restricted growth string at position " + std::to_string(i));
        if (d == maxd + 1) {
            masks.push_back(0);
            maxd = d;
        }
        masks[static_cast<std::size_t>(d)] |= std::uint64_t{1} << i;
    }
    std::vector<SubsetValue> blocks;
    blocks.reserve(masks.size());
    for (auto m : masks) blocks.emplace_back(u, m);
    // Digits are assigned in order of first appearance, so blocks are
    // already sorted by least element.
    return Partition(std::move(blocks));
}

int Partition::block_of(int i) const {
    for (int b = 0; b < block_count(); ++b)
        if (blocks_[static_cast<std::size_t>(b)].contains(i)) return b;
    throw ModelError("element index outside the partitioned universe");
}

std::vector<int> Partition::rgs() const {
    int n = universe()->size();
    std::vector<int> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = block_of(i);
    return out;
}

Cover Cover::from_blocks(std::vector<SubsetValue> blocks) {
    if (blocks.empty()) throw ModelError("cover requires at least one block");
    const auto& u = blocks.front().universe();
    std::uint64_t seen = 0;
    for (const auto& b : blocks) {
        if (b.universe() != u && !b.universe()->same_as(*u))
            throw ModelError("cover blocks drawn from different universes");
        if (b.is_empty()) throw ModelError("cover blocks must be nonempty");
        seen |= b.bits();
    }
    if (seen != u->full_mask()) throw ModelError("cover blocks do not cover the universe");
    std::sort(blocks.begin(), blocks.end(),
              [](const SubsetValue& a, const SubsetValue& b) { return a.bits() < b.bits(); });
    for (std::size_t i = 1; i < blocks.size(); ++i)
        if (blocks[i].bits() == blocks[i - 1].bits())
            throw ModelError("duplicate cover block: " + blocks[i].to_string());
    return Cover(std::move(blocks));
}

bool Cover::is_proper() const {
    if (blocks_.size() == 1) return true;
    std::uint64_t full = universe()->full_mask();
    for (const auto& b : blocks_)
        if (b.bits() == full) return false;
    return true;
}

Partition equivalence_classes(const BinaryRelation& r) {
    RelationProperties p = relation_properties(r);
    auto describe = [&](const std::vector<int>& w) {
        std::string s;
        for (int i : w) {
            if (!s.empty()) s += ",";
            s += r.universe()->name(i);
        }
        return s;
    };
    if (!p.reflexive.holds)
        throw ModelError("relation is not reflexive (element " + describe(p.reflexive.witness) +
                         "), so it has no equivalence classes");
    if (!p.symmetric.holds)
        throw ModelError("relation is not symmetric (pair " + describe(p.symmetric.witness) +
                         "), so it has no equivalence classes");
    if (!p.transitive.holds)
        throw ModelError("relation is not transitive (triple " + describe(p.transitive.witness) +
                         "), so it has no equivalence classes");
    std::vector<SubsetValue> blocks;
    std::uint64_t assigned = 0;
    for (int i = 0; i < r.size(); ++i) {
        if ((assigned >> i) & 1) continue;
        std::uint64_t cls = r.successors(i);
        blocks.emplace_back(r.universe(), cls);
        assigned |= cls;
    }
    return Partition::from_blocks(std::move(blocks));
}

PartitionStream::PartitionStream(std::shared_ptr<const Universe> u, std::uint64_t start_rank)
    : universe_(std::move(u)), n_(universe_->size()) {
    // completions_[i][m]: number of ways to extend a prefix of length i whose
    // maximum digit is m into a full restricted growth string.
    completions_.assign(static_cast<std::size_t>(n_) + 1,
                        std::vector<std::uint64_t>(static_cast<std::size_t>(n_) + 1, 0));
    for (int m = 0; m <= n_; ++m) completions_[static_cast<std::size_t>(n_)][static_cast<std::size_t>(m)] = 1;
    for (int i = n_ - 1; i >= 1; --i)
        for (int m = 0; m < n_; ++m)
            completions_[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] =
                (static_cast<std::uint64_t>(m) + 1) *
                    completions_[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(m)] +
                completions_[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(m) + 1];
    seek(start_rank);
}

std::uint64_t PartitionStream::count(int n) {
    if (n <= 0) return 1;
    PartitionStream s(Universe::canonical(n));
    return s.completions_[1][0];
}

void PartitionStream::seek(std::uint64_t target) {
    std::uint64_t total = n_ >= 1 ? completions_[1][0] : 1;
    if (target >= total) {
        exhausted_ = true;
        rank_ = total;
        return;
    }
    rgs_.assign(static_cast<std::size_t>(n_), 0);
    rank_ = target;
    int m = 0;
    for (int i = 1; i < n_; ++i) {
        for (int d = 0; d <= m + 1; ++d) {
            std::uint64_t c =
                completions_[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(std::max(m, d))];
            if (target < c) {
                rgs_[static_cast<std::size_t>(i)] = d;
                m = std::max(m, d);
                break;
            }
            target -= c;
        }
    }
}

std::optional<Partition> PartitionStream::next() {
    if (exhausted_) return std::nullopt;
    Partition out = Partition::from_rgs(universe_, rgs_);
    ++rank_;
    // Advance to the lexicographic successor: bump the rightmost digit that
    // can still grow, zero the suffix.
    int i = n_ - 1;
    for (; i >= 1; --i) {
        int prefix_max = 0;
        for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs_[static_cast<std::size_t>(j)]);
        if (rgs_[static_cast<std::size_t>(i)] <= prefix_max) {
            ++rgs_[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < n_; ++j) rgs_[static_cast<std::size_t>(j)] = 0;
            break;
        }
    }
    if (i < 1) exhausted_ = true;
    return out;
}

std::vector<Partition> enumerate_partitions(std::shared_ptr<const Universe> u) {
    if (u->size() > 12)
        throw ModelError("refusing to materialize partitions of a universe larger than 12");
    std::vector<Partition> out;
    PartitionStream s(std::move(u));
    while (auto p = s.next()) out.push_back(std::move(*p));
    return out;
}

} // namespace mereo
