#ifndef MEREO_UNIVERSE_HPP
#define MEREO_UNIVERSE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mereo/errors.hpp"

namespace mereo {

// Finite universe of named, ordered elements. Immutable after creation and
// shared by every value built over it. Subsets are packed into 64-bit
// masks, so 64 elements is a hard ceiling; the default bound of 16 keeps
// exhaustive scans over the powerset cheap.
class Universe {
public:
    static constexpr int default_bound = 16;
    static constexpr int hard_limit = 64;

    // Throws ModelError on duplicates, empty names, or size > bound.
    static std::shared_ptr<const Universe> create(std::vector<std::string> names,
                                                  int bound = default_bound);

    // Universe named "1".."n".
    static std::shared_ptr<const Universe> canonical(int n, int bound = default_bound);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& names() const { return names_; }

    // -1 when the name is unknown.
    int index(const std::string& name) const;
    // Throws ModelError when the name is unknown.
    int require(const std::string& name) const;

    // Mask with all elements present.
    std::uint64_t full_mask() const {
        int n = size();
        return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    }

    // Content equality; distinct shared_ptr instances with the same names
    // describe the same universe.
    bool same_as(const Universe& other) const { return names_ == other.names_; }

private:
    explicit Universe(std::vector<std::string> names);

    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

// A subset of a universe: shared universe handle plus a bit mask. Binary
// operations throw ModelError when the operands live over different
// universes.
class SubsetValue {
public:
    SubsetValue() = default;

    SubsetValue(std::shared_ptr<const Universe> u, std::uint64_t bits);

    static SubsetValue empty_set(std::shared_ptr<const Universe> u) {
        return SubsetValue(std::move(u), 0);
    }

    static SubsetValue full_set(std::shared_ptr<const Universe> u);

    static SubsetValue from_names(std::shared_ptr<const Universe> u,
                                  const std::vector<std::string>& members);

    const std::shared_ptr<const Universe>& universe() const { return universe_; }
    std::uint64_t bits() const { return bits_; }

    bool contains(int i) const { return (bits_ >> i) & 1; }
    int count() const;
    bool is_empty() const { return bits_ == 0; }

    bool subset_of(const SubsetValue& o) const;
    bool intersects(const SubsetValue& o) const;

    SubsetValue union_with(const SubsetValue& o) const;
    SubsetValue intersect(const SubsetValue& o) const;
    SubsetValue difference(const SubsetValue& o) const;
    SubsetValue complement() const;

    std::vector<std::string> member_names() const;

    // "{1,3}" with members in universe order; "{}" when empty.
    std::string to_string() const;

    friend bool operator==(const SubsetValue& a, const SubsetValue& b);
    friend bool operator!=(const SubsetValue& a, const SubsetValue& b) { return !(a == b); }

private:
    void require_same_universe(const SubsetValue& o) const;

    std::shared_ptr<const Universe> universe_;
    std::uint64_t bits_ = 0;
};

// Binary relation over a universe, one successor mask per element.
class BinaryRelation {
public:
    explicit BinaryRelation(std::shared_ptr<const Universe> u);

    static BinaryRelation from_pairs(std::shared_ptr<const Universe> u,
                                     const std::vector<std::pair<std::string, std::string>>& pairs);
    static BinaryRelation from_index_pairs(std::shared_ptr<const Universe> u,
                                           const std::vector<std::pair<int, int>>& pairs);
    static BinaryRelation diagonal(std::shared_ptr<const Universe> u);

    const std::shared_ptr<const Universe>& universe() const { return universe_; }
    int size() const { return static_cast<int>(rows_.size()); }

    bool contains(int a, int b) const { return (rows_[static_cast<std::size_t>(a)] >> b) & 1; }
    void add(int a, int b) { rows_[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b; }

    std::uint64_t successors(int a) const { return rows_[static_cast<std::size_t>(a)]; }

    // Pairs in (row, column) lexicographic order.
    std::vector<std::pair<int, int>> pairs() const;

    friend bool operator==(const BinaryRelation& a, const BinaryRelation& b);

private:
    std::shared_ptr<const Universe> universe_;
    std::vector<std::uint64_t> rows_;
};

// Smallest reflexive relation containing the input; the declared-parthood
// reading used when ingesting decision tables.
BinaryRelation reflexive_completion(const BinaryRelation& r);
BinaryRelation transitive_closure(const BinaryRelation& r);

struct PropertyCheck {
    bool holds = true;
    // Violating indices when holds is false: one element for reflexivity,
    // two for symmetry/antisymmetry, three for transitivity.
    std::vector<int> witness;
};

struct RelationProperties {
    PropertyCheck reflexive, symmetric, transitive, antisymmetric;
};

RelationProperties relation_properties(const BinaryRelation& r);

// Partition of a universe into nonempty, pairwise disjoint, covering
// blocks. Blocks are kept in canonical order: ascending least element.
class Partition {
public:
    static Partition from_blocks(std::vector<SubsetValue> blocks);

    // Restricted growth string: rgs[i] is the block of element i, with
    // rgs[0] == 0 and rgs[i] <= max(prefix) + 1.
    static Partition from_rgs(std::shared_ptr<const Universe> u, const std::vector<int>& rgs);

    const std::vector<SubsetValue>& blocks() const { return blocks_; }
    const std::shared_ptr<const Universe>& universe() const { return blocks_.front().universe(); }
    int block_count() const { return static_cast<int>(blocks_.size()); }

    // Index of the block containing element i.
    int block_of(int i) const;
    std::vector<int> rgs() const;

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.blocks_ == b.blocks_;
    }

private:
    explicit Partition(std::vector<SubsetValue> blocks) : blocks_(std::move(blocks)) {}

    std::vector<SubsetValue> blocks_;
};

// Covering family: nonempty distinct blocks whose union is the universe.
// Overlap between blocks is allowed. Blocks are kept sorted by mask value.
class Cover {
public:
    static Cover from_blocks(std::vector<SubsetValue> blocks);

    const std::vector<SubsetValue>& blocks() const { return blocks_; }
    const std::shared_ptr<const Universe>& universe() const { return blocks_.front().universe(); }
    int block_count() const { return static_cast<int>(blocks_.size()); }

    // A proper cover has no block equal to the whole universe unless it is
    // the only block.
    bool is_proper() const;

    friend bool operator==(const Cover& a, const Cover& b) { return a.blocks_ == b.blocks_; }

private:
    explicit Cover(std::vector<SubsetValue> blocks) : blocks_(std::move(blocks)) {}

    std::vector<SubsetValue> blocks_;
};

// Converts an equivalence relation into its partition of classes; throws
// ModelError naming the violated property (with witness) otherwise.
Partition equivalence_classes(const BinaryRelation& r);

// Streams every partition of the universe in restricted-growth-string
// order: the single-block partition first, all-singletons last. Supports
// O(n^2)-time seeking by rank, so parallel scans can split the index space
// without enumerating prefixes.
class PartitionStream {
public:
    explicit PartitionStream(std::shared_ptr<const Universe> u, std::uint64_t start_rank = 0);

    std::optional<Partition> next();

    // Rank of the partition that next() would produce.
    std::uint64_t rank() const { return rank_; }

    // Number of partitions of an n-element universe (Bell number), from
    // the same completion-count table that drives seeking.
    static std::uint64_t count(int n);

private:
    std::shared_ptr<const Universe> universe_;
    int n_;
    std::vector<std::vector<std::uint64_t>> completions_; // [pos][max] -> completions
    std::vector<int> rgs_;
    std::uint64_t rank_ = 0;
    bool exhausted_ = false;

    void seek(std::uint64_t target);
};

// All partitions, materialized. Guarded: throws ModelError for |U| > 12.
std::vector<Partition> enumerate_partitions(std::shared_ptr<const Universe> u);

} // namespace mereo

#endif
