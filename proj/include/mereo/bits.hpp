#ifndef MEREO_BITS_HPP
#define MEREO_BITS_HPP

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace mereo {

// Dynamic bit vector sized at construction. Used for sets over carriers
// that may exceed 64 elements (a set-backed carrier over a 16-element
// universe has 65536 members). All binary operations require equal size.
class Bitset {
public:
    Bitset() = default;

    explicit Bitset(std::size_t nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }

    bool test(std::size_t i) const {
        assert(i < nbits_);
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    void set(std::size_t i) {
        assert(i < nbits_);
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    void reset(std::size_t i) {
        assert(i < nbits_);
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    bool none() const { return !any(); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    Bitset& operator|=(const Bitset& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }

    Bitset& operator&=(const Bitset& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }

    bool subset_of(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }

    bool intersects(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }

    // First set index at or after `from`; size() when none.
    std::size_t next(std::size_t from) const {
        for (std::size_t i = from; i < nbits_; ++i) {
            std::uint64_t w = words_[i >> 6] >> (i & 63);
            if (w == 0) {
                i = ((i >> 6) + 1) * 64 - 1;
                continue;
            }
            return i + std::countr_zero(w);
        }
        return nbits_;
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = next(0); i < nbits_; i = next(i + 1)) out.push_back(i);
        return out;
    }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.nbits_ == b.nbits_ && a.words_ == b.words_;
    }

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

// Square boolean matrix with bit-packed rows; the workhorse behind
// materialized relations on carriers.
class BitMatrix {
public:
    BitMatrix() = default;

    explicit BitMatrix(std::size_t n)
        : n_(n), wpr_((n + 63) / 64), words_(n * wpr_, 0) {}

    std::size_t size() const { return n_; }

    bool test(std::size_t i, std::size_t j) const {
        assert(i < n_ && j < n_);
        return (words_[i * wpr_ + (j >> 6)] >> (j & 63)) & 1;
    }

    void set(std::size_t i, std::size_t j) {
        assert(i < n_ && j < n_);
        words_[i * wpr_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
    }

    Bitset row(std::size_t i) const {
        assert(i < n_);
        Bitset out(n_);
        for (std::size_t j = 0; j < n_; ++j)
            if (test(i, j)) out.set(j);
        return out;
    }

    bool symmetric() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (test(i, j) != test(j, i)) return false;
        return true;
    }

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

private:
    std::size_t n_ = 0;
    std::size_t wpr_ = 0;
    std::vector<std::uint64_t> words_;
};

// Iteration over set bits of a 64-bit mask: for (m = x; m;) { i = pop_lowest(m); ... }
inline int pop_lowest(std::uint64_t& mask) {
    int i = std::countr_zero(mask);
    mask &= mask - 1;
    return i;
}

} // namespace mereo

#endif
