#pragma once

// Bit-packed vectors and incremental row reduction over GF(2).

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "burnside_lab/errors.hpp"

namespace burnside_lab {

class BitVector {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    BitVector() = default;
    explicit BitVector(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }
    std::span<const std::uint64_t> words() const noexcept { return words_; }

    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    void assign(std::size_t i, bool v) noexcept { v ? set(i) : reset(i); }

    BitVector& operator^=(const BitVector& o) noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
        return *this;
    }
    BitVector& operator&=(const BitVector& o) noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
        return *this;
    }
    BitVector& operator|=(const BitVector& o) noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) noexcept { return a ^= b; }
    friend BitVector operator&(BitVector a, const BitVector& b) noexcept { return a &= b; }
    friend BitVector operator|(BitVector a, const BitVector& b) noexcept { return a |= b; }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool none() const noexcept {
        return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
    }
    bool any() const noexcept { return !none(); }

    /// Parity of the AND, i.e. the GF(2) dot product.
    bool dot(const BitVector& o) const noexcept {
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
        return std::popcount(acc) & 1;
    }

    bool is_subset_of(const BitVector& o) const noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & ~o.words_[w]) return false;
        return true;
    }

    std::size_t find_first() const noexcept { return find_from(0); }
    std::size_t find_next(std::size_t i) const noexcept { return find_from(i + 1); }

    template <class F>
    void for_each_set(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each_set([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    std::size_t hash() const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ull ^ size_;
        for (auto w : words_) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }

    friend bool operator==(const BitVector&, const BitVector&) = default;

    /// Orders sets by their sorted element lists (lexicographically).
    /// Only meaningful between sets of equal cardinality.
    friend bool lex_less(const BitVector& a, const BitVector& b) noexcept {
        for (std::size_t w = 0; w < a.words_.size(); ++w) {
            std::uint64_t diff = a.words_[w] ^ b.words_[w];
            if (diff) {
                std::uint64_t low = diff & (~diff + 1);
                return (a.words_[w] & low) != 0;
            }
        }
        return false;
    }

private:
    std::size_t find_from(std::size_t i) const noexcept {
        if (i >= size_) return npos;
        std::size_t w = i >> 6;
        std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (i & 63));
        while (true) {
            if (bits) return w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            if (++w >= words_.size()) return npos;
            bits = words_[w];
        }
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitVectorHash {
    std::size_t operator()(const BitVector& v) const noexcept { return v.hash(); }
};

/// Row space kept in reduced row echelon form. Pivot of a row is its lowest
/// set column; rows are kept sorted by pivot so results are reproducible.
class Gf2RowSpace {
public:
    explicit Gf2RowSpace(std::size_t ncols) : ncols_(ncols) {}

    std::size_t cols() const noexcept { return ncols_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    const std::vector<BitVector>& rows() const noexcept { return rows_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    BitVector reduce(BitVector v) const {
        check(v);
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (v.test(pivots_[r])) v ^= rows_[r];
        return v;
    }

    bool contains(const BitVector& v) const { return reduce(v).none(); }

    /// Adds v to the span; returns false if it was already there.
    bool insert(const BitVector& v) {
        BitVector r = reduce(v);
        std::size_t p = r.find_first();
        if (p == BitVector::npos) return false;
        for (auto& row : rows_)
            if (row.test(p)) row ^= r;
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
        pivots_.insert(pivots_.begin() + pos, p);
        rows_.insert(rows_.begin() + pos, std::move(r));
        return true;
    }

    /// Basis of { x : row . x = 0 for every row }.
    std::vector<BitVector> null_space() const {
        std::vector<bool> is_pivot(ncols_, false);
        for (auto p : pivots_) is_pivot[p] = true;
        std::vector<BitVector> basis;
        for (std::size_t f = 0; f < ncols_; ++f) {
            if (is_pivot[f]) continue;
            BitVector x(ncols_);
            x.set(f);
            for (std::size_t r = 0; r < rows_.size(); ++r)
                if (rows_[r].test(f)) x.set(pivots_[r]);
            basis.push_back(std::move(x));
        }
        return basis;
    }

private:
    void check(const BitVector& v) const {
        if (v.size() != ncols_) throw precondition_error("GF(2) vector length mismatch");
    }

    std::size_t ncols_;
    std::vector<BitVector> rows_;
    std::vector<std::size_t> pivots_;
};

inline std::size_t gf2_rank(const std::vector<BitVector>& rows, std::size_t ncols) {
    Gf2RowSpace space(ncols);
    for (const auto& r : rows) space.insert(r);
    return space.rank();
}

}  // namespace burnside_lab

template <>
struct std::hash<burnside_lab::BitVector> {
    std::size_t operator()(const burnside_lab::BitVector& v) const noexcept { return v.hash(); }
};
