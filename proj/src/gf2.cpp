#include "tdaboot/gf2.hpp"

#include <bit>

namespace tdaboot::gf2 {

BitVector& BitVector::operator^=(const BitVector& other) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

bool BitVector::none() const noexcept {
    for (auto w : words_)
        if (w) return false;
    return true;
}

std::size_t BitVector::count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::optional<std::size_t> BitVector::first() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return std::nullopt;
}

std::vector<std::size_t> BitVector::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        auto bits = words_[w];
        while (bits) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

BitVector BitVector::concat(const BitVector& tail) const {
    BitVector out(nbits_ + tail.nbits_);
    for (auto i : ones()) out.set(i);
    for (auto i : tail.ones()) out.set(nbits_ + i);
    return out;
}

BitVector BitVector::slice(std::size_t from, std::size_t len) const {
    BitVector out(len);
    for (std::size_t i = 0; i < len; ++i)
        if (test(from + i)) out.set(i);
    return out;
}

bool EchelonBasis::reduce(BitVector& v) const {
    while (auto p = v.first()) {
        const auto r = pivot_row_[*p];
        if (r == npos) return false;
        v ^= rows_[r];
    }
    return true;
}

bool EchelonBasis::insert(BitVector v) {
    if (reduce(v)) return false;
    pivot_row_[*v.first()] = rows_.size();
    rows_.push_back(std::move(v));
    return true;
}

std::size_t rank(std::span<const BitVector> vectors, std::size_t nbits) {
    EchelonBasis basis(nbits);
    for (const auto& v : vectors) basis.insert(v);
    return basis.rank();
}

std::vector<BitVector> kernel(std::span<const BitVector> columns, std::size_t nrows) {
    // Augment each column with its own indicator; a column that reduces to
    // zero on the matrix part records a dependency.
    const std::size_t ncols = columns.size();
    EchelonBasis basis(nrows + ncols);
    std::vector<BitVector> out;
    for (std::size_t j = 0; j < ncols; ++j) {
        BitVector tag(ncols);
        tag.set(j);
        BitVector v = columns[j].concat(tag);
        basis.reduce(v);
        if (auto p = v.first(); p && *p >= nrows)
            out.push_back(v.slice(nrows, ncols));
        else
            basis.insert(std::move(v));
    }
    return out;
}

std::vector<BitVector> intersection(std::span<const BitVector> u, std::span<const BitVector> w,
                                    std::size_t nbits) {
    EchelonBasis basis(2 * nbits);
    for (const auto& x : u) basis.insert(x.concat(x));
    const BitVector zero(nbits);
    for (const auto& x : w) basis.insert(x.concat(zero));
    std::vector<BitVector> out;
    for (const auto& row : basis.rows())
        if (*row.first() >= nbits) out.push_back(row.slice(nbits, nbits));
    return out;
}

std::vector<BitVector> sum(std::span<const BitVector> u, std::span<const BitVector> w, std::size_t nbits) {
    EchelonBasis basis(nbits);
    for (const auto& x : u) basis.insert(x);
    for (const auto& x : w) basis.insert(x);
    return basis.rows();
}

std::size_t extension_count(std::span<const BitVector> u, std::span<const BitVector> sub, std::size_t nbits) {
    EchelonBasis basis(nbits);
    for (const auto& x : sub) basis.insert(x);
    const auto base = basis.rank();
    for (const auto& x : u) basis.insert(x);
    return basis.rank() - base;
}

} // namespace tdaboot::gf2
