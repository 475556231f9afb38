#pragma once

// Dense linear algebra over the two-element field.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tdaboot::gf2 {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const noexcept { return nbits_; }
    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    BitVector& operator^=(const BitVector& other) noexcept;

    bool none() const noexcept;
    std::size_t count() const noexcept;
    /// Index of the lowest set bit.
    std::optional<std::size_t> first() const noexcept;
    std::vector<std::size_t> ones() const;

    /// Concatenation `[*this | tail]`.
    BitVector concat(const BitVector& tail) const;
    /// Bits [from, from + len).
    BitVector slice(std::size_t from, std::size_t len) const;

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Row-echelon basis keyed by each row's lowest set bit.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t nbits) : nbits_(nbits), pivot_row_(nbits, npos) {}

    /// Reduces `v` against the basis in place; returns true if the residue is zero.
    bool reduce(BitVector& v) const;
    /// Adds `v` if it is independent. Returns whether it was added.
    bool insert(BitVector v);
    bool contains(BitVector v) const { return reduce(v); }

    std::size_t rank() const noexcept { return rows_.size(); }
    std::size_t ambient_size() const noexcept { return nbits_; }
    const std::vector<BitVector>& rows() const noexcept { return rows_; }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t nbits_;
    std::vector<BitVector> rows_;
    std::vector<std::size_t> pivot_row_;
};

std::size_t rank(std::span<const BitVector> vectors, std::size_t nbits);

/// Basis of {x in F2^columns.size() : sum_j x_j columns[j] = 0}.
std::vector<BitVector> kernel(std::span<const BitVector> columns, std::size_t nrows);

/// Basis of span(u) ∩ span(w) by the Zassenhaus block reduction.
std::vector<BitVector> intersection(std::span<const BitVector> u, std::span<const BitVector> w,
                                    std::size_t nbits);

/// Basis of span(u) + span(w), in echelon form.
std::vector<BitVector> sum(std::span<const BitVector> u, std::span<const BitVector> w, std::size_t nbits);

/// dim(span(u) + span(sub)) - dim(span(sub)): how many vectors of `u` extend a basis of `sub`.
std::size_t extension_count(std::span<const BitVector> u, std::span<const BitVector> sub, std::size_t nbits);

} // namespace tdaboot::gf2
