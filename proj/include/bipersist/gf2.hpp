#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bipersist::gf2 {

/// Dense bit-packed vector over GF(2).
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    static BitVector unit(std::size_t size, std::size_t index);

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVector& operator^=(const BitVector& other);

    bool is_zero() const;
    std::size_t popcount() const;

    /// Smallest set index, -1 when zero.
    int lowest_set() const;
    /// Largest set index, -1 when zero.
    int highest_set() const;

    bool operator==(const BitVector&) const = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Dense GF(2) matrix, stored column-wise. Dimensions are fixed at
/// construction; entries are mutable.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), columns_(cols, BitVector(rows)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return columns_[c].get(r); }
    void set(std::size_t r, std::size_t c, bool v) { columns_[c].set(r, v); }

    const BitVector& column(std::size_t c) const { return columns_[c]; }
    void set_column(std::size_t c, BitVector v);

    BitVector apply(const BitVector& x) const;  // m * x
    BitMatrix multiply(const BitMatrix& other) const;
    BitMatrix transposed() const;

    /// Submatrix with the given row/column selections (ascending index lists).
    BitMatrix submatrix(std::span<const int> row_idx, std::span<const int> col_idx) const;

    bool is_zero() const;
    bool operator==(const BitMatrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BitVector> columns_;
};

/// GF(2) rank, by column-ordered Gaussian elimination with leftmost-pivot
/// tie-breaking (columns processed left to right, pivot = topmost set row).
int rank(const BitMatrix& m);

/// Basis of {v : m v = 0}. Deterministic: vectors are emitted in column
/// order, each with coefficient 1 on the column that closed it.
std::vector<BitVector> kernel_basis(const BitMatrix& m);

/// Some x with m x = b, or nullopt. Throws std::invalid_argument when
/// b.size() != m.rows().
std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b);

/// Reduced spanning set supporting exact membership queries.
class Span {
public:
    Span() = default;
    explicit Span(std::size_t ambient) : ambient_(ambient) {}
    Span(std::size_t ambient, std::span<const BitVector> generators);

    std::size_t ambient() const { return ambient_; }
    int dimension() const { return static_cast<int>(basis_.size()); }

    /// Returns true when the vector enlarged the span.
    bool insert(BitVector v);

    bool contains(const BitVector& v) const { return reduce(v).is_zero(); }

    /// Canonical residual of v modulo the span.
    BitVector reduce(BitVector v) const;

    const std::vector<BitVector>& basis() const { return basis_; }

private:
    std::size_t ambient_ = 0;
    std::vector<BitVector> basis_;  // distinct pivots, kept reduced
    std::vector<int> pivots_;       // pivot row of basis_[i]
};

/// Membership structure over the span of the given vectors.
Span image_membership_matrix(std::size_t ambient, std::span<const BitVector> generators);

}  // namespace bipersist::gf2
