#include "bipersist/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace bipersist::gf2 {

BitVector BitVector::unit(std::size_t size, std::size_t index) {
    BitVector v(size);
    v.set(index, true);
    return v;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (size_ != other.size_) throw std::invalid_argument("BitVector size mismatch in xor");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

bool BitVector::is_zero() const {
    for (auto w : words_)
        if (w) return false;
    return true;
}

std::size_t BitVector::popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

int BitVector::lowest_set() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
    return -1;
}

int BitVector::highest_set() const {
    for (std::size_t i = words_.size(); i-- > 0;)
        if (words_[i]) return static_cast<int>(i * 64 + 63 - std::countl_zero(words_[i]));
    return -1;
}

void BitMatrix::set_column(std::size_t c, BitVector v) {
    if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
    columns_[c] = std::move(v);
}

BitVector BitMatrix::apply(const BitVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("dimension mismatch in apply");
    BitVector out(rows_);
    for (std::size_t c = 0; c < cols_; ++c)
        if (x.get(c)) out ^= columns_[c];
    return out;
}

BitMatrix BitMatrix::multiply(const BitMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("dimension mismatch in multiply");
    BitMatrix out(rows_, other.cols_);
    for (std::size_t c = 0; c < other.cols_; ++c) out.set_column(c, apply(other.column(c)));
    return out;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix out(cols_, rows_);
    for (std::size_t c = 0; c < cols_; ++c)
        for (std::size_t r = 0; r < rows_; ++r)
            if (get(r, c)) out.set(c, r, true);
    return out;
}

BitMatrix BitMatrix::submatrix(std::span<const int> row_idx, std::span<const int> col_idx) const {
    BitMatrix out(row_idx.size(), col_idx.size());
    for (std::size_t c = 0; c < col_idx.size(); ++c) {
        const BitVector& src = columns_[static_cast<std::size_t>(col_idx[c])];
        for (std::size_t r = 0; r < row_idx.size(); ++r)
            if (src.get(static_cast<std::size_t>(row_idx[r]))) out.set(r, c, true);
    }
    return out;
}

bool BitMatrix::is_zero() const {
    for (const auto& col : columns_)
        if (!col.is_zero()) return false;
    return true;
}

namespace {

// Column echelon pass. Emits, per input column, either its pivot row (>= 0)
// or -1 when the column reduced to zero; `combos`, when non-null, records the
// source-column combination that produced each reduced column.
struct Echelon {
    std::vector<BitVector> reduced;   // pivot columns only
    std::vector<int> pivot_rows;      // parallel to reduced
    std::vector<BitVector> combos;    // parallel to reduced (combination over inputs)
    std::vector<BitVector> null_combos;  // combinations that reduced to zero
};

Echelon column_echelon(const BitMatrix& m) {
    Echelon e;
    std::vector<int> pivot_owner;  // pivot row -> index into e.reduced
    for (std::size_t j = 0; j < m.cols(); ++j) {
        BitVector col = m.column(j);
        BitVector combo = BitVector::unit(m.cols(), j);
        int p = col.lowest_set();
        while (p >= 0) {
            int owner = -1;
            for (std::size_t i = 0; i < e.pivot_rows.size(); ++i)
                if (e.pivot_rows[i] == p) {
                    owner = static_cast<int>(i);
                    break;
                }
            if (owner < 0) break;
            col ^= e.reduced[static_cast<std::size_t>(owner)];
            combo ^= e.combos[static_cast<std::size_t>(owner)];
            p = col.lowest_set();
        }
        if (p >= 0) {
            e.reduced.push_back(std::move(col));
            e.pivot_rows.push_back(p);
            e.combos.push_back(std::move(combo));
        } else {
            e.null_combos.push_back(std::move(combo));
        }
    }
    return e;
}

}  // namespace

int rank(const BitMatrix& m) { return static_cast<int>(column_echelon(m).reduced.size()); }

std::vector<BitVector> kernel_basis(const BitMatrix& m) { return column_echelon(m).null_combos; }

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
    Echelon e = column_echelon(m);
    BitVector residual = b;
    BitVector x(m.cols());
    int p = residual.lowest_set();
    while (p >= 0) {
        int owner = -1;
        for (std::size_t i = 0; i < e.pivot_rows.size(); ++i)
            if (e.pivot_rows[i] == p) {
                owner = static_cast<int>(i);
                break;
            }
        if (owner < 0) return std::nullopt;
        residual ^= e.reduced[static_cast<std::size_t>(owner)];
        x ^= e.combos[static_cast<std::size_t>(owner)];
        p = residual.lowest_set();
    }
    return x;
}

Span::Span(std::size_t ambient, std::span<const BitVector> generators) : ambient_(ambient) {
    for (const auto& g : generators) insert(g);
}

bool Span::insert(BitVector v) {
    if (v.size() != ambient_) throw std::invalid_argument("Span: ambient dimension mismatch");
    v = reduce(std::move(v));
    int p = v.lowest_set();
    if (p < 0) return false;
    // Keep existing basis vectors reduced against the new pivot.
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].get(static_cast<std::size_t>(p))) basis_[i] ^= v;
    basis_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

BitVector Span::reduce(BitVector v) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (v.get(static_cast<std::size_t>(pivots_[i]))) v ^= basis_[i];
    return v;
}

Span image_membership_matrix(std::size_t ambient, std::span<const BitVector> generators) {
    return Span(ambient, generators);
}

}  // namespace bipersist::gf2
