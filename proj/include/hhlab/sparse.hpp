#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "field.hpp"

namespace hhlab {

using std::uint32_t;

// Sparse matrix over K in canonical triplet form: entries sorted by (row,
// col), no duplicates, no explicit zeros.  A matrix represents a linear map
// from its column space to its row space; composition g.f is the product
// matrix(g) * matrix(f).
template <class K>
class SparseMatrix {
public:
    using Scalar = typename K::Scalar;

    struct Entry {
        uint32_t row;
        uint32_t col;
        Scalar val;
    };

    SparseMatrix(const K& field, uint32_t nrows, uint32_t ncols)
        : field_(field), nrows_(nrows), ncols_(ncols)
    {
    }

    static SparseMatrix from_triplets(const K& field, uint32_t nrows, uint32_t ncols,
                                      std::vector<Entry> triplets)
    {
        SparseMatrix m(field, nrows, ncols);
        for (const auto& e : triplets)
            if (e.row >= nrows || e.col >= ncols)
                throw DimensionMismatch("triplet outside matrix shape");
        std::sort(triplets.begin(), triplets.end(), [](const Entry& a, const Entry& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        for (auto& e : triplets) {
            if (!m.entries_.empty() && m.entries_.back().row == e.row
                && m.entries_.back().col == e.col) {
                m.entries_.back().val = field.add(m.entries_.back().val, e.val);
            } else {
                m.entries_.push_back(std::move(e));
            }
        }
        m.entries_.erase(std::remove_if(m.entries_.begin(), m.entries_.end(),
                                        [&](const Entry& e) { return field.is_zero(e.val); }),
                         m.entries_.end());
        return m;
    }

    static SparseMatrix identity(const K& field, uint32_t n)
    {
        SparseMatrix m(field, n, n);
        m.entries_.reserve(n);
        for (uint32_t i = 0; i < n; ++i) m.entries_.push_back({i, i, field.one()});
        return m;
    }

    const K& field() const { return field_; }
    uint32_t nrows() const { return nrows_; }
    uint32_t ncols() const { return ncols_; }
    const std::vector<Entry>& entries() const { return entries_; }
    size_t nnz() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

    SparseMatrix transposed() const
    {
        std::vector<Entry> t;
        t.reserve(entries_.size());
        for (const auto& e : entries_) t.push_back({e.col, e.row, e.val});
        return from_triplets(field_, ncols_, nrows_, std::move(t));
    }

    bool operator==(const SparseMatrix& o) const
    {
        if (field_ != o.field_ || nrows_ != o.nrows_ || ncols_ != o.ncols_) return false;
        if (entries_.size() != o.entries_.size()) return false;
        for (size_t k = 0; k < entries_.size(); ++k) {
            if (entries_[k].row != o.entries_[k].row || entries_[k].col != o.entries_[k].col
                || !field_.eq(entries_[k].val, o.entries_[k].val))
                return false;
        }
        return true;
    }
    bool operator!=(const SparseMatrix& o) const { return !(*this == o); }

private:
    K field_;
    uint32_t nrows_;
    uint32_t ncols_;
    std::vector<Entry> entries_;
};

template <class K>
SparseMatrix<K> multiply(const SparseMatrix<K>& a, const SparseMatrix<K>& b)
{
    if (a.field() != b.field()) throw FieldMismatch("matrix product over different fields");
    if (a.ncols() != b.nrows())
        throw DimensionMismatch("matrix product shape (" + std::to_string(a.nrows()) + "x"
                                + std::to_string(a.ncols()) + ") * (" + std::to_string(b.nrows())
                                + "x" + std::to_string(b.ncols()) + ")");
    const K& field = a.field();
    // Group a's entries by column so each b entry streams through its matches.
    std::vector<std::vector<std::pair<uint32_t, typename K::Scalar>>> a_by_col(a.ncols());
    for (const auto& e : a.entries()) a_by_col[e.col].push_back({e.row, e.val});
    std::vector<typename SparseMatrix<K>::Entry> out;
    for (const auto& eb : b.entries())
        for (const auto& [ra, va] : a_by_col[eb.row])
            out.push_back({ra, eb.col, field.mul(va, eb.val)});
    return SparseMatrix<K>::from_triplets(field, a.nrows(), b.ncols(), std::move(out));
}

// Horizontal concatenation [a | b].
template <class K>
SparseMatrix<K> hconcat(const SparseMatrix<K>& a, const SparseMatrix<K>& b)
{
    if (a.field() != b.field()) throw FieldMismatch("hconcat over different fields");
    if (a.nrows() != b.nrows()) throw DimensionMismatch("hconcat with differing row counts");
    std::vector<typename SparseMatrix<K>::Entry> out(a.entries());
    for (const auto& e : b.entries()) out.push_back({e.row, e.col + a.ncols(), e.val});
    return SparseMatrix<K>::from_triplets(a.field(), a.nrows(), a.ncols() + b.ncols(),
                                          std::move(out));
}

} // namespace hhlab
