#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <tuple>
#include <vector>

#include "sparse.hpp"

namespace hhlab {

using std::uint64_t;

namespace detail {

// Sparse fraction-free-ish Gaussian elimination over an exact field.
// Pivoting is a Markowitz-style heuristic: pick the lightest column, then the
// shortest row touching it, preferring +-1 entries so rational eliminations
// stay integral as long as possible.  All choices are index-deterministic.
//
// The eliminator owns one connected component of a matrix (components are
// split off by the callers below, which keeps peak memory proportional to a
// single block of a multigraded differential).
template <class K>
class Eliminator {
public:
    using Scalar = typename K::Scalar;
    using Row = std::vector<std::pair<uint32_t, Scalar>>; // sorted by column

    Eliminator(const K& field, uint32_t ncols, std::vector<Row> rows)
        : field_(field), ncols_(ncols), rows_(std::move(rows))
    {
        row_alive_.assign(rows_.size(), 1);
        col_count_.assign(ncols_, 0);
        col_rows_.assign(ncols_, {});
        for (uint32_t r = 0; r < rows_.size(); ++r) {
            for (const auto& [c, v] : rows_[r]) {
                ++col_count_[c];
                col_rows_[c].push_back(r);
            }
        }
    }

    void run()
    {
        for (uint32_t c = 0; c < ncols_; ++c)
            if (col_count_[c] > 0) heap_.push({col_count_[c], c});
        Row scratch;
        while (!heap_.empty()) {
            auto [cnt, j] = heap_.top();
            heap_.pop();
            if (col_count_[j] == 0 || cnt != col_count_[j]) continue; // stale
            // Compact the column's row list to live rows actually containing
            // j.  Rows can occur twice (an entry cancelled and later
            // re-added appends the row again), so dedupe as well.
            auto& cand = col_rows_[j];
            cand.erase(std::remove_if(cand.begin(), cand.end(),
                                      [&](uint32_t r) { return !row_alive_[r] || !contains(r, j); }),
                       cand.end());
            std::sort(cand.begin(), cand.end());
            cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
            if (cand.empty()) { col_count_[j] = 0; continue; }
            uint32_t pivot = cand[0];
            auto key = [&](uint32_t r) {
                return std::make_tuple(rows_[r].size(), !field_.is_unit_entry(value_at(r, j)), r);
            };
            for (uint32_t r : cand)
                if (key(r) < key(pivot)) pivot = r;
            const Scalar pivot_val = value_at(pivot, j);
            row_alive_[pivot] = 0;
            for (const auto& [c, v] : rows_[pivot]) bump(c, -1);
            for (uint32_t r : cand) {
                if (r == pivot) continue;
                eliminate(r, pivot, j, pivot_val, scratch);
            }
            pivots_.push_back({pivot, j});
        }
    }

    uint64_t rank() const { return pivots_.size(); }

    // Kernel basis by back substitution through the frozen pivot rows.  A
    // pivot row never changes after being frozen, and only contains its own
    // pivot column, later pivot columns, and free columns; walking pivots in
    // reverse order therefore resolves every dependency.  Returns one sorted
    // sparse column per free column, keyed by that free column.
    std::vector<std::pair<uint32_t, Row>> kernel_columns() const
    {
        std::vector<char> is_pivot_col(ncols_, 0);
        for (const auto& [r, c] : pivots_) is_pivot_col[c] = 1;
        std::vector<Scalar> x(ncols_, field_.zero());
        std::vector<uint32_t> touched;
        std::vector<std::pair<uint32_t, Row>> out;
        for (uint32_t f = 0; f < ncols_; ++f) {
            if (is_pivot_col[f]) continue;
            x[f] = field_.one();
            touched.push_back(f);
            for (size_t t = pivots_.size(); t-- > 0;) {
                const auto& [r, j] = pivots_[t];
                Scalar s = field_.zero();
                Scalar pv = field_.zero();
                for (const auto& [c, v] : rows_[r]) {
                    if (c == j)
                        pv = v;
                    else if (!field_.is_zero(x[c]))
                        s = field_.add(s, field_.mul(v, x[c]));
                }
                if (!field_.is_zero(s)) {
                    x[j] = field_.neg(field_.div(s, pv));
                    touched.push_back(j);
                }
            }
            Row col;
            std::sort(touched.begin(), touched.end());
            for (uint32_t c : touched)
                if (!field_.is_zero(x[c])) col.push_back({c, x[c]});
            out.push_back({f, std::move(col)});
            for (uint32_t c : touched) x[c] = field_.zero();
            touched.clear();
        }
        return out;
    }

private:
    bool contains(uint32_t r, uint32_t c) const
    {
        const auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, uint32_t col) { return e.first < col; });
        return it != row.end() && it->first == c;
    }

    const Scalar& value_at(uint32_t r, uint32_t c) const
    {
        const auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, uint32_t col) { return e.first < col; });
        return it->second;
    }

    void bump(uint32_t c, int delta)
    {
        col_count_[c] = static_cast<uint32_t>(static_cast<int64_t>(col_count_[c]) + delta);
        if (col_count_[c] > 0) heap_.push({col_count_[c], c});
    }

    // rows_[r] -= (a_rj / pivot_val) * rows_[pivot]; the entry at column j
    // cancels exactly.
    void eliminate(uint32_t r, uint32_t pivot, uint32_t j, const Scalar& pivot_val, Row& scratch)
    {
        const Scalar factor = field_.div(value_at(r, j), pivot_val);
        scratch.clear();
        const Row& a = rows_[r];
        const Row& b = rows_[pivot];
        size_t ia = 0, ib = 0;
        while (ia < a.size() || ib < b.size()) {
            if (ib == b.size() || (ia < a.size() && a[ia].first < b[ib].first)) {
                scratch.push_back(a[ia]);
                ++ia;
            } else if (ia == a.size() || b[ib].first < a[ia].first) {
                Scalar v = field_.neg(field_.mul(factor, b[ib].second));
                if (!field_.is_zero(v)) {
                    scratch.push_back({b[ib].first, std::move(v)});
                    bump(b[ib].first, +1);
                    col_rows_[b[ib].first].push_back(r);
                }
                ++ib;
            } else {
                Scalar v = field_.sub(a[ia].second, field_.mul(factor, b[ib].second));
                if (field_.is_zero(v))
                    bump(a[ia].first, -1);
                else
                    scratch.push_back({a[ia].first, std::move(v)});
                ++ia;
                ++ib;
            }
        }
        rows_[r].swap(scratch);
    }

    using HeapItem = std::pair<uint32_t, uint32_t>; // (count, col)
    const K field_;
    uint32_t ncols_;
    std::vector<Row> rows_;
    std::vector<char> row_alive_;
    std::vector<uint32_t> col_count_;
    std::vector<std::vector<uint32_t>> col_rows_;
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap_;
    std::vector<std::pair<uint32_t, uint32_t>> pivots_; // chronological (row, col)
};

// Splits the columns of m into connected components (two columns are linked
// when some row contains both).  comp_of_col is -1 for columns with no
// entries; component ids are dense and ordered by smallest member column.
inline std::vector<int> column_components(const std::vector<uint32_t>& entry_rows,
                                          const std::vector<uint32_t>& entry_cols, uint32_t nrows,
                                          uint32_t ncols, int& comp_count)
{
    std::vector<uint32_t> parent(ncols);
    for (uint32_t c = 0; c < ncols; ++c) parent[c] = c;
    std::vector<uint32_t> stack;
    auto find = [&](uint32_t c) {
        while (parent[c] != c) {
            parent[c] = parent[parent[c]];
            c = parent[c];
        }
        return c;
    };
    std::vector<uint32_t> row_first(nrows, ncols); // first column seen per row
    for (size_t k = 0; k < entry_rows.size(); ++k) {
        uint32_t r = entry_rows[k], c = entry_cols[k];
        if (row_first[r] == ncols)
            row_first[r] = c;
        else
            parent[find(row_first[r])] = find(c);
    }
    std::vector<char> used(ncols, 0);
    for (size_t k = 0; k < entry_cols.size(); ++k) used[entry_cols[k]] = 1;
    std::vector<int> comp(ncols, -1);
    comp_count = 0;
    for (uint32_t c = 0; c < ncols; ++c) {
        if (!used[c]) continue;
        uint32_t root = find(c);
        if (comp[root] == -1) comp[root] = comp_count++;
        comp[c] = comp[root];
    }
    return comp;
}

template <class K>
struct ComponentView {
    std::vector<uint32_t> cols;                          // global column ids, ascending
    std::vector<typename Eliminator<K>::Row> rows;       // local-column rows
};

// Builds per-component row lists with local column indices.
template <class K>
std::vector<ComponentView<K>> split_components(const SparseMatrix<K>& m, std::vector<int>* comp_out)
{
    std::vector<uint32_t> er, ec;
    er.reserve(m.nnz());
    ec.reserve(m.nnz());
    for (const auto& e : m.entries()) {
        er.push_back(e.row);
        ec.push_back(e.col);
    }
    int comp_count = 0;
    std::vector<int> comp = column_components(er, ec, m.nrows(), m.ncols(), comp_count);
    std::vector<ComponentView<K>> views(comp_count);
    std::vector<uint32_t> local_col(m.ncols(), 0);
    for (uint32_t c = 0; c < m.ncols(); ++c) {
        if (comp[c] < 0) continue;
        auto& v = views[comp[c]];
        local_col[c] = static_cast<uint32_t>(v.cols.size());
        v.cols.push_back(c);
    }
    // Entries are sorted by (row, col); a row's entries all live in one
    // component, so stream them into local rows.
    size_t k = 0;
    const auto& es = m.entries();
    while (k < es.size()) {
        size_t k2 = k;
        while (k2 < es.size() && es[k2].row == es[k].row) ++k2;
        int cid = comp[es[k].col];
        auto& v = views[cid];
        v.rows.emplace_back();
        auto& row = v.rows.back();
        row.reserve(k2 - k);
        for (size_t t = k; t < k2; ++t) {
            if (comp[es[t].col] != cid)
                throw std::logic_error("row spans multiple column components");
            row.push_back({local_col[es[t].col], es[t].val});
        }
        k = k2;
    }
    if (comp_out) *comp_out = std::move(comp);
    return views;
}

} // namespace detail

// Rank of m by exact sparse elimination, one connected component at a time.
template <class K>
uint64_t rank(const SparseMatrix<K>& m)
{
    uint64_t r = 0;
    for (auto& view : detail::split_components(m, nullptr)) {
        detail::Eliminator<K> e(m.field(), static_cast<uint32_t>(view.cols.size()),
                                std::move(view.rows));
        e.run();
        r += e.rank();
    }
    return r;
}

// A basis of ker(m) as the columns of the returned matrix (shape ncols(m) x
// nullity).  Basis columns are keyed by their free column and sorted by it,
// so the result is deterministic.
template <class K>
SparseMatrix<K> nullspace(const SparseMatrix<K>& m)
{
    std::vector<int> comp;
    auto views = detail::split_components(m, &comp);
    using Entry = typename SparseMatrix<K>::Entry;
    // (free global column, kernel column entries in global coordinates)
    std::vector<std::pair<uint32_t, std::vector<std::pair<uint32_t, typename K::Scalar>>>> cols;
    for (uint32_t c = 0; c < m.ncols(); ++c)
        if (comp[c] < 0) cols.push_back({c, {{c, m.field().one()}}});
    for (auto& view : views) {
        detail::Eliminator<K> e(m.field(), static_cast<uint32_t>(view.cols.size()),
                                std::move(view.rows));
        e.run();
        for (auto& [f, col] : e.kernel_columns()) {
            std::vector<std::pair<uint32_t, typename K::Scalar>> g;
            g.reserve(col.size());
            for (auto& [lc, v] : col) g.push_back({view.cols[lc], std::move(v)});
            cols.push_back({view.cols[f], std::move(g)});
        }
    }
    std::sort(cols.begin(), cols.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Entry> triplets;
    for (uint32_t j = 0; j < cols.size(); ++j)
        for (auto& [r, v] : cols[j].second) triplets.push_back({r, j, std::move(v)});
    return SparseMatrix<K>::from_triplets(m.field(), m.ncols(), static_cast<uint32_t>(cols.size()),
                                          std::move(triplets));
}

// dim ker(d_out) - rank(d_in) for one window C_in -> C -> C_out of a complex.
// d_in maps into the middle term (its rows index C), d_out maps out of it
// (its columns index C).  Checks the window shape and d_out . d_in = 0.
template <class K>
uint64_t homology_rank(const SparseMatrix<K>& d_in, const SparseMatrix<K>& d_out)
{
    if (d_in.field() != d_out.field()) throw FieldMismatch("homology window over different fields");
    if (d_in.nrows() != d_out.ncols())
        throw DimensionMismatch("homology window: rows(d_in) = " + std::to_string(d_in.nrows())
                                + " but cols(d_out) = " + std::to_string(d_out.ncols()));
    if (!multiply(d_out, d_in).is_zero())
        throw CompositionNotZero("d_out . d_in != 0");
    uint64_t kernel = d_out.ncols() - rank(d_out);
    uint64_t image = rank(d_in);
    if (image > kernel) throw std::logic_error("image exceeds kernel despite zero composition");
    return kernel - image;
}

// Rank of the map induced on homology by a degreewise map f between two
// windows (src_in, src_out) and (tgt_in, tgt_out).  Checks that f is a chain
// map on the window: it must send cycles to cycles and boundaries to
// boundaries.  The induced image is (f(ker src_out) + im tgt_in)/im tgt_in.
template <class K>
uint64_t induced_rank_on_homology(const SparseMatrix<K>& f, const SparseMatrix<K>& src_in,
                                  const SparseMatrix<K>& src_out, const SparseMatrix<K>& tgt_in,
                                  const SparseMatrix<K>& tgt_out)
{
    if (f.ncols() != src_out.ncols() || f.nrows() != tgt_out.ncols())
        throw DimensionMismatch("induced map shape does not match the two windows");
    (void)homology_rank(src_in, src_out); // validates both windows
    (void)homology_rank(tgt_in, tgt_out);
    SparseMatrix<K> cycles = nullspace(src_out);
    if (!multiply(tgt_out, multiply(f, cycles)).is_zero())
        throw NotAChainMap("f does not send cycles to cycles");
    uint64_t tgt_image_rank = rank(tgt_in);
    if (rank(hconcat(tgt_in, multiply(f, src_in))) != tgt_image_rank)
        throw NotAChainMap("f does not send boundaries into boundaries");
    return rank(hconcat(multiply(f, cycles), tgt_in)) - tgt_image_rank;
}

// Dense rank for the small matrices that arise per multidegree in the Cech
// module; rows are dense coefficient vectors.
template <class K>
uint64_t dense_rank(const K& field, std::vector<std::vector<typename K::Scalar>> rows)
{
    uint64_t r = 0;
    size_t ncols = rows.empty() ? 0 : rows[0].size();
    size_t row_start = 0;
    for (size_t c = 0; c < ncols && row_start < rows.size(); ++c) {
        size_t p = row_start;
        while (p < rows.size() && field.is_zero(rows[p][c])) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[row_start], rows[p]);
        const auto& prow = rows[row_start];
        for (size_t i = row_start + 1; i < rows.size(); ++i) {
            if (field.is_zero(rows[i][c])) continue;
            auto factor = field.div(rows[i][c], prow[c]);
            for (size_t j = c; j < ncols; ++j)
                rows[i][j] = field.sub(rows[i][j], field.mul(factor, prow[j]));
        }
        ++row_start;
        ++r;
    }
    return r;
}

} // namespace hhlab
