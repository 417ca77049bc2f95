#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "parallel.hpp"

namespace hhlab {

// Sheaf cohomology on P^n by Cech complexes over the standard affine cover,
// refined by the Z^(n+1) multidegree of the torus action.  Twisted forms
// Omega^p(k) are resolved by the wedge powers of E = O(-1)^(n+1) coming from
// the Euler sequence,
//     0 -> Omega^p(k) -> /\^p E(k) -> /\^(p-1) E(k) -> ... -> O(k) -> 0,
// with the maps contracting against the Euler vector field, and the
// cohomology is read off the total complex of the Cech double complex.

struct SheafSpec {
    enum class Kind { LineBundle, OmegaTwist, WedgeTangent };

    Kind kind;
    int n;     // ambient P^n
    int d = 0; // line bundle degree
    int p = 0; // form degree (OmegaTwist) or tangent wedge power (WedgeTangent)
    int k = 0; // twist

    static SheafSpec line_bundle(int n, int d)
    {
        if (n < 1) throw InvalidSpec("P^n needs n >= 1");
        SheafSpec s{Kind::LineBundle, n};
        s.d = d;
        return s;
    }

    static SheafSpec omega_twist(int n, int p, int k)
    {
        if (n < 1) throw InvalidSpec("P^n needs n >= 1");
        if (p < 0 || p > n) throw InvalidSpec("Omega^p(k) on P^n needs 0 <= p <= n");
        SheafSpec s{Kind::OmegaTwist, n};
        s.p = p;
        s.k = k;
        return s;
    }

    static SheafSpec wedge_tangent(int n, int q)
    {
        if (n < 1) throw InvalidSpec("P^n needs n >= 1");
        if (q < 0 || q > n) throw InvalidSpec("/\\^q T on P^n needs 0 <= q <= n");
        SheafSpec s{Kind::WedgeTangent, n};
        s.p = q;
        return s;
    }

    // Every spec reduces to Omega^p(k): O(d) = Omega^0(d), and
    // /\^q T = Omega^(n-q)(n+1) by pairing against the canonical bundle.
    SheafSpec normalized() const
    {
        switch (kind) {
        case Kind::LineBundle: return omega_twist(n, 0, d);
        case Kind::OmegaTwist: return *this;
        case Kind::WedgeTangent: return omega_twist(n, n - p, n + 1);
        }
        throw InvalidSpec("unknown sheaf kind");
    }

    std::string to_string() const
    {
        switch (kind) {
        case Kind::LineBundle: return "O(" + std::to_string(d) + ")";
        case Kind::OmegaTwist:
            return "Omega^" + std::to_string(p) + "(" + std::to_string(k) + ")";
        case Kind::WedgeTangent: return "Wedge^" + std::to_string(p) + "T";
        }
        return "?";
    }
};

struct CechDetails {
    uint64_t multidegrees = 0;       // pieces inside the enumeration bound
    uint64_t shell_checked = 0;      // pieces on the extra shell, all verified exact
    int min_component_bound = 0;     // b_i >= this bound for enumerated b
};

namespace detail {

// One multidegree piece of the total complex for Omega^p(k) on P^n.
//
// A basis symbol is a pair of subsets (T, S) of {0..n}: T the chart set of a
// Cech cochain (|T| = r + 1) and S the wedge factor of /\^|S| E.  The symbol
// e_S carries multidegree +chi_S, so the pair (T, S) contributes to the piece
// of total multidegree b exactly when the Laurent monomial x^(b - chi_S) is a
// section on U_T, i.e. (b - chi_S)_i >= 0 for every i outside T.  Total
// cohomological degree is m = r + s where s = p - |S| is the resolution step.
//
// The differential is D = delta + (-1)^r iota with delta the Cech insertion
// and iota the Euler contraction e_S -> sum_j (-1)^(pos j in S) x_j e_(S-j);
// both preserve b, and the (-1)^r twist makes the two anticommute.
template <class K>
struct MultidegreePiece {
    const K& field;
    int n, p;
    std::vector<int> b;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> basis; // per degree m: (T, S)
    std::vector<std::map<std::pair<uint32_t, uint32_t>, size_t>> index;

    MultidegreePiece(const K& field_, int n_, int p_, std::vector<int> b_)
        : field(field_), n(n_), p(p_), b(std::move(b_))
    {
        const int verts = n + 1;
        basis.resize(static_cast<size_t>(n + p) + 1);
        index.resize(basis.size());
        for (uint32_t S = 0; S < (1u << verts); ++S) {
            int sz = __builtin_popcount(S);
            if (sz > p) continue;
            int s = p - sz;
            for (uint32_t T = 1; T < (1u << verts); ++T) {
                if (!admissible(T, S)) continue;
                int r = __builtin_popcount(T) - 1;
                size_t m = static_cast<size_t>(r + s);
                index[m].emplace(std::make_pair(T, S), basis[m].size());
                basis[m].push_back({T, S});
            }
        }
    }

    bool admissible(uint32_t T, uint32_t S) const
    {
        for (int i = 0; i <= n; ++i)
            if (!(T >> i & 1u) &&
                b[static_cast<size_t>(i)] < static_cast<int>(S >> i & 1u))
                return false;
        return true;
    }

    size_t dim(size_t m) const { return m < basis.size() ? basis[m].size() : 0; }

    // Dense matrix of D : T^m -> T^(m+1), rows indexed by the target basis.
    std::vector<std::vector<typename K::Scalar>> differential(size_t m) const
    {
        std::vector<std::vector<typename K::Scalar>> rows(
            dim(m + 1), std::vector<typename K::Scalar>(dim(m), field.zero()));
        if (m + 1 >= basis.size()) return rows;
        const auto& tgt = index[m + 1];
        for (size_t col = 0; col < basis[m].size(); ++col) {
            auto [T, S] = basis[m][col];
            int r = __builtin_popcount(T) - 1;
            for (int j = 0; j <= n; ++j) { // Cech insertion
                if (T >> j & 1u) continue;
                auto it = tgt.find({T | (1u << j), S});
                if (it == tgt.end()) throw std::logic_error("Cech image symbol missing");
                int sgn = __builtin_popcount(T & ((1u << j) - 1u));
                add_sign(rows[it->second][col], sgn);
            }
            for (int j = 0; j <= n; ++j) { // Euler contraction, twisted by (-1)^r
                if (!(S >> j & 1u)) continue;
                auto it = tgt.find({T, S & ~(1u << j)});
                if (it == tgt.end()) throw std::logic_error("contraction image symbol missing");
                int sgn = __builtin_popcount(S & ((1u << j) - 1u)) + r;
                add_sign(rows[it->second][col], sgn);
            }
        }
        return rows;
    }

    void add_sign(typename K::Scalar& cell, int sgn) const
    {
        cell = (sgn % 2 == 0) ? field.add(cell, field.one())
                              : field.sub(cell, field.one());
    }

    // Cohomology dimensions h^0..h^(n+p) of the piece; asserts D.D = 0.
    std::vector<uint64_t> cohomology() const
    {
        std::vector<std::vector<std::vector<typename K::Scalar>>> mats;
        for (size_t m = 0; m < basis.size(); ++m) mats.push_back(differential(m));
        for (size_t m = 0; m + 1 < mats.size(); ++m) {
            // (D_(m+1) . D_m) = 0
            for (size_t i = 0; i < dim(m + 2); ++i)
                for (size_t c = 0; c < dim(m); ++c) {
                    auto acc = field.zero();
                    for (size_t j = 0; j < dim(m + 1); ++j)
                        acc = field.add(acc, field.mul(mats[m + 1][i][j], mats[m][j][c]));
                    if (!field.is_zero(acc))
                        throw std::logic_error("total differential does not square to zero");
                }
        }
        std::vector<uint64_t> h(basis.size(), 0);
        uint64_t prev_rank = 0;
        for (size_t m = 0; m < basis.size(); ++m) {
            uint64_t r = dense_rank(field, mats[m]);
            h[m] = dim(m) - r - prev_rank;
            prev_rank = r;
        }
        return h;
    }
};

// Walks every multidegree b with |b| = k and min_i b_i >= bound, calling
// visit(b).
inline void for_each_multidegree(int n, int k, int bound,
                                 const std::function<void(const std::vector<int>&)>& visit)
{
    const int verts = n + 1;
    int total = k - verts * bound;
    if (total < 0) return;
    std::vector<int> b(static_cast<size_t>(verts), 0);
    auto rec = [&](auto&& self, int i, int rem) -> void {
        if (i == verts - 1) {
            b[static_cast<size_t>(i)] = rem + bound;
            visit(b);
            return;
        }
        for (int c = 0; c <= rem; ++c) {
            b[static_cast<size_t>(i)] = c + bound;
            self(self, i + 1, rem - c);
        }
    };
    rec(rec, 0, total);
}

} // namespace detail

// h^0..h^n of the normalized sheaf, summing the per-multidegree pieces.
// Multidegrees are enumerated down to min-component -( |k| + n + 2 ); every
// piece on the next shell out is computed too and asserted exact, so a bound
// that clipped actual cohomology would be caught at run time.  Cohomology
// above degree n is likewise asserted to vanish.
template <class K>
std::vector<uint64_t> sheaf_cohomology(const K& field, const SheafSpec& spec,
                                       CechDetails* details = nullptr, int workers = 1)
{
    SheafSpec w = spec.normalized();
    const int n = w.n, p = w.p, k = w.k;
    const int bound = -(std::abs(k) + n + 2);
    CechDetails det;
    det.min_component_bound = bound;
    std::vector<std::vector<int>> inside, shell;
    detail::for_each_multidegree(n, k, bound,
                                 [&](const std::vector<int>& b) { inside.push_back(b); });
    detail::for_each_multidegree(n, k, bound - 1, [&](const std::vector<int>& b) {
        if (*std::min_element(b.begin(), b.end()) == bound - 1) shell.push_back(b);
    });
    std::vector<std::vector<uint64_t>> piece_h(inside.size());
    parallel_for_index(workers, inside.size(), [&](size_t i) {
        piece_h[i] = detail::MultidegreePiece<K>(field, n, p, inside[i]).cohomology();
    });
    parallel_for_index(workers, shell.size(), [&](size_t i) {
        for (uint64_t v : detail::MultidegreePiece<K>(field, n, p, shell[i]).cohomology())
            if (v != 0) throw std::logic_error("nonzero cohomology on the enumeration shell");
    });
    std::vector<uint64_t> h(static_cast<size_t>(n) + 1, 0);
    for (const auto& hb : piece_h)
        for (size_t m = 0; m < hb.size(); ++m) {
            if (hb[m] == 0) continue;
            if (m > static_cast<size_t>(n))
                throw std::logic_error("cohomology above the dimension of P^n");
            h[m] += hb[m];
        }
    det.multidegrees = inside.size();
    det.shell_checked = shell.size();
    if (det.shell_checked == 0)
        throw std::logic_error("enumeration shell was empty; bound not certified");
    if (details) *details = det;
    return h;
}

template <class K>
std::vector<uint64_t> line_bundle_cohomology(const K& field, int n, int d)
{
    return sheaf_cohomology(field, SheafSpec::line_bundle(n, d));
}

} // namespace hhlab
