#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cech.hpp"
#include "graded.hpp"
#include "koszul.hpp"
#include "parallel.hpp"

namespace hhlab {

// Global Hochschild cohomology of affine space and of P^n, assembled from
// the wedge powers of the tangent sheaf, plus the bounded scan that decides
// whether the comparison map pi is a quasi-isomorphism in a given
// characteristic.

enum class Space { Affine, Projective };

struct DecompositionReport {
    Space space;
    int n;
    FieldSpec field;
    bool validity; // n!-invertibility hypothesis of the decomposition
    // hh[i] = dim HH^i; left empty when validity fails (no formula applies).
    std::vector<uint64_t> hh;
    // summands[i][q] = dim H^(i-q)(X, /\^q T); always filled.
    std::vector<std::vector<uint64_t>> summands;
};

// HH^*(A^n): free of rank C(n, i) in degree i, any characteristic.  The
// rank is cross-checked against the Koszul-resolution Ext computation; a
// disagreement would mean one of the two models is broken.
template <class K>
DecompositionReport hh_affine(const K& field, int n)
{
    if (n < 1) throw InvalidSpec("affine space needs n >= 1");
    DecompositionReport rep{Space::Affine, n, field.spec(), true, {}, {}};
    for (int i = 0; i <= n + 1; ++i) {
        uint64_t ext = koszul_ext(field, n, i);
        uint64_t wedge = static_cast<uint64_t>(detail::subsets(n, i).size());
        if (ext != wedge)
            throw std::logic_error("Koszul Ext disagrees with the derivation-wedge rank");
        rep.hh.push_back(ext);
        std::vector<uint64_t> row(static_cast<size_t>(n) + 1, 0);
        if (i <= n) row[static_cast<size_t>(i)] = ext; // all from H^0(/\^i Der)
        rep.summands.push_back(std::move(row));
    }
    return rep;
}

// HH^*(P^n) via HH^i = sum_q H^(i-q)(P^n, /\^q T), which needs n! invertible.
// In small positive characteristic the summand table is still reported but
// no hh values are fabricated.
template <class K>
DecompositionReport hh_projective(const K& field, int n, int workers = 1)
{
    if (n < 1) throw InvalidSpec("P^n needs n >= 1");
    uint64_t p = field.characteristic();
    bool valid = p == 0 || p > static_cast<uint64_t>(n);
    DecompositionReport rep{Space::Projective, n, field.spec(), valid, {}, {}};
    std::vector<std::vector<uint64_t>> wedge_h(static_cast<size_t>(n) + 1);
    parallel_for_index(workers, wedge_h.size(), [&](size_t q) {
        wedge_h[q] = sheaf_cohomology(field, SheafSpec::wedge_tangent(n, static_cast<int>(q)));
    });
    for (int i = 0; i <= 2 * n; ++i) {
        std::vector<uint64_t> row(static_cast<size_t>(n) + 1, 0);
        uint64_t total = 0;
        for (int q = 0; q <= n; ++q) {
            int m = i - q;
            if (m < 0 || m > n) continue;
            row[static_cast<size_t>(q)] = wedge_h[static_cast<size_t>(q)][static_cast<size_t>(m)];
            total += row[static_cast<size_t>(q)];
        }
        rep.summands.push_back(std::move(row));
        if (valid) rep.hh.push_back(total);
    }
    return rep;
}

struct CharacteristicWitness {
    int n;
    uint64_t p; // 0 means characteristic zero
    int q_max, d_max;
    bool holds; // pi induced full rank on every scanned piece
    struct Deficiency {
        int q, d;
        uint64_t homology_rank;
        uint64_t induced_rank;
    };
    std::optional<Deficiency> witness; // present iff !holds
};

// Scans the graded pieces (q <= q_max, d <= d_max) and checks that the map
// H_q(C)_d -> (Omega^q)_d induced by pi has full rank; the first deficient
// piece (q ascending, then d) is reported as the witness.  The scan is a
// bounded probe of a statement about all degrees, which is why the bounds
// are part of the result.
inline CharacteristicWitness characteristic_criterion(int n, uint64_t p_or_zero, int q_max,
                                                      int d_max, int workers = 1)
{
    if (n < 1) throw InvalidSpec("characteristic_criterion needs n >= 1");
    if (q_max < n || d_max < n)
        throw InvalidSpec("characteristic_criterion bounds must be >= n");
    FieldSpec fs = p_or_zero == 0 ? FieldSpec::rationals() : FieldSpec::prime(p_or_zero);
    CharacteristicWitness out{n, p_or_zero, q_max, d_max, true, std::nullopt};
    with_field(fs, [&](auto field) {
        RankCache cache;
        if (workers <= 1) {
            // early exit on the first deficiency, q ascending then d
            for (int q = 0; q <= q_max && out.holds; ++q)
                for (int d = 0; d <= d_max; ++d) {
                    uint64_t h = chain_homology_rank(field, n, q, d, &cache);
                    uint64_t r = pi_induced_rank(field, n, q, d);
                    if (r < h) {
                        out.holds = false;
                        out.witness = CharacteristicWitness::Deficiency{q, d, h, r};
                        break;
                    }
                }
            return;
        }
        // fan out over the whole grid, then report the first deficiency in
        // the same scan order the serial path uses
        size_t cols = static_cast<size_t>(d_max) + 1;
        std::vector<std::pair<uint64_t, uint64_t>> grid((static_cast<size_t>(q_max) + 1) * cols);
        parallel_for_index(workers, grid.size(), [&](size_t i) {
            int q = static_cast<int>(i / cols), d = static_cast<int>(i % cols);
            grid[i] = {chain_homology_rank(field, n, q, d, &cache),
                       pi_induced_rank(field, n, q, d)};
        });
        for (size_t i = 0; i < grid.size() && out.holds; ++i)
            if (grid[i].second < grid[i].first) {
                out.holds = false;
                out.witness = CharacteristicWitness::Deficiency{
                    static_cast<int>(i / cols), static_cast<int>(i % cols), grid[i].first,
                    grid[i].second};
            }
    });
    return out;
}

} // namespace hhlab
