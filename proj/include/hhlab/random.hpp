#pragma once

#include <random>

#include "forms.hpp"

namespace hhlab {

// Deterministic generators for randomized property suites.  Everything is
// driven by a caller-owned std::mt19937 so a fixed seed reproduces the exact
// instance stream.

inline int random_int(std::mt19937& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

template <class K>
typename K::Scalar random_nonzero_scalar(const K& field, std::mt19937& rng)
{
    for (;;) {
        auto c = field.from_int(random_int(rng, -4, 4));
        if (!field.is_zero(c)) return c;
    }
}

inline Monomial random_monomial(std::mt19937& rng, int n, int max_deg)
{
    std::vector<int> e(static_cast<size_t>(n), 0);
    int d = random_int(rng, 0, max_deg);
    for (int k = 0; k < d; ++k) ++e[static_cast<size_t>(random_int(rng, 0, n - 1))];
    return Monomial(e);
}

template <class K>
Poly<K> random_poly(const K& field, std::mt19937& rng, int n, int terms = 3, int max_deg = 3)
{
    Poly<K> p(field, n);
    for (int k = 0; k < terms; ++k)
        p.add_term(random_monomial(rng, n, max_deg), field.from_int(random_int(rng, -4, 4)));
    return p;
}

template <class K>
ChainElement<K> random_chain(const K& field, std::mt19937& rng, int n, int q, int words = 3,
                             int max_slot_deg = 2)
{
    ChainElement<K> x(field, n, q);
    for (int w = 0; w < words; ++w) {
        std::vector<Monomial> slots;
        for (int s = 0; s <= q; ++s) slots.push_back(random_monomial(rng, n, max_slot_deg));
        x.add_word(slots, random_nonzero_scalar(field, rng));
    }
    return x;
}

template <class K>
BarElement<K> random_bar(const K& field, std::mt19937& rng, int n, int q, int words = 3,
                         int max_slot_deg = 2)
{
    BarElement<K> x(field, n, q);
    for (int w = 0; w < words; ++w) {
        std::vector<Monomial> slots;
        for (int s = 0; s < q + 2; ++s) slots.push_back(random_monomial(rng, n, max_slot_deg));
        x.add_word(slots, random_nonzero_scalar(field, rng));
    }
    return x;
}

template <class K>
DifferentialForm<K> random_form(const K& field, std::mt19937& rng, int n, int q, int terms = 2,
                                int max_deg = 2)
{
    DifferentialForm<K> w(field, n, q);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> idx;
        for (int k = 0; k < q; ++k) idx.push_back(random_int(rng, 0, n - 1));
        w.add_term(random_monomial(rng, n, max_deg), idx, random_nonzero_scalar(field, rng));
    }
    return w;
}

template <class K>
PolyVector<K> random_polyvector(const K& field, std::mt19937& rng, int n, int q, int terms = 2,
                                int max_deg = 2)
{
    PolyVector<K> v(field, n, q);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> idx;
        for (int k = 0; k < q; ++k) idx.push_back(random_int(rng, 0, n - 1));
        v.add_term(random_monomial(rng, n, max_deg), idx, random_nonzero_scalar(field, rng));
    }
    return v;
}

} // namespace hhlab
