#pragma once

#include <vector>

#include "graded.hpp"

namespace hhlab {

// The Koszul resolution of A = K[t_1..t_n] over its enveloping algebra
// A^e = A (x) A.  A^e is represented as the polynomial algebra in 2n
// variables under the renaming t_i (x) 1 -> u_i = variable i and
// 1 (x) t_i -> v_i = variable n + i; the resolution is the exterior algebra
// on the regular sequence tau_i = u_i - v_i.

namespace detail {

// The A^e-action on A: the algebra map A^e -> A sending both u_i and v_i to
// t_i (exponents fold pairwise).
template <class K>
Poly<K> koszul_action(const Poly<K>& f)
{
    if (f.arity() % 2 != 0) throw ArityMismatch("A^e polynomial must have even arity");
    const int n = f.arity() / 2;
    Poly<K> out(f.field(), n);
    for (const auto& [m, c] : f.terms()) {
        std::vector<int> e(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) e[static_cast<size_t>(i)] = m.exp(i) + m.exp(n + i);
        out.add_term(Monomial(e), c);
    }
    return out;
}

// Strictly increasing q-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<int>> subsets(int n, int q)
{
    std::vector<std::vector<int>> out;
    if (q < 0 || q > n) return out;
    std::vector<int> cur(static_cast<size_t>(q));
    auto rec = [&](auto&& self, int pos, int from) -> void {
        if (pos == q) {
            out.push_back(cur);
            return;
        }
        for (int i = from; i < n; ++i) {
            cur[static_cast<size_t>(pos)] = i;
            self(self, pos + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

} // namespace detail

template <class K>
struct KoszulComplexSpec {
    int n;
    K field;
    std::vector<Poly<K>> generators; // tau_i = u_i - v_i in the 2n-variable ring

    static KoszulComplexSpec make(const K& field, int n)
    {
        if (n < 1) throw InvalidSpec("Koszul complex needs n >= 1");
        KoszulComplexSpec spec{n, field, {}};
        for (int i = 0; i < n; ++i) {
            auto tau = Poly<K>::variable(field, 2 * n, i);
            tau -= Poly<K>::variable(field, 2 * n, n + i);
            spec.generators.push_back(std::move(tau));
        }
        return spec;
    }

    // Matrix of d : /\^q -> /\^(q-1) over A^e, d(e_I) = sum_k (-1)^k
    // tau_{I[k]} e_{I - I[k]}, as a dense matrix of polynomials indexed by
    // the lexicographic subset bases.
    std::vector<std::vector<Poly<K>>> differential(int q) const
    {
        auto src = detail::subsets(n, q);
        auto dst = detail::subsets(n, q - 1);
        std::map<std::vector<int>, size_t> dst_index;
        for (size_t k = 0; k < dst.size(); ++k) dst_index.emplace(dst[k], k);
        std::vector<std::vector<Poly<K>>> m(
            dst.size(), std::vector<Poly<K>>(src.size(), Poly<K>::zero(field, 2 * n)));
        for (size_t col = 0; col < src.size(); ++col) {
            for (size_t k = 0; k < src[col].size(); ++k) {
                std::vector<int> rest;
                for (size_t j = 0; j < src[col].size(); ++j)
                    if (j != k) rest.push_back(src[col][j]);
                auto& cell = m[dst_index.at(rest)][col];
                const auto& tau = generators[static_cast<size_t>(src[col][k])];
                if (k % 2 == 0)
                    cell += tau;
                else
                    cell -= tau;
            }
        }
        return m;
    }
};

// rank of Ext^q_{A^e}(A, A) computed through the Koszul resolution: apply
// Hom_{A^e}(-, A) and take cohomology.  Every differential entry is the
// image of +-tau_i under the action map, and tau_i acts as zero on A; this
// vanishing is asserted entrywise (it is why the answer is the free rank
// C(n, q)).  The returned value is the enumerated basis count, not a
// binomial formula.
template <class K>
uint64_t koszul_ext(const K& field, int n, int q)
{
    if (q < 0) throw DegreeTooLow("Ext degree must be >= 0");
    auto spec = KoszulComplexSpec<K>::make(field, n);
    // d . d = 0 over A^e for the windows around q (complex axiom).
    for (int w = q; w <= q + 1; ++w) {
        if (w < 2 || w > n) continue;
        auto a = spec.differential(w - 1);
        auto b = spec.differential(w);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < (b.empty() ? 0 : b[0].size()); ++j) {
                Poly<K> s = Poly<K>::zero(field, 2 * n);
                for (size_t k = 0; k < b.size(); ++k) s += a[i][k] * b[k][j];
                if (!s.is_zero()) throw std::logic_error("Koszul differential does not square to zero");
            }
    }
    // Hom(-, A) differentials: transpose with entries pushed through the
    // action map; assert they vanish identically.
    for (int w : {q, q + 1}) {
        if (w < 1 || w > n) continue;
        for (const auto& row : spec.differential(w))
            for (const auto& cell : row)
                if (!detail::koszul_action(cell).is_zero())
                    throw std::logic_error("tau_i does not act as zero on A");
    }
    return static_cast<uint64_t>(detail::subsets(n, q).size());
}

// Comparison chain map F : K_. -> B_. over A^e on the degree-q pieces:
//   F(e_I) = sum_sigma sgn(sigma) 1 (x) t_{i_sigma(1)} (x) ... (x) t_{i_sigma(q)} (x) 1.
template <class K>
BarElement<K> koszul_to_bar(const K& field, int n, const std::vector<int>& I)
{
    const int q = static_cast<int>(I.size());
    BarElement<K> out(field, n, q);
    std::vector<int> pos(static_cast<size_t>(q));
    for (int k = 0; k < q; ++k) pos[static_cast<size_t>(k)] = k;
    do {
        std::vector<Monomial> w;
        w.reserve(static_cast<size_t>(q) + 2);
        w.push_back(Monomial::one(n));
        for (int k = 0; k < q; ++k)
            w.push_back(Monomial::variable(n, I[static_cast<size_t>(pos[static_cast<size_t>(k)])]));
        w.push_back(Monomial::one(n));
        int sgn = detail::permutation_sign(pos);
        out.add_word(w, sgn > 0 ? field.one() : field.neg(field.one()));
    } while (std::next_permutation(pos.begin(), pos.end()));
    return out;
}

// The scalar relating the Koszul-side identification /\^q T -> Ext^q with
// the bar-side cochains induced by pi_cd: computes the matrix
//   c[J][I] = pi_cd(d_J)(F(e_I))  (an element of A, constant here)
// after asserting that F is a chain map over A^e, and requires c to be a
// scalar multiple of the identity; returns that scalar, which must be q!.
template <class K>
typename K::Scalar hkr_scaling_check(const K& field, int n, int q)
{
    if (q < 0 || q > n) throw InvalidSpec("hkr_scaling_check requires 0 <= q <= n");
    uint64_t p = field.characteristic();
    if (p != 0 && static_cast<uint64_t>(q) >= p)
        throw InvalidSpec("hkr_scaling_check requires q! invertible in the field");

    auto Is = detail::subsets(n, q);
    // Chain-map assertion: del(F(e_I)) = sum_k (-1)^k tau_{I[k]} . F(e_{I - I[k]}),
    // the tau-action being the outer A^e-action on bar words.
    if (q >= 1) {
        for (const auto& I : Is) {
            BarElement<K> rhs(field, n, q - 1);
            for (size_t k = 0; k < I.size(); ++k) {
                std::vector<int> rest;
                for (size_t j = 0; j < I.size(); ++j)
                    if (j != k) rest.push_back(I[j]);
                auto f = koszul_to_bar(field, n, rest);
                const Monomial ti = Monomial::variable(n, I[k]);
                const Monomial u = Monomial::one(n);
                auto term = act_outer(ti, u, f) - act_outer(u, ti, f);
                rhs += (k % 2 == 0) ? term : term.scaled(field.neg(field.one()));
            }
            if (bar_differential(koszul_to_bar(field, n, I)) != rhs)
                throw std::logic_error("Koszul-to-bar comparison map is not a chain map");
        }
    }

    const auto one_poly = Poly<K>::unit(field, n);
    typename K::Scalar diag = field.zero();
    bool have_diag = false;
    for (size_t a = 0; a < Is.size(); ++a) {
        PolyVector<K> v(field, n, q);
        v.add_term(Monomial::one(n), Is[a], field.one());
        for (size_t b = 0; b < Is.size(); ++b) {
            auto val = pi_cd_evaluate(v, to_chain(koszul_to_bar(field, n, Is[b])));
            if (a == b) {
                // must be a constant polynomial, the same for every I
                typename K::Scalar c = field.zero();
                auto it = val.terms().find(Monomial::one(n));
                if (it != val.terms().end()) c = it->second;
                if (val != one_poly.scaled(c))
                    throw FactorNotScalar("diagonal entry is not a constant");
                if (!have_diag) {
                    diag = c;
                    have_diag = true;
                } else if (!field.eq(diag, c)) {
                    throw FactorNotScalar("diagonal entries differ");
                }
            } else if (!val.is_zero()) {
                throw FactorNotScalar("composite has off-diagonal entries");
            }
        }
    }
    (void)have_diag; // 0 <= q <= n means the subset basis is never empty
    return diag;
}

} // namespace hhlab
