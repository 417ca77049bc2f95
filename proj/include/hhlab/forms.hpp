#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tensor.hpp"

namespace hhlab {

namespace detail {

// Sorts an index tuple into strictly increasing order, returning the
// permutation sign, or 0 if an index repeats (the term dies).
inline int sort_indices(std::vector<int>& idx)
{
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i) {
        size_t j = i;
        while (j > 0 && idx[j - 1] > idx[j]) {
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
            --j;
        }
        if (j > 0 && idx[j - 1] == idx[j]) return 0;
    }
    return sign;
}

inline int permutation_sign(const std::vector<int>& perm)
{
    int sign = 1;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

struct ExteriorKeyLess {
    bool operator()(const std::pair<Monomial, std::vector<int>>& a,
                    const std::pair<Monomial, std::vector<int>>& b) const
    {
        if (a.second != b.second) return a.second < b.second;
        return a.first.grlex_less(b.first);
    }
};

// Canonical sum of (monomial, strictly increasing index tuple) terms: the
// common representation of differential forms m dt_{i1} ^ ... ^ dt_{iq} and
// polyvector fields m d_{i1} ^ ... ^ d_{iq}.
template <class K>
class ExteriorSum {
public:
    using Scalar = typename K::Scalar;
    using Key = std::pair<Monomial, std::vector<int>>;
    using TermMap = std::map<Key, Scalar, ExteriorKeyLess>;

    ExteriorSum(const K& field, int arity, int degree)
        : field_(field), arity_(arity), degree_(degree)
    {
        if (degree < 0) throw DegreeTooLow("exterior degree must be >= 0");
    }

    const K& field() const { return field_; }
    int arity() const { return arity_; }
    int degree() const { return degree_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Accepts an arbitrary index tuple; sorts it, applying the sign, and
    // drops terms with repeated indices.
    void add_term(const Monomial& m, std::vector<int> idx, const Scalar& c)
    {
        if (static_cast<int>(idx.size()) != degree_)
            throw DegreeMismatch("index tuple length != exterior degree");
        if (m.arity() != arity_) throw ArityMismatch("term arity differs");
        for (int i : idx)
            if (i < 0 || i >= arity_) throw IndexOutOfRange("form index out of range");
        int sign = sort_indices(idx);
        if (sign == 0 || field_.is_zero(c)) return;
        Scalar v = sign > 0 ? c : field_.neg(c);
        Key key{m, std::move(idx)};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), std::move(v));
        } else {
            it->second = field_.add(it->second, v);
            if (field_.is_zero(it->second)) terms_.erase(it);
        }
    }

    void add(const ExteriorSum& o, bool negate)
    {
        check_compatible(o);
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, negate ? field_.neg(c) : c);
    }

    ExteriorSum scaled(const Scalar& c) const
    {
        ExteriorSum r(field_, arity_, degree_);
        if (!field_.is_zero(c))
            for (const auto& [k, v] : terms_) r.terms_.emplace(k, field_.mul(v, c));
        return r;
    }

    bool equals(const ExteriorSum& o) const
    {
        if (arity_ != o.arity_ || degree_ != o.degree_ || field_ != o.field_) return false;
        if (terms_.size() != o.terms_.size()) return false;
        auto it = o.terms_.begin();
        for (const auto& [k, c] : terms_) {
            if (k != it->first || !field_.eq(c, it->second)) return false;
            ++it;
        }
        return true;
    }

    bool homogeneous_of_degree(int d) const
    {
        for (const auto& [k, c] : terms_)
            if (k.first.degree() + degree_ != d) return false;
        return true;
    }

    std::string to_string(const std::string& symbol) const
    {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [k, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += field_.to_string(c);
            if (!k.first.is_one()) s += "*" + k.first.to_string();
            for (int i : k.second) s += "*" + symbol + std::to_string(i + 1);
        }
        return s;
    }

private:
    void check_compatible(const ExteriorSum& o) const
    {
        if (arity_ != o.arity_) throw ArityMismatch("exterior arities differ");
        if (degree_ != o.degree_) throw DegreeMismatch("exterior degrees differ");
        if (field_ != o.field_) throw FieldMismatch("exterior fields differ");
    }

    K field_;
    int arity_;
    int degree_;
    TermMap terms_;
};

} // namespace detail

// A Kaehler differential form of degree q over A = K[t_1..t_n]: a sum of
// terms m dt_{i1} ^ ... ^ dt_{iq} with strictly increasing indices.
template <class K>
class DifferentialForm {
public:
    using Scalar = typename K::Scalar;

    DifferentialForm(const K& field, int n, int q) : sum_(field, n, q) {}

    const K& field() const { return sum_.field(); }
    int arity() const { return sum_.arity(); }
    int degree() const { return sum_.degree(); }
    const typename detail::ExteriorSum<K>::TermMap& terms() const { return sum_.terms(); }
    bool is_zero() const { return sum_.is_zero(); }
    bool homogeneous_of_degree(int d) const { return sum_.homogeneous_of_degree(d); }

    void add_term(const Monomial& m, std::vector<int> idx, const Scalar& c)
    {
        sum_.add_term(m, std::move(idx), c);
    }

    DifferentialForm& operator+=(const DifferentialForm& o)
    {
        sum_.add(o.sum_, false);
        return *this;
    }
    DifferentialForm& operator-=(const DifferentialForm& o)
    {
        sum_.add(o.sum_, true);
        return *this;
    }
    friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b)
    {
        return a += b;
    }
    friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b)
    {
        return a -= b;
    }
    DifferentialForm scaled(const Scalar& c) const
    {
        DifferentialForm r(field(), arity(), degree());
        r.sum_ = sum_.scaled(c);
        return r;
    }
    bool operator==(const DifferentialForm& o) const { return sum_.equals(o.sum_); }
    bool operator!=(const DifferentialForm& o) const { return !(*this == o); }

    std::string to_string() const { return sum_.to_string("dt"); }

private:
    detail::ExteriorSum<K> sum_;
};

// A polyvector field of degree q: a sum of terms m d_{i1} ^ ... ^ d_{iq}
// (d_i = d/dt_i) with strictly increasing indices.
template <class K>
class PolyVector {
public:
    using Scalar = typename K::Scalar;

    PolyVector(const K& field, int n, int q) : sum_(field, n, q) {}

    const K& field() const { return sum_.field(); }
    int arity() const { return sum_.arity(); }
    int degree() const { return sum_.degree(); }
    const typename detail::ExteriorSum<K>::TermMap& terms() const { return sum_.terms(); }
    bool is_zero() const { return sum_.is_zero(); }

    void add_term(const Monomial& m, std::vector<int> idx, const Scalar& c)
    {
        sum_.add_term(m, std::move(idx), c);
    }

    PolyVector& operator+=(const PolyVector& o)
    {
        sum_.add(o.sum_, false);
        return *this;
    }
    PolyVector& operator-=(const PolyVector& o)
    {
        sum_.add(o.sum_, true);
        return *this;
    }
    friend PolyVector operator+(PolyVector a, const PolyVector& b) { return a += b; }
    friend PolyVector operator-(PolyVector a, const PolyVector& b) { return a -= b; }
    PolyVector scaled(const Scalar& c) const
    {
        PolyVector r(field(), arity(), degree());
        r.sum_ = sum_.scaled(c);
        return r;
    }
    bool operator==(const PolyVector& o) const { return sum_.equals(o.sum_); }
    bool operator!=(const PolyVector& o) const { return !(*this == o); }

    std::string to_string() const { return sum_.to_string("d"); }

private:
    detail::ExteriorSum<K> sum_;
};

// HKR projection pi(m_0; m_1, ..., m_q) = m_0 dm_1 ^ ... ^ dm_q, expanded on
// monomial slots via dm = sum_i e_i (m / t_i) dt_i with the exponent e_i read
// in the field.  Kills words with a constant inner slot and satisfies
// pi . b = 0.
template <class K>
DifferentialForm<K> hkr_pi(const ChainElement<K>& x)
{
    const K& field = x.field();
    const int n = x.arity();
    const int q = x.q();
    DifferentialForm<K> out(field, n, q);
    std::vector<int> idx(static_cast<size_t>(q), 0);
    for (const auto& [w, c] : x.words()) {
        // Choose one variable from each inner slot.
        auto rec = [&](auto&& self, int slot, const Monomial& acc, const typename K::Scalar& coeff)
            -> void {
            if (slot > q) {
                out.add_term(acc, idx, coeff);
                return;
            }
            const Monomial& m = w[static_cast<size_t>(slot)];
            for (int i = 0; i < n; ++i) {
                int e = m.exp(i);
                if (e == 0) continue;
                typename K::Scalar c2 = field.mul(coeff, field.from_int(e));
                if (field.is_zero(c2)) continue;
                idx[static_cast<size_t>(slot - 1)] = i;
                self(self, slot + 1, acc.times(m.divided_by_variable(i)), c2);
            }
        };
        rec(rec, 1, w[0], c);
    }
    return out;
}

// HKR antisymmetrization
//   eps(m dt_{i1} ^ ... ^ dt_{iq}) = sum_{sigma} sgn(sigma) (m; t_{i_sigma(1)}, ..., t_{i_sigma(q)}).
// Satisfies b . eps = 0 and pi . eps = q! . id.
template <class K>
ChainElement<K> antisymmetrization_eps(const DifferentialForm<K>& w)
{
    const K& field = w.field();
    const int n = w.arity();
    const int q = w.degree();
    ChainElement<K> out(field, n, q);
    for (const auto& [key, c] : w.terms()) {
        std::vector<int> pos(static_cast<size_t>(q));
        for (int k = 0; k < q; ++k) pos[static_cast<size_t>(k)] = k;
        do {
            std::vector<Monomial> word;
            word.reserve(static_cast<size_t>(q) + 1);
            word.push_back(key.first);
            for (int k = 0; k < q; ++k)
                word.push_back(Monomial::variable(n, key.second[static_cast<size_t>(pos[static_cast<size_t>(k)])]));
            int sgn = detail::permutation_sign(pos);
            out.add_word(word, sgn > 0 ? c : field.neg(c));
        } while (std::next_permutation(pos.begin(), pos.end()));
    }
    return out;
}

// Evaluation of the polyvector cochain pi_cd(v) on a chain element:
//   pi_cd(v_1 ^ ... ^ v_q)(m_0; a_1, ..., a_q)
//     = m_0 sum_sigma sgn(sigma) v_sigma(1)(a_1) ... v_sigma(q)(a_q),
// extended bilinearly; v_i(a) is the formal derivative.  Adjoint to hkr_pi
// under the pairing below.
template <class K>
Poly<K> pi_cd_evaluate(const PolyVector<K>& v, const ChainElement<K>& x)
{
    if (v.degree() != x.q())
        throw DegreeMismatch("polyvector degree " + std::to_string(v.degree())
                             + " != chain degree " + std::to_string(x.q()));
    if (v.arity() != x.arity()) throw ArityMismatch("polyvector and chain arities differ");
    if (v.field() != x.field()) throw FieldMismatch("polyvector and chain fields differ");
    const K& field = v.field();
    const int n = v.arity();
    const int q = v.degree();
    Poly<K> out(field, n);
    for (const auto& [key, cv] : v.terms()) {
        const std::vector<int>& J = key.second;
        for (const auto& [w, cx] : x.words()) {
            std::vector<int> pos(static_cast<size_t>(q));
            for (int k = 0; k < q; ++k) pos[static_cast<size_t>(k)] = k;
            do {
                // term: prod_k  d_{J[pos[k]]} applied to slot k+1
                typename K::Scalar coeff = field.mul(cv, cx);
                Monomial acc = key.first.times(w[0]);
                bool dead = false;
                for (int k = 0; k < q && !dead; ++k) {
                    const Monomial& m = w[static_cast<size_t>(k + 1)];
                    int i = J[static_cast<size_t>(pos[static_cast<size_t>(k)])];
                    int e = m.exp(i);
                    if (e == 0) {
                        dead = true;
                        break;
                    }
                    coeff = field.mul(coeff, field.from_int(e));
                    if (field.is_zero(coeff)) {
                        dead = true;
                        break;
                    }
                    acc = acc.times(m.divided_by_variable(i));
                }
                if (!dead) {
                    int sgn = detail::permutation_sign(pos);
                    out.add_term(acc, sgn > 0 ? coeff : field.neg(coeff));
                }
            } while (std::next_permutation(pos.begin(), pos.end()));
        }
    }
    return out;
}

// The A-valued pairing of polyvectors with forms: <m d_I, m' dt_J> =
// delta_{IJ} m m'.
template <class K>
Poly<K> pairing(const PolyVector<K>& v, const DifferentialForm<K>& w)
{
    if (v.degree() != w.degree()) throw DegreeMismatch("pairing requires equal degrees");
    if (v.arity() != w.arity()) throw ArityMismatch("pairing arities differ");
    if (v.field() != w.field()) throw FieldMismatch("pairing fields differ");
    const K& field = v.field();
    Poly<K> out(field, v.arity());
    for (const auto& [kv, cv] : v.terms())
        for (const auto& [kw, cw] : w.terms())
            if (kv.second == kw.second)
                out.add_term(kv.first.times(kw.first), field.mul(cv, cw));
    return out;
}

} // namespace hhlab
