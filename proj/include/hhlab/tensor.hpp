#pragma once

#include <map>
#include <string>
#include <vector>

#include "poly.hpp"

namespace hhlab {

namespace detail {

// Order on slot tuples: slotwise graded lex, first difference decides.  Used
// both for canonical element storage and for basis enumeration, so matrix
// layouts agree with element iteration order.
struct SlotsLess {
    bool operator()(const std::vector<Monomial>& a, const std::vector<Monomial>& b) const
    {
        for (size_t k = 0; k < a.size() && k < b.size(); ++k) {
            if (a[k] != b[k]) return a[k].grlex_less(b[k]);
        }
        return a.size() < b.size();
    }
};

// A formal K-linear combination of tensor words with a fixed slot count; the
// common core of ChainElement and BarElement.
template <class K>
class WordSum {
public:
    using Scalar = typename K::Scalar;
    using Word = std::vector<Monomial>;
    using WordMap = std::map<Word, Scalar, SlotsLess>;

    WordSum(const K& field, int arity, int slots) : field_(field), arity_(arity), slots_(slots) {}

    const K& field() const { return field_; }
    int arity() const { return arity_; }
    int slots() const { return slots_; }
    const WordMap& words() const { return words_; }
    bool is_zero() const { return words_.empty(); }

    void add_word(const Word& w, const Scalar& c)
    {
        if (static_cast<int>(w.size()) != slots_)
            throw DimensionMismatch("word with " + std::to_string(w.size()) + " slots in a "
                                    + std::to_string(slots_) + "-slot element");
        for (const auto& m : w)
            if (m.arity() != arity_) throw ArityMismatch("slot arity differs from element arity");
        if (field_.is_zero(c)) return;
        auto it = words_.find(w);
        if (it == words_.end()) {
            words_.emplace(w, c);
        } else {
            it->second = field_.add(it->second, c);
            if (field_.is_zero(it->second)) words_.erase(it);
        }
    }

    void add(const WordSum& o, bool negate)
    {
        check_compatible(o);
        for (const auto& [w, c] : o.words_) add_word(w, negate ? field_.neg(c) : c);
    }

    WordSum scaled(const Scalar& c) const
    {
        WordSum r(field_, arity_, slots_);
        if (!field_.is_zero(c))
            for (const auto& [w, v] : words_) r.words_.emplace(w, field_.mul(v, c));
        return r;
    }

    bool equals(const WordSum& o) const
    {
        if (arity_ != o.arity_ || slots_ != o.slots_ || field_ != o.field_) return false;
        if (words_.size() != o.words_.size()) return false;
        auto it = o.words_.begin();
        for (const auto& [w, c] : words_) {
            if (w != it->first || !field_.eq(c, it->second)) return false;
            ++it;
        }
        return true;
    }

    bool homogeneous_of_degree(int d) const
    {
        for (const auto& [w, c] : words_) {
            int total = 0;
            for (const auto& m : w) total += m.degree();
            if (total != d) return false;
        }
        return true;
    }

    std::string to_string(const char* open, const char* sep, const char* close) const
    {
        if (words_.empty()) return "0";
        std::string s;
        for (const auto& [w, c] : words_) {
            if (!s.empty()) s += " + ";
            s += field_.to_string(c) + "*" + open;
            for (size_t k = 0; k < w.size(); ++k) {
                if (k) s += sep;
                s += w[k].to_string();
            }
            s += close;
        }
        return s;
    }

private:
    void check_compatible(const WordSum& o) const
    {
        if (arity_ != o.arity_) throw ArityMismatch("element arities differ");
        if (slots_ != o.slots_) throw DimensionMismatch("element slot counts differ");
        if (field_ != o.field_) throw FieldMismatch("element fields differ");
    }

    K field_;
    int arity_;
    int slots_;
    WordMap words_;
};

} // namespace detail

// An element of the degree-q Hochschild chains C_q(A) = A (x) A^{(x)q} for
// A = K[t_1..t_n], stored as a canonical sum of monomial words
// (m_0; m_1, ..., m_q).
template <class K>
class ChainElement {
public:
    using Scalar = typename K::Scalar;
    using Word = std::vector<Monomial>;

    ChainElement(const K& field, int n, int q) : sum_(field, n, q + 1)
    {
        if (q < 0) throw DegreeTooLow("chain degree must be >= 0");
    }

    int q() const { return sum_.slots() - 1; }
    int arity() const { return sum_.arity(); }
    const K& field() const { return sum_.field(); }
    const typename detail::WordSum<K>::WordMap& words() const { return sum_.words(); }
    bool is_zero() const { return sum_.is_zero(); }
    bool homogeneous_of_degree(int d) const { return sum_.homogeneous_of_degree(d); }

    void add_word(const Word& w, const Scalar& c) { sum_.add_word(w, c); }

    ChainElement& operator+=(const ChainElement& o)
    {
        sum_.add(o.sum_, false);
        return *this;
    }
    ChainElement& operator-=(const ChainElement& o)
    {
        sum_.add(o.sum_, true);
        return *this;
    }
    friend ChainElement operator+(ChainElement a, const ChainElement& b) { return a += b; }
    friend ChainElement operator-(ChainElement a, const ChainElement& b) { return a -= b; }
    ChainElement scaled(const Scalar& c) const
    {
        ChainElement r(field(), arity(), q());
        r.sum_ = sum_.scaled(c);
        return r;
    }
    bool operator==(const ChainElement& o) const { return sum_.equals(o.sum_); }
    bool operator!=(const ChainElement& o) const { return !(*this == o); }

    std::string to_string() const { return sum_.to_string("(", "; ", ")"); }

private:
    detail::WordSum<K> sum_;
};

// An element of the degree-q piece B_q(A) = A^{(x)(q+2)} of the unnormalized
// bar resolution, stored as a canonical sum of words a_0 (x) ... (x) a_{q+1}.
template <class K>
class BarElement {
public:
    using Scalar = typename K::Scalar;
    using Word = std::vector<Monomial>;

    BarElement(const K& field, int n, int q) : sum_(field, n, q + 2)
    {
        if (q < 0) throw DegreeTooLow("bar degree must be >= 0");
    }

    int q() const { return sum_.slots() - 2; }
    int arity() const { return sum_.arity(); }
    const K& field() const { return sum_.field(); }
    const typename detail::WordSum<K>::WordMap& words() const { return sum_.words(); }
    bool is_zero() const { return sum_.is_zero(); }
    bool homogeneous_of_degree(int d) const { return sum_.homogeneous_of_degree(d); }

    void add_word(const Word& w, const Scalar& c) { sum_.add_word(w, c); }

    BarElement& operator+=(const BarElement& o)
    {
        sum_.add(o.sum_, false);
        return *this;
    }
    BarElement& operator-=(const BarElement& o)
    {
        sum_.add(o.sum_, true);
        return *this;
    }
    friend BarElement operator+(BarElement a, const BarElement& b) { return a += b; }
    friend BarElement operator-(BarElement a, const BarElement& b) { return a -= b; }
    BarElement scaled(const Scalar& c) const
    {
        BarElement r(field(), arity(), q());
        r.sum_ = sum_.scaled(c);
        return r;
    }
    bool operator==(const BarElement& o) const { return sum_.equals(o.sum_); }
    bool operator!=(const BarElement& o) const { return !(*this == o); }

    std::string to_string() const { return sum_.to_string("[", "|", "]"); }

private:
    detail::WordSum<K> sum_;
};

// Bar differential: on a word with q+2 slots,
//   del(a_0 (x) ... (x) a_{q+1}) = sum_{i=0}^{q} (-1)^i  a_0 (x) ... (x) a_i a_{i+1} (x) ... (x) a_{q+1}.
// Defined for q >= 1 (the q = 0 map is the augmentation, not a bar map here).
template <class K>
BarElement<K> bar_differential(const BarElement<K>& x)
{
    if (x.q() < 1) throw DegreeTooLow("bar_differential requires q >= 1");
    BarElement<K> out(x.field(), x.arity(), x.q() - 1);
    for (const auto& [w, c] : x.words()) {
        for (int i = 0; i + 1 < static_cast<int>(w.size()); ++i) {
            std::vector<Monomial> merged;
            merged.reserve(w.size() - 1);
            for (int k = 0; k < static_cast<int>(w.size()); ++k) {
                if (k == i)
                    merged.push_back(w[k].times(w[k + 1]));
                else if (k != i + 1)
                    merged.push_back(w[k]);
            }
            out.add_word(merged, (i % 2 == 0) ? c : x.field().neg(c));
        }
    }
    return out;
}

// Splitting s(a_0 (x) ... (x) a_{q+1}) = a_0 (x) ... (x) a_{q+1} (x) 1.  It is
// A-linear for the action a . x = (a (x) 1) x on the first slot.
//
// Homotopy convention: on the augmented complex ... -> B_1 -> B_0 -> A -> 0
// (augmentation = multiplication, section eta(a) = a (x) 1), the maps
// h_q := (-1)^(q+1) s satisfy del h + h del = id; the sign is forced by
// del(s x) = s(del x) + (-1)^(q+1) x, which the property tests pin down.
template <class K>
BarElement<K> bar_splitting(const BarElement<K>& x)
{
    BarElement<K> out(x.field(), x.arity(), x.q() + 1);
    const Monomial unit = Monomial::one(x.arity());
    for (const auto& [w, c] : x.words()) {
        std::vector<Monomial> appended(w);
        appended.push_back(unit);
        out.add_word(appended, c);
    }
    return out;
}

// The elements d~_j t_i of B_q(A):
//   j = 0:      t_i (x) 1 (x) ... (x) 1  -  1 (x) ... (x) 1 (x) t_i
//   1 <= j <= q: 1^j (x) (t_i (x) 1 - 1 (x) t_i) (x) 1^(q-j), i.e. t_i in slot j
//               minus t_i in slot j+1.
template <class K>
BarElement<K> tilde_d(const K& field, int n, int q, int j, int i)
{
    if (q < 0) throw DegreeTooLow("tilde_d requires q >= 0");
    if (j < 0 || j > q) throw IndexOutOfRange("tilde_d slot index j out of range [0, q]");
    if (i < 0 || i >= n) throw IndexOutOfRange("tilde_d variable index out of range");
    BarElement<K> out(field, n, q);
    std::vector<Monomial> w(static_cast<size_t>(q) + 2, Monomial::one(n));
    int first = j == 0 ? 0 : j;
    int second = j == 0 ? q + 1 : j + 1;
    w[static_cast<size_t>(first)] = Monomial::variable(n, i);
    out.add_word(w, field.one());
    w[static_cast<size_t>(first)] = Monomial::one(n);
    w[static_cast<size_t>(second)] = Monomial::variable(n, i);
    out.add_word(w, field.neg(field.one()));
    return out;
}

// The projection B_q(A) -> C_q(A) = B_q(A) tensor_{A^e} A.  Writing a word as
// (a_0 (x) a_{q+1}) . (1 (x) a_1 (x) ... (x) a_q (x) 1) for the outer
// A^e-action, tensoring with A over A^e multiplies both outer slots into the
// coefficient slot:
//   a_0 (x) a_1 (x) ... (x) a_{q+1}  |->  (a_0 a_{q+1}; a_1, ..., a_q).
template <class K>
ChainElement<K> to_chain(const BarElement<K>& x)
{
    ChainElement<K> out(x.field(), x.arity(), x.q());
    for (const auto& [w, c] : x.words()) {
        std::vector<Monomial> cw;
        cw.reserve(w.size() - 1);
        cw.push_back(w.front().times(w.back()));
        for (size_t k = 1; k + 1 < w.size(); ++k) cw.push_back(w[k]);
        out.add_word(cw, c);
    }
    return out;
}

// Hochschild chain differential, the image of the bar differential under
// to_chain: the first q terms merge adjacent slots as in the bar complex, and
// the i = q bar term a_0 (x) ... (x) a_q a_{q+1} turns into the cyclic term
// because a_{q+1} lands in the coefficient slot:
//   b(m_0; m_1,...,m_q) = sum_{i=0}^{q-1} (-1)^i (m_0; ..., m_i m_{i+1}, ...)
//                         + (-1)^q (m_q m_0; m_1, ..., m_{q-1}).
// (b . to_chain = to_chain . del is a property test.)
template <class K>
ChainElement<K> chain_differential(const ChainElement<K>& x)
{
    if (x.q() < 1) throw DegreeTooLow("chain_differential requires q >= 1");
    const int q = x.q();
    ChainElement<K> out(x.field(), x.arity(), q - 1);
    for (const auto& [w, c] : x.words()) {
        for (int i = 0; i < q; ++i) {
            std::vector<Monomial> merged;
            merged.reserve(w.size() - 1);
            for (int k = 0; k < static_cast<int>(w.size()); ++k) {
                if (k == i)
                    merged.push_back(w[k].times(w[k + 1]));
                else if (k != i + 1)
                    merged.push_back(w[k]);
            }
            out.add_word(merged, (i % 2 == 0) ? c : x.field().neg(c));
        }
        std::vector<Monomial> cyc;
        cyc.reserve(w.size() - 1);
        cyc.push_back(w.back().times(w.front()));
        for (size_t k = 1; k + 1 < w.size(); ++k) cyc.push_back(w[k]);
        out.add_word(cyc, (q % 2 == 0) ? c : x.field().neg(c));
    }
    return out;
}

// Outer A^e-action (left (x) right) on a bar element: multiplies slot 0 by
// left and the last slot by right.
template <class K>
BarElement<K> act_outer(const Monomial& left, const Monomial& right, const BarElement<K>& x)
{
    BarElement<K> out(x.field(), x.arity(), x.q());
    for (const auto& [w, c] : x.words()) {
        std::vector<Monomial> ww(w);
        ww.front() = ww.front().times(left);
        ww.back() = ww.back().times(right);
        out.add_word(ww, c);
    }
    return out;
}

// First-slot A-action on a chain element.
template <class K>
ChainElement<K> act_first(const Monomial& m, const ChainElement<K>& x)
{
    ChainElement<K> out(x.field(), x.arity(), x.q());
    for (const auto& [w, c] : x.words()) {
        std::vector<Monomial> ww(w);
        ww.front() = ww.front().times(m);
        out.add_word(ww, c);
    }
    return out;
}

} // namespace hhlab
