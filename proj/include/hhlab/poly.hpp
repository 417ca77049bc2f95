#pragma once

#include <map>
#include <string>
#include <vector>

#include "field.hpp"
#include "monomial.hpp"

namespace hhlab {

// A polynomial (or Laurent polynomial) over the field K in variables
// t_1..t_n.  Terms are kept canonical: zero coefficients removed, monomials
// ordered by graded lex.
template <class K>
class Poly {
public:
    using Scalar = typename K::Scalar;
    using TermMap = std::map<Monomial, Scalar, MonomialLess>;

    Poly(const K& field, int arity) : field_(field), arity_(arity)
    {
        if (arity < 0) throw InvalidSpec("polynomial arity must be >= 0");
    }

    static Poly zero(const K& field, int arity) { return Poly(field, arity); }
    static Poly unit(const K& field, int arity)
    {
        Poly p(field, arity);
        p.add_term(Monomial::one(arity), field.one());
        return p;
    }
    static Poly variable(const K& field, int arity, int i)
    {
        Poly p(field, arity);
        p.add_term(Monomial::variable(arity, i), field.one());
        return p;
    }
    static Poly term(const K& field, const Monomial& m, const Scalar& c)
    {
        Poly p(field, m.arity());
        p.add_term(m, c);
        return p;
    }

    const K& field() const { return field_; }
    int arity() const { return arity_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    // Total degree of the highest-degree term; the zero polynomial reports -1
    // by convention (callers never rely on its degree).
    int degree() const
    {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    bool homogeneous_of_degree(int d) const
    {
        for (const auto& [m, c] : terms_)
            if (m.degree() != d) return false;
        return true;
    }

    bool ordinary() const
    {
        for (const auto& [m, c] : terms_)
            if (!m.ordinary()) return false;
        return true;
    }

    void add_term(const Monomial& m, const Scalar& c)
    {
        if (m.arity() != arity_)
            throw ArityMismatch("term arity " + std::to_string(m.arity()) + " in polynomial of arity "
                                + std::to_string(arity_));
        if (field_.is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second = field_.add(it->second, c);
            if (field_.is_zero(it->second)) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o)
    {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_) add_term(m, field_.neg(c));
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    Poly negated() const
    {
        Poly r(field_, arity_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, field_.neg(c));
        return r;
    }

    Poly scaled(const Scalar& c) const
    {
        Poly r(field_, arity_);
        if (field_.is_zero(c)) return r;
        for (const auto& [m, v] : terms_) r.add_term(m, field_.mul(v, c));
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        a.check_compatible(b);
        Poly r(a.field_, a.arity_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.add_term(ma.times(mb), a.field_.mul(ca, cb));
        return r;
    }

    bool operator==(const Poly& o) const
    {
        if (arity_ != o.arity_ || field_ != o.field_) return false;
        if (terms_.size() != o.terms_.size()) return false;
        auto it = o.terms_.begin();
        for (const auto& [m, c] : terms_) {
            if (!(m == it->first) || !field_.eq(c, it->second)) return false;
            ++it;
        }
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Formal partial derivative with respect to t_i.  Exponents act through
    // the field, so d/dt (t^p) = 0 in characteristic p.
    Poly partial(int i) const
    {
        if (!ordinary())
            throw LaurentNotSupported("partial derivative requires ordinary (non-Laurent) terms");
        Poly r(field_, arity_);
        for (const auto& [m, c] : terms_) {
            int e = m.exp(i);
            if (e == 0) continue;
            Scalar coeff = field_.mul(c, field_.from_int(e));
            r.add_term(m.divided_by_variable(i), coeff);
        }
        return r;
    }

    std::string to_string(const std::string& var = "t") const
    {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += field_.to_string(c);
            if (!m.is_one()) s += "*" + m.to_string(var);
        }
        return s;
    }

private:
    void check_compatible(const Poly& o) const
    {
        if (arity_ != o.arity_)
            throw ArityMismatch("polynomial arities " + std::to_string(arity_) + " and "
                                + std::to_string(o.arity_) + " differ");
        if (field_ != o.field_) throw FieldMismatch("polynomial fields differ");
    }

    K field_;
    int arity_ = 0;
    TermMap terms_;
};

// The exterior derivative of f as the list of its partials: df = sum_i
// (df/dt_i) dt_i, returned as the vector of coefficient polynomials indexed
// by i = 0..n-1.
template <class K>
std::vector<Poly<K>> exterior_derivative(const Poly<K>& f)
{
    std::vector<Poly<K>> out;
    out.reserve(static_cast<size_t>(f.arity()));
    for (int i = 0; i < f.arity(); ++i) out.push_back(f.partial(i));
    return out;
}

} // namespace hhlab
