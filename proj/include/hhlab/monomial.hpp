#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace hhlab {

// A monomial in variables t_1..t_n, stored as its exponent vector.  Exponents
// may be negative (Laurent monomials); operations that require ordinary
// monomials check and throw LaurentNotSupported.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(int arity) : exps_(static_cast<size_t>(arity), 0)
    {
        if (arity < 0) throw InvalidSpec("monomial arity must be >= 0");
    }
    explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {}

    static Monomial one(int arity) { return Monomial(arity); }
    static Monomial variable(int arity, int i)
    {
        Monomial m(arity);
        m.check_index(i);
        m.exps_[static_cast<size_t>(i)] = 1;
        return m;
    }

    int arity() const { return static_cast<int>(exps_.size()); }
    int degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }
    bool is_one() const
    {
        for (int e : exps_)
            if (e != 0) return false;
        return true;
    }
    bool ordinary() const
    {
        for (int e : exps_)
            if (e < 0) return false;
        return true;
    }

    int exp(int i) const
    {
        check_index(i);
        return exps_[static_cast<size_t>(i)];
    }
    const std::vector<int>& exps() const { return exps_; }

    Monomial times(const Monomial& o) const
    {
        if (arity() != o.arity())
            throw ArityMismatch("monomial product across arities " + std::to_string(arity())
                                + " and " + std::to_string(o.arity()));
        Monomial r(*this);
        for (size_t k = 0; k < exps_.size(); ++k) r.exps_[k] += o.exps_[k];
        return r;
    }

    // Quotient by t_i (used by formal differentiation); result may be Laurent.
    Monomial divided_by_variable(int i) const
    {
        check_index(i);
        Monomial r(*this);
        r.exps_[static_cast<size_t>(i)] -= 1;
        return r;
    }

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    // Graded lexicographic order: lower total degree first; within a degree,
    // lexicographically larger exponent vector first, so that for n = 2, d = 2
    // the basis reads t1^2, t1*t2, t2^2.
    bool grlex_less(const Monomial& o) const
    {
        int da = degree(), db = o.degree();
        if (da != db) return da < db;
        return exps_ > o.exps_;
    }

    std::string to_string(const std::string& var = "t") const
    {
        std::string s;
        for (size_t k = 0; k < exps_.size(); ++k) {
            if (exps_[k] == 0) continue;
            if (!s.empty()) s += "*";
            s += var + std::to_string(k + 1);
            if (exps_[k] != 1) s += "^" + std::to_string(exps_[k]);
        }
        return s.empty() ? "1" : s;
    }

private:
    void check_index(int i) const
    {
        if (i < 0 || i >= arity())
            throw IndexOutOfRange("variable index " + std::to_string(i) + " out of range for arity "
                                  + std::to_string(arity()));
    }

    std::vector<int> exps_;
};

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return a.grlex_less(b); }
};

inline std::uint64_t binomial(long long a, long long b)
{
    if (b < 0 || b > a) return 0;
    if (b > a - b) b = a - b;
    std::uint64_t r = 1;
    for (long long i = 0; i < b; ++i) r = r * static_cast<std::uint64_t>(a - i) / static_cast<std::uint64_t>(i + 1);
    return r;
}

// All ordinary monomials in n variables of total degree exactly d, in graded
// lexicographic order.  d < 0 yields the empty list.
inline std::vector<Monomial> enumerate_monomials(int n, int d)
{
    if (n < 0) throw InvalidSpec("enumerate_monomials: arity must be >= 0");
    std::vector<Monomial> out;
    if (d < 0) return out;
    if (n == 0) {
        if (d == 0) out.push_back(Monomial(0));
        return out;
    }
    std::vector<int> e(static_cast<size_t>(n), 0);
    // Descending-lex recursion over exponent vectors matches grlex within a
    // fixed degree.
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == n - 1) {
            e[static_cast<size_t>(pos)] = rem;
            out.push_back(Monomial(e));
            return;
        }
        for (int v = rem; v >= 0; --v) {
            e[static_cast<size_t>(pos)] = v;
            self(self, pos + 1, rem - v);
        }
    };
    rec(rec, 0, d);
    return out;
}

} // namespace hhlab
