#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "errors.hpp"

namespace hhlab {

using std::uint64_t;

// Runtime description of a coefficient field: either Q or F_p with p a
// word-size prime.  Compile-time field types (RationalField, PrimeField)
// carry the actual arithmetic; FieldSpec is what crosses untyped boundaries
// such as the command line and serialized reports.
struct FieldSpec {
    enum class Kind { Rationals, Prime };

    Kind kind = Kind::Rationals;
    uint64_t p = 0; // 0 iff rationals

    static FieldSpec rationals() { return FieldSpec{Kind::Rationals, 0}; }
    static FieldSpec prime(uint64_t p);

    uint64_t characteristic() const { return p; }

    bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    std::string to_string() const
    {
        return kind == Kind::Rationals ? std::string("QQ") : "GF(" + std::to_string(p) + ")";
    }
};

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this witness set.
inline bool is_prime_u64(uint64_t n)
{
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    auto mulmod = [](uint64_t a, uint64_t b, uint64_t m) -> uint64_t {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
    };
    auto powmod = [&](uint64_t a, uint64_t e, uint64_t m) -> uint64_t {
        uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline FieldSpec FieldSpec::prime(uint64_t p)
{
    if (!is_prime_u64(p))
        throw InvalidSpec("field characteristic must be 0 or a prime, got " + std::to_string(p));
    return FieldSpec{Kind::Prime, p};
}

// The field of rational numbers.  Scalars are GMP rationals and are kept
// canonical (reduced, positive denominator) by gmpxx itself.
class RationalField {
public:
    using Scalar = mpq_class;

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }
    Scalar from_int(long long v) const { return Scalar(static_cast<long>(v)); }

    bool is_zero(const Scalar& a) const { return sgn(a) == 0; }
    bool eq(const Scalar& a, const Scalar& b) const { return cmp(a, b) == 0; }

    Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
    Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
    Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
    Scalar neg(const Scalar& a) const { return -a; }
    Scalar div(const Scalar& a, const Scalar& b) const
    {
        if (sgn(b) == 0) throw Error("division by zero in QQ");
        return a / b;
    }
    Scalar inv(const Scalar& a) const { return div(one(), a); }

    // True for +-1: such pivots keep elimination integral.
    bool is_unit_entry(const Scalar& a) const
    {
        return mpz_cmp_ui(a.get_den().get_mpz_t(), 1) == 0
            && mpz_cmpabs_ui(a.get_num().get_mpz_t(), 1) == 0;
    }

    std::string to_string(const Scalar& a) const { return a.get_str(); }

    uint64_t characteristic() const { return 0; }
    FieldSpec spec() const { return FieldSpec::rationals(); }
    bool operator==(const RationalField&) const { return true; }
    bool operator!=(const RationalField&) const { return false; }
};

// The prime field F_p for a word-size prime p.  Scalars are canonical
// representatives in [0, p).
class PrimeField {
public:
    using Scalar = uint64_t;

    PrimeField() : p_(2) {}
    explicit PrimeField(uint64_t p) : p_(p)
    {
        if (!is_prime_u64(p)) throw InvalidSpec("PrimeField requires a prime, got " + std::to_string(p));
    }

    uint64_t modulus() const { return p_; }

    Scalar zero() const { return 0; }
    Scalar one() const { return 1; }
    Scalar from_int(long long v) const
    {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<Scalar>(r);
    }

    bool is_zero(const Scalar& a) const { return a == 0; }
    bool eq(const Scalar& a, const Scalar& b) const { return a == b; }

    Scalar add(const Scalar& a, const Scalar& b) const
    {
        Scalar s = a + b;
        if (s >= p_ || s < a) s -= p_;
        return s;
    }
    Scalar sub(const Scalar& a, const Scalar& b) const { return a >= b ? a - b : a + (p_ - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const
    {
        return static_cast<Scalar>((static_cast<unsigned __int128>(a) * b) % p_);
    }
    Scalar neg(const Scalar& a) const { return a == 0 ? 0 : p_ - a; }
    Scalar inv(const Scalar& a) const
    {
        if (a == 0) throw Error("division by zero in " + spec().to_string());
        // Fermat: a^(p-2) mod p.
        Scalar r = 1, b = a;
        uint64_t e = p_ - 2;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    bool is_unit_entry(const Scalar& a) const { return a == 1 || a == p_ - 1; }

    std::string to_string(const Scalar& a) const { return std::to_string(a); }

    uint64_t characteristic() const { return p_; }
    FieldSpec spec() const { return FieldSpec::prime(p_); }
    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

private:
    uint64_t p_;
};

// Invokes f with the compile-time field matching a runtime FieldSpec.
template <class F>
decltype(auto) with_field(const FieldSpec& spec, F&& f)
{
    if (spec.kind == FieldSpec::Kind::Rationals) return std::forward<F>(f)(RationalField{});
    return std::forward<F>(f)(PrimeField{spec.p});
}

} // namespace hhlab
