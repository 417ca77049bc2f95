#include <catch2/catch_amalgamated.hpp>

#include <hhlab/forms.hpp>
#include <hhlab/random.hpp>
#include <hhlab/tensor.hpp>

using namespace hhlab;

namespace {

RationalField Q;

using CE = ChainElement<RationalField>;
using BE = BarElement<RationalField>;

Monomial t(int n, int i) { return Monomial::variable(n, i); }
Monomial one(int n) { return Monomial::one(n); }

BE bar_word(int n, int q, std::vector<Monomial> slots, long long c = 1)
{
    BE x(Q, n, q);
    x.add_word(slots, Q.from_int(c));
    return x;
}

CE chain_word(int n, int q, std::vector<Monomial> slots, long long c = 1)
{
    CE x(Q, n, q);
    x.add_word(slots, Q.from_int(c));
    return x;
}

} // namespace

TEST_CASE("bar differential on 1 (x) t1 (x) 1")
{
    auto x = bar_word(1, 1, {one(1), t(1, 0), one(1)});
    auto expect = bar_word(1, 0, {t(1, 0), one(1)}) - bar_word(1, 0, {one(1), t(1, 0)});
    CHECK(bar_differential(x) == expect);
}

TEST_CASE("bar differential kills the all-units word")
{
    // The two merge terms of (1.2)-type contraction cancel on 1 (x) 1 (x) 1.
    auto x = bar_word(2, 1, {one(2), one(2), one(2)});
    CHECK(bar_differential(x).is_zero());
}

TEST_CASE("bar differential squares to zero on random elements")
{
    std::mt19937 rng(7001);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_bar(Q, rng, 2, 3);
        CHECK(bar_differential(bar_differential(x)).is_zero());
    }
    CHECK_THROWS_AS(bar_differential(bar_word(1, 0, {one(1), one(1)})), DegreeTooLow);
}

TEST_CASE("bar splitting appends a unit slot and is A-linear")
{
    auto x = bar_word(2, 0, {t(2, 0), t(2, 1)});
    CHECK(bar_splitting(x) == bar_word(2, 1, {t(2, 0), t(2, 1), one(2)}));

    std::mt19937 rng(7002);
    for (int trial = 0; trial < 30; ++trial) {
        auto y = random_bar(Q, rng, 2, 2);
        auto a = random_monomial(rng, 2, 2);
        CHECK(bar_splitting(act_outer(a, one(2), y)) == act_outer(a, one(2), bar_splitting(y)));
    }
}

TEST_CASE("contracting homotopy identity")
{
    std::mt19937 rng(7003);
    // h_q = (-1)^(q+1) s:  del(h(x)) + h(del(x)) = x for q >= 1.
    for (int q = 1; q <= 3; ++q) {
        for (int trial = 0; trial < 30; ++trial) {
            auto x = random_bar(Q, rng, 2, q);
            auto h = [&](const BE& y) {
                auto s = bar_splitting(y);
                return (y.q() + 1) % 2 == 0 ? s : s.scaled(Q.from_int(-1));
            };
            auto lhs = bar_differential(h(x)) + h(bar_differential(x));
            CHECK(lhs == x);
        }
    }
    // q = 0 end of the augmented complex: del(h(x)) + eta(mu(x)) = x, where
    // mu is the augmentation (merge both slots) and eta(a) = a (x) 1.
    for (int trial = 0; trial < 30; ++trial) {
        auto x = random_bar(Q, rng, 2, 0);
        auto h0 = bar_splitting(x).scaled(Q.from_int(-1));
        BE eta_mu(Q, 2, 0);
        for (const auto& [w, c] : x.words())
            eta_mu.add_word({w[0].times(w[1]), one(2)}, c);
        CHECK(bar_differential(h0) + eta_mu == x);
    }
}

TEST_CASE("tilde_d elements")
{
    // (j=1, i=1, q=1): 1 (x) t1 (x) 1 - 1 (x) 1 (x) t1
    auto d11 = tilde_d(Q, 2, 1, 1, 0);
    auto expect11 = bar_word(2, 1, {one(2), t(2, 0), one(2)})
                    - bar_word(2, 1, {one(2), one(2), t(2, 0)});
    CHECK(d11 == expect11);

    // (j=0, i=1, q=1): t1 (x) 1 (x) 1 - 1 (x) 1 (x) t1
    auto d01 = tilde_d(Q, 2, 1, 0, 0);
    auto expect01 = bar_word(2, 1, {t(2, 0), one(2), one(2)})
                    - bar_word(2, 1, {one(2), one(2), t(2, 0)});
    CHECK(d01 == expect01);

    // del(tilde_d(1, i, 1)) = t_i (x) 1 - 1 (x) t_i = tilde_d(0, i, 0).
    CHECK(bar_differential(d11) == tilde_d(Q, 2, 0, 0, 0));

    CHECK_THROWS_AS(tilde_d(Q, 2, 1, 2, 0), IndexOutOfRange);
    CHECK_THROWS_AS(tilde_d(Q, 2, 1, -1, 0), IndexOutOfRange);
    CHECK_THROWS_AS(tilde_d(Q, 2, 1, 0, 2), IndexOutOfRange);
}

TEST_CASE("chain differential examples")
{
    // b(1; t1) = (t1;) - (t1;) = 0 by commutativity.
    CHECK(chain_differential(chain_word(1, 1, {one(1), t(1, 0)})).is_zero());

    // b(1; t1, t2) = (t1; t2) - (1; t1 t2) + (t2; t1).
    auto x = chain_word(2, 2, {one(2), t(2, 0), t(2, 1)});
    auto expect = chain_word(2, 1, {t(2, 0), t(2, 1)})
                  - chain_word(2, 1, {one(2), t(2, 0).times(t(2, 1))})
                  + chain_word(2, 1, {t(2, 1), t(2, 0)});
    CHECK(chain_differential(x) == expect);

    // b(1; 1, 1) = (1; 1): the three merge terms alternate and two cancel.
    auto y = chain_word(1, 2, {one(1), one(1), one(1)});
    CHECK(chain_differential(y) == chain_word(1, 1, {one(1), one(1)}));

    CHECK_THROWS_AS(chain_differential(chain_word(1, 0, {one(1)})), DegreeTooLow);
}

TEST_CASE("chain differential squares to zero and preserves degree")
{
    std::mt19937 rng(7004);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_chain(Q, rng, 2, 3);
        CHECK(chain_differential(chain_differential(x)).is_zero());
    }
    // Degree preservation on a homogeneous element.
    CE x(Q, 2, 2);
    x.add_word({t(2, 0), t(2, 1), t(2, 0)}, Q.one());
    x.add_word({one(2), t(2, 0).times(t(2, 1)), t(2, 1)}, Q.from_int(2));
    REQUIRE(x.homogeneous_of_degree(3));
    CHECK(chain_differential(x).homogeneous_of_degree(3));
}

TEST_CASE("b is the image of the bar differential under to_chain")
{
    std::mt19937 rng(7005);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_bar(Q, rng, 2, 3);
        CHECK(to_chain(bar_differential(x)) == chain_differential(to_chain(x)));
    }
    // to_chain merges the outer slots into the coefficient slot.
    auto b = bar_word(2, 1, {t(2, 0), t(2, 1), t(2, 0)});
    CHECK(to_chain(b) == chain_word(2, 1, {Monomial({2, 0}), t(2, 1)}));
}

TEST_CASE("hkr_pi on basic chains")
{
    // pi(1; t1, t2) = dt1 ^ dt2.
    auto x = chain_word(2, 2, {one(2), t(2, 0), t(2, 1)});
    DifferentialForm<RationalField> expect(Q, 2, 2);
    expect.add_term(one(2), {0, 1}, Q.one());
    CHECK(hkr_pi(x) == expect);

    // pi(1; t1, t1) = dt1 ^ dt1 = 0.
    CHECK(hkr_pi(chain_word(2, 2, {one(2), t(2, 0), t(2, 0)})).is_zero());

    // pi at q = 0 is the coefficient slot itself.
    auto x0 = chain_word(2, 0, {Monomial({1, 2})});
    DifferentialForm<RationalField> expect0(Q, 2, 0);
    expect0.add_term(Monomial({1, 2}), {}, Q.one());
    CHECK(hkr_pi(x0) == expect0);

    // pi(m; t1^2) = 2 m t1 dt1, and dies in characteristic 2.
    auto x2 = chain_word(2, 1, {t(2, 1), Monomial({2, 0})});
    DifferentialForm<RationalField> expect2(Q, 2, 1);
    expect2.add_term(Monomial({1, 1}), {0}, Q.from_int(2));
    CHECK(hkr_pi(x2) == expect2);
    PrimeField F2(2);
    ChainElement<PrimeField> y(F2, 2, 1);
    y.add_word({t(2, 1), Monomial({2, 0})}, F2.one());
    CHECK(hkr_pi(y).is_zero());
}

TEST_CASE("pi kills boundaries")
{
    std::mt19937 rng(7006);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_chain(Q, rng, 2, 3);
        CHECK(hkr_pi(chain_differential(x)).is_zero());
    }
}

TEST_CASE("antisymmetrization eps")
{
    // eps(dt1) = (1; t1).
    DifferentialForm<RationalField> w1(Q, 2, 1);
    w1.add_term(one(2), {0}, Q.one());
    CHECK(antisymmetrization_eps(w1) == chain_word(2, 1, {one(2), t(2, 0)}));

    // pi(eps(dt1 ^ dt2)) = 2 dt1 ^ dt2 and b(eps(dt1 ^ dt2)) = 0.
    DifferentialForm<RationalField> w2(Q, 2, 2);
    w2.add_term(one(2), {0, 1}, Q.one());
    auto e = antisymmetrization_eps(w2);
    CHECK(e == chain_word(2, 2, {one(2), t(2, 0), t(2, 1)})
                   - chain_word(2, 2, {one(2), t(2, 1), t(2, 0)}));
    CHECK(hkr_pi(e) == w2.scaled(Q.from_int(2)));
    CHECK(chain_differential(e).is_zero());
}

TEST_CASE("pi eps = q! id on random forms")
{
    std::mt19937 rng(7007);
    auto factorial = [](int q) {
        long long r = 1;
        for (int k = 2; k <= q; ++k) r *= k;
        return r;
    };
    for (int q = 0; q <= 4; ++q) {
        for (int trial = 0; trial < 20; ++trial) {
            auto w = random_form(Q, rng, 3, q);
            CHECK(hkr_pi(antisymmetrization_eps(w)) == w.scaled(Q.from_int(factorial(q))));
            if (q >= 1) CHECK(chain_differential(antisymmetrization_eps(w)).is_zero());
        }
    }
    // In characteristic 5, pi eps = q! still holds literally (4! = 24 = 4 mod 5).
    PrimeField F5(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto w = random_form(F5, rng, 3, 4);
        CHECK(hkr_pi(antisymmetrization_eps(w)) == w.scaled(F5.from_int(24)));
    }
}

TEST_CASE("pi_cd evaluation examples")
{
    // pi_cd(d1)(1; t1) = 1.
    PolyVector<RationalField> v1(Q, 2, 1);
    v1.add_term(one(2), {0}, Q.one());
    auto r1 = pi_cd_evaluate(v1, chain_word(2, 1, {one(2), t(2, 0)}));
    CHECK(r1 == Poly<RationalField>::unit(Q, 2));

    // pi_cd(d1 ^ d2)(1; t2, t1) = -1.
    PolyVector<RationalField> v2(Q, 2, 2);
    v2.add_term(one(2), {0, 1}, Q.one());
    auto r2 = pi_cd_evaluate(v2, chain_word(2, 2, {one(2), t(2, 1), t(2, 0)}));
    CHECK(r2 == Poly<RationalField>::unit(Q, 2).negated());

    // pi_cd(d1 ^ d2)(1; t1, t1) = 0 by antisymmetry.
    CHECK(pi_cd_evaluate(v2, chain_word(2, 2, {one(2), t(2, 0), t(2, 0)})).is_zero());

    CHECK_THROWS_AS(pi_cd_evaluate(v2, chain_word(2, 1, {one(2), t(2, 0)})), DegreeMismatch);
}

TEST_CASE("pi_cd is adjoint to pi under the pairing")
{
    std::mt19937 rng(7008);
    for (int q = 0; q <= 3; ++q) {
        for (int trial = 0; trial < 25; ++trial) {
            auto v = random_polyvector(Q, rng, 3, q);
            auto x = random_chain(Q, rng, 3, q);
            CHECK(pi_cd_evaluate(v, x) == pairing(v, hkr_pi(x)));
        }
    }
    PrimeField F3(3);
    for (int trial = 0; trial < 25; ++trial) {
        auto v = random_polyvector(F3, rng, 2, 2);
        auto x = random_chain(F3, rng, 2, 2);
        CHECK(pi_cd_evaluate(v, x) == pairing(v, hkr_pi(x)));
    }
}

TEST_CASE("exterior sums canonicalize index tuples")
{
    DifferentialForm<RationalField> w(Q, 2, 2);
    w.add_term(one(2), {1, 0}, Q.one()); // = -dt1^dt2
    DifferentialForm<RationalField> sorted(Q, 2, 2);
    sorted.add_term(one(2), {0, 1}, Q.from_int(-1));
    CHECK(w == sorted);
    w.add_term(one(2), {0, 0}, Q.one()); // repeated index dies
    CHECK(w == sorted);
    CHECK_THROWS_AS(w.add_term(one(2), {0}, Q.one()), DegreeMismatch);
    CHECK_THROWS_AS(w.add_term(one(2), {0, 2}, Q.one()), IndexOutOfRange);
    CHECK(w.to_string() == "-1*dt1*dt2");
}

TEST_CASE("degree preservation of pi and eps")
{
    std::mt19937 rng(7009);
    for (int trial = 0; trial < 20; ++trial) {
        // Build a homogeneous chain of total degree 4.
        CE x(Q, 2, 2);
        for (int w = 0; w < 3; ++w) {
            int d0 = random_int(rng, 0, 2);
            int d1 = random_int(rng, 0, 2);
            std::vector<int> degs = {d0, d1, 4 - d0 - d1};
            std::vector<Monomial> slots;
            for (int dd : degs) {
                std::vector<int> e(2, 0);
                for (int k = 0; k < dd; ++k) ++e[static_cast<size_t>(random_int(rng, 0, 1))];
                slots.push_back(Monomial(e));
            }
            x.add_word(slots, Q.one());
        }
        REQUIRE(x.homogeneous_of_degree(4));
        CHECK(hkr_pi(x).homogeneous_of_degree(4));
        if (!x.is_zero()) CHECK(antisymmetrization_eps(hkr_pi(x)).homogeneous_of_degree(4));
    }
}
