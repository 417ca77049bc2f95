#include <catch2/catch_amalgamated.hpp>

#include <hhlab/cech.hpp>
#include <hhlab/monomial.hpp>

using namespace hhlab;

namespace {

RationalField Q;

uint64_t h0_closed(int n, int d) { return d >= 0 ? binomial(n + d, n) : 0; }
uint64_t hn_closed(int n, int d) { return -d - 1 >= n ? binomial(-d - 1, n) : 0; }

} // namespace

TEST_CASE("sheaf spec validation and normalization")
{
    auto o3 = SheafSpec::line_bundle(2, 3);
    REQUIRE(o3.to_string() == "O(3)");
    REQUIRE(o3.normalized().p == 0);
    REQUIRE(o3.normalized().k == 3);

    auto wt = SheafSpec::wedge_tangent(2, 1);
    REQUIRE(wt.to_string() == "Wedge^1T");
    auto nwt = wt.normalized();
    REQUIRE(nwt.kind == SheafSpec::Kind::OmegaTwist);
    REQUIRE(nwt.p == 1);
    REQUIRE(nwt.k == 3);
    REQUIRE(SheafSpec::omega_twist(3, 2, -1).to_string() == "Omega^2(-1)");

    REQUIRE_THROWS_AS(SheafSpec::line_bundle(0, 1), InvalidSpec);
    REQUIRE_THROWS_AS(SheafSpec::omega_twist(2, 3, 0), InvalidSpec);
    REQUIRE_THROWS_AS(SheafSpec::omega_twist(2, -1, 0), InvalidSpec);
    REQUIRE_THROWS_AS(SheafSpec::wedge_tangent(2, 3), InvalidSpec);
}

TEST_CASE("line bundle cohomology on P^1 and P^2")
{
    REQUIRE(line_bundle_cohomology(Q, 1, 0) == std::vector<uint64_t>{1, 0});
    REQUIRE(line_bundle_cohomology(Q, 1, -2) == std::vector<uint64_t>{0, 1});
    REQUIRE(line_bundle_cohomology(Q, 1, -1) == std::vector<uint64_t>{0, 0});
    REQUIRE(line_bundle_cohomology(Q, 1, 3) == std::vector<uint64_t>{4, 0});
    REQUIRE(line_bundle_cohomology(Q, 2, 3) == std::vector<uint64_t>{10, 0, 0});
    REQUIRE(line_bundle_cohomology(Q, 2, -4) == std::vector<uint64_t>{0, 0, 3});
}

TEST_CASE("line bundle cohomology matches the closed form")
{
    for (int n = 1; n <= 3; ++n)
        for (int d = -6; d <= 6; ++d) {
            CAPTURE(n, d);
            auto h = line_bundle_cohomology(Q, n, d);
            REQUIRE(h.size() == static_cast<size_t>(n) + 1);
            REQUIRE(h.front() == h0_closed(n, d));
            REQUIRE(h.back() == hn_closed(n, d));
            for (size_t m = 1; m + 1 < h.size(); ++m) REQUIRE(h[m] == 0);
        }
}

TEST_CASE("Serre duality for line bundles")
{
    for (int n = 1; n <= 2; ++n)
        for (int d = -5; d <= 5; ++d) {
            auto h = line_bundle_cohomology(Q, n, d);
            auto dual = line_bundle_cohomology(Q, n, -d - n - 1);
            CAPTURE(n, d);
            for (int m = 0; m <= n; ++m) REQUIRE(h[static_cast<size_t>(m)] == dual[static_cast<size_t>(n - m)]);
        }
    auto h = line_bundle_cohomology(Q, 3, 8);
    auto dual = line_bundle_cohomology(Q, 3, -12);
    for (int m = 0; m <= 3; ++m) REQUIRE(h[static_cast<size_t>(m)] == dual[static_cast<size_t>(3 - m)]);
}

TEST_CASE("cotangent sheaves")
{
    // Omega^1 on P^1 is O(-2)
    for (int k = -2; k <= 3; ++k)
        REQUIRE(sheaf_cohomology(Q, SheafSpec::omega_twist(1, 1, k)) ==
                line_bundle_cohomology(Q, 1, k - 2));
    // Hodge numbers: h^p(Omega^p) = 1 and nothing else
    REQUIRE(sheaf_cohomology(Q, SheafSpec::omega_twist(2, 1, 0)) ==
            std::vector<uint64_t>{0, 1, 0});
    REQUIRE(sheaf_cohomology(Q, SheafSpec::omega_twist(3, 1, 0)) ==
            std::vector<uint64_t>{0, 1, 0, 0});
    // top forms are a line bundle: Omega^2(k) on P^2 is O(k-3)
    for (int k = -1; k <= 4; ++k)
        REQUIRE(sheaf_cohomology(Q, SheafSpec::omega_twist(2, 2, k)) ==
                line_bundle_cohomology(Q, 2, k - 3));
    // twisted acyclic / globally generated cases on P^2
    REQUIRE(sheaf_cohomology(Q, SheafSpec::omega_twist(2, 1, 1)) ==
            std::vector<uint64_t>{0, 0, 0});
    REQUIRE(sheaf_cohomology(Q, SheafSpec::omega_twist(2, 1, 2)) ==
            std::vector<uint64_t>{3, 0, 0});
}

TEST_CASE("wedge powers of the tangent sheaf")
{
    REQUIRE(sheaf_cohomology(Q, SheafSpec::wedge_tangent(1, 1)) ==
            std::vector<uint64_t>{3, 0});
    REQUIRE(sheaf_cohomology(Q, SheafSpec::wedge_tangent(2, 0)) ==
            std::vector<uint64_t>{1, 0, 0});
    REQUIRE(sheaf_cohomology(Q, SheafSpec::wedge_tangent(2, 1)) ==
            std::vector<uint64_t>{8, 0, 0});
    // the top wedge is O(n+1)
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        auto h = sheaf_cohomology(Q, SheafSpec::wedge_tangent(n, n));
        REQUIRE(h.front() == h0_closed(n, n + 1));
        for (size_t m = 1; m < h.size(); ++m) REQUIRE(h[m] == 0);
    }
}

TEST_CASE("sheaf cohomology is characteristic-free")
{
    PrimeField F2(2), F5(5);
    for (int d : {-4, -1, 0, 2})
        REQUIRE(line_bundle_cohomology(F2, 2, d) == line_bundle_cohomology(Q, 2, d));
    REQUIRE(sheaf_cohomology(F2, SheafSpec::omega_twist(2, 1, 0)) ==
            std::vector<uint64_t>{0, 1, 0});
    REQUIRE(sheaf_cohomology(F5, SheafSpec::wedge_tangent(2, 1)) ==
            std::vector<uint64_t>{8, 0, 0});
}

TEST_CASE("enumeration details certify the bound")
{
    CechDetails det;
    auto h = sheaf_cohomology(Q, SheafSpec::line_bundle(2, -3), &det);
    REQUIRE(h == std::vector<uint64_t>{0, 0, 1});
    REQUIRE(det.min_component_bound == -(3 + 2 + 2));
    REQUIRE(det.multidegrees > 0);
    REQUIRE(det.shell_checked > 0);
}
