#include <doctest.h>

#include <cmath>
#include <vector>

#include "cse/errors.hpp"
#include "cse/scan.hpp"

using namespace cse;

namespace {

std::vector<double> linspace(double a, double b, std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

}  // namespace

TEST_SUITE("scan")
{
TEST_CASE("Fei at q = 0 is unimodular along L")
{
    std::vector<double> q{0.0};
    auto s = scan_qL(Scheme::fei, 0.4, q, linspace(-3, 3, 121));
    for (std::size_t j = 0; j < s.L.size(); ++j)
        CHECK(s.at(0, j) <= 1 + 1e-9);
    CHECK(s.degenerate == 0);
}

TEST_CASE("Fei at K = 0: small-L instability appears past lambda|a|^2 = 1/2")
{
    // τ = 1e-2, ℓ ≥ 1 means L ≥ 0.1; q = 0.005 is λ|a|² = 1/2
    std::vector<double> q{0.004, 0.006};
    auto s = scan_qL(Scheme::fei, 0, q, linspace(0.1, 0.5, 41));
    double below = 0, above = 0;
    for (std::size_t j = 0; j < s.L.size(); ++j)
    {
        below = std::max(below, s.at(0, j));
        above = std::max(above, s.at(1, j));
    }
    CHECK(below <= 1 + 1e-6);
    CHECK(above > 1 + 1e-6);
}

TEST_CASE("Besse at K = 0 follows the exact instability band")
{
    auto q = linspace(-1, 1, 21);
    auto L = linspace(-3, 3, 241);
    auto s = scan_qL(Scheme::besse, 0, q, L);
    double const dL = L[1] - L[0];
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < L.size(); ++j)
        {
            bool const unstable = s.at(i, j) > 1 + 1e-6;
            if (q[i] >= 0)
            {
                CHECK_FALSE(unstable);
                continue;
            }
            double const edge = std::sqrt(-2 * q[i]);
            if (unstable)
                CHECK(std::abs(L[j]) < edge + dL);
            else if (L[j] != 0)
                CHECK(std::abs(L[j]) > edge - dL);
        }
}

TEST_CASE("region scans")
{
    std::vector<double> q{0.01, 0.1, 1}, K{0, 1};
    auto fei = scan_qK(Scheme::fei, q, K);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK_FALSE(fei.is_stable(i, j));

    std::vector<double> zero{0.0};
    for (Scheme s : {Scheme::fei, Scheme::besse, Scheme::modified})
    {
        auto r = scan_qK(s, zero, zero, {}, {0.75, 0.5});
        CHECK(r.is_stable(0, 0));
        CHECK(r.at(0, 0) == doctest::Approx(1));
    }
    // θ = 1/2 has a double root at -1 whose computed split reaches ~1e-6 for |L| near 10
    auto half = scan_qK(Scheme::modified, zero, zero, {-3, 3, 601}, {0.5, 0.5});
    CHECK(half.is_stable(0, 0));
}

TEST_CASE("unrefined region scan equals a brute-force root scan")
{
    auto q = linspace(0, 1.5, 7);
    auto K = linspace(0, 1.5, 7);
    LScanSpec spec{-4, 4, 161, false};
    auto Ls = spec.grid();
    for (Scheme s : {Scheme::besse, Scheme::modified})
    {
        ScanOptions opts{0.5, 1};
        auto r = scan_qK(s, q, K, spec, opts);
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < K.size(); ++j)
            {
                double worst = 0;
                for (double L : Ls)
                    worst = std::max(worst, max_modulus_at(s, ModePoint{q[i], K[j], L}, 0.5, 1));
                if (std::abs(worst - 1 - opts.tol) < 1e-7)
                    continue;
                CAPTURE(to_string(s));
                CAPTURE(q[i]);
                CAPTURE(K[j]);
                CHECK(r.is_stable(i, j) == (worst <= 1 + opts.tol));
            }
    }
}

TEST_CASE("refinement only adds instability")
{
    auto q = linspace(0.05, 2, 12);
    auto K = linspace(0, 1.5, 12);
    LScanSpec coarse{-10, 10, 201, false}, refined{-10, 10, 201, true};
    auto a = scan_qK(Scheme::besse, q, K, coarse);
    auto b = scan_qK(Scheme::besse, q, K, refined);
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < K.size(); ++j)
            if (b.is_stable(i, j))
                CHECK(a.is_stable(i, j));
}

TEST_CASE("results do not depend on the worker count")
{
    auto q = linspace(-0.5, 1, 9);
    auto K = linspace(0, 1.5, 9);
    ScanOptions one{0.5, 0.5, 1e-6, 1}, four{0.5, 0.5, 1e-6, 4};
    auto a = scan_qK(Scheme::modified, q, K, {-5, 5, 201, true}, one);
    auto b = scan_qK(Scheme::modified, q, K, {-5, 5, 201, true}, four);
    CHECK(a.stable == b.stable);
    for (std::size_t i = 0; i < a.max_modulus.size(); ++i)
        CHECK((a.max_modulus[i] == b.max_modulus[i] || (std::isnan(a.max_modulus[i]) && std::isnan(b.max_modulus[i]))));

    auto c = scan_qL(Scheme::fei, 0.3, q, linspace(-2, 2, 41), one);
    auto d = scan_qL(Scheme::fei, 0.3, q, linspace(-2, 2, 41), four);
    CHECK(c.max_modulus == d.max_modulus);
}

TEST_CASE("degenerate cells are NaN and counted")
{
    std::vector<double> q{1.0};
    auto s = scan_qL(Scheme::modified, 0, q, linspace(-1, 1, 5), {0.5, 0});
    CHECK(s.degenerate == 1);
    CHECK(std::isnan(s.at(0, 2)));
}

TEST_CASE("grid validation")
{
    std::vector<double> ok{0, 1}, empty, unsorted{1, 0}, dup{0, 0}, bad{0, NAN};
    CHECK_THROWS_AS(scan_qL(Scheme::fei, 0, empty, ok), ConfigError);
    CHECK_THROWS_AS(scan_qL(Scheme::fei, 0, unsorted, ok), ConfigError);
    CHECK_THROWS_AS(scan_qL(Scheme::fei, 0, ok, dup), ConfigError);
    CHECK_THROWS_AS(scan_qK(Scheme::fei, ok, bad), ConfigError);
    CHECK_THROWS_AS(scan_qK(Scheme::fei, ok, ok, {1, -1, 10}), ConfigError);
    CHECK_THROWS_AS(scan_qK(Scheme::fei, ok, ok, {}, {1, 1, -1}), ConfigError);

    LScanSpec spec;
    auto g = spec.grid();
    CHECK(g.size() == 2001);
    CHECK(g.front() == -10);
    CHECK(g.back() == 10);
    CHECK(g[1000] == doctest::Approx(0).epsilon(1e-15));
}
}
