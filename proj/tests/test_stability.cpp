#include <doctest.h>

#include <array>
#include <numbers>
#include <random>

#include "cse/errors.hpp"
#include "cse/stability.hpp"

using namespace cse;
using std::numbers::pi;

namespace {

Complex dominant(std::vector<Complex> const& roots)
{
    Complex d = 0;
    for (auto r : roots)
        if (std::abs(r) > std::abs(d))
            d = r;
    return d;
}

StabilityPolynomial random_polynomial(Scheme scheme, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> q(-1, 2), K(0, 1.5), L(-3, 3), th(0, 1), ga(0, 1);
    for (;;)
    {
        try
        {
            return stability_polynomial(scheme, ModePoint{q(rng), K(rng), L(rng)}, th(rng), ga(rng));
        }
        catch (DispersionError const&)
        {
        }
    }
}

}  // namespace

TEST_SUITE("stability")
{
TEST_CASE("mode symbols")
{
    auto s = symbols(ModePoint{0.3, 0.5, -0.2});
    CHECK(s.q == 0.3);
    CHECK(s.carrier == doctest::Approx(0.25));
    CHECK(s.plus == doctest::Approx(0.09));
    CHECK(s.minus == doctest::Approx(0.49));

    PlaneWaveContext ctx{1, 4, 2, 0.01, 0};
    auto c = symbols(ctx, 3);
    CHECK(c.carrier == doctest::Approx(0.16));
    CHECK(c.plus == doctest::Approx(0.49));
    CHECK(c.minus == doctest::Approx(0.01));
}

TEST_CASE("every polynomial is self-reciprocal and its roots solve it")
{
    std::mt19937_64 rng(79);
    for (Scheme scheme : {Scheme::fei, Scheme::besse, Scheme::modified})
        for (int trial = 0; trial < 200; ++trial)
        {
            auto p = random_polynomial(scheme, rng);
            CHECK(p.degree() == 4);
            auto rep = analyse(p);
            REQUIRE(rep.roots.size() == 4);
            CHECK(self_reciprocity_defect(rep.roots) < 1e-8);
            double scale = 0;
            for (auto c : p.coeffs)
                scale = std::max(scale, std::abs(c));
            for (auto r : rep.roots)
                CHECK(std::abs(evaluate(p.coeffs, r)) <= 1e-8 * scale);
        }
}

TEST_CASE("swapping l and -l conjugates the roots")
{
    // c_l <-> c_{-l} reverses the coefficients, so z -> 1/z, which on a
    // self-inversive root set is z -> conj(z)
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> q(-1, 2), K(0, 1.5), L(0.1, 3);
    int done = 0;
    while (done < 100)
    {
        ModePoint a{q(rng), K(rng), L(rng)};
        ModePoint b{a.q, a.K, -a.L};
        for (Scheme scheme : {Scheme::fei, Scheme::besse, Scheme::modified})
        {
            try
            {
                auto ra = analyse(stability_polynomial(scheme, a, 0.5, 0.5)).roots;
                auto rb = analyse(stability_polynomial(scheme, b, 0.5, 0.5)).roots;
                for (auto& r : ra)
                    r = std::conj(r);
                CHECK(multiset_distance(ra, rb) < 1e-6);
            }
            catch (DispersionError const&)
            {
            }
        }
        ++done;
    }
}

TEST_CASE("Fei at q = 0, K = 0 factorises")
{
    for (double L : {0.0, 0.3, 1.0, 2.5})
    {
        auto rep = analyse(fei_polynomial(ModePoint{0, 0, L}));
        Complex const z2 = std::pow(Complex{1, L * L}, 2) / (1 + std::pow(L, 4));
        Complex const z = std::sqrt(z2);
        std::vector<Complex> expect{z, -z, std::conj(z), -std::conj(z)};
        CHECK(multiset_distance(rep.roots, expect) < 1e-7);
        CHECK(rep.stable);
    }
}

TEST_CASE("discrete Fei coefficients agree with the grid symbols")
{
    PlaneWaveContext ctx{1.3, 2, 0.9, 0.01, 0.1};
    for (double ell : {1.0, 3.0, -4.0})
    {
        auto lit = fei_discrete_coefficients(ctx, ell);
        auto sym = fei_coefficients(symbols(ctx, ell));
        CHECK(std::abs(lit.c_plus - sym.c_plus) < 1e-13);
        CHECK(std::abs(lit.c_minus - sym.c_minus) < 1e-13);
        CHECK(lit.b == doctest::Approx(sym.b));
    }
    CHECK_THROWS_AS(fei_discrete_coefficients(PlaneWaveContext{1, 0, 1, 0.01, 0}, 1), ConfigError);

    // h -> 0 approaches the continuous polynomial
    PlaneWaveContext fine{1.3, 2, 0.9, 0.01, 1e-4};
    auto d = analyse(fei_polynomial(fine, 3, true)).roots;
    auto c = analyse(fei_polynomial(fine, 3, false)).roots;
    CHECK(multiset_distance(d, c) < 1e-6);
}

TEST_CASE("Fei threshold in continuous space and on the grid")
{
    double const tau = 0.01;
    auto at = [&](double mu, double h, double ell) {
        PlaneWaveContext ctx{1, 0, mu, tau, h};
        return analyse(fei_polynomial(ctx, ell, h > 0));
    };
    CHECK(at(0.45, 0, 1).stable);
    CHECK_FALSE(at(0.55, 0, 1).stable);

    double const h = 0.1;
    double const mu_star = (1 - std::cos(h)) / (h * h);
    CHECK(at(mu_star * (1 - 1e-3), h, 1).stable);
    CHECK_FALSE(at(mu_star * (1 + 1e-3), h, 1).stable);
    for (double ell : {2.0, 5.0, 31.0})
        CHECK(at(mu_star * (1 - 1e-3), h, ell).stable);
}

TEST_CASE("modified reduces to Fei at theta = gamma = 1")
{
    std::mt19937_64 rng(89);
    std::uniform_real_distribution<double> q(-1, 2), K(0, 1.5), L(-3, 3);
    for (int trial = 0; trial < 100; ++trial)
    {
        ModePoint pt{q(rng), K(rng), L(rng)};
        auto f = fei_polynomial(pt).coeffs;
        auto m = modified_polynomial(pt, 1, 1).coeffs;
        for (std::size_t i = 0; i < 5; ++i)
            CHECK(std::abs(f[i] - m[i]) <= 1e-14 * std::max(1.0, std::abs(f[i])));
    }
}

TEST_CASE("all schemes are unimodular at q = 0")
{
    for (double K : {0.0, 0.4, 1.2})
        for (double L : {-2.0, -0.5, 0.7, 3.0})
        {
            CHECK(analyse(fei_polynomial(ModePoint{0, K, L})).stable);
            CHECK(analyse(besse_polynomial(ModePoint{0, K, L}).quartic).stable);
            for (double theta : {0.5, 0.75, 1.0})
            {
                // θ = 1/2 at K = 0 has a double root at -1, resolved only to ~sqrt(eps)
                try
                {
                    CHECK(analyse(modified_polynomial(ModePoint{0, K, L}, theta, 0.5), 1e-7).stable);
                }
                catch (DispersionError const&)
                {
                }
            }
        }
}

TEST_CASE("modified degenerate leading coefficient")
{
    // c c̄₋ = 1 + γ²q² equals (1-γ)²q² at γ = 0, q = 1, K = L = 0
    CHECK_THROWS_AS(modified_polynomial(ModePoint{1, 0, 0}, 0.5, 0), DegeneratePolynomialError);
}

TEST_CASE("spurious root asymptotes")
{
    CHECK(std::abs(fei_spurious_asymptote(1, 0.5, 0.01) + 1.0) == 0);
    CHECK(fei_growth_constant(0.5) == 0);
    CHECK(fei_growth_constant(2) == doctest::Approx(std::sqrt(3.0)));
    CHECK(std::abs(fei_spurious_asymptote(1, 2, 0.01) - (-1.0173205080756888)) < 1e-15);

    auto [b1, b2] = besse_asymptote(1, -1, 0.01);
    CHECK(std::abs(b1 - 1.01) < 1e-15);
    CHECK(std::abs(b2 - 0.99) < 1e-15);
    auto [d1, d2] = besse_asymptote(1, 1, 0.01);
    CHECK(std::abs(d1 - Complex{1, 0.01 * std::sqrt(3.0)}) < 1e-15);
    CHECK(std::abs(d2 - Complex{1, -0.01 * std::sqrt(3.0)}) < 1e-15);
    CHECK(std::abs(d1) - 1 < 1e-3);
    auto [z1, z2] = besse_asymptote(0, -1, 0.01);
    CHECK(z1 == Complex{1});
    CHECK(z2 == Complex{1});
}

TEST_CASE("dominant roots sit near their asymptotes")
{
    double const tau = 1e-3;
    PlaneWaveContext fei_ctx{1, 0, 2, tau, 0};
    auto fd = dominant(analyse(fei_polynomial(fei_ctx, 1, false)).roots);
    CHECK(std::abs(fd - fei_spurious_asymptote(1, 2, tau)) < 10 * tau * tau);
    CHECK(fd.real() < 0);

    auto md = dominant(analyse(modified_polynomial(fei_ctx, 1, 1, 1)).roots);
    CHECK(std::abs(md - (-(1 + tau * std::sqrt(3.0)))) < 10 * tau * tau);

    PlaneWaveContext besse_ctx{1, 0, -1, 0.01, 0};
    auto bd = dominant(analyse(besse_polynomial(besse_ctx, 1).quartic).roots);
    CHECK(bd.real() > 0);
    CHECK(std::abs(bd - besse_asymptote(1, -1, 0.01).first) < 1e-3);
}

TEST_CASE("Besse structure")
{
    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> q(-1, 2), K(0, 1.5), L(-3, 3);
    for (int trial = 0; trial < 200; ++trial)
    {
        auto b = besse_polynomial(ModePoint{q(rng), K(rng), L(rng)});
        CHECK(b.quartic.degree() == 4);
        CHECK(b.cubic.degree() == 3);
        CHECK(std::abs(evaluate(b.quartic.coeffs, -1.0)) < 1e-10 * std::abs(b.quartic.coeffs[0]));
        CHECK(std::abs(std::abs(b.norm.f) - 1) < 1e-12);
        auto n = b.norm.coeffs();
        Complex const lead = b.cubic.coeffs[0];
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::abs(n[i] - b.cubic.coeffs[i] / lead) < 1e-12);
        // with f factored out, coeff(z²) is conj(coeff(z))
        CHECK(std::abs(n[1] / b.norm.f - std::conj(n[2])) < 1e-12);
        auto rn = find_roots(std::vector<Complex>(n.begin(), n.end())).roots;
        auto rc = analyse(b.cubic).roots;
        CHECK(multiset_distance(rn, rc) < 1e-7);
    }
}

TEST_CASE("Besse at k = 0 matches the exact stability condition")
{
    double const tau = 0.01;
    for (double mu : {-2.0, -1.0, -0.3, 0.0, 0.5, 2.0})
        for (double ell : {0.5, 1.0, 1.5, 2.0, 3.0})
        {
            if (std::abs(ell * ell + 2 * mu) < 0.05)
                continue;
            PlaneWaveContext ctx{1, 0, mu, tau, 0};
            bool const stable = analyse(besse_polynomial(ctx, ell).cubic, 1e-8).stable;
            CAPTURE(mu);
            CAPTURE(ell);
            CHECK(stable == (ell * ell >= -2 * mu));
        }
}

TEST_CASE("d-dimensional polynomials")
{
    double const tau = 0.01;
    std::array<double, 1> k{2}, ell{3};
    PlaneWaveContext ctx{1, 2, 1.5, tau, 0};
    auto a = fei_polynomial_nd(ctx.q(), tau, 0, k, ell);
    auto b = fei_polynomial(ctx, 3, false);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(std::abs(a.coeffs[i] - b.coeffs[i]) < 1e-15);
    CHECK(a.provenance.d == 1);

    auto c = besse_polynomial_nd(ctx.q(), tau, 0, k, ell);
    auto e = besse_polynomial(ctx, 3);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(std::abs(c.quartic.coeffs[i] - e.quartic.coeffs[i]) < 1e-15);

    std::array<double, 2> k2{1, 2}, ell2{3, -1};
    auto two = besse_polynomial_nd(0.02, tau, 0.05, k2, ell2);
    CHECK(two.quartic.provenance.d == 2);
    CHECK(std::abs(evaluate(two.quartic.coeffs, -1.0)) < 1e-12);
    CHECK(self_reciprocity_defect(analyse(two.quartic).roots) < 1e-8);
    CHECK(self_reciprocity_defect(analyse(fei_polynomial_nd(0.02, tau, 0.05, k2, ell2)).roots) < 1e-8);

    std::array<double, 1> bad{1};
    CHECK_THROWS_AS(fei_polynomial_nd(0.02, tau, 0, k2, bad), ConfigError);
    CHECK_THROWS_AS(besse_polynomial(ModePoint{0.1, 0, 1}, 0), ConfigError);
}

TEST_CASE("provenance")
{
    PlaneWaveContext ctx{2, 3, 0.5, 0.04, 0.1};
    auto p = modified_polynomial(ctx, 2, 0.5, 0.7);
    CHECK(p.provenance.scheme == Scheme::modified);
    CHECK(p.provenance.q == doctest::Approx(0.08));
    CHECK(p.provenance.K == doctest::Approx(0.6));
    CHECK(p.provenance.L == doctest::Approx(0.4));
    CHECK(p.provenance.h == 0.1);
    CHECK(p.provenance.theta == 0.5);
    CHECK(p.provenance.gamma == 0.7);
}

TEST_CASE("Besse boundary curve")
{
    CHECK(std::abs(besse_boundary(1.0, 0) - (-1.0)) < 1e-15);
    auto rep = find_roots(NormalizedCubic{1.0, -1.0}.coeffs());
    CHECK(multiset_distance(rep.roots, std::vector<Complex>{1.0, 1.0, -1.0}) < 1e-7);

    CHECK_THROWS_AS(besse_boundary(Complex{1.1, 0}, 0), ConfigError);

    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> angle(0, 2 * pi);
    for (int trial = 0; trial < 100; ++trial)
    {
        Complex const f = std::polar(1.0, angle(rng));
        double const theta = angle(rng);
        Complex const g = besse_boundary(f, theta);
        CHECK(boundary_necessary(g));
        auto roots = find_roots(NormalizedCubic{f, g}.coeffs()).roots;
        Complex const z = std::polar(1.0, theta);
        int near = 0;
        for (auto r : roots)
        {
            CHECK(std::abs(std::abs(r) - 1) < 1e-5);
            near += std::abs(r - z) < 1e-5;
        }
        CHECK(near == 2);
    }

    // |g| = 3 exactly when e^{3iθ} = -f
    double const alpha = 0.7;
    double const theta = (alpha + pi) / 3;
    CHECK(std::abs(besse_boundary(std::polar(1.0, alpha), theta)) == doctest::Approx(3).epsilon(1e-14));
    CHECK(std::abs(besse_boundary(std::polar(1.0, alpha), theta + 0.1)) < 3);
    CHECK(boundary_sufficient(Complex{0.6, 0.8}));
    CHECK_FALSE(boundary_sufficient(Complex{0.6, 0.81}));
}
}
