#include <doctest.h>

#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "cse/dispersion.hpp"
#include "cse/errors.hpp"
#include "cse/reference.hpp"
#include "cse/schemes.hpp"
#include "helpers.hpp"

using namespace cse;
using std::numbers::pi;

namespace {

Complex const I{0, 1};

// History (e^{iωτ}U, U) of a plane wave advancing by e^{-iωτ} per step
TwoStepState plane_history(PeriodicGrid const& g, Complex a, int k, double omega_tau)
{
    auto curr = sample_plane_wave(g, a, k, 0, 0);
    return TwoStepState{test::scaled(curr, std::polar(1.0, omega_tau)), curr, 1};
}

double sup_minus_scaled(ComplexField const& next, ComplexField const& curr, Complex factor)
{
    return sup_distance(next, test::scaled(curr, factor));
}

}  // namespace

TEST_SUITE("schemes")
{
TEST_CASE("scheme names")
{
    CHECK(parse_scheme("fei") == Scheme::fei);
    CHECK(parse_scheme("besse") == Scheme::besse);
    CHECK(parse_scheme("modified") == Scheme::modified);
    CHECK(to_string(Scheme::modified) == "modified");
    CHECK_THROWS_AS(parse_scheme("leapfrog"), ConfigError);
    CHECK_THROWS_AS((SchemeParams{0.0, 1, 1, 1}.validate()), ConfigError);
    CHECK_THROWS_AS((SchemeParams{-0.1, 1, 1, 1}.validate()), ConfigError);
}

TEST_CASE("zero data stays zero")
{
    PeriodicGrid g(32);
    auto z = ComplexField::zeros(g);
    SchemeParams p{0.01, 2, 1, 1};
    CHECK(norms(fei_step(TwoStepState{z, z, 1}, p)).sup == 0);
    for (auto [theta, gamma] : {std::pair{1.0, 1.0}, {0.5, 1.0}, {1.0, 0.5}, {0.5, 0.5}, {0.0, 0.2}})
    {
        SchemeParams pm{0.01, 2, theta, gamma};
        CHECK(norms(modified_step(TwoStepState{z, z, 1}, pm)).sup == 0);
    }

    std::vector<double> phi(32);
    for (std::size_t m = 0; m < 32; ++m)
        phi[m] = 0.1 * m;
    auto next = besse_step(BesseState{z, RealField(g, phi), 0}, p);
    CHECK(norms(next.curr).sup == 0);
    for (std::size_t m = 0; m < 32; ++m)
        CHECK(next.phi[m] == -phi[m]);
    CHECK(next.step_index == 1);
}

TEST_CASE("Fei propagates a linear plane wave exactly")
{
    PeriodicGrid g(64);
    double const tau = 0.05;
    for (int k : {0, 1, 3, -7, 20})
    {
        double const wt = omega_tau(Scheme::fei, 0, laplacian_symbol(k, tau, g.spacing()));
        auto s = plane_history(g, {0.8, 0.3}, k, wt);
        auto next = fei_step(s, SchemeParams{tau, 0});
        CHECK(sup_minus_scaled(next, s.curr, std::polar(1.0, -wt)) < 1e-10);
    }
}

TEST_CASE("modified scheme propagates a linear plane wave exactly")
{
    PeriodicGrid g(64);
    double const tau = 0.02;
    for (double theta : {0.0, 0.25, 0.5, 1.0})
        for (int k : {1, 4, -6})
        {
            double const wt = omega_tau(Scheme::modified, 0, laplacian_symbol(k, tau, g.spacing()), theta);
            auto s = plane_history(g, 1.0, k, wt);
            auto next = modified_step(s, SchemeParams{tau, 0, theta, 1});
            CHECK(sup_minus_scaled(next, s.curr, std::polar(1.0, -wt)) < 1e-10);
        }
}

TEST_CASE("Besse keeps a plane wave and its phi")
{
    PeriodicGrid g(64);
    double const tau = 0.01, lambda = 2;
    Complex const a{1.2, -0.5};
    for (int k : {0, 2, -5})
    {
        double const q = lambda * tau * std::norm(a);
        double const wt = omega_tau(Scheme::besse, q, laplacian_symbol(k, tau, g.spacing()));
        CHECK(std::tan(wt / 2) == doctest::Approx((q + laplacian_symbol(k, tau, g.spacing())) / 2));
        auto u = sample_plane_wave(g, a, k, 0, 0);
        BesseState s{u, RealField(g, std::vector<double>(64, std::norm(a))), 0};
        auto next = besse_step(s, SchemeParams{tau, lambda});
        for (std::size_t m = 0; m < 64; ++m)
            CHECK(next.phi[m] == doctest::Approx(std::norm(a)).epsilon(1e-14));
        CHECK(sup_minus_scaled(next.curr, u, std::polar(1.0, -wt)) < 1e-12);
    }
}

TEST_CASE("nonlinear plane waves are eigenmodes of every scheme")
{
    PeriodicGrid g(48);
    double const tau = 0.01, lambda = -1.5;
    Complex const a{0.6, 0.8};
    int const k = 3;
    double const q = lambda * tau * std::norm(a);
    double const sym = laplacian_symbol(k, tau, g.spacing());
    auto u0 = sample_plane_wave(g, a, k, 0, 0);

    struct Case
    {
        Scheme scheme;
        double theta, gamma;
    };
    for (auto c : {Case{Scheme::fei, 1, 1}, Case{Scheme::besse, 1, 1}, Case{Scheme::modified, 0.5, 1},
                   Case{Scheme::modified, 1, 0.5}, Case{Scheme::modified, 0.5, 0.5}})
    {
        double const wt = omega_tau(c.scheme, q, sym, c.theta);
        SchemeParams p{tau, lambda, c.theta, c.gamma};
        RunOptions opts;
        opts.startup = {StartupMethod::exact, wt / tau};
        double worst_modulus = 0, worst_phase = 0;
        std::optional<ComplexField> prev;
        run(u0, p, c.scheme, 20 * tau, opts, [&](StepView const& v) {
            if (prev)
            {
                Complex const r = extract_mode(v.current, k) / extract_mode(*prev, k);
                worst_modulus = std::max(worst_modulus, std::abs(std::abs(r) - 1));
                worst_phase = std::max(worst_phase, std::abs(std::arg(r) + wt));
            }
            prev = v.current;
        });
        CAPTURE(to_string(c.scheme));
        CAPTURE(c.theta);
        CAPTURE(c.gamma);
        CHECK(worst_modulus <= 1e-10);
        CHECK(worst_phase <= 1e-10);
    }
}

TEST_CASE("modified at theta = gamma = 1 is Fei")
{
    std::mt19937_64 rng(17);
    PeriodicGrid g(64);
    for (int trial = 0; trial < 5; ++trial)
    {
        TwoStepState s{test::random_smooth(g, rng), test::random_smooth(g, rng), 4};
        SchemeParams p{0.01, 2, 1, 1};
        CHECK(sup_distance(fei_step(s, p), modified_step(s, p)) < 1e-12);
    }
}

TEST_CASE("linear steppers are linear maps")
{
    std::mt19937_64 rng(23);
    PeriodicGrid g(40);
    auto u1 = test::random_smooth(g, rng), u2 = test::random_smooth(g, rng);
    auto v1 = test::random_smooth(g, rng), v2 = test::random_smooth(g, rng);
    Complex const alpha{0.3, -1.1}, beta{-2.0, 0.4};
    SchemeParams p{0.02, 0, 0.5, 0.5};

    auto mix = [&](ComplexField const& a, ComplexField const& b) { return test::combine(alpha, a, beta, b); };

    auto fu = fei_step({u1, u2, 1}, p), fv = fei_step({v1, v2, 1}, p);
    CHECK(sup_distance(fei_step({mix(u1, v1), mix(u2, v2), 1}, p), mix(fu, fv)) < 1e-12);

    auto mu = modified_step({u1, u2, 1}, p), mv = modified_step({v1, v2, 1}, p);
    CHECK(sup_distance(modified_step({mix(u1, v1), mix(u2, v2), 1}, p), mix(mu, mv)) < 1e-12);

    RealField phi(g, std::vector<double>(40, 0.0));
    auto bu = besse_step({u1, phi, 0}, p).curr, bv = besse_step({v1, phi, 0}, p).curr;
    CHECK(sup_distance(besse_step({mix(u1, v1), phi, 0}, p).curr, mix(bu, bv)) < 1e-12);
}

TEST_CASE("gamma = 1 is complex-linear in the old level, gamma != 1 only real-linear")
{
    // θ = 1 removes U^n from the right-hand side, so U^{n-1} -> U^{n+1} is linear
    std::mt19937_64 rng(29);
    PeriodicGrid g(32);
    auto curr = test::random_smooth(g, rng);
    auto prev = test::random_smooth(g, rng);
    auto rotated = test::scaled(prev, I);

    SchemeParams complex_linear{0.01, 2, 1, 1};
    auto a = modified_step({prev, curr, 1}, complex_linear);
    auto b = modified_step({rotated, curr, 1}, complex_linear);
    CHECK(sup_distance(b, test::scaled(a, I)) < 1e-12);

    SchemeParams real_linear{0.01, 2, 1, 0.5};
    auto c = modified_step({prev, curr, 1}, real_linear);
    auto d = modified_step({rotated, curr, 1}, real_linear);
    CHECK(sup_distance(d, test::scaled(c, I)) > 1e-4);
    auto e = modified_step({test::scaled(prev, 2.5), curr, 1}, real_linear);
    CHECK(sup_distance(e, test::scaled(c, 2.5)) < 1e-12);
}

TEST_CASE("time reversal: conjugated levels step back to the start")
{
    std::mt19937_64 rng(31);
    PeriodicGrid g(64);
    auto u0 = test::random_smooth(g, rng);
    auto u1 = test::random_smooth(g, rng);

    for (auto [theta, gamma] : {std::pair{1.0, 1.0}, {0.5, 1.0}, {1.0, 0.5}, {0.5, 0.5}})
    {
        SchemeParams p{0.01, 2, theta, gamma};
        auto u2 = modified_step({u0, u1, 1}, p);
        auto back = modified_step({test::conjugated(u2), test::conjugated(u1), 2}, p);
        CHECK(sup_distance(test::conjugated(back), u0) < 1e-12);
    }

    SchemeParams p{0.01, 2};
    std::vector<double> phi(64);
    for (std::size_t m = 0; m < 64; ++m)
        phi[m] = std::norm(u0[m]) * 0.9;
    auto fwd = besse_step({u0, RealField(g, phi), 0}, p);
    std::vector<double> phi_rev(64);
    for (std::size_t m = 0; m < 64; ++m)
        phi_rev[m] = 2 * std::norm(fwd.curr[m]) - fwd.phi[m];
    auto back = besse_step({test::conjugated(fwd.curr), RealField(g, phi_rev), 1}, p);
    CHECK(sup_distance(test::conjugated(back.curr), u0) < 1e-12);
    for (std::size_t m = 0; m < 64; ++m)
        CHECK(back.phi[m] == doctest::Approx(fwd.phi[m]).epsilon(1e-12));
}

TEST_CASE("startup")
{
    PeriodicGrid g(64);
    auto u0 = test::exp_sin(g);
    SchemeParams p{0.01, 2};

    auto besse = std::get<BesseState>(startup(u0, p, Scheme::besse));
    CHECK(sup_distance(besse.curr, u0) == 0);
    for (std::size_t m = 0; m < 64; ++m)
        CHECK(besse.phi[m] == doctest::Approx(std::exp(2 * std::sin(g.x(m)))).epsilon(1e-14));

    auto zero = std::get<TwoStepState>(startup(ComplexField::zeros(g), p, Scheme::fei));
    CHECK(norms(zero.curr).sup == 0);
    CHECK(zero.step_index == 1);

    auto exact = std::get<TwoStepState>(
        startup(sample_plane_wave(g, 1.0, 1, 0, 0), p, Scheme::fei, {StartupMethod::exact, 3.0}));
    CHECK(std::abs(extract_mode(exact.curr, 1) - std::polar(1.0, -0.03)) < 1e-14);
}

TEST_CASE("Besse startup step has local error O(tau^3)")
{
    PeriodicGrid g(64);
    auto u0 = test::exp_sin(g);
    std::vector<double> taus{0.02, 0.01, 0.005}, errs;
    for (double tau : taus)
    {
        auto s = std::get<TwoStepState>(startup(u0, SchemeParams{tau, 2}, Scheme::fei));
        auto ref = reference_run(u0, 2, tau, {1e-11});
        errs.push_back(sup_distance(s.curr, ref.solution));
    }
    double const slope = std::log(errs[0] / errs[2]) / std::log(taus[0] / taus[2]);
    CAPTURE(errs[0]);
    CAPTURE(errs[2]);
    CHECK(slope == doctest::Approx(3).epsilon(0.1));
}

TEST_CASE("run: step counts, observers and truncation")
{
    PeriodicGrid g(32);
    auto u0 = test::exp_sin(g);
    SchemeParams p{0.01, 2};

    std::vector<std::size_t> seen;
    auto r0 = run(u0, p, Scheme::fei, 0, {}, [&](StepView const& v) { seen.push_back(v.step); });
    CHECK(r0.steps == 0);
    REQUIRE(seen.size() == 1);
    CHECK(seen[0] == 0);
    REQUIRE(r0.tail.size() == 1);
    CHECK(sup_distance(r0.tail[0], u0) == 0);

    auto [n, truncated] = step_count(1.9, 0.01);
    CHECK(n == 190);
    CHECK_FALSE(truncated);
    auto [n2, truncated2] = step_count(0.015, 0.01);
    CHECK(n2 == 1);
    CHECK(truncated2);
    CHECK_THROWS_AS(step_count(-1, 0.01), ConfigError);

    seen.clear();
    RunOptions opts;
    opts.stride = 7;
    auto r = run(u0, p, Scheme::besse, 0.2, opts, [&](StepView const& v) { seen.push_back(v.step); });
    CHECK(r.steps == 20);
    CHECK(seen == std::vector<std::size_t>{0, 7, 14, 20});
    CHECK(r.tail.size() == 2);
    CHECK_THROWS_AS(run(u0, p, Scheme::fei, 0.1, RunOptions{0}), ConfigError);
}

TEST_CASE("run is deterministic")
{
    PeriodicGrid g(32);
    auto u0 = test::exp_sin(g);
    SchemeParams p{0.01, 2, 0.5, 0.5};
    auto a = run(u0, p, Scheme::modified, 0.3);
    auto b = run(u0, p, Scheme::modified, 0.3);
    CHECK(sup_distance(a.tail.back(), b.tail.back()) == 0);
}

TEST_CASE("linear plane-wave runs keep their sup norm")
{
    PeriodicGrid g(64);
    auto u0 = sample_plane_wave(g, 0.7, 5, 0, 0);
    for (Scheme s : {Scheme::fei, Scheme::besse, Scheme::modified})
    {
        SchemeParams p{0.01, 0, s == Scheme::modified ? 0.5 : 1, 1};
        double drift = 0;
        run(u0, p, s, 1.0, {}, [&](StepView const& v) {
            drift = std::max(drift, std::abs(norms(v.current).sup - 0.7));
        });
        CHECK(drift < 1e-10);
    }
}

TEST_CASE("solver failure names the step")
{
    PeriodicGrid g(8);
    auto curr = sample_plane_wave(g, 1.0, 0, 0, 0);
    std::vector<Complex> bad(8, Complex{NAN, 0});
    try
    {
        fei_step(TwoStepState{ComplexField(g, bad), curr, 41}, SchemeParams{0.01, 1});
        FAIL("expected SolverError");
    }
    catch (SolverError const& e)
    {
        CHECK(e.step() == 41);
    }
}
}
