#include "cse/oracle.hpp"

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "cse/errors.hpp"

namespace cse {
namespace {

template<int N>
using CVec = Eigen::Matrix<Complex, N, 1>;
template<int N>
using CMat = Eigen::Matrix<Complex, N, N>;

template<int N>
CVec<N> random_state(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    CVec<N> v;
    for (int i = 0; i < N; ++i)
        v(i) = Complex{normal(rng), normal(rng)};
    return v / v.norm();
}

//! Iterate x ← T x, renormalising; growth over the last quarter
template<int N>
double power_growth(CMat<N> const& T, std::size_t n_steps, std::uint64_t seed)
{
    CVec<N> x = random_state<N>(seed);
    std::size_t const mark = n_steps - n_steps / 4;
    double log_norm = 0;
    double log_at_mark = 0;
    for (std::size_t n = 1; n <= n_steps; ++n)
    {
        x = T * x;
        double const nrm = x.norm();
        if (!(nrm > 0) || !std::isfinite(nrm))
            throw Error("recurrence oracle: state collapsed or overflowed");
        log_norm += std::log(nrm);
        x /= nrm;
        if (n == mark)
            log_at_mark = log_norm;
    }
    return std::exp((log_norm - log_at_mark) / static_cast<double>(n_steps - mark));
}

//! One-step transfer matrix of M2 E^{n+1} + M1 E^n + M0 E^{n-1} = 0
CMat<4> two_level_transfer(CMat<2> const& M2, CMat<2> const& M1, CMat<2> const& M0)
{
    Eigen::PartialPivLU<CMat<2>> lu(M2);
    CMat<4> T = CMat<4>::Zero();
    T.block<2, 2>(0, 0) = -lu.solve(M1);
    T.block<2, 2>(0, 2) = -lu.solve(M0);
    T.block<2, 2>(2, 0) = CMat<2>::Identity();
    return T;
}

CMat<4> fei_transfer(FeiCoefficients const& k)
{
    // c ε^{n+1} = b(ε + conj ε_{-ℓ})^n - conj(c) ε^{n-1}, and its partner for
    // conj ε_{-ℓ} obtained by conjugating the -ℓ equation
    CMat<2> M2, M1, M0;
    M2 << k.c_plus, 0, 0, std::conj(k.c_minus);
    M1 << -k.b, -k.b, -k.b, -k.b;
    M0 << std::conj(k.c_plus), 0, 0, k.c_minus;
    return two_level_transfer(M2, M1, M0);
}

CMat<4> modified_transfer(ModifiedCoefficients const& k)
{
    Complex const e = std::polar(1.0, k.omega_tau);
    double const D = k.d_plus + (2 - k.gamma) * k.b;
    double const Dm = k.d_minus + (2 - k.gamma) * k.b;
    double const gb = k.gamma * k.b;
    CMat<2> M2, M1, M0;
    M2 << k.c_plus, -k.r * e, -k.r * std::conj(e), std::conj(k.c_minus);
    M1 << -D, -gb, -gb, -Dm;
    M0 << std::conj(k.c_plus), -k.r * std::conj(e), -k.r * e, k.c_minus;
    return two_level_transfer(M2, M1, M0);
}

CMat<4> besse_transfer(BesseCoefficients const& k)
{
    // State (ε_ℓ, conj ε_{-ℓ}, δ_ℓ, δ_{-ℓ}); δ perturbs the auxiliary
    // variable, relaxed by δ^{n+1} + δ^n = 2(ε + conj ε_{-ℓ})^n
    CMat<4> A, B;
    A << k.c_plus, 0, -k.b, 0,
         0, std::conj(k.c_minus), 0, -k.b,
         0, 0, 1, 0,
         0, 0, 0, 1;
    B << std::conj(k.c_plus), 0, 0, 0,
         0, k.c_minus, 0, 0,
         -2, -2, 1, 0,
         -2, -2, 0, 1;
    // c ε^{n+1} + conj(c) ε^n = b δ^{n+1}, i.e. A X^{n+1} + B X^n = 0
    return -Eigen::PartialPivLU<CMat<4>>(A).solve(B);
}

}  // namespace

double recurrence_oracle(Scheme scheme,
                         ModeSymbols const& s,
                         double theta,
                         double gamma,
                         OracleOptions const& opts)
{
    if (opts.n_steps < 100)
        throw ConfigError("n_steps", "recurrence oracle needs at least 100 steps");
    switch (scheme)
    {
        case Scheme::fei:
            return power_growth<4>(fei_transfer(fei_coefficients(s)), opts.n_steps, opts.seed);
        case Scheme::besse:
            return power_growth<4>(besse_transfer(besse_coefficients(s)), opts.n_steps, opts.seed);
        case Scheme::modified:
            break;
    }
    return power_growth<4>(modified_transfer(modified_coefficients(s, theta, gamma)),
                           opts.n_steps, opts.seed);
}

double recurrence_oracle(Scheme scheme,
                         ModePoint const& pt,
                         double theta,
                         double gamma,
                         OracleOptions const& opts)
{
    return recurrence_oracle(scheme, symbols(pt), theta, gamma, opts);
}

double recurrence_oracle(Scheme scheme,
                         PlaneWaveContext const& ctx,
                         double ell,
                         double theta,
                         double gamma,
                         OracleOptions const& opts)
{
    return recurrence_oracle(scheme, symbols(ctx, ell), theta, gamma, opts);
}

}  // namespace cse
