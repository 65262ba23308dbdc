#include "cse/dispersion.hpp"

#include <cmath>
#include <string>

#include "cse/errors.hpp"

namespace cse {

double omega_exact(double k, double lambda_amp2) noexcept
{
    return k * k + lambda_amp2;
}

ExactModeSpectrum exact_mode_eigenvalues(double k, double ell, double lambda_amp2)
{
    Complex const root = std::sqrt(Complex{ell * ell + 2 * lambda_amp2, 0});
    return ExactModeSpectrum{(-2 * k + root) * ell,
                             (-2 * k - root) * ell,
                             ell != 0 && ell * ell < -2 * lambda_amp2};
}

double laplacian_symbol(double kappa, double tau, double h) noexcept
{
    if (h == 0)
        return tau * kappa * kappa;
    double const s = std::sin(0.5 * kappa * h);
    return 4 * tau / (h * h) * s * s;
}

double omega_tau(Scheme scheme, double q, double carrier, double theta)
{
    switch (scheme)
    {
        case Scheme::fei:
            return std::atan(q + carrier);
        case Scheme::besse:
            return 2 * std::atan(0.5 * (q + carrier));
        case Scheme::modified:
            break;
    }
    // sin x - B cos x = C with B = θ·carrier + q, C = (1-θ)·carrier;
    // sin x - B cos x = R sin(x - atan B), R = √(1 + B²)
    double const B = theta * carrier + q;
    double const C = (1 - theta) * carrier;
    double const R = std::hypot(1.0, B);
    if (std::abs(C) > R)
    {
        throw DispersionError("modified dispersion relation has no real solution (q="
                              + std::to_string(q) + ", K^2=" + std::to_string(carrier)
                              + ", theta=" + std::to_string(theta) + ")");
    }
    double const x = std::atan(B) + std::asin(C / R);
    double const residual = std::sin(x) - B * std::cos(x) - C;
    if (!(std::abs(residual) <= 1e-12 * std::max(1.0, R)))
        throw DispersionError("modified dispersion residual too large");
    return x;
}

double omega_scheme(Scheme scheme, PlaneWaveContext const& ctx, double theta)
{
    ctx.validate();
    return omega_tau(scheme, ctx.q(), laplacian_symbol(ctx.k, ctx.tau, ctx.h), theta);
}

double omega_scheme_nd(Scheme scheme,
                       double q,
                       double tau,
                       double h,
                       std::span<double const> k,
                       double theta)
{
    double carrier = 0;
    for (double kj : k)
        carrier += laplacian_symbol(kj, tau, h);
    return omega_tau(scheme, q, carrier, theta);
}

double omega_exact_nd(std::span<double const> k, double lambda_amp2) noexcept
{
    double k2 = 0;
    for (double kj : k)
        k2 += kj * kj;
    return k2 + lambda_amp2;
}

bool exact_mode_stable_nd(std::span<double const> ell, double lambda_amp2) noexcept
{
    double l2 = 0;
    for (double lj : ell)
        l2 += lj * lj;
    return l2 >= -2 * lambda_amp2;
}

}  // namespace cse
