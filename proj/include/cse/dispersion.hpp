#pragma once

#include <span>

#include "cse/field.hpp"
#include "cse/schemes.hpp"

namespace cse {

//! ω = k² + λ|a|² for plane waves of the exact equation
double omega_exact(double k, double lambda_amp2) noexcept;

//! Eigenvalues of the 2x2 perturbation matrix G_ℓ and the instability flag
struct ExactModeSpectrum
{
    Complex first;   //!< (-2k + √(ℓ² + 2λ|a|²)) ℓ
    Complex second;  //!< (-2k - √(ℓ² + 2λ|a|²)) ℓ
    bool unstable;   //!< ℓ ≠ 0 and ℓ² < -2λ|a|²
};

ExactModeSpectrum exact_mode_eigenvalues(double k, double ell, double lambda_amp2);

/*!
 * Discrete second-difference symbol scaled by τ.
 *
 * τκ² for h = 0 and 4(τ/h²) sin²(κh/2) otherwise; this is what K², (K±L)²
 * become once the Laplacian is replaced by δ²/h².
 */
double laplacian_symbol(double kappa, double tau, double h) noexcept;

/*!
 * ωτ on the principal branch from the dimensionless carrier data.
 *
 * `carrier` is the carrier symbol (K² in continuous space). Fei:
 * tan ωτ = q + carrier. Besse: tan(ωτ/2) = (q + carrier)/2. Modified:
 * sin ωτ = carrier(θ cos ωτ + 1 - θ) + q cos ωτ, taking the branch that is
 * continuous with ωτ = 0 at the origin. Throws DispersionError if the
 * modified relation has no real solution.
 */
double omega_tau(Scheme scheme, double q, double carrier, double theta = 1);

//! ωτ for a plane-wave context; h > 0 selects the discrete symbol
double omega_scheme(Scheme scheme, PlaneWaveContext const& ctx, double theta = 1);

/*!
 * ωτ in d space dimensions, wave vector `k` (size d); the carrier symbol is
 * Σ_j laplacian_symbol(k_j, τ, h).
 */
double omega_scheme_nd(Scheme scheme,
                       double q,
                       double tau,
                       double h,
                       std::span<double const> k,
                       double theta = 1);

//! |k|² + λ|a|² in d dimensions
double omega_exact_nd(std::span<double const> k, double lambda_amp2) noexcept;

//! Exact plane waves are stable to mode 𝓵 iff |𝓵|² ≥ -2λ|a|²
bool exact_mode_stable_nd(std::span<double const> ell, double lambda_amp2) noexcept;

}  // namespace cse
