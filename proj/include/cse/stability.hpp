#pragma once

#include <array>
#include <span>
#include <utility>

#include "cse/dispersion.hpp"
#include "cse/polynomial.hpp"
#include "cse/schemes.hpp"

namespace cse {

//---------------------------------------------------------------------------//
/*!
 * Dimensionless continuous-space perturbation data: q = λτ|a|², K = k√τ,
 * L = ℓ√τ.
 */
struct ModePoint
{
    double q{0};
    double K{0};
    double L{0};
};

/*!
 * τ-scaled Laplacian symbols of the carrier k and the sidebands k ± ℓ.
 *
 * In continuous space these are K², (K+L)² and (K-L)²; with h > 0 they
 * are the central-difference symbols. Every polynomial is a function of
 * (q, carrier, plus, minus) alone.
 */
struct ModeSymbols
{
    double q{0};
    double carrier{0};
    double plus{0};
    double minus{0};
};

ModeSymbols symbols(ModePoint const& pt) noexcept;
//! h = ctx.h; `ell` need not be an integer when h = 0
ModeSymbols symbols(PlaneWaveContext const& ctx, double ell);

//! Where a polynomial came from
struct Provenance
{
    Scheme scheme{Scheme::fei};
    double q{0};
    double K{0};
    double L{0};
    double h{0};
    double theta{1};
    double gamma{1};
    int d{1};
};

struct StabilityPolynomial
{
    Coeffs coeffs;  //!< highest degree first
    Provenance provenance;

    std::size_t degree() const noexcept { return coeffs.size() - 1; }
};

//---------------------------------------------------------------------------//
// Perturbation-recurrence coefficients shared by the polynomials and the
// recurrence oracle.

//! c_ℓ, c_{-ℓ}, b of the Fei recurrence c_ℓ ε^{n+1} = b(ε + ε̄)^n - c̄_ℓ ε^{n-1}
struct FeiCoefficients
{
    Complex c_plus;
    Complex c_minus;
    double b{0};
    double omega_tau{0};
};

FeiCoefficients fei_coefficients(ModeSymbols const& s);

/*!
 * Fei coefficients on the grid, assembled literally from the stencil
 * weights a₁ = ρe^{i(kh-ωτ)}, a₀ = e^{-iωτ}(i - 2ρ - q), a₋₁ = ρe^{-i(kh+ωτ)}
 * as c_ℓ = a₁e^{iℓh} + a₀ + a₋₁e^{-iℓh}. Requires ctx.h > 0.
 */
FeiCoefficients fei_discrete_coefficients(PlaneWaveContext const& ctx, double ell);

/*!
 * Besse: c_ℓ = (2i - (K+L)² - d·q) e^{-iωτ/2}, b = 2q cos(ωτ/2), with
 * tan(ωτ/2) = (q + K²)/2.
 */
struct BesseCoefficients
{
    Complex c_plus;
    Complex c_minus;
    double b{0};
    double omega_tau{0};
};

BesseCoefficients besse_coefficients(ModeSymbols const& s, int d = 1);

/*!
 * θ/γ scheme: c_ℓ = (i - γq - θ(K+L)²)e^{-iωτ}, d_ℓ = 2(1-θ)(K+L)²,
 * b = 2q cos ωτ, r = (1-γ)q.
 */
struct ModifiedCoefficients
{
    Complex c_plus;
    Complex c_minus;
    double d_plus{0};
    double d_minus{0};
    double b{0};
    double r{0};
    double q{0};
    double gamma{1};
    double omega_tau{0};
};

ModifiedCoefficients modified_coefficients(ModeSymbols const& s, double theta, double gamma);

//! Raw polynomial coefficients, highest degree first
std::array<Complex, 5> fei_quartic(FeiCoefficients const& c) noexcept;
std::array<Complex, 4> besse_cubic(BesseCoefficients const& c) noexcept;
std::array<Complex, 5> modified_quartic(ModifiedCoefficients const& c) noexcept;

//---------------------------------------------------------------------------//
/*!
 * Fei stability quartic
 *   c_ℓ c̄_{-ℓ} z⁴ - b(c_ℓ + c̄_{-ℓ}) z³ + (c_ℓ c_{-ℓ} + c̄_ℓ c̄_{-ℓ}) z²
 *   - b(c_{-ℓ} + c̄_ℓ) z + c_{-ℓ} c̄_ℓ.
 *
 * `discrete` uses the grid coefficients (needs ctx.h > 0); otherwise the
 * continuous-space c_ℓ = e^{-iωτ}(i - (K+L)² - q).
 */
StabilityPolynomial fei_polynomial(PlaneWaveContext const& ctx, double ell, bool discrete);
StabilityPolynomial fei_polynomial(ModePoint const& pt);

/*!
 * Normalised Besse cubic z³ + f ḡ z² + g z + f, |f| = 1.
 *
 * Dividing the self-reciprocal p̃ by its leading coefficient leaves the z²
 * coefficient equal to f times the conjugate of the z coefficient.
 */
struct NormalizedCubic
{
    Complex f;
    Complex g;

    std::array<Complex, 4> coeffs() const noexcept;
};

struct BessePolynomials
{
    StabilityPolynomial quartic;  //!< (z + 1) p̃(z)
    StabilityPolynomial cubic;    //!< p̃(z)
    NormalizedCubic norm;
};

BessePolynomials besse_polynomial(PlaneWaveContext const& ctx, double ell, int d = 1);
BessePolynomials besse_polynomial(ModePoint const& pt, int d = 1);

/*!
 * Besse polynomials in d dimensions: c_𝓵 = (2i - τ|𝓵 + k|² - d q) e^{-iωτ/2}
 * with continuous-space symbols (h = 0) or grid symbols (h > 0).
 */
BessePolynomials besse_polynomial_nd(double q,
                                     double tau,
                                     double h,
                                     std::span<double const> k,
                                     std::span<double const> ell);

//! Fei quartic in d dimensions with c_𝓵 = e^{-iωτ}(i - q - Σ_j symbol(k_j + ℓ_j))
StabilityPolynomial fei_polynomial_nd(double q,
                                      double tau,
                                      double h,
                                      std::span<double const> k,
                                      std::span<double const> ell);

//! θ/γ stability quartic; at θ = γ = 1 it coincides with the Fei quartic
StabilityPolynomial modified_polynomial(PlaneWaveContext const& ctx,
                                        double ell,
                                        double theta,
                                        double gamma);
StabilityPolynomial modified_polynomial(ModePoint const& pt, double theta, double gamma);

//! Polynomial of any scheme at a continuous-space point (Besse: the quartic)
StabilityPolynomial stability_polynomial(Scheme scheme,
                                         ModePoint const& pt,
                                         double theta = 1,
                                         double gamma = 1);

//---------------------------------------------------------------------------//
//! find_roots on a stability polynomial; the Besse quartic has its exact root -1 divided out first
RootReport analyse(StabilityPolynomial const& p, double tol = 1e-9);

//---------------------------------------------------------------------------//
// Leading-order asymptotics for k = 0

//! Spurious Fei root −(1 + τℓ√(2λ|a|² − ℓ²)); complex when 2λ|a|² < ℓ²
Complex fei_spurious_asymptote(double ell, double lambda_amp2, double tau);

//! Growth constant C = √(2λ|a|² − 1) of the unit mode; 0 at or below threshold
double fei_growth_constant(double lambda_amp2);

//! Besse roots 1 ± τℓ√(−2λ|a|² − ℓ²)
std::pair<Complex, Complex> besse_asymptote(double ell, double lambda_amp2, double tau);

//---------------------------------------------------------------------------//
/*!
 * Boundary of the Besse stability region for fixed f:
 * g(θ) = e^{2iθ} − 2f e^{−iθ}, the value for which z³ + fḡz² + gz + f has a
 * double root at e^{iθ}. Throws ConfigError unless |f| = 1 within 1e-10.
 */
Complex besse_boundary(Complex f, double theta);

//! |g| ≤ 3, necessary for stability
bool boundary_necessary(Complex g) noexcept;
//! |g| ≤ 1, sufficient for stability
bool boundary_sufficient(Complex g) noexcept;

}  // namespace cse
