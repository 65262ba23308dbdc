#pragma once

#include <cstdint>

#include "cse/stability.hpp"

namespace cse {

struct OracleOptions
{
    std::size_t n_steps{20000};  //!< at least 100
    std::uint64_t seed{1};
};

/*!
 * Per-step growth of the linearised perturbation recurrence.
 *
 * Iterates the coupled (ε_ℓ, conj ε_{-ℓ}) two-level system for Fei and the
 * θ/γ scheme, or the four-component (ε, conj ε_{-ℓ}, δ_ℓ, δ_{-ℓ}) system for
 * Besse, from random complex initial data. The state is renormalised every
 * step and the log of the norm is accumulated; the rate returned is
 * exp(Δ log‖state‖ / Δn) over the last quarter of the iteration.
 *
 * The recurrences are built from the same c_ℓ, b, d_ℓ coefficients as the
 * polynomials, but never from the polynomials themselves.
 */
double recurrence_oracle(Scheme scheme,
                         ModeSymbols const& s,
                         double theta = 1,
                         double gamma = 1,
                         OracleOptions const& opts = {});

double recurrence_oracle(Scheme scheme,
                         ModePoint const& pt,
                         double theta = 1,
                         double gamma = 1,
                         OracleOptions const& opts = {});

//! Plane-wave form; ctx.h > 0 uses the grid symbols
double recurrence_oracle(Scheme scheme,
                         PlaneWaveContext const& ctx,
                         double ell,
                         double theta = 1,
                         double gamma = 1,
                         OracleOptions const& opts = {});

}  // namespace cse
