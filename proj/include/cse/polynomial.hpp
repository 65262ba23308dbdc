#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cse/field.hpp"

namespace cse {

//! Polynomial coefficients, highest degree first
using Coeffs = std::vector<Complex>;

Complex evaluate(std::span<Complex const> coeffs, Complex z);
Complex evaluate_derivative(std::span<Complex const> coeffs, Complex z);

//! Product of two polynomials
Coeffs multiply(std::span<Complex const> a, std::span<Complex const> b);

//! Conjugate-reversed coefficients, the polynomial z^n conj(p(1/conj z))
Coeffs conjugate_reciprocal(std::span<Complex const> coeffs);

//---------------------------------------------------------------------------//
//! Roots and the unit-circle verdict of a polynomial
struct RootReport
{
    std::vector<Complex> roots;
    std::vector<bool> on_circle;  //!< |r| within [1 - tol, 1 + tol]
    double max_modulus{0};
    bool stable{false};           //!< max_modulus <= 1 + tol
    double tol{0};
};

/*!
 * All roots with multiplicity.
 *
 * Eigenvalues of the companion matrix, each polished by one Newton step
 * that is kept only if it lowers |p|. Throws DegeneratePolynomialError if
 * the leading coefficient vanishes relative to the others.
 */
RootReport find_roots(std::span<Complex const> coeffs, double tol = 1e-9);

//! Companion-matrix eigenvalues without polishing
std::vector<Complex> companion_roots(std::span<Complex const> coeffs);

//! True if the leading coefficient is negligible relative to the rest
bool leading_coefficient_vanishes(std::span<Complex const> coeffs);

//---------------------------------------------------------------------------//
/*!
 * Schur-Cohn test: true iff every root lies strictly inside |z| < 1.
 *
 * `margin`, if given, receives min over the reduction stages of
 * 1 - |p_0|/|p_n|, which shrinks to 0 as a root approaches the circle.
 */
bool roots_inside_unit_disc(std::span<Complex const> coeffs, double* margin = nullptr);

/*!
 * Cohn's criterion for a self-inversive polynomial: all roots are on the
 * unit circle iff the derivative has all roots in the closed unit disc.
 * The disc is widened to radius 1 + slack so double roots on the circle pass.
 */
bool self_inversive_unimodular(std::span<Complex const> coeffs,
                               double slack = 1e-13,
                               double* margin = nullptr);

//---------------------------------------------------------------------------//
/*!
 * Smallest over pairings of max_i |a_i - b_π(i)| for two root multisets of
 * equal size (brute force over permutations; intended for degree ≤ 6).
 */
double multiset_distance(std::span<Complex const> a, std::span<Complex const> b);

//! multiset_distance between the roots and their images under z ↦ 1/conj z
double self_reciprocity_defect(std::span<Complex const> roots);

//! Smallest pairwise distance between roots
double min_root_separation(std::span<Complex const> roots);

//---------------------------------------------------------------------------//
/*!
 * Warm-started Aberth-Ehrlich iteration for polynomials of fixed degree.
 *
 * Each call starts from the previous call's roots, so sweeping a parameter
 * slowly costs a few iterations per point. Falls back to companion_roots
 * when the iteration stalls.
 */
class RootTracker
{
  public:
    explicit RootTracker(std::size_t degree);

    //! Update the tracked roots for new coefficients; returns max |root|
    double solve(std::span<Complex const> coeffs);

    std::span<Complex const> roots() const noexcept { return roots_; }
    void reset();
    std::size_t fallbacks() const noexcept { return fallbacks_; }

  private:
    std::vector<Complex> roots_;
    std::size_t fallbacks_{0};
};

}  // namespace cse
