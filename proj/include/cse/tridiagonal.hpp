#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "cse/field.hpp"

namespace cse {

//---------------------------------------------------------------------------//
/*!
 * Periodic (cyclic) tridiagonal system
 *
 *   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]
 *
 * with indices taken modulo n, so lower[0] and upper[n-1] are the corner
 * entries. Solved by a Thomas sweep plus a rank-1 Sherman-Morrison
 * correction for the corners.
 *
 * Returns false on a vanishing pivot; `x` is then unspecified.
 */
bool solve_cyclic_tridiagonal(std::span<Complex const> lower,
                              std::span<Complex const> diag,
                              std::span<Complex const> upper,
                              std::span<Complex const> rhs,
                              std::span<Complex> x);

//! Residual max-norm of the cyclic tridiagonal system for a candidate x
double cyclic_tridiagonal_residual(std::span<Complex const> lower,
                                   std::span<Complex const> diag,
                                   std::span<Complex const> upper,
                                   std::span<Complex const> rhs,
                                   std::span<Complex const> x);

//---------------------------------------------------------------------------//
/*!
 * Block version with 2x2 real blocks, used when an equation couples a
 * complex unknown to its conjugate. Corners are handled by a rank-2
 * Woodbury correction.
 */
using Block2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

struct CyclicBlockSystem
{
    std::vector<Block2> lower;
    std::vector<Block2> diag;
    std::vector<Block2> upper;
};

bool solve_cyclic_block_tridiagonal(CyclicBlockSystem const& sys,
                                    std::span<Vec2 const> rhs,
                                    std::span<Vec2> x);

double cyclic_block_residual(CyclicBlockSystem const& sys,
                             std::span<Vec2 const> rhs,
                             std::span<Vec2 const> x);

}  // namespace cse
