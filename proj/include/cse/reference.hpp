#pragma once

#include <cstddef>
#include <string>

#include "cse/field.hpp"

namespace cse {

//! Spatial operator of the semi-discrete reference problem
enum class SpatialOperator
{
    central_difference,  //!< symbol (4/h²) sin²(κh/2), matches the schemes
    spectral,            //!< symbol κ², the exact Laplacian on band-limited data
};

struct ReferenceOptions
{
    double accuracy{1e-9};
    SpatialOperator op{SpatialOperator::central_difference};
    double initial_tau{1e-2};
    std::size_t max_steps{std::size_t{1} << 22};
};

struct ReferenceResult
{
    ComplexField solution;
    double tau{0};
    std::size_t steps{0};
    double last_difference{0};  //!< sup distance between the last two refinements
    std::string method;
};

/*!
 * Fixed-step integrating-factor RK4 (Lawson) for i u_t + Δu = λ|u|²u.
 *
 * The linear part is integrated exactly in Fourier space, so the step size
 * is limited by the nonlinearity only.
 */
ComplexField lawson_rk4(ComplexField const& u0,
                        double lambda,
                        double t_end,
                        std::size_t steps,
                        SpatialOperator op = SpatialOperator::central_difference);

/*!
 * High-accuracy solution at t_end by step halving of lawson_rk4 until two
 * successive answers differ by less than accuracy/4.
 *
 * Throws ReferenceError when max_steps is exhausted.
 */
ReferenceResult reference_run(ComplexField const& u0,
                              double lambda,
                              double t_end,
                              ReferenceOptions const& opts = {});

}  // namespace cse
