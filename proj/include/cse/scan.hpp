#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cse/stability.hpp"

namespace cse {

//! Sampling of L for region scans; `refine` resamples near root collisions
struct LScanSpec
{
    double min{-10};
    double max{10};
    std::size_t points{2001};
    bool refine{true};

    std::vector<double> grid() const;
    void validate() const;
};

struct ScanOptions
{
    double theta{1};
    double gamma{1};
    double tol{1e-6};      //!< unit-circle tolerance of the verdict
    unsigned jobs{0};      //!< worker threads, 0 = hardware concurrency
};

//! Row-major (q_i, second_j) matrix of max root moduli
struct QLScan
{
    std::vector<double> q;
    std::vector<double> L;
    double K{0};
    std::vector<double> max_modulus;  //!< NaN where the polynomial degenerates
    std::size_t degenerate{0};

    double at(std::size_t i, std::size_t j) const { return max_modulus[i * L.size() + j]; }
};

struct QKScan
{
    std::vector<double> q;
    std::vector<double> K;
    LScanSpec L_spec;
    std::vector<double> max_modulus;  //!< max over L; NaN if any sample degenerated
    std::vector<char> stable;
    std::size_t degenerate{0};

    double at(std::size_t i, std::size_t j) const { return max_modulus[i * K.size() + j]; }
    bool is_stable(std::size_t i, std::size_t j) const { return stable[i * K.size() + j] != 0; }
};

/*!
 * Max root modulus of the continuous-space stability polynomial over a
 * (q, L) grid at fixed K.
 *
 * Grids must be nonempty, finite and ascending. Besse uses the cubic p̃,
 * whose roots are those of the quartic minus the unimodular −1.
 */
QLScan scan_qL(Scheme scheme,
               double K,
               std::span<double const> q_grid,
               std::span<double const> L_grid,
               ScanOptions const& opts = {});

/*!
 * Stability verdict per (q, K): stable iff the max root modulus over every
 * scanned L stays within 1 + tol.
 *
 * A cell stops at its first unstable L, so max_modulus of an unstable cell is
 * a lower bound on the true maximum.
 */
QKScan scan_qK(Scheme scheme,
               std::span<double const> q_grid,
               std::span<double const> K_grid,
               LScanSpec const& L_spec = {},
               ScanOptions const& opts = {});

//! Throws ConfigError unless `grid` is nonempty, finite and ascending
void validate_grid(std::span<double const> grid, char const* name);

//! Max root modulus of one continuous-space point, via the scan fast path
double max_modulus_at(Scheme scheme, ModePoint const& pt, double theta = 1, double gamma = 1);

}  // namespace cse
