#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "cse/field.hpp"

namespace cse::test {

inline ComplexField exp_sin(PeriodicGrid const& grid)
{
    std::vector<Complex> v(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m)
        v[m] = std::exp(std::sin(grid.x(m)));
    return ComplexField(grid, std::move(v));
}

//! Smooth random trigonometric polynomial with a few low modes
inline ComplexField random_smooth(PeriodicGrid const& grid, std::mt19937_64& rng, int modes = 4)
{
    std::normal_distribution<double> n;
    std::vector<Complex> c(2 * modes + 1);
    for (int k = -modes; k <= modes; ++k)
        c[k + modes] = Complex{n(rng), n(rng)} / (1.0 + std::abs(k));
    std::vector<Complex> v(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m)
        for (int k = -modes; k <= modes; ++k)
            v[m] += c[k + modes] * std::polar(1.0, k * grid.x(m));
    return ComplexField(grid, std::move(v));
}

inline ComplexField shifted(ComplexField const& f, std::size_t s)
{
    std::vector<Complex> v(f.size());
    for (std::size_t m = 0; m < f.size(); ++m)
        v[m] = f[(m + s) % f.size()];
    return ComplexField(f.grid(), std::move(v));
}

inline ComplexField scaled(ComplexField const& f, Complex s)
{
    std::vector<Complex> v(f.values().begin(), f.values().end());
    for (auto& x : v)
        x *= s;
    return ComplexField(f.grid(), std::move(v));
}

inline ComplexField conjugated(ComplexField const& f)
{
    std::vector<Complex> v(f.values().begin(), f.values().end());
    for (auto& x : v)
        x = std::conj(x);
    return ComplexField(f.grid(), std::move(v));
}

inline ComplexField combine(Complex a, ComplexField const& u, Complex b, ComplexField const& w)
{
    std::vector<Complex> v(u.size());
    for (std::size_t m = 0; m < u.size(); ++m)
        v[m] = a * u[m] + b * w[m];
    return ComplexField(u.grid(), std::move(v));
}

}  // namespace cse::test
