#include "cse/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cse/errors.hpp"

namespace cse {

PeriodicGrid::PeriodicGrid(std::size_t num_points, double length)
    : num_points_(num_points), length_(length)
{
    if (num_points_ < min_points)
    {
        throw ConfigError("grid-points",
                          "at least " + std::to_string(min_points)
                              + " points required, got "
                              + std::to_string(num_points_));
    }
    if (!(length_ > 0) || !std::isfinite(length_))
    {
        throw ConfigError("length", "domain length must be positive");
    }
}

ComplexField::ComplexField(PeriodicGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values))
{
    if (values_.size() != grid_.size())
    {
        throw ConfigError("field", "value count does not match grid size");
    }
}

ComplexField ComplexField::zeros(PeriodicGrid grid)
{
    return ComplexField(grid, std::vector<Complex>(grid.size()));
}

RealField::RealField(PeriodicGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values))
{
    if (values_.size() != grid_.size())
    {
        throw ConfigError("field", "value count does not match grid size");
    }
}

void PlaneWaveContext::validate() const
{
    if (!(tau > 0))
        throw ConfigError("tau", "time step must be positive");
    if (!(amp >= 0))
        throw ConfigError("amp", "amplitude modulus must be nonnegative");
    if (!(h >= 0))
        throw ConfigError("h", "mesh spacing must be nonnegative");
}

ComplexField sample_plane_wave(PeriodicGrid const& grid,
                               Complex amp,
                               double k,
                               double omega,
                               double t)
{
    if (k != std::round(k))
    {
        throw ConfigError("k", "wavenumber must be an integer for a periodic plane wave");
    }
    std::vector<Complex> values(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m)
    {
        values[m] = amp * std::polar(1.0, k * grid.x(m) - omega * t);
    }
    return ComplexField(grid, std::move(values));
}

Complex extract_mode(ComplexField const& field, int k)
{
    auto const M = field.size();
    if (2 * static_cast<std::size_t>(std::abs(k)) >= M)
    {
        throw ConfigError("k", "mode " + std::to_string(k) + " aliases on a grid of "
                                   + std::to_string(M) + " points");
    }
    auto const& grid = field.grid();
    Complex sum{0};
    for (std::size_t m = 0; m < M; ++m)
    {
        sum += field[m] * std::polar(1.0, -k * grid.x(m));
    }
    return sum / static_cast<double>(M);
}

FieldNorms norms(ComplexField const& field)
{
    FieldNorms result;
    double sumsq = 0;
    for (auto v : field.values())
    {
        result.sup = std::max(result.sup, std::abs(v));
        sumsq += std::norm(v);
    }
    result.l2 = std::sqrt(field.grid().spacing() * sumsq);
    return result;
}

double sup_distance(ComplexField const& a, ComplexField const& b)
{
    if (a.grid() != b.grid())
        throw ConfigError("field", "fields live on different grids");
    double d = 0;
    for (std::size_t m = 0; m < a.size(); ++m)
        d = std::max(d, std::abs(a[m] - b[m]));
    return d;
}

}  // namespace cse
