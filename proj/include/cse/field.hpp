#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace cse {

using Complex = std::complex<double>;

//---------------------------------------------------------------------------//
/*!
 * Uniform periodic grid x_m = m h, m = 0..M-1, on [0, length).
 *
 * The default length 2π makes every integer wavenumber exactly periodic.
 */
class PeriodicGrid
{
  public:
    static constexpr std::size_t min_points = 4;

    explicit PeriodicGrid(std::size_t num_points,
                          double length = 2 * std::numbers::pi);

    std::size_t size() const noexcept { return num_points_; }
    double length() const noexcept { return length_; }
    double spacing() const noexcept { return length_ / static_cast<double>(num_points_); }
    double x(std::size_t m) const noexcept { return spacing() * static_cast<double>(m); }

    friend bool operator==(PeriodicGrid const&, PeriodicGrid const&) = default;

  private:
    std::size_t num_points_;
    double length_;
};

//---------------------------------------------------------------------------//
/*!
 * One time level of a complex solution sampled on a periodic grid.
 *
 * Values are fixed at construction; stepping produces new fields.
 */
class ComplexField
{
  public:
    ComplexField(PeriodicGrid grid, std::vector<Complex> values);

    //! Zero field
    static ComplexField zeros(PeriodicGrid grid);

    PeriodicGrid const& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<Complex const> values() const noexcept { return values_; }
    Complex operator[](std::size_t m) const { return values_[m]; }

  private:
    PeriodicGrid grid_;
    std::vector<Complex> values_;
};

//! Real-valued companion field (the Besse auxiliary variable).
class RealField
{
  public:
    RealField(PeriodicGrid grid, std::vector<double> values);

    PeriodicGrid const& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<double const> values() const noexcept { return values_; }
    double operator[](std::size_t m) const { return values_[m]; }

  private:
    PeriodicGrid grid_;
    std::vector<double> values_;
};

//---------------------------------------------------------------------------//
/*!
 * Plane wave a e^{i(kx - ωt)} together with the time step used to probe it.
 *
 * h = 0 encodes the continuous-space limit. The dimensionless groups
 * q = λτ|a|², K = k√τ and ρ = τ/h² are derived on every read.
 */
struct PlaneWaveContext
{
    double amp{1};     //!< |a|
    double k{0};       //!< carrier wavenumber
    double lambda{0};  //!< nonlinearity λ
    double tau{0.01};  //!< time step
    double h{0};       //!< mesh spacing, 0 for continuous space

    double q() const noexcept { return lambda * tau * amp * amp; }
    double K() const noexcept { return k * std::sqrt(tau); }
    //! Mesh ratio τ/h²; only meaningful for h > 0
    double rho() const noexcept { return tau / (h * h); }
    double lambda_amp2() const noexcept { return lambda * amp * amp; }

    //! Throws ConfigError on nonpositive τ, negative |a| or negative h.
    void validate() const;
};

//---------------------------------------------------------------------------//
// Operations

// Sample a e^{i(k x_m - ω t)}; k must be integral so the wave is periodic
ComplexField sample_plane_wave(PeriodicGrid const& grid,
                               Complex amp,
                               double k,
                               double omega,
                               double t);

// Discrete Fourier coefficient (1/M) Σ U_m e^{-ik x_m}, |k| < M/2
Complex extract_mode(ComplexField const& field, int k);

struct FieldNorms
{
    double sup{0};
    double l2{0};
};

// Sup norm and discrete L2 norm sqrt(h Σ|U_m|²)
FieldNorms norms(ComplexField const& field);

//! Sup norm of the difference of two fields on one grid
double sup_distance(ComplexField const& a, ComplexField const& b);

}  // namespace cse
