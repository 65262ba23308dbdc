#include "cse/reference.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <fftw3.h>

#include "cse/errors.hpp"

namespace cse {
namespace {

//! Forward/backward FFTW plans on one scratch buffer
class FourierPair
{
  public:
    explicit FourierPair(std::size_t n)
        : n_(n), buf_(fftw_alloc_complex(n), &fftw_free)
    {
        int const len = static_cast<int>(n);
        forward_ = fftw_plan_dft_1d(len, buf_.get(), buf_.get(), FFTW_FORWARD, FFTW_ESTIMATE);
        backward_ = fftw_plan_dft_1d(len, buf_.get(), buf_.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~FourierPair()
    {
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
    }
    FourierPair(FourierPair const&) = delete;
    FourierPair& operator=(FourierPair const&) = delete;

    void forward(std::vector<Complex> const& in, std::vector<Complex>& out)
    {
        execute(forward_, in, out, 1.0);
    }
    void backward(std::vector<Complex> const& in, std::vector<Complex>& out)
    {
        execute(backward_, in, out, 1.0 / static_cast<double>(n_));
    }

  private:
    void execute(fftw_plan plan, std::vector<Complex> const& in, std::vector<Complex>& out, double scale)
    {
        auto* b = reinterpret_cast<Complex*>(buf_.get());
        std::copy(in.begin(), in.end(), b);
        fftw_execute(plan);
        out.resize(n_);
        for (std::size_t i = 0; i < n_; ++i)
            out[i] = b[i] * scale;
    }

    std::size_t n_;
    std::unique_ptr<fftw_complex, decltype(&fftw_free)> buf_;
    fftw_plan forward_{};
    fftw_plan backward_{};
};

std::vector<double> laplacian_symbol(PeriodicGrid const& grid, SpatialOperator op)
{
    auto const n = grid.size();
    double const h = grid.spacing();
    double const kscale = 2 * std::numbers::pi / grid.length();
    std::vector<double> sym(n);
    for (std::size_t j = 0; j < n; ++j)
    {
        // FFT index j ↔ wavenumber j or j - n
        long const idx = j <= n / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
        double const kappa = kscale * static_cast<double>(idx);
        if (op == SpatialOperator::spectral)
        {
            sym[j] = kappa * kappa;
        }
        else
        {
            double const s = std::sin(0.5 * kappa * h);
            sym[j] = 4 * s * s / (h * h);
        }
    }
    return sym;
}

}  // namespace

ComplexField lawson_rk4(ComplexField const& u0,
                        double lambda,
                        double t_end,
                        std::size_t steps,
                        SpatialOperator op)
{
    auto const& grid = u0.grid();
    auto const n = grid.size();
    if (steps == 0)
        return u0;
    double const dt = t_end / static_cast<double>(steps);
    Complex const I{0, 1};

    // u_t = -iσ u - iλ|u|²u in Fourier space; E = e^{-iσ dt}
    auto const sym = laplacian_symbol(grid, op);
    std::vector<Complex> e_full(n), e_half(n);
    for (std::size_t j = 0; j < n; ++j)
    {
        e_full[j] = std::polar(1.0, -sym[j] * dt);
        e_half[j] = std::polar(1.0, -0.5 * sym[j] * dt);
    }

    FourierPair fft(n);
    std::vector<Complex> phys(u0.values().begin(), u0.values().end());
    std::vector<Complex> uh, a, b, c, d, tmp(n), stage(n);

    // Nonlinear term -iλ|u|²u of a Fourier-space state, returned in Fourier space
    auto nonlinear = [&](std::vector<Complex> const& vh, std::vector<Complex>& out) {
        fft.backward(vh, stage);
        for (std::size_t j = 0; j < n; ++j)
            stage[j] = -I * lambda * std::norm(stage[j]) * stage[j];
        fft.forward(stage, out);
    };

    fft.forward(phys, uh);
    for (std::size_t s = 0; s < steps; ++s)
    {
        nonlinear(uh, a);
        for (std::size_t j = 0; j < n; ++j)
            tmp[j] = e_half[j] * (uh[j] + 0.5 * dt * a[j]);
        nonlinear(tmp, b);
        for (std::size_t j = 0; j < n; ++j)
            tmp[j] = e_half[j] * uh[j] + 0.5 * dt * b[j];
        nonlinear(tmp, c);
        for (std::size_t j = 0; j < n; ++j)
            tmp[j] = e_full[j] * uh[j] + dt * e_half[j] * c[j];
        nonlinear(tmp, d);
        for (std::size_t j = 0; j < n; ++j)
        {
            uh[j] = e_full[j] * uh[j]
                    + dt / 6 * (e_full[j] * a[j] + 2.0 * e_half[j] * (b[j] + c[j]) + d[j]);
        }
    }
    fft.backward(uh, phys);
    return ComplexField(grid, std::move(phys));
}

ReferenceResult reference_run(ComplexField const& u0,
                              double lambda,
                              double t_end,
                              ReferenceOptions const& opts)
{
    if (!(opts.accuracy > 0))
        throw ConfigError("accuracy", "must be positive");
    if (!(t_end >= 0))
        throw ConfigError("t-end", "must be nonnegative");

    std::string const method = std::string("lawson-rk4/")
                               + (opts.op == SpatialOperator::spectral ? "spectral" : "central-difference")
                               + "/step-halving";
    if (t_end == 0)
        return ReferenceResult{u0, 0, 0, 0, method};

    auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(t_end / opts.initial_tau)));
    auto coarse = lawson_rk4(u0, lambda, t_end, steps, opts.op);
    double diff = 0;
    while (2 * steps <= opts.max_steps)
    {
        steps *= 2;
        auto fine = lawson_rk4(u0, lambda, t_end, steps, opts.op);
        diff = sup_distance(coarse, fine);
        if (!std::isfinite(diff))
            break;
        if (diff < 0.25 * opts.accuracy)
        {
            return ReferenceResult{std::move(fine), t_end / static_cast<double>(steps), steps, diff, method};
        }
        coarse = std::move(fine);
    }
    throw ReferenceError("reference integrator missed accuracy "
                         + std::to_string(opts.accuracy) + " within "
                         + std::to_string(opts.max_steps) + " steps (last difference "
                         + std::to_string(diff) + ")");
}

}  // namespace cse
