#include "cse/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "cse/errors.hpp"
#include "cse/tridiagonal.hpp"

namespace cse {
namespace {

constexpr double residual_target = 1e-12;
constexpr double residual_limit = 1e-8;

// δ²U_m = U_{m+1} - 2U_m + U_{m-1}, periodic
std::vector<Complex> second_difference(std::span<Complex const> u)
{
    auto const n = u.size();
    std::vector<Complex> out(n);
    for (std::size_t m = 0; m < n; ++m)
        out[m] = u[(m + 1) % n] - 2.0 * u[m] + u[(m + n - 1) % n];
    return out;
}

double sup(std::span<Complex const> v)
{
    double s = 0;
    for (auto x : v)
        s = std::max(s, std::abs(x));
    return s;
}

bool all_finite(std::span<Complex const> v)
{
    return std::all_of(v.begin(), v.end(), [](Complex x) {
        return std::isfinite(x.real()) && std::isfinite(x.imag());
    });
}

// Cyclic tridiagonal system with constant off-diagonal `off` and the
// given diagonal; one round of iterative refinement when needed.
std::vector<Complex> solve_scalar(Complex off,
                                  std::vector<Complex> const& diag,
                                  std::vector<Complex> const& rhs,
                                  std::size_t step,
                                  SolveStats* stats)
{
    auto const n = diag.size();
    std::vector<Complex> const band(n, off);
    std::vector<Complex> x(n);
    if (!solve_cyclic_tridiagonal(band, diag, band, rhs, x))
        throw SolverError(step, "singular tridiagonal system");

    double const scale = std::max(sup(rhs), std::numeric_limits<double>::min());
    double rel = cyclic_tridiagonal_residual(band, diag, band, rhs, x) / scale;
    bool refined = false;
    if (rel > residual_target)
    {
        std::vector<Complex> r(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            r[i] = rhs[i]
                   - (off * x[(i + n - 1) % n] + diag[i] * x[i] + off * x[(i + 1) % n]);
        }
        std::vector<Complex> dx(n);
        if (solve_cyclic_tridiagonal(band, diag, band, r, dx))
        {
            for (std::size_t i = 0; i < n; ++i)
                x[i] += dx[i];
        }
        rel = cyclic_tridiagonal_residual(band, diag, band, rhs, x) / scale;
        refined = true;
    }
    if (!all_finite(x) || !(rel <= residual_limit))
        throw SolverError(step, "linear solve did not converge (relative residual "
                                    + std::to_string(rel) + ")");
    if (stats)
        stats->record(rel, refined);
    return x;
}

void check_history(TwoStepState const& s)
{
    if (s.prev.grid() != s.curr.grid())
        throw ConfigError("state", "time levels live on different grids");
}

}  // namespace

//---------------------------------------------------------------------------//
std::string_view to_string(Scheme s) noexcept
{
    switch (s)
    {
        case Scheme::fei:
            return "fei";
        case Scheme::besse:
            return "besse";
        case Scheme::modified:
            return "modified";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name)
{
    if (name == "fei")
        return Scheme::fei;
    if (name == "besse")
        return Scheme::besse;
    if (name == "modified")
        return Scheme::modified;
    throw ConfigError("scheme", "unknown scheme '" + std::string(name) + "'");
}

std::string_view to_string(StartupMethod m) noexcept
{
    return m == StartupMethod::exact ? "exact" : "besse-step";
}

void SchemeParams::validate() const
{
    if (!(tau > 0) || !std::isfinite(tau))
        throw ConfigError("tau", "time step must be positive");
    if (!std::isfinite(lambda))
        throw ConfigError("lambda", "must be finite");
    if (!std::isfinite(theta))
        throw ConfigError("theta", "must be finite");
    if (!std::isfinite(gamma))
        throw ConfigError("gamma", "must be finite");
}

void SolveStats::record(double relative_residual, bool refined)
{
    ++solves;
    if (refined)
        ++refinements;
    max_relative_residual = std::max(max_relative_residual, relative_residual);
}

//---------------------------------------------------------------------------//
/*!
 * i(U⁺ - U⁻) + ρ δ²(U⁺ + U⁻) = λτ|U|²(U⁺ + U⁻), the scheme times 2τ.
 */
ComplexField fei_step(TwoStepState const& state, SchemeParams const& p, SolveStats* stats)
{
    check_history(state);
    auto const& grid = state.curr.grid();
    auto const n = grid.size();
    double const h = grid.spacing();
    double const rho = p.tau / (h * h);
    Complex const I{0, 1};

    auto const prev = state.prev.values();
    auto const curr = state.curr.values();
    auto const lap_prev = second_difference(prev);

    std::vector<Complex> diag(n);
    std::vector<Complex> rhs(n);
    for (std::size_t m = 0; m < n; ++m)
    {
        double const w = p.lambda * p.tau * std::norm(curr[m]);
        diag[m] = I - 2 * rho - w;
        rhs[m] = I * prev[m] - rho * lap_prev[m] + w * prev[m];
    }
    return ComplexField(grid, solve_scalar(rho, diag, rhs, state.step_index, stats));
}

//---------------------------------------------------------------------------//
/*!
 * φ⁺ = 2|U|² - φ⁻, then
 * i(U⁺ - U) + (ρ/2) δ²(U⁺ + U) = (λτ/2) φ⁺ (U⁺ + U).
 */
BesseState besse_step(BesseState const& state, SchemeParams const& p, SolveStats* stats)
{
    auto const& grid = state.curr.grid();
    if (state.phi.grid() != grid)
        throw ConfigError("state", "φ and U live on different grids");
    auto const n = grid.size();
    double const h = grid.spacing();
    double const half_rho = 0.5 * p.tau / (h * h);
    Complex const I{0, 1};

    auto const curr = state.curr.values();
    auto const lap = second_difference(curr);

    std::vector<double> phi(n);
    std::vector<Complex> diag(n);
    std::vector<Complex> rhs(n);
    for (std::size_t m = 0; m < n; ++m)
    {
        phi[m] = 2 * std::norm(curr[m]) - state.phi[m];
        double const w = 0.5 * p.lambda * p.tau * phi[m];
        diag[m] = I - 2 * half_rho - w;
        rhs[m] = I * curr[m] - half_rho * lap[m] + w * curr[m];
    }
    auto next = solve_scalar(half_rho, diag, rhs, state.step_index, stats);
    return BesseState{ComplexField(grid, std::move(next)),
                      RealField(grid, std::move(phi)),
                      state.step_index + 1};
}

//---------------------------------------------------------------------------//
/*!
 * The θ/γ scheme times 2τ:
 *
 *   i(U⁺ - U⁻) + ρ δ²(θU⁺ + 2(1-θ)U + θU⁻)
 *     = λτγ|U|²(U⁺ + U⁻) + λτ(1-γ) U² (conj U⁺ + conj U⁻).
 *
 * For γ = 1 this is a complex tridiagonal system. Otherwise conj U⁺ enters
 * and the system is solved over the reals in (Re U⁺, Im U⁺) blocks.
 */
ComplexField modified_step(TwoStepState const& state, SchemeParams const& p, SolveStats* stats)
{
    check_history(state);
    auto const& grid = state.curr.grid();
    auto const n = grid.size();
    double const h = grid.spacing();
    double const rho = p.tau / (h * h);
    Complex const I{0, 1};

    auto const prev = state.prev.values();
    auto const curr = state.curr.values();
    auto const lap_prev = second_difference(prev);
    auto const lap_curr = second_difference(curr);

    std::vector<Complex> rhs(n);
    std::vector<double> w(n);
    std::vector<Complex> c(n);
    for (std::size_t m = 0; m < n; ++m)
    {
        w[m] = p.lambda * p.tau * p.gamma * std::norm(curr[m]);
        c[m] = p.lambda * p.tau * (1 - p.gamma) * curr[m] * curr[m];
        rhs[m] = I * prev[m] - 2 * (1 - p.theta) * rho * lap_curr[m]
                 - p.theta * rho * lap_prev[m] + w[m] * prev[m]
                 + c[m] * std::conj(prev[m]);
    }

    double const off = p.theta * rho;
    if (p.gamma == 1)
    {
        std::vector<Complex> diag(n);
        for (std::size_t m = 0; m < n; ++m)
            diag[m] = I - 2 * off - w[m];
        return ComplexField(grid, solve_scalar(off, diag, rhs, state.step_index, stats));
    }

    // Real form: with D = -2θρ - w and c = c_r + i c_i,
    //   Re: (D - c_r) x + (-1 - c_i) y + θρ(x_{m±1}) = Re rhs
    //   Im: (1 - c_i) x + (D + c_r) y + θρ(y_{m±1}) = Im rhs
    CyclicBlockSystem sys;
    sys.lower.assign(n, off * Block2::Identity());
    sys.upper.assign(n, off * Block2::Identity());
    sys.diag.resize(n);
    std::vector<Vec2> b(n);
    for (std::size_t m = 0; m < n; ++m)
    {
        double const d = -2 * off - w[m];
        sys.diag[m] << d - c[m].real(), -1 - c[m].imag(), 1 - c[m].imag(), d + c[m].real();
        b[m] << rhs[m].real(), rhs[m].imag();
    }

    std::vector<Vec2> x(n);
    if (!solve_cyclic_block_tridiagonal(sys, b, x))
    {
        throw SolverError(state.step_index,
                          "singular real block system (theta=" + std::to_string(p.theta)
                              + ", gamma=" + std::to_string(p.gamma) + ")");
    }
    double scale = 0;
    for (auto const& v : b)
        scale = std::max(scale, v.cwiseAbs().maxCoeff());
    scale = std::max(scale, std::numeric_limits<double>::min());
    double rel = cyclic_block_residual(sys, b, x) / scale;
    bool refined = false;
    if (rel > residual_target)
    {
        std::vector<Vec2> r(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            r[i] = b[i]
                   - (sys.lower[i] * x[(i + n - 1) % n] + sys.diag[i] * x[i]
                      + sys.upper[i] * x[(i + 1) % n]);
        }
        std::vector<Vec2> dx(n);
        if (solve_cyclic_block_tridiagonal(sys, r, dx))
        {
            for (std::size_t i = 0; i < n; ++i)
                x[i] += dx[i];
        }
        rel = cyclic_block_residual(sys, b, x) / scale;
        refined = true;
    }
    std::vector<Complex> out(n);
    for (std::size_t m = 0; m < n; ++m)
        out[m] = Complex{x[m](0), x[m](1)};
    if (!all_finite(out) || !(rel <= residual_limit))
    {
        throw SolverError(state.step_index,
                          "real block solve did not converge (theta="
                              + std::to_string(p.theta) + ", gamma="
                              + std::to_string(p.gamma) + ")");
    }
    if (stats)
        stats->record(rel, refined);
    return ComplexField(grid, std::move(out));
}

//---------------------------------------------------------------------------//
SchemeState startup(ComplexField const& u0,
                    SchemeParams const& p,
                    Scheme scheme,
                    StartupOptions const& opts)
{
    p.validate();
    auto const& grid = u0.grid();
    std::vector<double> phi(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m)
        phi[m] = std::norm(u0[m]);
    BesseState initial{u0, RealField(grid, std::move(phi)), 0};

    if (scheme == Scheme::besse)
        return initial;

    if (opts.method == StartupMethod::exact)
    {
        Complex const phase = std::polar(1.0, -opts.exact_omega * p.tau);
        std::vector<Complex> u1(u0.values().begin(), u0.values().end());
        for (auto& v : u1)
            v *= phase;
        return TwoStepState{u0, ComplexField(grid, std::move(u1)), 1};
    }
    auto first = besse_step(initial, p);
    return TwoStepState{u0, std::move(first.curr), 1};
}

SchemeState advance(SchemeState const& state, SchemeParams const& p, Scheme scheme, SolveStats* stats)
{
    if (scheme == Scheme::besse)
        return besse_step(std::get<BesseState>(state), p, stats);

    auto const& s = std::get<TwoStepState>(state);
    auto next = scheme == Scheme::fei ? fei_step(s, p, stats) : modified_step(s, p, stats);
    return TwoStepState{s.curr, std::move(next), s.step_index + 1};
}

ComplexField const& current_level(SchemeState const& state)
{
    return std::visit([](auto const& s) -> ComplexField const& { return s.curr; }, state);
}

std::size_t step_index(SchemeState const& state)
{
    return std::visit([](auto const& s) { return s.step_index; }, state);
}

std::pair<std::size_t, bool> step_count(double t_end, double tau)
{
    if (!(t_end >= 0))
        throw ConfigError("t-end", "must be nonnegative");
    double const ratio = t_end / tau;
    double const nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio))
        return {static_cast<std::size_t>(nearest), false};
    return {static_cast<std::size_t>(std::floor(ratio)), true};
}

//---------------------------------------------------------------------------//
RunResult run(ComplexField const& u0,
              SchemeParams const& p,
              Scheme scheme,
              double t_end,
              RunOptions const& opts,
              StepObserver const& observer)
{
    p.validate();
    if (opts.stride == 0)
        throw ConfigError("record-stride", "must be positive");

    RunResult result;
    std::tie(result.steps, result.truncated) = step_count(t_end, p.tau);
    result.startup = opts.startup.method;
    result.t_final = static_cast<double>(result.steps) * p.tau;

    std::deque<ComplexField> tail;
    auto keep = [&](ComplexField const& f) {
        if (opts.tail_levels == 0)
            return;
        tail.push_back(f);
        while (tail.size() > opts.tail_levels)
            tail.pop_front();
    };
    auto notify = [&](std::size_t n, ComplexField const* prev, ComplexField const& curr,
                      RealField const* phi) {
        if (observer && (n % opts.stride == 0 || n == result.steps))
        {
            observer(StepView{scheme, n, static_cast<double>(n) * p.tau, prev, curr, phi});
        }
    };

    keep(u0);
    if (scheme == Scheme::besse)
    {
        auto state = std::get<BesseState>(startup(u0, p, scheme, opts.startup));
        notify(0, nullptr, state.curr, &state.phi);
        for (std::size_t n = 1; n <= result.steps; ++n)
        {
            state = besse_step(state, p, &result.stats);
            keep(state.curr);
            notify(n, nullptr, state.curr, &state.phi);
        }
    }
    else
    {
        notify(0, nullptr, u0, nullptr);
        if (result.steps >= 1)
        {
            auto state = std::get<TwoStepState>(startup(u0, p, scheme, opts.startup));
            keep(state.curr);
            notify(1, &state.prev, state.curr, nullptr);
            for (std::size_t n = 2; n <= result.steps; ++n)
            {
                state = std::get<TwoStepState>(advance(state, p, scheme, &result.stats));
                keep(state.curr);
                notify(n, &state.prev, state.curr, nullptr);
            }
        }
    }
    result.tail.assign(tail.begin(), tail.end());
    return result;
}

}  // namespace cse
