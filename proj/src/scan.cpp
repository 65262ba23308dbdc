#include "cse/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "cse/errors.hpp"

namespace cse {
namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

//! Fixed-degree root solver for one scheme's polynomial
class PointSolver
{
  public:
    PointSolver(Scheme scheme, double theta, double gamma)
        : scheme_(scheme), theta_(theta), gamma_(gamma),
          tracker_(scheme == Scheme::besse ? 3 : 4)
    {
    }

    //! Coefficients at `pt`, empty if the polynomial degenerates or ω fails
    std::span<Complex const> coefficients(ModePoint const& pt)
    {
        std::size_t n = 5;
        try
        {
            auto const s = symbols(pt);
            switch (scheme_)
            {
                case Scheme::fei:
                    buf_ = fei_quartic(fei_coefficients(s));
                    break;
                case Scheme::besse: {
                    auto const c = besse_cubic(besse_coefficients(s));
                    std::copy(c.begin(), c.end(), buf_.begin());
                    n = 4;
                    break;
                }
                case Scheme::modified:
                    buf_ = modified_quartic(modified_coefficients(s, theta_, gamma_));
                    break;
            }
        }
        catch (DispersionError const&)
        {
            return {};
        }
        std::span<Complex const> coeffs(buf_.data(), n);
        if (leading_coefficient_vanishes(coeffs))
            return {};
        return coeffs;
    }

    //! Max root modulus; NaN if the polynomial degenerates or ω fails
    double operator()(ModePoint const& pt)
    {
        auto const c = coefficients(pt);
        return c.empty() ? nan : tracker_.solve(c);
    }

    double solve(std::span<Complex const> c) { return tracker_.solve(c); }
    void reset() { tracker_.reset(); }

  private:
    Scheme scheme_;
    double theta_;
    double gamma_;
    RootTracker tracker_;
    std::array<Complex, 5> buf_{};
};

unsigned worker_count(unsigned requested, std::size_t rows)
{
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(rows, 1)));
}

//! Run body(row, solver) for every row, rows handed out dynamically
template<class Body>
void parallel_rows(std::size_t rows, unsigned jobs, Scheme scheme, ScanOptions const& opts, Body body)
{
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        PointSolver solver(scheme, opts.theta, opts.gamma);
        for (std::size_t i = next++; i < rows; i = next++)
            body(i, solver);
    };
    unsigned const n = worker_count(jobs, rows);
    if (n <= 1)
    {
        worker();
        return;
    }
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back(worker);
}

void validate_options(ScanOptions const& opts)
{
    if (!(opts.tol >= 0) || !std::isfinite(opts.tol))
        throw ConfigError("tol", "tolerance must be finite and nonnegative");
    if (!std::isfinite(opts.theta) || !std::isfinite(opts.gamma))
        throw ConfigError("theta", "theta and gamma must be finite");
}

}  // namespace

//---------------------------------------------------------------------------//
std::vector<double> LScanSpec::grid() const
{
    validate();
    std::vector<double> out(points);
    if (points == 1)
    {
        out[0] = min;
        return out;
    }
    double const step = (max - min) / static_cast<double>(points - 1);
    for (std::size_t j = 0; j < points; ++j)
        out[j] = min + step * static_cast<double>(j);
    out.back() = max;
    return out;
}

void LScanSpec::validate() const
{
    if (!std::isfinite(min) || !std::isfinite(max) || !(min <= max))
        throw ConfigError("L", "L range must be finite with min <= max");
    if (points == 0 || (points == 1 && min != max))
        throw ConfigError("L", "L range needs at least two points");
}

void validate_grid(std::span<double const> grid, char const* name)
{
    if (grid.empty())
        throw ConfigError(name, "grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        if (!std::isfinite(grid[i]))
            throw ConfigError(name, "grid contains a non-finite value");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw ConfigError(name, "grid must be strictly ascending");
    }
}

double max_modulus_at(Scheme scheme, ModePoint const& pt, double theta, double gamma)
{
    PointSolver solver(scheme, theta, gamma);
    return solver(pt);
}

//---------------------------------------------------------------------------//
QLScan scan_qL(Scheme scheme,
               double K,
               std::span<double const> q_grid,
               std::span<double const> L_grid,
               ScanOptions const& opts)
{
    validate_grid(q_grid, "q");
    validate_grid(L_grid, "L");
    if (!std::isfinite(K))
        throw ConfigError("K", "K must be finite");
    validate_options(opts);

    QLScan out;
    out.q.assign(q_grid.begin(), q_grid.end());
    out.L.assign(L_grid.begin(), L_grid.end());
    out.K = K;
    out.max_modulus.assign(q_grid.size() * L_grid.size(), nan);

    auto const nL = L_grid.size();
    parallel_rows(q_grid.size(), opts.jobs, scheme, opts, [&](std::size_t i, PointSolver& solve) {
        solve.reset();
        for (std::size_t j = 0; j < nL; ++j)
            out.max_modulus[i * nL + j] = solve(ModePoint{q_grid[i], K, L_grid[j]});
    });
    out.degenerate = static_cast<std::size_t>(
        std::count_if(out.max_modulus.begin(), out.max_modulus.end(), [](double v) { return std::isnan(v); }));
    return out;
}

//---------------------------------------------------------------------------//
QKScan scan_qK(Scheme scheme,
               std::span<double const> q_grid,
               std::span<double const> K_grid,
               LScanSpec const& L_spec,
               ScanOptions const& opts)
{
    validate_grid(q_grid, "q");
    validate_grid(K_grid, "K");
    validate_options(opts);
    auto const Ls = L_spec.grid();

    QKScan out;
    out.q.assign(q_grid.begin(), q_grid.end());
    out.K.assign(K_grid.begin(), K_grid.end());
    out.L_spec = L_spec;
    auto const nK = K_grid.size();
    out.max_modulus.assign(q_grid.size() * nK, nan);
    out.stable.assign(q_grid.size() * nK, 0);
    double const limit = 1 + opts.tol;

    // Every polynomial here is self-inversive, so Cohn's criterion certifies
    // "all roots unimodular" cheaply; roots are only computed where it fails.
    // Instability sets in where two unimodular roots collide and leave the
    // circle. A band narrower than the L spacing shows up as a dip in the
    // Cohn margin, and such dips are resampled finely.
    constexpr double dip_margin = 1e-3;
    constexpr std::size_t refine_points = 32;

    auto cell = [&](double q, double K, PointSolver& solve) -> double {
        solve.reset();
        double worst = 0;
        auto probe = [&](double L, double* margin) -> bool {
            auto const c = solve.coefficients(ModePoint{q, K, L});
            if (c.empty())
            {
                worst = nan;
                return false;
            }
            if (self_inversive_unimodular(c, 1e-13, margin))
            {
                worst = std::max(worst, 1.0);
                return true;
            }
            worst = std::max(worst, solve.solve(c));
            return worst <= limit;
        };

        double m_prev2 = 1, m_prev = 1;
        for (std::size_t j = 0; j < Ls.size(); ++j)
        {
            double margin = 0;
            if (!probe(Ls[j], &margin))
                return worst;
            if (!L_spec.refine)
                continue;
            if (j >= 2 && m_prev < dip_margin && m_prev <= m_prev2 && m_prev <= margin)
            {
                double const a = Ls[j - 2], b = Ls[j];
                for (std::size_t r = 1; r < refine_points; ++r)
                {
                    double const L = a + (b - a) * static_cast<double>(r) / refine_points;
                    if (!probe(L, nullptr))
                        return worst;
                }
            }
            m_prev2 = m_prev;
            m_prev = margin;
        }
        return worst;
    };

    parallel_rows(q_grid.size(), opts.jobs, scheme, opts, [&](std::size_t i, PointSolver& solve) {
        for (std::size_t j = 0; j < nK; ++j)
        {
            double const m = cell(q_grid[i], K_grid[j], solve);
            out.max_modulus[i * nK + j] = m;
            out.stable[i * nK + j] = !std::isnan(m) && m <= limit;
        }
    });
    out.degenerate = static_cast<std::size_t>(
        std::count_if(out.max_modulus.begin(), out.max_modulus.end(), [](double v) { return std::isnan(v); }));
    return out;
}

}  // namespace cse
