#include "cse/polynomial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "cse/errors.hpp"

namespace cse {

Complex evaluate(std::span<Complex const> coeffs, Complex z)
{
    Complex acc{0};
    for (auto c : coeffs)
        acc = acc * z + c;
    return acc;
}

Complex evaluate_derivative(std::span<Complex const> coeffs, Complex z)
{
    auto const n = coeffs.size();
    Complex acc{0};
    for (std::size_t i = 0; i + 1 < n; ++i)
        acc = acc * z + static_cast<double>(n - 1 - i) * coeffs[i];
    return acc;
}

Coeffs multiply(std::span<Complex const> a, std::span<Complex const> b)
{
    Coeffs out(a.size() + b.size() - 1, Complex{0});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

Coeffs conjugate_reciprocal(std::span<Complex const> coeffs)
{
    Coeffs out(coeffs.rbegin(), coeffs.rend());
    for (auto& c : out)
        c = std::conj(c);
    return out;
}

bool leading_coefficient_vanishes(std::span<Complex const> coeffs)
{
    if (coeffs.empty())
        return true;
    double scale = 0;
    for (auto c : coeffs)
        scale = std::max(scale, std::abs(c));
    return !(std::abs(coeffs.front()) > 1e-14 * scale);
}

std::vector<Complex> companion_roots(std::span<Complex const> coeffs)
{
    if (leading_coefficient_vanishes(coeffs))
        throw DegeneratePolynomialError("leading coefficient vanishes");
    auto const n = static_cast<Eigen::Index>(coeffs.size() - 1);
    if (n == 0)
        return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        companion(0, j) = -coeffs[static_cast<std::size_t>(j + 1)] / coeffs[0];
    for (Eigen::Index i = 1; i < n; ++i)
        companion(i, i - 1) = 1;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    auto const& ev = solver.eigenvalues();
    return std::vector<Complex>(ev.data(), ev.data() + n);
}

RootReport find_roots(std::span<Complex const> coeffs, double tol)
{
    RootReport report;
    report.tol = tol;
    report.roots = companion_roots(coeffs);
    for (auto& r : report.roots)
    {
        Complex const d = evaluate_derivative(coeffs, r);
        if (d == Complex{0})
            continue;
        Complex const candidate = r - evaluate(coeffs, r) / d;
        if (std::abs(evaluate(coeffs, candidate)) < std::abs(evaluate(coeffs, r)))
            r = candidate;
    }
    for (auto r : report.roots)
    {
        double const mod = std::abs(r);
        report.max_modulus = std::max(report.max_modulus, mod);
        report.on_circle.push_back(std::abs(mod - 1) <= tol);
    }
    report.stable = report.max_modulus <= 1 + tol;
    return report;
}

//---------------------------------------------------------------------------//
bool roots_inside_unit_disc(std::span<Complex const> coeffs, double* margin)
{
    constexpr std::size_t max_degree = 16;
    if (coeffs.empty() || coeffs.size() > max_degree + 1)
        throw ConfigError("coeffs", "Schur-Cohn test supports degree 0 to 16");
    std::array<Complex, max_degree + 1> c{};
    std::copy(coeffs.begin(), coeffs.end(), c.begin());
    double worst = 1;
    for (std::size_t n = coeffs.size(); n > 1; --n)
    {
        Complex const lead = c[0];
        Complex const tail = c[n - 1];
        double const ratio = std::abs(tail) / std::abs(lead);
        worst = std::min(worst, 1 - ratio);
        if (!(ratio < 1))
        {
            if (margin)
                *margin = worst;
            return false;
        }
        // conj(lead) p(z) - tail z^n conj(p(1/conj z)); the constant term cancels
        auto const prev = c;
        for (std::size_t k = 0; k + 1 < n; ++k)
            c[k] = std::conj(lead) * prev[k] - tail * std::conj(prev[n - 1 - k]);
        double const norm = std::abs(c[0]);
        for (std::size_t k = 0; k + 1 < n; ++k)
            c[k] /= norm;
    }
    if (margin)
        *margin = worst;
    return true;
}

bool self_inversive_unimodular(std::span<Complex const> coeffs, double slack, double* margin)
{
    auto const n = coeffs.size();
    if (n < 2)
        return true;
    constexpr std::size_t max_degree = 16;
    if (n > max_degree + 1)
        throw ConfigError("coeffs", "Cohn test supports degree up to 16");
    // p'((1 + slack) z), highest degree first
    std::array<Complex, max_degree> d{};
    double scale = 1;
    for (std::size_t k = n - 1; k-- > 0;)
    {
        // coefficient of z^{n-2-k} in p'
        std::size_t const power = n - 2 - k;
        d[k] = static_cast<double>(power + 1) * coeffs[k] * scale;
        scale *= 1 + slack;
    }
    return roots_inside_unit_disc(std::span<Complex const>(d.data(), n - 1), margin);
}

//---------------------------------------------------------------------------//
double multiset_distance(std::span<Complex const> a, std::span<Complex const> b)
{
    if (a.size() != b.size())
        return std::numeric_limits<double>::infinity();
    std::vector<std::size_t> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do
    {
        double worst = 0;
        for (std::size_t i = 0; i < a.size() && worst < best; ++i)
            worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

double self_reciprocity_defect(std::span<Complex const> roots)
{
    std::vector<Complex> images;
    images.reserve(roots.size());
    for (auto r : roots)
        images.push_back(1.0 / std::conj(r));
    return multiset_distance(roots, images);
}

double min_root_separation(std::span<Complex const> roots)
{
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            sep = std::min(sep, std::abs(roots[i] - roots[j]));
    return sep;
}

//---------------------------------------------------------------------------//
RootTracker::RootTracker(std::size_t degree) : roots_(degree)
{
    reset();
}

void RootTracker::reset()
{
    auto const n = roots_.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        double const angle = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n) + 0.4;
        roots_[i] = std::polar(1.0, angle);
    }
}

double RootTracker::solve(std::span<Complex const> coeffs)
{
    constexpr int max_iterations = 80;
    auto const n = roots_.size();

    // Separate coincident starting values, which stall the iteration
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(roots_[i] - roots_[j]) < 1e-10)
                roots_[j] *= std::polar(1.0 + 1e-7, 1e-6 * static_cast<double>(j));

    bool converged = false;
    for (int it = 0; it < max_iterations && !converged; ++it)
    {
        converged = true;
        for (std::size_t i = 0; i < n; ++i)
        {
            Complex const z = roots_[i];
            Complex const pz = evaluate(coeffs, z);
            if (pz == Complex{0})
                continue;
            Complex const ratio = pz / evaluate_derivative(coeffs, z);
            Complex repulsion{0};
            for (std::size_t j = 0; j < n; ++j)
                if (j != i)
                    repulsion += 1.0 / (z - roots_[j]);
            Complex const step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
            {
                converged = false;
                it = max_iterations;
                break;
            }
            roots_[i] = z - step;
            if (std::abs(step) > 1e-14 * (1 + std::abs(z)))
                converged = false;
        }
    }
    if (!converged)
    {
        ++fallbacks_;
        roots_ = companion_roots(coeffs);
    }
    double mx = 0;
    for (auto r : roots_)
        mx = std::max(mx, std::abs(r));
    return mx;
}

}  // namespace cse
