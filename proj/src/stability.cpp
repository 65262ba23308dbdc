#include "cse/stability.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "cse/errors.hpp"

namespace cse {
namespace {

constexpr Complex I{0, 1};

Coeffs to_coeffs(std::span<Complex const> raw)
{
    return Coeffs(raw.begin(), raw.end());
}

void require_nondegenerate(Coeffs const& c, char const* who)
{
    if (leading_coefficient_vanishes(c))
        throw DegeneratePolynomialError(std::string(who) + ": leading coefficient vanishes");
}

Provenance make_provenance(Scheme scheme, double q, double K, double L, double h)
{
    Provenance p;
    p.scheme = scheme;
    p.q = q;
    p.K = K;
    p.L = L;
    p.h = h;
    return p;
}

double norm2(std::span<double const> v)
{
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

ModeSymbols symbols_nd(double q,
                       double tau,
                       double h,
                       std::span<double const> k,
                       std::span<double const> ell)
{
    if (k.size() != ell.size() || k.empty())
        throw ConfigError("ell", "wave vectors k and ell must have the same nonzero dimension");
    if (!(tau > 0) || h < 0)
        throw ConfigError("tau", "need tau > 0 and h >= 0");
    ModeSymbols s;
    s.q = q;
    for (std::size_t j = 0; j < k.size(); ++j)
    {
        s.carrier += laplacian_symbol(k[j], tau, h);
        s.plus += laplacian_symbol(k[j] + ell[j], tau, h);
        s.minus += laplacian_symbol(k[j] - ell[j], tau, h);
    }
    return s;
}

BessePolynomials assemble_besse(BesseCoefficients const& bc, Provenance prov)
{
    auto const cubic = besse_cubic(bc);
    BessePolynomials out;
    out.cubic.coeffs = to_coeffs(cubic);
    require_nondegenerate(out.cubic.coeffs, "besse_polynomial");
    Coeffs const z_plus_one{Complex{1}, Complex{1}};
    out.quartic.coeffs = multiply(z_plus_one, out.cubic.coeffs);
    prov.scheme = Scheme::besse;
    out.cubic.provenance = prov;
    out.quartic.provenance = prov;
    out.norm.f = cubic[3] / cubic[0];
    out.norm.g = cubic[2] / cubic[0];
    return out;
}

}  // namespace

//---------------------------------------------------------------------------//
ModeSymbols symbols(ModePoint const& pt) noexcept
{
    return ModeSymbols{pt.q,
                       pt.K * pt.K,
                       (pt.K + pt.L) * (pt.K + pt.L),
                       (pt.K - pt.L) * (pt.K - pt.L)};
}

ModeSymbols symbols(PlaneWaveContext const& ctx, double ell)
{
    ctx.validate();
    return ModeSymbols{ctx.q(),
                       laplacian_symbol(ctx.k, ctx.tau, ctx.h),
                       laplacian_symbol(ctx.k + ell, ctx.tau, ctx.h),
                       laplacian_symbol(ctx.k - ell, ctx.tau, ctx.h)};
}

//---------------------------------------------------------------------------//
FeiCoefficients fei_coefficients(ModeSymbols const& s)
{
    double const wt = omega_tau(Scheme::fei, s.q, s.carrier);
    Complex const phase = std::polar(1.0, -wt);
    return FeiCoefficients{phase * (I - s.plus - s.q),
                           phase * (I - s.minus - s.q),
                           2 * s.q * std::cos(wt),
                           wt};
}

FeiCoefficients fei_discrete_coefficients(PlaneWaveContext const& ctx, double ell)
{
    ctx.validate();
    if (!(ctx.h > 0))
        throw ConfigError("h", "discrete Fei coefficients need h > 0");
    double const rho = ctx.rho();
    double const h = ctx.h;
    double const q = ctx.q();
    double const wt = omega_scheme(Scheme::fei, ctx);

    Complex const a1 = rho * std::polar(1.0, ctx.k * h - wt);
    Complex const a0 = std::polar(1.0, -wt) * (I - 2 * rho - q);
    Complex const am1 = rho * std::polar(1.0, -(ctx.k * h + wt));
    auto c_of = [&](double l) {
        return a1 * std::polar(1.0, l * h) + a0 + am1 * std::polar(1.0, -l * h);
    };
    return FeiCoefficients{c_of(ell), c_of(-ell), 2 * q * std::cos(wt), wt};
}

BesseCoefficients besse_coefficients(ModeSymbols const& s, int d)
{
    if (d < 1)
        throw ConfigError("d", "dimension must be positive");
    double const wt = omega_tau(Scheme::besse, s.q, s.carrier);
    Complex const phase = std::polar(1.0, -0.5 * wt);
    double const dq = d * s.q;
    return BesseCoefficients{phase * (2.0 * I - s.plus - dq),
                             phase * (2.0 * I - s.minus - dq),
                             2 * s.q * std::cos(0.5 * wt),
                             wt};
}

ModifiedCoefficients modified_coefficients(ModeSymbols const& s, double theta, double gamma)
{
    double const wt = omega_tau(Scheme::modified, s.q, s.carrier, theta);
    Complex const phase = std::polar(1.0, -wt);
    ModifiedCoefficients m;
    m.c_plus = phase * (I - gamma * s.q - theta * s.plus);
    m.c_minus = phase * (I - gamma * s.q - theta * s.minus);
    m.d_plus = 2 * (1 - theta) * s.plus;
    m.d_minus = 2 * (1 - theta) * s.minus;
    m.b = 2 * s.q * std::cos(wt);
    m.r = (1 - gamma) * s.q;
    m.q = s.q;
    m.gamma = gamma;
    m.omega_tau = wt;
    return m;
}

//---------------------------------------------------------------------------//
std::array<Complex, 5> fei_quartic(FeiCoefficients const& k) noexcept
{
    Complex const c = k.c_plus, cm = k.c_minus;
    double const b = k.b;
    return {c * std::conj(cm),
            -b * (c + std::conj(cm)),
            c * cm + std::conj(c) * std::conj(cm),
            -b * (cm + std::conj(c)),
            cm * std::conj(c)};
}

std::array<Complex, 4> besse_cubic(BesseCoefficients const& k) noexcept
{
    Complex const c = k.c_plus, cm = k.c_minus;
    Complex const cb = std::conj(c), cmb = std::conj(cm);
    double const b = k.b;
    Complex const mixed = c * cm + cb * cmb;
    return {c * cmb,
            mixed + c * cmb - 2 * b * (c + cmb),
            mixed + cb * cm - 2 * b * (cb + cm),
            cb * cm};
}

std::array<Complex, 5> modified_quartic(ModifiedCoefficients const& k) noexcept
{
    Complex const c = k.c_plus, cm = k.c_minus;
    Complex const cb = std::conj(c), cmb = std::conj(cm);
    double const g = k.gamma;
    double const b = k.b, r = k.r;
    double const q = k.q;
    double const D = k.d_plus + (2 - g) * b;
    double const Dm = k.d_minus + (2 - g) * b;
    double const bb = g * (g - 1) * b * b;
    return {c * cmb - r * r,
            bb - D * cmb - Dm * c,
            b * (2 - g) * (k.d_plus + k.d_minus) + k.d_plus * k.d_minus + c * cm + cb * cmb
                + (1 - g) * (1 - g) * (2 * q * q - b * b) + 4 * (1 - g) * b * b,
            bb - D * cm - Dm * cb,
            cb * cm - r * r};
}

//---------------------------------------------------------------------------//
StabilityPolynomial fei_polynomial(PlaneWaveContext const& ctx, double ell, bool discrete)
{
    auto const coeffs = discrete ? fei_discrete_coefficients(ctx, ell)
                                 : fei_coefficients(symbols(PlaneWaveContext{
                                     ctx.amp, ctx.k, ctx.lambda, ctx.tau, 0.0}, ell));
    StabilityPolynomial p;
    p.coeffs = to_coeffs(fei_quartic(coeffs));
    require_nondegenerate(p.coeffs, "fei_polynomial");
    double const st = std::sqrt(ctx.tau);
    p.provenance = make_provenance(Scheme::fei, ctx.q(), ctx.K(), ell * st,
                                   discrete ? ctx.h : 0.0);
    return p;
}

StabilityPolynomial fei_polynomial(ModePoint const& pt)
{
    StabilityPolynomial p;
    p.coeffs = to_coeffs(fei_quartic(fei_coefficients(symbols(pt))));
    require_nondegenerate(p.coeffs, "fei_polynomial");
    p.provenance = make_provenance(Scheme::fei, pt.q, pt.K, pt.L, 0.0);
    return p;
}

StabilityPolynomial fei_polynomial_nd(double q,
                                      double tau,
                                      double h,
                                      std::span<double const> k,
                                      std::span<double const> ell)
{
    auto const s = symbols_nd(q, tau, h, k, ell);
    StabilityPolynomial p;
    p.coeffs = to_coeffs(fei_quartic(fei_coefficients(s)));
    require_nondegenerate(p.coeffs, "fei_polynomial_nd");
    double const st = std::sqrt(tau);
    p.provenance = make_provenance(Scheme::fei, q, norm2(k) * st, norm2(ell) * st, h);
    p.provenance.d = static_cast<int>(k.size());
    return p;
}

//---------------------------------------------------------------------------//
std::array<Complex, 4> NormalizedCubic::coeffs() const noexcept
{
    return {Complex{1}, f * std::conj(g), g, f};
}

BessePolynomials besse_polynomial(PlaneWaveContext const& ctx, double ell, int d)
{
    auto const s = symbols(ctx, ell);
    Provenance prov = make_provenance(Scheme::besse, ctx.q(), ctx.K(), ell * std::sqrt(ctx.tau), ctx.h);
    prov.d = d;
    return assemble_besse(besse_coefficients(s, d), prov);
}

BessePolynomials besse_polynomial(ModePoint const& pt, int d)
{
    auto const s = symbols(pt);
    Provenance prov = make_provenance(Scheme::besse, pt.q, pt.K, pt.L, 0.0);
    prov.d = d;
    return assemble_besse(besse_coefficients(s, d), prov);
}

BessePolynomials besse_polynomial_nd(double q,
                                     double tau,
                                     double h,
                                     std::span<double const> k,
                                     std::span<double const> ell)
{
    auto const s = symbols_nd(q, tau, h, k, ell);
    int const d = static_cast<int>(k.size());
    double const st = std::sqrt(tau);
    Provenance prov = make_provenance(Scheme::besse, q, norm2(k) * st, norm2(ell) * st, h);
    prov.d = d;
    return assemble_besse(besse_coefficients(s, d), prov);
}

//---------------------------------------------------------------------------//
StabilityPolynomial modified_polynomial(PlaneWaveContext const& ctx,
                                        double ell,
                                        double theta,
                                        double gamma)
{
    auto const s = symbols(ctx, ell);
    StabilityPolynomial p;
    p.coeffs = to_coeffs(modified_quartic(modified_coefficients(s, theta, gamma)));
    require_nondegenerate(p.coeffs, "modified_polynomial");
    p.provenance = make_provenance(Scheme::modified, ctx.q(), ctx.K(), ell * std::sqrt(ctx.tau), ctx.h);
    p.provenance.theta = theta;
    p.provenance.gamma = gamma;
    return p;
}

StabilityPolynomial modified_polynomial(ModePoint const& pt, double theta, double gamma)
{
    auto const s = symbols(pt);
    StabilityPolynomial p;
    p.coeffs = to_coeffs(modified_quartic(modified_coefficients(s, theta, gamma)));
    require_nondegenerate(p.coeffs, "modified_polynomial");
    p.provenance = make_provenance(Scheme::modified, pt.q, pt.K, pt.L, 0.0);
    p.provenance.theta = theta;
    p.provenance.gamma = gamma;
    return p;
}

StabilityPolynomial stability_polynomial(Scheme scheme, ModePoint const& pt, double theta, double gamma)
{
    switch (scheme)
    {
        case Scheme::fei:
            return fei_polynomial(pt);
        case Scheme::besse:
            return besse_polynomial(pt).quartic;
        case Scheme::modified:
            break;
    }
    return modified_polynomial(pt, theta, gamma);
}

RootReport analyse(StabilityPolynomial const& p, double tol)
{
    if (p.provenance.scheme != Scheme::besse || p.degree() != 4)
        return find_roots(p.coeffs, tol);

    // The Besse quartic is (z + 1) p̃(z); dividing out the exact root keeps a
    // second root near -1 from turning into an ill-conditioned double root.
    Coeffs cubic(4);
    cubic[0] = p.coeffs[0];
    for (std::size_t i = 1; i < 4; ++i)
        cubic[i] = p.coeffs[i] - cubic[i - 1];
    auto report = find_roots(cubic, tol);
    report.roots.push_back(-1.0);
    report.on_circle.push_back(true);
    report.max_modulus = std::max(report.max_modulus, 1.0);
    report.stable = report.max_modulus <= 1 + tol;
    return report;
}

//---------------------------------------------------------------------------//
Complex fei_spurious_asymptote(double ell, double lambda_amp2, double tau)
{
    Complex const root = std::sqrt(Complex{2 * lambda_amp2 - ell * ell, 0});
    return -(1.0 + tau * ell * root);
}

double fei_growth_constant(double lambda_amp2)
{
    double const arg = 2 * lambda_amp2 - 1;
    return arg > 0 ? std::sqrt(arg) : 0.0;
}

std::pair<Complex, Complex> besse_asymptote(double ell, double lambda_amp2, double tau)
{
    Complex const root = std::sqrt(Complex{-2 * lambda_amp2 - ell * ell, 0});
    return {1.0 + tau * ell * root, 1.0 - tau * ell * root};
}

Complex besse_boundary(Complex f, double theta)
{
    if (!(std::abs(std::abs(f) - 1) <= 1e-10))
        throw ConfigError("f", "boundary curve needs |f| = 1");
    return std::polar(1.0, 2 * theta) - 2.0 * f * std::polar(1.0, -theta);
}

bool boundary_necessary(Complex g) noexcept
{
    return std::abs(g) <= 3;
}

bool boundary_sufficient(Complex g) noexcept
{
    return std::abs(g) <= 1;
}

}  // namespace cse
