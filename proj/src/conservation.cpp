#include "cse/conservation.hpp"

#include <cmath>

#include "cse/errors.hpp"

namespace cse {
namespace {

void check_grids(ComplexField const& a, ComplexField const& b)
{
    if (a.grid() != b.grid())
        throw ConfigError("field", "functional arguments live on different grids");
}

// δ⁺U_m = (U_{m+1} - U_m)/h with periodic wrap
Complex forward_diff(ComplexField const& u, std::size_t m)
{
    auto const n = u.size();
    return (u[(m + 1) % n] - u[m]) / u.grid().spacing();
}

double relative_drift(std::vector<double> const& values)
{
    if (values.empty())
        return 0;
    double const ref = values.front();
    double const scale = ref != 0 ? std::abs(ref) : 1.0;
    double drift = 0;
    for (double v : values)
        drift = std::max(drift, std::abs(v - ref) / scale);
    return drift;
}

}  // namespace

double fei_density(ComplexField const& un, ComplexField const& unp1)
{
    check_grids(un, unp1);
    double sum = 0;
    for (std::size_t m = 0; m < un.size(); ++m)
        sum += std::norm(un[m]) + std::norm(unp1[m]);
    return 0.5 * un.grid().spacing() * sum;
}

double fei_energy(ComplexField const& un, ComplexField const& unp1, double lambda)
{
    check_grids(un, unp1);
    double sum = 0;
    for (std::size_t m = 0; m < un.size(); ++m)
    {
        sum += std::norm(forward_diff(unp1, m)) + std::norm(forward_diff(un, m))
               + lambda * std::norm(unp1[m]) * std::norm(un[m]);
    }
    return 0.25 * un.grid().spacing() * sum;
}

double besse_density(ComplexField const& un)
{
    double sum = 0;
    for (auto v : un.values())
        sum += std::norm(v);
    return un.grid().spacing() * sum;
}

double besse_energy(ComplexField const& un,
                    RealField const& phi_plus,
                    RealField const& phi_minus,
                    double lambda)
{
    if (phi_plus.grid() != un.grid() || phi_minus.grid() != un.grid())
        throw ConfigError("field", "functional arguments live on different grids");
    double sum = 0;
    for (std::size_t m = 0; m < un.size(); ++m)
    {
        sum += 0.5 * std::norm(forward_diff(un, m))
               + 0.25 * lambda * phi_plus[m] * phi_minus[m];
    }
    return un.grid().spacing() * sum;
}

double besse_energy(BesseState const& state, double lambda)
{
    auto const& u = state.curr;
    std::vector<double> plus(u.size());
    for (std::size_t m = 0; m < u.size(); ++m)
        plus[m] = 2 * std::norm(u[m]) - state.phi[m];
    return besse_energy(u, RealField(u.grid(), std::move(plus)), state.phi, lambda);
}

double modified_energy(ComplexField const& un, ComplexField const& unp1, SchemeParams const& p)
{
    check_grids(un, unp1);
    double grad_diag = 0;
    double grad_cross = 0;
    double quartic = 0;
    double mixed_plus = 0;
    double mixed_minus = 0;
    for (std::size_t m = 0; m < un.size(); ++m)
    {
        Complex const da = forward_diff(un, m);
        Complex const db = forward_diff(unp1, m);
        Complex const a = un[m];
        Complex const b = unp1[m];
        grad_diag += std::norm(db) + std::norm(da);
        grad_cross += (da * std::conj(db) + std::conj(da) * db).real();
        quartic += std::norm(a) * std::norm(b);
        Complex const a2 = a * a;
        Complex const b2 = b * b;
        mixed_plus += ((b2 + std::conj(b2)) * (a2 + std::conj(a2))).real();
        mixed_minus += ((b2 - std::conj(b2)) * (a2 - std::conj(a2))).real();
    }
    double const h = un.grid().spacing();
    return p.theta * h / 4 * grad_diag + (1 - p.theta) * h / 4 * grad_cross
           + p.gamma * h / 4 * p.lambda * quartic
           + (1 - p.gamma) * h / 16 * p.lambda * (mixed_plus - mixed_minus);
}

bool has_density(Scheme scheme, SchemeParams const& p) noexcept
{
    if (scheme == Scheme::modified)
        return p.theta == 1 && p.gamma == 1;
    return true;
}

//---------------------------------------------------------------------------//
void InvariantRecorder::operator()(StepView const& view)
{
    InvariantSample s;
    s.scheme = view.scheme;
    if (view.scheme == Scheme::besse)
    {
        s.step_index = view.step;
        s.time = view.time;
        BesseState const state{view.current, *view.phi_minus, view.step};
        s.energy = besse_energy(state, params_.lambda);
        s.density = besse_density(view.current);
    }
    else
    {
        if (!view.previous)
            return;
        s.step_index = view.step - 1;
        s.time = view.time - params_.tau;
        auto const& a = *view.previous;
        auto const& b = view.current;
        s.energy = view.scheme == Scheme::fei ? fei_energy(a, b, params_.lambda)
                                              : modified_energy(a, b, params_);
        if (has_density(view.scheme, params_))
            s.density = fei_density(a, b);
    }
    samples_.push_back(s);
}

double InvariantRecorder::energy_drift() const
{
    std::vector<double> e;
    for (auto const& s : samples_)
        e.push_back(s.energy);
    return relative_drift(e);
}

double InvariantRecorder::density_drift() const
{
    std::vector<double> d;
    for (auto const& s : samples_)
    {
        if (s.density)
            d.push_back(*s.density);
    }
    return relative_drift(d);
}

}  // namespace cse
