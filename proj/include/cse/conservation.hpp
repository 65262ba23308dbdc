#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cse/field.hpp"
#include "cse/schemes.hpp"

namespace cse {

//! Discrete invariants of one scheme at one level
struct InvariantSample
{
    std::size_t step_index{0};
    double time{0};
    std::optional<double> density;  //!< absent where no conserved density is known
    double energy{0};
    Scheme scheme{Scheme::fei};
};

//---------------------------------------------------------------------------//
// Fei et al.: functionals of the level pair (U^n, U^{n+1})

//! (h/2) Σ (|U^n|² + |U^{n+1}|²)
double fei_density(ComplexField const& un, ComplexField const& unp1);

//! (h/4) Σ (|δ⁺U^{n+1}|² + |δ⁺U^n|² + λ|U^{n+1}|²|U^n|²), δ⁺U_m = (U_{m+1} - U_m)/h
double fei_energy(ComplexField const& un, ComplexField const& unp1, double lambda);

//---------------------------------------------------------------------------//
// Besse

//! h Σ |U^n|²
double besse_density(ComplexField const& un);

//! h Σ (½|δ⁺U^n|² + (λ/4) φ^{n+1/2} φ^{n-1/2})
double besse_energy(ComplexField const& un,
                    RealField const& phi_plus,
                    RealField const& phi_minus,
                    double lambda);

//! Besse energy of a state (U^n, φ^{n-1/2}); φ^{n+1/2} = 2|U^n|² - φ^{n-1/2}
double besse_energy(BesseState const& state, double lambda);

//---------------------------------------------------------------------------//
/*!
 * Energy of the θ/γ scheme for the level pair (a, b) = (U^n, U^{n+1}):
 *
 *   θh/4 Σ (|δ⁺b|² + |δ⁺a|²)
 * + (1-θ)h/4 Σ ((δ⁺a)(δ⁺b̄) + (δ⁺ā)(δ⁺b))
 * + γh/4 Σ λ|a|²|b|²
 * + (1-γ)h/16 Σ λ (b² + b̄²)(a² + ā²)
 * - (1-γ)h/16 Σ λ (b² - b̄²)(a² - ā²)
 *
 * At θ = γ = 1 this is fei_energy.
 */
double modified_energy(ComplexField const& un, ComplexField const& unp1, SchemeParams const& p);

//! True where the scheme has a known conserved density (Fei, Besse, θ = γ = 1)
bool has_density(Scheme scheme, SchemeParams const& p) noexcept;

/*!
 * Observer that records the scheme's own invariants along a run.
 *
 * Two-step schemes contribute a sample for the pair (U^{n-1}, U^n) at every
 * observed level n ≥ 1; Besse contributes one at every observed level.
 */
class InvariantRecorder
{
  public:
    explicit InvariantRecorder(SchemeParams p) : params_(p) {}

    void operator()(StepView const& view);

    std::vector<InvariantSample> const& samples() const noexcept { return samples_; }

    //! max_n |E^n - E^0| / |E^0| over recorded samples (absolute if E^0 = 0)
    double energy_drift() const;
    //! Same for the density; 0 when the scheme has none
    double density_drift() const;

  private:
    SchemeParams params_;
    std::vector<InvariantSample> samples_;
};

}  // namespace cse
