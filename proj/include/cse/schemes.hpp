#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cse/field.hpp"

namespace cse {

//! The three linearly implicit integrators
enum class Scheme
{
    fei,       //!< two-step, |U^n|² frozen at the middle level
    besse,     //!< one-step relaxation with auxiliary φ ≈ |u|²
    modified,  //!< two-step θ/γ family; θ = γ = 1 is Fei
};

std::string_view to_string(Scheme s) noexcept;
//! Throws ConfigError on an unknown name
Scheme parse_scheme(std::string_view name);

//---------------------------------------------------------------------------//
struct SchemeParams
{
    double tau{0.01};
    double lambda{0};
    double theta{1};
    double gamma{1};

    void validate() const;
};

//! Two time levels U^{n-1}, U^n of a two-step scheme
struct TwoStepState
{
    ComplexField prev;
    ComplexField curr;
    std::size_t step_index{1};
};

//! U^n together with φ^{n-1/2}
struct BesseState
{
    ComplexField curr;
    RealField phi;
    std::size_t step_index{0};
};

using SchemeState = std::variant<TwoStepState, BesseState>;

//! Accumulated linear-solver diagnostics
struct SolveStats
{
    std::size_t solves{0};
    std::size_t refinements{0};
    double max_relative_residual{0};

    void record(double relative_residual, bool refined);
};

//---------------------------------------------------------------------------//
// Single steps. Each throws SolverError naming the step index when the
// linear system cannot be solved.

ComplexField fei_step(TwoStepState const& state,
                      SchemeParams const& p,
                      SolveStats* stats = nullptr);

BesseState besse_step(BesseState const& state,
                      SchemeParams const& p,
                      SolveStats* stats = nullptr);

ComplexField modified_step(TwoStepState const& state,
                           SchemeParams const& p,
                           SolveStats* stats = nullptr);

//---------------------------------------------------------------------------//
enum class StartupMethod
{
    besse_step,  //!< U¹ from one Besse step (two-step schemes)
    exact,       //!< U¹ = e^{-iωτ} U⁰ for a plane wave with known ω
};

struct StartupOptions
{
    StartupMethod method{StartupMethod::besse_step};
    double exact_omega{0};
};

std::string_view to_string(StartupMethod m) noexcept;

/*!
 * Initial state of a scheme.
 *
 * Besse gets (U⁰, φ^{-1/2}) = (u0, |u0|²). The two-step schemes get
 * (U⁰, U¹) with U¹ from the selected startup method.
 */
SchemeState startup(ComplexField const& u0,
                    SchemeParams const& p,
                    Scheme scheme,
                    StartupOptions const& opts = {});

//! Advance any state by one step of `scheme`
SchemeState advance(SchemeState const& state,
                    SchemeParams const& p,
                    Scheme scheme,
                    SolveStats* stats = nullptr);

//! Current level U^n of a state
ComplexField const& current_level(SchemeState const& state);
std::size_t step_index(SchemeState const& state);

//---------------------------------------------------------------------------//
//! Read-only view handed to run observers at level n
struct StepView
{
    Scheme scheme;
    std::size_t step;
    double time;
    ComplexField const* previous;  //!< U^{n-1}; null at n = 0 or for Besse
    ComplexField const& current;   //!< U^n
    RealField const* phi_minus;    //!< φ^{n-1/2}; Besse only
};

using StepObserver = std::function<void(StepView const&)>;

struct RunOptions
{
    std::size_t stride{1};       //!< observer stride in steps
    std::size_t tail_levels{2};  //!< number of final levels kept
    StartupOptions startup{};
};

struct RunResult
{
    std::size_t steps{0};
    double t_final{0};
    bool truncated{false};  //!< t_end was not a multiple of τ
    StartupMethod startup{StartupMethod::besse_step};
    SolveStats stats;
    //! Final levels, oldest first; at most tail_levels entries
    std::vector<ComplexField> tail;
};

/*!
 * Integrate from u0 over ⌊t_end/τ⌋ steps.
 *
 * The observer sees every level n with n % stride == 0 plus the final
 * level. Errors from a step propagate as SolverError with its index.
 */
RunResult run(ComplexField const& u0,
              SchemeParams const& p,
              Scheme scheme,
              double t_end,
              RunOptions const& opts = {},
              StepObserver const& observer = {});

//! Number of whole steps of size tau in t_end, and whether t_end was truncated
std::pair<std::size_t, bool> step_count(double t_end, double tau);

}  // namespace cse
