#pragma once

#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"
#include "cse/scan.hpp"

namespace cse::cli {

using Json = nlohmann::ordered_json;

//! Exit codes of the `cse` tool
enum ExitCode : int
{
    exit_ok = 0,
    exit_config = 2,
    exit_solver = 3,
    exit_dispersion = 4,
    exit_other = 5,
};

int exit_code_for(std::exception const& e) noexcept;

//---------------------------------------------------------------------------//
struct SimulateOptions
{
    RunConfig run;
    std::string prefix;  //!< file prefix, defaults to the scheme name
    std::filesystem::path out_dir{"."};
};

/*!
 * Writes <prefix>_trajectory.csv (x, re, im, abs, step, t), <prefix>_invariants.csv
 * (step, t, density, energy) and <prefix>_run.json with parameters and
 * solver statistics. The last two levels are always in the trajectory.
 */
Json cmd_simulate(SimulateOptions const& opts);

//---------------------------------------------------------------------------//
struct DispersionOptions
{
    Range q{0, 2, 201, false};
    double K{0};                //!< continuous carrier, used when h is absent
    std::optional<double> k;    //!< integer carrier for the grid symbol
    std::optional<double> h;
    double tau{0.01};
    double theta{0.5};
    std::string output{"dispersion.csv"};
    std::filesystem::path out_dir{"."};
};

//! Columns s, q, carrier, exact, fei, besse, modified with s = q + carrier
Json cmd_dispersion(DispersionOptions const& opts);

//---------------------------------------------------------------------------//
struct RootsOptions
{
    Scheme scheme{Scheme::fei};
    double q{0};
    double K{0};
    double L{0};
    std::optional<double> theta;
    std::optional<double> gamma;
    int d{1};
    double tol{1e-9};
    std::optional<std::string> output;  //!< stdout when absent
    std::filesystem::path out_dir{"."};
};

Json cmd_roots(RootsOptions const& opts);

struct Scan2dOptions
{
    Scheme scheme{Scheme::fei};
    double K{0};
    Range q{0, 1, 101, false};
    Range L{-3, 3, 121, false};
    std::optional<double> theta;
    std::optional<double> gamma;
    unsigned jobs{0};
    std::string output;  //!< defaults to scan2d_<scheme>.csv
    std::filesystem::path out_dir{"."};
};

//! Long-format CSV i, j, q, L, max_modulus
Json cmd_scan2d(Scan2dOptions const& opts);

struct RegionOptions
{
    Scheme scheme{Scheme::besse};
    Range q{0, 2, 101, false};
    Range K{0, 1.5, 76, false};
    LScanSpec L;
    double tol{1e-6};
    std::optional<double> theta;
    std::optional<double> gamma;
    unsigned jobs{0};
    std::string output;  //!< defaults to region_<scheme>.csv
    std::filesystem::path out_dir{"."};
};

//! Long-format CSV i, j, q, K, stable, max_modulus
Json cmd_region(RegionOptions const& opts);

struct BoundaryOptions
{
    Complex f{1, 0};
    std::size_t theta_steps{360};
    std::string output{"boundary.csv"};
    std::filesystem::path out_dir{"."};
};

//! θ_j = 2πj/N; columns theta, re_g, im_g, abs_g
Json cmd_boundary(BoundaryOptions const& opts);

//---------------------------------------------------------------------------//
struct ConvergenceOptions
{
    RunConfig run;  //!< tau is ignored
    std::vector<double> taus{4e-3, 2e-3, 1e-3};
    double reference_accuracy{1e-11};
    std::string output;  //!< defaults to convergence_<scheme>.csv
    std::filesystem::path out_dir{"."};
};

struct ConvergenceRow
{
    double tau{0};
    double error{0};
    double order{0};  //!< NaN in the first row
};

//! Errors against the reference solution and observed orders
std::vector<ConvergenceRow> convergence_study(ConvergenceOptions const& opts, Json* meta = nullptr);

Json cmd_convergence(ConvergenceOptions const& opts);

}  // namespace cse::cli
