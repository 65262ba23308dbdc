#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cse/field.hpp"
#include "cse/schemes.hpp"

namespace cse::cli {

inline constexpr std::string_view tool_version = "0.1.0";
inline constexpr char const* output_dir_env = "CSE_OUTPUT_DIR";

//! Parsed `min:max:N` or `min:max:Nlog`
struct Range
{
    double min{0};
    double max{0};
    std::size_t count{1};
    bool log{false};

    std::vector<double> values() const;
    std::string to_string() const;
};

//! Throws ConfigError(field, ...) on malformed input
Range parse_range(std::string_view text, std::string const& field);

//! "1+0i", "-0.5-2i", "3", "2i"
Complex parse_complex(std::string_view text, std::string const& field);

//! Comma-separated reals
std::vector<double> parse_list(std::string_view text, std::string const& field);

//---------------------------------------------------------------------------//
/*!
 * Initial data preset: `exp-sin`, `plane-wave:a,k`, `gaussian:a,width`
 * or `file:<path>` (two columns Re, Im, one row per grid point).
 */
struct InitialData
{
    std::string spec{"exp-sin"};

    ComplexField sample(PeriodicGrid const& grid) const;
    //! ω of a plane-wave preset, used by exact startup
    std::optional<double> plane_wave_omega(double lambda) const;
};

//---------------------------------------------------------------------------//
struct RunConfig
{
    Scheme scheme{Scheme::fei};
    double tau{0.01};
    double t_end{1.0};
    double lambda{2.0};
    std::optional<double> theta;
    std::optional<double> gamma;
    std::optional<std::size_t> grid_points;
    std::optional<double> h;
    InitialData u0;
    std::size_t record_stride{10};
    StartupMethod startup{StartupMethod::besse_step};

    //! Enforces the flag rules and returns the resolved grid
    PeriodicGrid grid() const;
    SchemeParams params() const;
    void validate() const;
};

//! Directory for relative output names: explicit flag, then $CSE_OUTPUT_DIR, then "."
std::filesystem::path output_directory(std::optional<std::string> const& flag);

//! `name` relative to `dir` unless absolute; "-" stays "-" (stdout)
std::filesystem::path resolve_output(std::filesystem::path const& dir, std::string const& name);

}  // namespace cse::cli
