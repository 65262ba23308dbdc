#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cse/errors.hpp"

using namespace cse;
using namespace cse::cli;

namespace {

struct Common
{
    std::optional<std::string> output_dir;
    bool quiet{false};
};

//! Flags shared by simulate and convergence
struct RunFlags
{
    std::string scheme{"fei"};
    std::optional<double> theta, gamma;
    std::optional<std::size_t> grid_points;
    std::optional<double> h;
    std::string u0{"exp-sin"};
    std::string startup{"besse"};

    void add(CLI::App* app, RunConfig& cfg)
    {
        app->add_option("--scheme", scheme, "fei, besse or modified")->capture_default_str();
        app->add_option("--lambda", cfg.lambda, "nonlinearity")->capture_default_str();
        app->add_option("--t-end", cfg.t_end, "final time")->capture_default_str();
        app->add_option("--theta", theta, "modified scheme only");
        app->add_option("--gamma", gamma, "modified scheme only");
        app->add_option("--grid-points,-M", grid_points, "number of grid points");
        app->add_option("--h", h, "mesh spacing, 2*pi/h must be an integer");
        app->add_option("--u0", u0, "exp-sin | plane-wave:a,k | gaussian:a,width | file:path")
            ->capture_default_str();
        app->add_option("--startup", startup, "besse or exact (plane waves)")->capture_default_str();
    }

    void apply(RunConfig& cfg) const
    {
        cfg.scheme = parse_scheme(scheme);
        cfg.theta = theta;
        cfg.gamma = gamma;
        cfg.grid_points = grid_points;
        cfg.h = h;
        cfg.u0.spec = u0;
        if (startup == "besse")
            cfg.startup = StartupMethod::besse_step;
        else if (startup == "exact")
            cfg.startup = StartupMethod::exact;
        else
            throw ConfigError("startup", "expected besse or exact");
        if (!grid_points && !h)
            cfg.grid_points = 256;
    }
};

void emit(Json const& j, Common const& common)
{
    if (!common.quiet)
        std::cout << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Linearly implicit schemes for the cubic Schroedinger equation: simulation and plane-wave stability"};
    app.set_help_flag("--help", "print help and exit");
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--output-dir,-o", common.output_dir, "directory for relative output names (default $CSE_OUTPUT_DIR or .)");
    app.add_flag("--quiet,-q", common.quiet, "do not print the JSON summary");

    // simulate
    SimulateOptions sim;
    RunFlags sim_flags;
    auto* simulate = app.add_subcommand("simulate", "integrate and record trajectory and invariants");
    sim_flags.add(simulate, sim.run);
    simulate->add_option("--tau", sim.run.tau, "time step")->capture_default_str();
    simulate->add_option("--record-stride", sim.run.record_stride, "steps between snapshots")->capture_default_str();
    simulate->add_option("--prefix", sim.prefix, "output file prefix (default: scheme name)");

    // dispersion
    DispersionOptions disp;
    std::string disp_q = "0:2:201";
    auto* dispersion = app.add_subcommand("dispersion", "tabulate omega*tau of the exact equation and all schemes");
    dispersion->add_option("--q", disp_q, "range of q = lambda*tau*|a|^2")->capture_default_str();
    dispersion->add_option("--K", disp.K, "continuous carrier K = k*sqrt(tau)")->capture_default_str();
    dispersion->add_option("--k", disp.k, "integer carrier for the grid symbol (with --h)");
    dispersion->add_option("--h", disp.h, "mesh spacing of the grid symbol");
    dispersion->add_option("--tau", disp.tau, "time step of the grid symbol")->capture_default_str();
    dispersion->add_option("--theta", disp.theta, "theta of the modified scheme")->capture_default_str();
    dispersion->add_option("--output", disp.output, "output file")->capture_default_str();

    // stability
    auto* stability = app.add_subcommand("stability", "stability polynomials and scans");
    stability->require_subcommand(1);

    RootsOptions roots;
    std::string roots_scheme = "fei";
    std::optional<std::string> roots_output;
    auto* roots_cmd = stability->add_subcommand("roots", "roots of one stability polynomial (JSON)");
    roots_cmd->add_option("--scheme", roots_scheme)->capture_default_str();
    roots_cmd->add_option("--q", roots.q)->capture_default_str();
    roots_cmd->add_option("--K", roots.K)->capture_default_str();
    roots_cmd->add_option("--L", roots.L)->capture_default_str();
    roots_cmd->add_option("--theta", roots.theta);
    roots_cmd->add_option("--gamma", roots.gamma);
    roots_cmd->add_option("--d", roots.d, "space dimension of the Besse polynomial")->capture_default_str();
    roots_cmd->add_option("--tol", roots.tol, "unit-circle tolerance")->capture_default_str();
    roots_cmd->add_option("--output", roots_output, "write the JSON to a file instead of stdout");

    Scan2dOptions scan2d;
    std::string scan_scheme = "fei", scan_q = "0:1:101", scan_L = "-3:3:121";
    auto* scan2d_cmd = stability->add_subcommand("scan2d", "max root modulus over a (q, L) grid at fixed K");
    scan2d_cmd->add_option("--scheme", scan_scheme)->capture_default_str();
    scan2d_cmd->add_option("--K", scan2d.K)->capture_default_str();
    scan2d_cmd->add_option("--q", scan_q)->capture_default_str();
    scan2d_cmd->add_option("--L", scan_L)->capture_default_str();
    scan2d_cmd->add_option("--theta", scan2d.theta);
    scan2d_cmd->add_option("--gamma", scan2d.gamma);
    scan2d_cmd->add_option("--jobs", scan2d.jobs, "worker threads, 0 = all cores")->capture_default_str();
    scan2d_cmd->add_option("--output", scan2d.output, "output file (default scan2d_<scheme>.csv)");

    RegionOptions region;
    std::string region_scheme = "besse", region_q = "0:2:101", region_K = "0:1.5:76", region_L = "-10:10:2001";
    bool no_refine = false;
    auto* region_cmd = stability->add_subcommand("region", "stability verdict over a (q, K) grid");
    region_cmd->add_option("--scheme", region_scheme)->capture_default_str();
    region_cmd->add_option("--q", region_q)->capture_default_str();
    region_cmd->add_option("--K", region_K)->capture_default_str();
    region_cmd->add_option("--L", region_L, "scanned L values, min:max:N")->capture_default_str();
    region_cmd->add_flag("--no-refine", no_refine, "skip resampling near root collisions");
    region_cmd->add_option("--tol", region.tol)->capture_default_str();
    region_cmd->add_option("--theta", region.theta);
    region_cmd->add_option("--gamma", region.gamma);
    region_cmd->add_option("--jobs", region.jobs, "worker threads, 0 = all cores")->capture_default_str();
    region_cmd->add_option("--output", region.output, "output file (default region_<scheme>.csv)");

    BoundaryOptions boundary;
    std::string boundary_f = "1+0i";
    auto* boundary_cmd = stability->add_subcommand("boundary", "boundary curve g(theta) of the Besse region for fixed f");
    boundary_cmd->add_option("--f", boundary_f, "unimodular f, e.g. 1+0i")->capture_default_str();
    boundary_cmd->add_option("--theta-steps", boundary.theta_steps)->capture_default_str();
    boundary_cmd->add_option("--output", boundary.output)->capture_default_str();

    // convergence
    ConvergenceOptions conv;
    RunFlags conv_flags;
    std::string conv_taus = "4e-3,2e-3,1e-3";
    conv.run.t_end = 0.5;
    auto* convergence = app.add_subcommand("convergence", "temporal order against a reference solution");
    conv_flags.add(convergence, conv.run);
    convergence->add_option("--taus", conv_taus, "comma-separated time steps")->capture_default_str();
    convergence->add_option("--reference-accuracy", conv.reference_accuracy)->capture_default_str();
    convergence->add_option("--output", conv.output, "output file (default convergence_<scheme>.csv)");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    try
    {
        auto const out_dir = output_directory(common.output_dir);
        if (*simulate)
        {
            sim_flags.apply(sim.run);
            sim.out_dir = out_dir;
            emit(cmd_simulate(sim), common);
        }
        else if (*dispersion)
        {
            disp.q = parse_range(disp_q, "q");
            disp.out_dir = out_dir;
            emit(cmd_dispersion(disp), common);
        }
        else if (*roots_cmd)
        {
            roots.scheme = parse_scheme(roots_scheme);
            roots.output = roots_output;
            roots.out_dir = out_dir;
            auto const j = cmd_roots(roots);
            if (!roots_output)
                std::cout << j.dump(2) << '\n';
            else
                emit(Json{{"command", "stability roots"}, {"stable", j["stable"]},
                          {"max_modulus", j["max_modulus"]}, {"outputs", {*roots_output}}},
                     common);
        }
        else if (*scan2d_cmd)
        {
            scan2d.scheme = parse_scheme(scan_scheme);
            scan2d.q = parse_range(scan_q, "q");
            scan2d.L = parse_range(scan_L, "L");
            scan2d.out_dir = out_dir;
            emit(cmd_scan2d(scan2d), common);
        }
        else if (*region_cmd)
        {
            region.scheme = parse_scheme(region_scheme);
            region.q = parse_range(region_q, "q");
            region.K = parse_range(region_K, "K");
            auto const L = parse_range(region_L, "L");
            if (L.log)
                throw ConfigError("L", "the L scan is linear");
            region.L = LScanSpec{L.min, L.max, L.count, !no_refine};
            region.out_dir = out_dir;
            emit(cmd_region(region), common);
        }
        else if (*boundary_cmd)
        {
            boundary.f = parse_complex(boundary_f, "f");
            boundary.out_dir = out_dir;
            emit(cmd_boundary(boundary), common);
        }
        else if (*convergence)
        {
            conv_flags.apply(conv.run);
            conv.taus = parse_list(conv_taus, "taus");
            conv.run.tau = conv.taus.front();
            conv.out_dir = out_dir;
            emit(cmd_convergence(conv), common);
        }
    }
    catch (std::exception const& e)
    {
        std::cerr << "cse: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return exit_ok;
}
