#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>

#include "cli/csv.hpp"
#include "cse/conservation.hpp"
#include "cse/dispersion.hpp"
#include "cse/errors.hpp"
#include "cse/reference.hpp"

namespace cse::cli {
namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

Metadata base_metadata(std::string command)
{
    Metadata m;
    m.set("tool", "cse");
    m.set("version", std::string(tool_version));
    m.set("command", std::move(command));
    return m;
}

void add_run_metadata(Metadata& m, RunConfig const& cfg, PeriodicGrid const& grid)
{
    auto const p = cfg.params();
    m.set("scheme", std::string(to_string(cfg.scheme)));
    m.set("tau", p.tau);
    m.set("t_end", cfg.t_end);
    m.set("lambda", p.lambda);
    m.set("theta", p.theta);
    m.set("gamma", p.gamma);
    m.set("grid_points", grid.size());
    m.set("h", grid.spacing());
    m.set("length", grid.length());
    m.set("u0", cfg.u0.spec);
    m.set("record_stride", cfg.record_stride);
    m.set("startup", cfg.scheme == Scheme::besse ? std::string("none") : std::string(to_string(cfg.startup)));
}

//! theta/gamma belong to the modified scheme only
std::pair<double, double> modified_parameters(Scheme scheme,
                                              std::optional<double> theta,
                                              std::optional<double> gamma)
{
    if (scheme != Scheme::modified && (theta || gamma))
        throw ConfigError(theta ? "theta" : "gamma", "only the modified scheme takes theta and gamma");
    return {theta.value_or(1.0), gamma.value_or(1.0)};
}

Json complex_json(Complex z)
{
    return Json::array({z.real(), z.imag()});
}

void write_json(std::filesystem::path const& path, Json const& j)
{
    if (path == "-")
    {
        std::cout << j.dump(2) << '\n';
        return;
    }
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out)
        throw ConfigError("output", "cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

StartupOptions startup_options(RunConfig const& cfg)
{
    StartupOptions s;
    s.method = cfg.startup;
    if (cfg.startup == StartupMethod::exact)
        s.exact_omega = *cfg.u0.plane_wave_omega(cfg.lambda);
    return s;
}

}  // namespace

//---------------------------------------------------------------------------//
int exit_code_for(std::exception const& e) noexcept
{
    if (dynamic_cast<ConfigError const*>(&e))
        return exit_config;
    if (dynamic_cast<SolverError const*>(&e) || dynamic_cast<ReferenceError const*>(&e))
        return exit_solver;
    if (dynamic_cast<DispersionError const*>(&e))
        return exit_dispersion;
    return exit_other;
}

//---------------------------------------------------------------------------//
Json cmd_simulate(SimulateOptions const& opts)
{
    auto const& cfg = opts.run;
    cfg.validate();
    auto const grid = cfg.grid();
    auto const params = cfg.params();
    auto const u0 = cfg.u0.sample(grid);
    auto const [total, truncated] = step_count(cfg.t_end, cfg.tau);

    std::string const prefix = opts.prefix.empty() ? std::string(to_string(cfg.scheme)) : opts.prefix;
    Metadata meta = base_metadata("simulate");
    add_run_metadata(meta, cfg, grid);

    auto const traj_path = resolve_output(opts.out_dir, prefix + "_trajectory.csv");
    auto const inv_path = resolve_output(opts.out_dir, prefix + "_invariants.csv");
    auto const run_path = resolve_output(opts.out_dir, prefix + "_run.json");
    CsvWriter traj(traj_path, meta, {"x", "re", "im", "abs", "step", "t"});
    CsvWriter inv(inv_path, meta, {"step", "t", "density", "energy"});

    InvariantRecorder recorder(params);
    std::size_t recorded_levels = 0;
    auto observer = [&](StepView const& view) {
        bool const keep = view.step % cfg.record_stride == 0 || view.step + 1 >= total;
        if (!keep)
            return;
        ++recorded_levels;
        for (std::size_t m = 0; m < grid.size(); ++m)
        {
            Complex const u = view.current[m];
            traj.row({grid.x(m), u.real(), u.imag(), std::abs(u), static_cast<double>(view.step), view.time});
        }
        auto const before = recorder.samples().size();
        recorder(view);
        for (auto i = before; i < recorder.samples().size(); ++i)
        {
            auto const& s = recorder.samples()[i];
            inv.row({static_cast<double>(s.step_index), s.time, s.density.value_or(nan), s.energy});
        }
    };

    RunOptions ropts;
    ropts.stride = 1;
    ropts.startup = startup_options(cfg);
    auto const result = run(u0, params, cfg.scheme, cfg.t_end, ropts, observer);

    Json summary;
    summary["command"] = "simulate";
    summary["version"] = tool_version;
    summary["scheme"] = to_string(cfg.scheme);
    summary["parameters"] = {{"tau", params.tau},
                             {"t_end", cfg.t_end},
                             {"lambda", params.lambda},
                             {"theta", params.theta},
                             {"gamma", params.gamma},
                             {"grid_points", grid.size()},
                             {"h", grid.spacing()},
                             {"u0", cfg.u0.spec},
                             {"record_stride", cfg.record_stride}};
    summary["startup"] = cfg.scheme == Scheme::besse ? std::string_view("none") : to_string(result.startup);
    summary["steps"] = result.steps;
    summary["t_final"] = result.t_final;
    summary["truncated"] = result.truncated || truncated;
    summary["solver"] = {{"solves", result.stats.solves},
                         {"refinements", result.stats.refinements},
                         {"max_relative_residual", result.stats.max_relative_residual}};
    summary["energy_drift"] = recorder.energy_drift();
    if (has_density(cfg.scheme, params))
        summary["density_drift"] = recorder.density_drift();
    else
        summary["density_drift"] = nullptr;
    summary["recorded_levels"] = recorded_levels;
    summary["outputs"] = {traj_path.string(), inv_path.string(), run_path.string()};
    write_json(run_path, summary);
    return summary;
}

//---------------------------------------------------------------------------//
Json cmd_dispersion(DispersionOptions const& opts)
{
    if (!(opts.tau > 0))
        throw ConfigError("tau", "must be positive");
    double carrier = opts.K * opts.K;
    Metadata meta = base_metadata("dispersion");
    meta.set("q", opts.q.to_string());
    meta.set("theta", opts.theta);
    if (opts.h)
    {
        if (!opts.k)
            throw ConfigError("k", "the grid symbol needs --k together with --h");
        if (!(*opts.h > 0))
            throw ConfigError("h", "must be positive");
        carrier = laplacian_symbol(*opts.k, opts.tau, *opts.h);
        meta.set("k", *opts.k).set("h", *opts.h).set("tau", opts.tau);
    }
    else
    {
        if (opts.k)
            throw ConfigError("k", "--k needs --h; use --K for the continuous carrier");
        meta.set("K", opts.K).set("h", 0.0);
    }
    meta.set("carrier", carrier);

    auto const path = resolve_output(opts.out_dir, opts.output);
    CsvWriter csv(path, meta, {"s", "q", "carrier", "exact", "fei", "besse", "modified"});
    std::size_t failures = 0;
    for (double q : opts.q.values())
    {
        double const s = q + carrier;
        double modified = nan;
        try
        {
            modified = omega_tau(Scheme::modified, q, carrier, opts.theta);
        }
        catch (DispersionError const&)
        {
            ++failures;
        }
        csv.row({s, q, carrier, s, omega_tau(Scheme::fei, q, carrier), omega_tau(Scheme::besse, q, carrier),
                 modified});
    }
    return Json{{"command", "dispersion"}, {"rows", opts.q.count}, {"dispersion_failures", failures},
                {"outputs", {path.string()}}};
}

//---------------------------------------------------------------------------//
Json cmd_roots(RootsOptions const& opts)
{
    auto const [theta, gamma] = modified_parameters(opts.scheme, opts.theta, opts.gamma);
    if (opts.d < 1)
        throw ConfigError("d", "must be positive");
    if (opts.d != 1 && opts.scheme != Scheme::besse)
        throw ConfigError("d", "only the Besse polynomial takes a dimension");
    if (!(opts.tol > 0))
        throw ConfigError("tol", "must be positive");
    ModePoint const pt{opts.q, opts.K, opts.L};

    Json j;
    j["tool"] = "cse";
    j["version"] = tool_version;
    j["command"] = "stability roots";
    j["scheme"] = to_string(opts.scheme);
    j["q"] = opts.q;
    j["K"] = opts.K;
    j["L"] = opts.L;
    j["theta"] = theta;
    j["gamma"] = gamma;

    StabilityPolynomial poly;
    if (opts.scheme == Scheme::besse)
    {
        auto const b = besse_polynomial(pt, opts.d);
        poly = b.quartic;
        j["d"] = opts.d;
        j["normalized_cubic"] = {{"f", complex_json(b.norm.f)}, {"g", complex_json(b.norm.g)}};
    }
    else
    {
        poly = stability_polynomial(opts.scheme, pt, theta, gamma);
    }
    auto const report = analyse(poly, opts.tol);
    Json coeffs = Json::array(), roots = Json::array();
    for (auto c : poly.coeffs)
        coeffs.push_back(complex_json(c));
    for (auto r : report.roots)
        roots.push_back(complex_json(r));
    j["coeffs"] = coeffs;
    j["roots"] = roots;
    j["on_circle"] = report.on_circle;
    j["max_modulus"] = report.max_modulus;
    j["stable"] = report.stable;
    j["tol"] = report.tol;

    if (opts.output)
    {
        auto const path = resolve_output(opts.out_dir, *opts.output);
        write_json(path, j);
    }
    return j;
}

//---------------------------------------------------------------------------//
Json cmd_scan2d(Scan2dOptions const& opts)
{
    auto const [theta, gamma] = modified_parameters(opts.scheme, opts.theta, opts.gamma);
    ScanOptions so;
    so.theta = theta;
    so.gamma = gamma;
    so.jobs = opts.jobs;
    auto const qs = opts.q.values();
    auto const Ls = opts.L.values();
    auto const scan = scan_qL(opts.scheme, opts.K, qs, Ls, so);

    Metadata meta = base_metadata("stability scan2d");
    meta.set("scheme", std::string(to_string(opts.scheme)));
    meta.set("K", opts.K).set("q", opts.q.to_string()).set("L", opts.L.to_string());
    meta.set("theta", theta).set("gamma", gamma);
    meta.set("degenerate", scan.degenerate);
    auto const path = resolve_output(opts.out_dir,
                                     opts.output.empty() ? "scan2d_" + std::string(to_string(opts.scheme)) + ".csv"
                                                         : opts.output);
    CsvWriter csv(path, meta, {"i", "j", "q", "L", "max_modulus"});
    for (std::size_t i = 0; i < qs.size(); ++i)
        for (std::size_t j = 0; j < Ls.size(); ++j)
            csv.row({static_cast<double>(i), static_cast<double>(j), qs[i], Ls[j], scan.at(i, j)});
    return Json{{"command", "stability scan2d"}, {"cells", qs.size() * Ls.size()},
                {"degenerate", scan.degenerate}, {"outputs", {path.string()}}};
}

Json cmd_region(RegionOptions const& opts)
{
    auto const [theta, gamma] = modified_parameters(opts.scheme, opts.theta, opts.gamma);
    ScanOptions so;
    so.theta = theta;
    so.gamma = gamma;
    so.tol = opts.tol;
    so.jobs = opts.jobs;
    auto const qs = opts.q.values();
    auto const Ks = opts.K.values();
    auto const scan = scan_qK(opts.scheme, qs, Ks, opts.L, so);

    std::size_t stable = 0;
    for (char s : scan.stable)
        stable += s ? 1 : 0;
    Metadata meta = base_metadata("stability region");
    meta.set("scheme", std::string(to_string(opts.scheme)));
    meta.set("q", opts.q.to_string()).set("K", opts.K.to_string());
    meta.set("L", format_number(opts.L.min) + ":" + format_number(opts.L.max) + ":"
                      + std::to_string(opts.L.points));
    meta.set("refine", opts.L.refine ? "true" : "false");
    meta.set("tol", opts.tol).set("theta", theta).set("gamma", gamma);
    meta.set("stable_cells", stable);
    meta.set("degenerate", scan.degenerate);
    auto const path = resolve_output(opts.out_dir,
                                     opts.output.empty() ? "region_" + std::string(to_string(opts.scheme)) + ".csv"
                                                         : opts.output);
    CsvWriter csv(path, meta, {"i", "j", "q", "K", "stable", "max_modulus"});
    for (std::size_t i = 0; i < qs.size(); ++i)
        for (std::size_t j = 0; j < Ks.size(); ++j)
            csv.row({static_cast<double>(i), static_cast<double>(j), qs[i], Ks[j],
                     scan.is_stable(i, j) ? 1.0 : 0.0, scan.at(i, j)});
    return Json{{"command", "stability region"}, {"cells", qs.size() * Ks.size()},
                {"stable_cells", stable}, {"degenerate", scan.degenerate}, {"outputs", {path.string()}}};
}

Json cmd_boundary(BoundaryOptions const& opts)
{
    if (opts.theta_steps == 0)
        throw ConfigError("theta-steps", "must be positive");
    Metadata meta = base_metadata("stability boundary");
    meta.set("f_re", opts.f.real()).set("f_im", opts.f.imag()).set("theta_steps", opts.theta_steps);
    auto const path = resolve_output(opts.out_dir, opts.output);
    // validate |f| before creating the file
    (void)besse_boundary(opts.f, 0.0);
    CsvWriter csv(path, meta, {"theta", "re_g", "im_g", "abs_g"});
    for (std::size_t j = 0; j < opts.theta_steps; ++j)
    {
        double const theta = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(opts.theta_steps);
        Complex const g = besse_boundary(opts.f, theta);
        csv.row({theta, g.real(), g.imag(), std::abs(g)});
    }
    return Json{{"command", "stability boundary"}, {"rows", opts.theta_steps}, {"outputs", {path.string()}}};
}

//---------------------------------------------------------------------------//
std::vector<ConvergenceRow> convergence_study(ConvergenceOptions const& opts, Json* meta)
{
    auto const& taus = opts.taus;
    if (taus.size() < 3)
        throw ConfigError("tau", "a convergence study needs at least three time steps");
    double const ratio = taus[0] / taus[1];
    for (std::size_t i = 0; i + 1 < taus.size(); ++i)
    {
        if (!(taus[i] > 0) || !(taus[i + 1] > 0))
            throw ConfigError("tau", "time steps must be positive");
        double const r = taus[i] / taus[i + 1];
        if (!(r > 1) || std::abs(r - ratio) > 1e-6 * ratio)
            throw ConfigError("tau", "time steps must decrease in geometric progression");
    }
    RunConfig cfg = opts.run;
    cfg.tau = taus.front();
    cfg.validate();
    auto const grid = cfg.grid();
    auto const u0 = cfg.u0.sample(grid);

    ReferenceOptions ref_opts;
    ref_opts.accuracy = opts.reference_accuracy;
    auto const ref = reference_run(u0, cfg.lambda, cfg.t_end, ref_opts);
    if (meta)
    {
        (*meta)["reference"] = {{"method", ref.method}, {"tau", ref.tau}, {"steps", ref.steps},
                                {"last_difference", ref.last_difference}};
    }

    std::vector<ConvergenceRow> rows;
    for (double tau : taus)
    {
        cfg.tau = tau;
        auto const [n, truncated] = step_count(cfg.t_end, tau);
        if (truncated)
            throw ConfigError("tau", "t_end must be a whole number of steps for every tau");
        (void)n;
        RunOptions ropts;
        ropts.stride = std::numeric_limits<std::size_t>::max();
        ropts.tail_levels = 1;
        ropts.startup = startup_options(cfg);
        auto const result = run(u0, cfg.params(), cfg.scheme, cfg.t_end, ropts);
        ConvergenceRow row;
        row.tau = tau;
        row.error = sup_distance(result.tail.back(), ref.solution);
        row.order = rows.empty() ? nan : std::log(rows.back().error / row.error) / std::log(rows.back().tau / tau);
        rows.push_back(row);
    }
    return rows;
}

Json cmd_convergence(ConvergenceOptions const& opts)
{
    Json summary;
    auto const rows = convergence_study(opts, &summary);

    auto const grid = opts.run.grid();
    Metadata meta = base_metadata("convergence");
    add_run_metadata(meta, opts.run, grid);
    meta.set("tau", std::string("list"));
    std::string list;
    for (double t : opts.taus)
        list += (list.empty() ? "" : ",") + format_number(t);
    meta.set("taus", list);
    meta.set("reference", summary["reference"]["method"].get<std::string>());
    meta.set("reference_accuracy", opts.reference_accuracy);

    auto const path = resolve_output(opts.out_dir,
                                     opts.output.empty() ? "convergence_" + std::string(to_string(opts.run.scheme)) + ".csv"
                                                         : opts.output);
    CsvWriter csv(path, meta, {"tau", "error", "order"});
    Json table = Json::array();
    for (auto const& r : rows)
    {
        csv.row({r.tau, r.error, r.order});
        table.push_back({{"tau", r.tau}, {"error", r.error},
                         {"order", std::isnan(r.order) ? Json(nullptr) : Json(r.order)}});
    }
    summary["command"] = "convergence";
    summary["scheme"] = to_string(opts.run.scheme);
    summary["rows"] = table;
    summary["outputs"] = {path.string()};
    return summary;
}

}  // namespace cse::cli
