#include "cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli/csv.hpp"
#include "cse/dispersion.hpp"
#include "cse/errors.hpp"

namespace cse::cli {
namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view text, std::string const& field)
{
    text = trim(text);
    double v = 0;
    auto const* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v))
        throw ConfigError(field, "not a finite number: '" + std::string(text) + "'");
    return v;
}

std::size_t parse_count(std::string_view text, std::string const& field)
{
    text = trim(text);
    std::size_t v = 0;
    auto const* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError(field, "not a count: '" + std::string(text) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true)
    {
        auto const next = s.find(sep, pos);
        out.push_back(s.substr(pos, next - pos));
        if (next == std::string_view::npos)
            break;
        pos = next + 1;
    }
    return out;
}

}  // namespace

//---------------------------------------------------------------------------//
std::vector<double> Range::values() const
{
    std::vector<double> out(count);
    if (count == 1)
    {
        out[0] = min;
        return out;
    }
    auto const last = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
    {
        double const t = static_cast<double>(i) / last;
        out[i] = log ? min * std::pow(max / min, t) : min + (max - min) * t;
    }
    out.front() = min;
    out.back() = max;
    return out;
}

std::string Range::to_string() const
{
    return format_number(min) + ":" + format_number(max) + ":" + std::to_string(count)
           + (log ? "log" : "");
}

Range parse_range(std::string_view text, std::string const& field)
{
    auto const parts = split(trim(text), ':');
    if (parts.size() != 3)
        throw ConfigError(field, "expected min:max:N or min:max:Nlog, got '" + std::string(text) + "'");
    Range r;
    r.min = parse_real(parts[0], field);
    r.max = parse_real(parts[1], field);
    auto n = trim(parts[2]);
    if (n.size() > 3 && n.substr(n.size() - 3) == "log")
    {
        r.log = true;
        n.remove_suffix(3);
    }
    r.count = parse_count(n, field);
    if (r.count == 0)
        throw ConfigError(field, "range needs at least one point");
    if (r.count == 1 && r.min != r.max)
        throw ConfigError(field, "a one-point range needs min == max");
    if (r.max < r.min)
        throw ConfigError(field, "range max is below min");
    if (r.log && !(r.min > 0))
        throw ConfigError(field, "logarithmic range needs min > 0");
    if (r.count > 1 && r.min == r.max)
        throw ConfigError(field, "range with several points needs min < max");
    return r;
}

Complex parse_complex(std::string_view text, std::string const& field)
{
    auto s = trim(text);
    if (s.empty())
        throw ConfigError(field, "empty complex number");
    if (s.back() != 'i' && s.back() != 'j')
        return {parse_real(s, field), 0};
    s.remove_suffix(1);
    // split at the last sign that is not part of an exponent
    std::size_t cut = std::string_view::npos;
    for (std::size_t i = s.size(); i-- > 1;)
    {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
        {
            cut = i;
            break;
        }
    }
    auto imag_text = cut == std::string_view::npos ? s : s.substr(cut);
    double re = cut == std::string_view::npos ? 0.0 : parse_real(s.substr(0, cut), field);
    if (!imag_text.empty() && imag_text.front() == '+')
        imag_text.remove_prefix(1);
    double im = 0;
    if (imag_text.empty())
        im = 1;
    else if (imag_text == "-")
        im = -1;
    else
        im = parse_real(imag_text, field);
    return {re, im};
}

std::vector<double> parse_list(std::string_view text, std::string const& field)
{
    std::vector<double> out;
    for (auto part : split(trim(text), ','))
        out.push_back(parse_real(part, field));
    return out;
}

//---------------------------------------------------------------------------//
ComplexField InitialData::sample(PeriodicGrid const& grid) const
{
    std::vector<Complex> v(grid.size());
    std::string_view s = spec;
    if (s == "exp-sin")
    {
        for (std::size_t m = 0; m < v.size(); ++m)
            v[m] = std::exp(std::sin(grid.x(m)));
        return ComplexField(grid, std::move(v));
    }
    auto const colon = s.find(':');
    auto const kind = s.substr(0, colon);
    auto const args = colon == std::string_view::npos ? std::string_view{} : s.substr(colon + 1);
    if (kind == "plane-wave" || kind == "gaussian")
    {
        auto const p = parse_list(args, "u0");
        if (p.size() != 2)
            throw ConfigError("u0", std::string(kind) + " takes two parameters");
        if (kind == "plane-wave")
        {
            if (p[1] != std::round(p[1]))
                throw ConfigError("u0", "plane-wave wavenumber must be an integer");
            return sample_plane_wave(grid, p[0], p[1], 0.0, 0.0);
        }
        if (!(p[1] > 0))
            throw ConfigError("u0", "gaussian width must be positive");
        // sum of periodic images centred mid-domain
        double const L = grid.length();
        for (std::size_t m = 0; m < v.size(); ++m)
        {
            double acc = 0;
            for (int image = -3; image <= 3; ++image)
            {
                double const d = (grid.x(m) - 0.5 * L + image * L) / p[1];
                acc += std::exp(-d * d);
            }
            v[m] = p[0] * acc;
        }
        return ComplexField(grid, std::move(v));
    }
    if (kind == "file")
    {
        std::ifstream in{std::string(args)};
        if (!in)
            throw ConfigError("u0", "cannot open '" + std::string(args) + "'");
        std::string line;
        std::vector<Complex> read;
        while (std::getline(in, line))
        {
            auto t = trim(line);
            if (t.empty() || t.front() == '#')
                continue;
            auto const cols = split(t, ',');
            if (cols.size() != 2)
                throw ConfigError("u0", "file rows need two columns (Re, Im)");
            read.emplace_back(parse_real(cols[0], "u0"), parse_real(cols[1], "u0"));
        }
        if (read.size() != grid.size())
            throw ConfigError("u0", "file has " + std::to_string(read.size()) + " rows, grid has "
                                        + std::to_string(grid.size()));
        return ComplexField(grid, std::move(read));
    }
    throw ConfigError("u0", "unknown preset '" + spec + "'");
}

std::optional<double> InitialData::plane_wave_omega(double lambda) const
{
    std::string_view s = spec;
    if (s.substr(0, 11) != "plane-wave:")
        return std::nullopt;
    auto const p = parse_list(s.substr(11), "u0");
    if (p.size() != 2)
        return std::nullopt;
    return omega_exact(p[1], lambda * p[0] * p[0]);
}

//---------------------------------------------------------------------------//
PeriodicGrid RunConfig::grid() const
{
    if (grid_points.has_value() == h.has_value())
        throw ConfigError("grid-points", "give exactly one of --grid-points and --h");
    if (grid_points)
    {
        if (*grid_points < PeriodicGrid::min_points)
            throw ConfigError("grid-points", "need at least 4 grid points");
        return PeriodicGrid(*grid_points);
    }
    if (!(*h > 0))
        throw ConfigError("h", "mesh spacing must be positive");
    double const length = 2 * std::numbers::pi;
    double const m = length / *h;
    auto const rounded = std::llround(m);
    if (rounded < static_cast<long long>(PeriodicGrid::min_points) || std::abs(m - static_cast<double>(rounded)) > 1e-9 * m)
        throw ConfigError("h", "2*pi/h must be an integer of at least 4");
    return PeriodicGrid(static_cast<std::size_t>(rounded));
}

SchemeParams RunConfig::params() const
{
    SchemeParams p;
    p.tau = tau;
    p.lambda = lambda;
    p.theta = theta.value_or(1.0);
    p.gamma = gamma.value_or(1.0);
    return p;
}

void RunConfig::validate() const
{
    if (scheme != Scheme::modified && (theta || gamma))
        throw ConfigError(theta ? "theta" : "gamma", "only the modified scheme takes theta and gamma");
    if (!(t_end >= 0) || !std::isfinite(t_end))
        throw ConfigError("t-end", "must be finite and nonnegative");
    if (record_stride == 0)
        throw ConfigError("record-stride", "must be positive");
    if (startup == StartupMethod::exact && !u0.plane_wave_omega(lambda))
        throw ConfigError("startup", "exact startup needs a plane-wave initial condition");
    params().validate();
    (void)grid();
}

//---------------------------------------------------------------------------//
std::filesystem::path output_directory(std::optional<std::string> const& flag)
{
    if (flag && !flag->empty())
        return *flag;
    if (char const* env = std::getenv(output_dir_env); env && *env)
        return env;
    return ".";
}

std::filesystem::path resolve_output(std::filesystem::path const& dir, std::string const& name)
{
    if (name == "-")
        return name;
    std::filesystem::path p(name);
    return p.is_absolute() ? p : dir / p;
}

}  // namespace cse::cli
