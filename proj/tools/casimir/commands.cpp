#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "casimir/casimir.hpp"
#include "cli.hpp"

namespace casimir::cli {

namespace {

//---------------------------------------------------------------------------//
// Raw settings, as strings, from flags and the config file
//---------------------------------------------------------------------------//

struct Settings
{
    std::string radius = "15cm";
    std::string r1;
    std::string d1;
    std::string thickness;
    std::string temperature = "300K";
    std::string a_start;
    std::string a_stop;
    std::string a_step;
    std::string a_list;
    std::string method;
    std::string profile = "perfect";
    std::string tol = "1e-9";
    std::string out;
    std::string config;
    std::string budget;
    std::string k_table;
    std::string q_table;
};

struct Binding
{
    std::string key;
    CLI::Option* option;
    std::string* target;
};

double parse_number(std::string const& text, std::string const& what)
{
    auto s = units::detail::trim(text);
    double value = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || p != s.data() + s.size())
        throw UsageError("invalid " + what + " '" + text + "'");
    return value;
}

double length_of(std::string const& text, std::string const& what)
{
    if (text.empty())
        throw UsageError("missing --" + what);
    try
    {
        return units::parse_length(text);
    }
    catch (DomainError const& e)
    {
        throw UsageError("--" + what + ": " + e.what());
    }
}

std::vector<std::string> split_list(std::string const& text)
{
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
    {
        auto t = units::detail::trim(item);
        if (!t.empty())
            items.emplace_back(t);
    }
    return items;
}

//---------------------------------------------------------------------------//
// Derived inputs
//---------------------------------------------------------------------------//

double temperature_of(Settings const& s)
{
    try
    {
        double const T = units::parse_temperature(s.temperature);
        if (!(T >= 0))
            throw UsageError("--T must be non-negative");
        return T;
    }
    catch (DomainError const& e)
    {
        throw UsageError(std::string("--T: ") + e.what());
    }
}

double tolerance_of(Settings const& s)
{
    double const tol = parse_number(s.tol, "--tol");
    if (!(tol > 0 && tol < 1))
        throw UsageError("--tol must lie in (0, 1)");
    return tol;
}

//! Separations from --a or from --a-start/--a-stop/--a-step (inclusive).
//! A stop below the start gives an empty grid.
std::vector<double> grid_of(Settings const& s)
{
    std::vector<double> grid;
    if (!s.a_list.empty())
    {
        for (auto const& item : split_list(s.a_list))
            grid.push_back(length_of(item, "a"));
    }
    else
    {
        if (s.a_start.empty() || s.a_stop.empty() || s.a_step.empty())
            throw UsageError("separation grid needs --a-start, --a-stop and --a-step, or --a");
        double const start = length_of(s.a_start, "a-start");
        double const stop = length_of(s.a_stop, "a-stop");
        double const step = length_of(s.a_step, "a-step");
        if (!(step > 0))
            throw UsageError("--a-step must be positive");
        if (stop >= start)
        {
            auto const n = static_cast<std::size_t>(
                std::floor((stop - start) / step + 1e-9));
            for (std::size_t i = 0; i <= n; ++i)
                grid.push_back(start + static_cast<double>(i) * step);
        }
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        if (!(grid[i] > 0))
            throw UsageError("separations must be positive");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw UsageError("separations must be strictly increasing");
    }
    return grid;
}

LensProfile profile_of(Settings const& s)
{
    double const R = length_of(s.radius, "R");
    double const D = s.thickness.empty() ? R : length_of(s.thickness, "D");
    if (s.profile == "perfect")
        return LensProfile::perfect(R, D);
    double const r1 = length_of(s.r1, "R1");
    double const d1 = length_of(s.d1, "D1");
    if (s.profile == "bubble")
        return LensProfile::bubble(R, D, r1, d1);
    if (s.profile == "pit")
        return LensProfile::pit(R, D, r1, d1);
    throw UsageError("--profile must be perfect, bubble or pit");
}

//---------------------------------------------------------------------------//
// Commands. Each returns the complete output text.
//---------------------------------------------------------------------------//

std::string cmd_fpp(Settings const& s)
{
    double const T = temperature_of(s);
    std::ostringstream os;
    os << "z_m,F_pp_J_m2,bracket,terms\n";
    for (double z : grid_of(s))
    {
        auto const f = free_energy_pp(z, T);
        os << format_sci(z) << ',' << format_sci(f.value) << ','
           << (f.regime == EnergyRegime::thermal ? format_sci(f.bracket) : "nan")
           << ',' << f.terms_used << '\n';
    }
    return os.str();
}

std::string cmd_pressure(Settings const& s)
{
    double const T = temperature_of(s);
    std::ostringstream os;
    os << "z_m,P_N_m2\n";
    for (double z : grid_of(s))
        os << format_sci(z) << ',' << format_sci(pressure_pp(z, T)) << '\n';
    return os.str();
}

ForceMethod method_of(Settings const& s, LensKind kind)
{
    std::string m = s.method;
    if (m.empty())
        m = kind == LensKind::perfect ? "simplified" : to_string(kind);

    auto require = [&](LensKind needed) {
        if (kind != needed)
        {
            throw UsageError("--method " + m + " needs a " + to_string(needed)
                             + " profile, got " + to_string(kind));
        }
    };
    if (m == "simplified")
        return require(LensKind::perfect), ForceMethod::perfect_simplified;
    if (m == "full")
        return require(LensKind::perfect), ForceMethod::perfect_full;
    if (m == "bubble")
        return require(LensKind::bubble), ForceMethod::bubble;
    if (m == "pit")
        return require(LensKind::pit), ForceMethod::pit;
    if (m == "quadrature")
        return ForceMethod::general_quadrature;
    throw UsageError("--method must be simplified, full, bubble, pit or quadrature");
}

std::string cmd_force(Settings const& s)
{
    auto const profile = profile_of(s);
    auto const method = method_of(s, profile.kind());
    double const T = temperature_of(s);
    double const tol = tolerance_of(s);
    auto const grid = grid_of(s);

    std::ostringstream os;
    os << "a_m,F_N,method\n";
    for (double a : grid)
    {
        ForceResult f;
        switch (method)
        {
            case ForceMethod::perfect_simplified:
                f = force_perfect_simplified(a, T, profile.radius());
                break;
            case ForceMethod::perfect_full:
                f = force_perfect_full(a, T, profile.radius(),
                                       profile.thickness(), tol);
                break;
            case ForceMethod::bubble:
            case ForceMethod::pit: f = force_closed_form(profile, a, T); break;
            case ForceMethod::general_quadrature:
                f = force_general(profile, a, T, tol);
                break;
        }
        os << format_sci(a) << ',' << format_sci(f.magnitude) << ','
           << to_string(f.method) << '\n';
    }
    return os.str();
}

std::string cmd_ratio(Settings const& s)
{
    auto const profile = profile_of(s);
    if (!profile.has_imperfection())
        throw UsageError("ratio needs --profile bubble or pit");
    auto const grid = grid_of(s);
    auto const curve = ratio_curve(profile, grid, temperature_of(s));
    std::ostringstream os;
    os << "a_m,ratio\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        os << format_sci(curve.separations[i]) << ',' << format_sci(curve.ratios[i]) << '\n';
    return os.str();
}

std::string cmd_reproduce_fig2()
{
    using namespace casimir::units;
    double const R = 15 * cm;
    std::array<LensProfile, 3> const lines{
        LensProfile::bubble(R, R, 25 * cm, 0.5 * um),
        LensProfile::bubble(R, R, 5 * cm, 1 * um),
        LensProfile::pit(R, R, 12 * cm, 1 * um),
    };
    // 1.00 um to 3.00 um in steps of 0.05 um
    std::vector<double> grid;
    for (int hundredths = 100; hundredths <= 300; hundredths += 5)
        grid.push_back(hundredths * 1e-8);

    std::vector<RatioCurve> curves;
    for (auto const& p : lines)
        curves.push_back(ratio_curve(p, grid, 300.0));

    std::ostringstream os;
    os << "a_um,ratio_line1,ratio_line2,ratio_line3\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        char a_um[32];
        std::snprintf(a_um, sizeof a_um, "%.2f", (100 + 5 * static_cast<int>(i)) / 100.0);
        os << a_um;
        for (auto const& c : curves)
            os << ',' << format_sci(c.ratios[i]);
        os << '\n';
    }
    return os.str();
}

std::string cmd_validate_lens(Settings const& s)
{
    auto const report = validate_spec(profile_of(s));
    std::ostringstream os;
    os << "check,value_m,limit_m,status\n";
    for (auto const& c : report.checks)
    {
        os << c.name << ',' << format_sci(c.value) << ',' << format_sci(c.limit)
           << ',' << (c.passed ? "pass" : "fail") << '\n';
    }
    return os.str();
}

std::string resolve_near(std::string const& path, std::string const& anchor)
{
    namespace fs = std::filesystem;
    fs::path p(path);
    if (p.is_relative())
        p = fs::path(anchor).parent_path() / p;
    return p.string();
}

std::string cmd_combine_errors(Settings const& s)
{
    using namespace metrology;
    if (s.budget.empty())
        throw UsageError("combine-errors needs --budget <file>");
    auto const kv = read_key_values(s.budget);

    auto required = [&](std::string const& key) -> std::string const& {
        auto it = kv.find(key);
        if (it == kv.end())
            throw UsageError(s.budget + ": missing '" + key + "'");
        return it->second;
    };
    auto optional = [&](std::string const& key) -> std::string {
        auto it = kv.find(key);
        return it == kv.end() ? std::string{} : it->second;
    };

    ErrorBudget b;
    b.random_error = parse_number(required("random_error"), "random_error");
    for (auto const& c : split_list(required("systematic")))
        b.systematic_components.push_back(parse_number(c, "systematic component"));
    if (b.systematic_components.empty())
        throw UsageError(s.budget + ": no systematic components");
    b.variance_of_mean = parse_number(required("variance_of_mean"), "variance_of_mean");
    if (auto v = optional("beta"); !v.empty())
        b.beta = parse_number(v, "beta");
    if (auto v = optional("k"); !v.empty())
        b.k_override = parse_number(v, "k");
    if (auto v = optional("measured_value"); !v.empty())
        b.measured_value = parse_number(v, "measured_value");

    std::string k_path = s.k_table;
    if (k_path.empty() && !optional("k_table").empty())
        k_path = resolve_near(optional("k_table"), s.budget);
    if (!k_path.empty())
    {
        for (auto const& [j, k] : read_two_column(k_path))
        {
            if (j != std::floor(j))
                throw UsageError(k_path + ": J must be an integer");
            b.k_table.set(static_cast<int>(j), b.beta, k);
        }
    }

    Interpolation mode = Interpolation::linear;
    if (auto v = optional("q_interpolation"); !v.empty())
    {
        if (v == "linear")
            mode = Interpolation::linear;
        else if (v == "nearest")
            mode = Interpolation::nearest;
        else if (v == "exact")
            mode = Interpolation::exact;
        else
            throw UsageError("q_interpolation must be linear, nearest or exact");
    }
    b.q_table = QTable(b.beta, mode);
    std::string q_path = s.q_table;
    if (q_path.empty() && !optional("q_table").empty())
        q_path = resolve_near(optional("q_table"), s.budget);
    if (!q_path.empty())
    {
        for (auto const& [r, q] : read_two_column(q_path))
            b.q_table.add(r, q);
    }

    double const k = resolve_k(b);
    auto const result = total_error(b);
    std::ostringstream os;
    os << "J=" << b.systematic_components.size() << '\n'
       << "k=" << format_sci(k) << '\n'
       << "delta_s=" << format_sci(result.systematic) << '\n'
       << "r=" << format_sci(result.ratio) << '\n'
       << "rule=" << to_string(result.rule) << '\n'
       << "delta_t=" << format_sci(result.total) << '\n';
    if (result.relative)
        os << "delta_t_relative=" << format_sci(*result.relative) << '\n';
    return os.str();
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Thermal Casimir force between a plate and a lens with surface "
                 "imperfections, in the proximity force approximation"};
    app.name(args.empty() ? "casimir" : args.front());

    Settings s;
    std::vector<Binding> bindings;
    auto bind = [&](std::string const& key, std::string* target, std::string const& help) {
        bindings.push_back({key, app.add_option("--" + key, *target, help), target});
    };
    bind("R", &s.radius, "lens curvature radius (default 15cm)");
    bind("R1", &s.r1, "imperfection curvature radius");
    bind("D1", &s.d1, "imperfection depth");
    bind("D", &s.thickness, "lens thickness (default R)");
    bind("T", &s.temperature, "temperature (default 300K)");
    bind("a-start", &s.a_start, "first separation");
    bind("a-stop", &s.a_stop, "last separation (inclusive)");
    bind("a-step", &s.a_step, "separation step");
    bind("a", &s.a_list, "comma-separated separations");
    bind("method", &s.method, "simplified|full|bubble|pit|quadrature");
    bind("profile", &s.profile, "perfect|bubble|pit (default perfect)");
    bind("tol", &s.tol, "relative quadrature tolerance (default 1e-9)");
    bind("out", &s.out, "output file (default stdout)");
    bind("budget", &s.budget, "error budget file for combine-errors");
    bind("k-table", &s.k_table, "two-column J,k table");
    bind("q-table", &s.q_table, "two-column r,q table");
    app.add_option("--config", s.config, "flat key = value file; flags win");

    using Command = std::function<std::string(Settings const&)>;
    std::vector<std::pair<CLI::App*, Command>> commands;
    auto command = [&](char const* name, char const* help, Command fn) {
        auto* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        commands.emplace_back(sub, std::move(fn));
    };
    command("fpp", "plate free energy per unit area", cmd_fpp);
    command("pressure", "plate pressure", cmd_pressure);
    command("force", "lens-plate force", cmd_force);
    command("ratio", "force ratio to the simplified perfect-lens force", cmd_ratio);
    command("reproduce-fig2", "ratio curves of the three reference imperfections",
            [](Settings const&) { return cmd_reproduce_fig2(); });
    command("combine-errors", "combine random and systematic errors", cmd_combine_errors);
    command("validate-lens", "optical surface specification checks", cmd_validate_lens);
    app.require_subcommand(1);

    try
    {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        if (!rev.empty())
            rev.pop_back();
        app.parse(rev);

        if (!s.config.empty())
        {
            for (auto const& [key, value] : read_key_values(s.config))
            {
                auto it = std::find_if(bindings.begin(), bindings.end(),
                                       [&](auto const& b) { return b.key == key; });
                if (it == bindings.end())
                    throw UsageError(s.config + ": unknown key '" + key + "'");
                if (it->option->count() == 0)
                    *it->target = value;
            }
        }

        for (auto const& [sub, fn] : commands)
        {
            if (!sub->parsed())
                continue;
            auto const text = fn(s);
            if (s.out.empty())
                out << text;
            else
                write_atomically(s.out, text);
        }
        return exit_success;
    }
    catch (CLI::CallForHelp const&)
    {
        out << app.help();
        return exit_success;
    }
    catch (CLI::ParseError const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (UsageError const& e)
    {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (IoError const& e)
    {
        err << "I/O error: " << e.what() << '\n';
        return exit_io;
    }
    catch (std::filesystem::filesystem_error const& e)
    {
        err << "I/O error: " << e.what() << '\n';
        return exit_io;
    }
    catch (NumericalError const& e)
    {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
    catch (ConfigurationError const& e)
    {
        err << "configuration error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (Error const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

}  // namespace casimir::cli
