#include "gravwell/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gravwell/absorption.hpp"
#include "gravwell/errors.hpp"
#include "gravwell/parallel.hpp"
#include "gravwell/transport.hpp"

namespace gravwell {
namespace {

std::string trim(std::string const& s)
{
    auto const b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    auto const e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_real(std::string const& key, std::string const& text, char const* range)
{
    char* end = nullptr;
    double const v = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0' || !std::isfinite(v))
        throw ValidationError(key + ": expected a number " + range + ", got '" + text + "'");
    return v;
}

double parse_positive(std::string const& key, std::string const& text)
{
    double const v = parse_real(key, text, "> 0");
    if (!(v > 0))
        throw ValidationError(key + ": must be > 0, got '" + text + "'");
    return v;
}

long parse_int(std::string const& key, std::string const& text, long lo, long hi)
{
    char* end = nullptr;
    long const v = std::strtol(text.c_str(), &end, 10);
    if (text.empty() || *end != '\0' || v < lo || v > hi)
        throw ValidationError(key + ": expected an integer in [" + std::to_string(lo) + ", "
                              + std::to_string(hi) + "], got '" + text + "'");
    return v;
}

std::string choice(std::string const& key, std::string const& text,
                   std::vector<std::string> const& allowed)
{
    if (std::find(allowed.begin(), allowed.end(), text) != allowed.end())
        return text;
    std::string list;
    for (auto const& a : allowed)
        list += (list.empty() ? "" : "|") + a;
    throw ValidationError(key + ": expected " + list + ", got '" + text + "'");
}

std::string ratio_label(double ratio)
{
    std::ostringstream os;
    os << "eta" << ratio << "r";
    return os.str();
}

RoughnessSpec roughness_for(RunConfig const& rc, double eta, std::vector<std::string>* notes)
{
    RoughnessSpec s = rc.params.roughness;
    s.eta = eta;
    s.mode = select_exponent_mode(rc.mode, eta, s.r, notes);
    return s;
}

CountParams params_for(RunConfig const& rc, double eta, Geometry g)
{
    CountParams p = rc.params;
    p.roughness = roughness_for(rc, eta, nullptr);
    p.geometry = g;
    return p;
}

LevelLadder ladder_for(RunConfig const& rc, CountParams const& p, double h)
{
    WellConfig const cfg = well_at(p, h);
    if (p.well == WellModel::finite)
    {
        int n = rc.levels;
        return solve_finite_well(cfg, n, {rc.tails});
    }
    return solve_ladder(cfg, p.well, rc.levels);
}

double log10_wall(BoundState const& st, WellConfig const& cfg)
{
    if (st.kind == StateKind::gravitational)
        return (cfg.geometry == Geometry::direct ? st.log_b : st.log_c) / std::log(10.0);
    return std::log10(absorbing_wall_value(st, cfg) / 2e-5);
}

Table levels_table(RunConfig const& rc)
{
    CountParams const p = params_for(rc, rc.etas.front(), rc.geometries.front());
    auto const ladder = ladder_for(rc, p, rc.h);
    Table t;
    t.label = "levels";
    t.columns = {"n", "lambda", "S", "a", "log10_b", "log10_c", "beta", "kind"};
    double const ln10 = std::log(10.0);
    for (auto const& s : ladder.states)
        t.rows.push_back({Cell::integer(s.n), Cell::real(s.lambda), Cell::real(s.S), Cell::real(s.a),
                          Cell::real(s.log_b / ln10), Cell::real(s.log_c / ln10),
                          Cell::real(s.beta), Cell::label(to_string(s.kind))});
    return t;
}

Table rates_table(RunConfig const& rc)
{
    CountParams const p = params_for(rc, rc.etas.front(), rc.geometries.front());
    auto const ladder = ladder_for(rc, p, rc.h);
    auto const sys = build_interstate_system(ladder, p.roughness, scales_of(p));
    Table t;
    t.label = "rates";
    t.columns = {"j", "j2", "rate_per_s", "mode"};
    for (std::size_t i = 0; i < sys.size(); ++i)
        for (std::size_t k = i + 1; k < sys.size(); ++k)
            t.rows.push_back({Cell::integer(static_cast<long>(i + 1)),
                              Cell::integer(static_cast<long>(k + 1)),
                              Cell::real(sys.interstate(i, k)),
                              Cell::label(to_string(p.roughness.mode))});
    return t;
}

Table absorb_table(RunConfig const& rc)
{
    CountParams const p = params_for(rc, rc.etas.front(), rc.geometries.front());
    auto const ladder = ladder_for(rc, p, rc.h);
    auto const scales = scales_of(p);
    Table t;
    t.label = "absorb";
    t.columns = {"n", "kind", "log10_b_or_c", "F_value", "t_over_tau0j"};
    for (auto const& s : ladder.states)
    {
        auto const d = direct_rate(s, p.roughness, scales, ladder.config);
        t.rows.push_back({Cell::integer(s.n), Cell::label(to_string(s.kind)),
                          Cell::real(log10_wall(s, ladder.config)), Cell::real(d.F),
                          Cell::real(d.t_over_tau)});
    }
    return t;
}

std::vector<double> h_grid(RunConfig const& rc)
{
    return rc.grid_set ? rc.grid : default_h_grid();
}

std::vector<Table> count_tables(RunConfig const& rc)
{
    std::vector<Table> out;
    bool const many_eta = rc.etas.size() > 1;
    bool const many_geom = rc.geometries.size() > 1;
    auto const grid = h_grid(rc);
    for (double eta : rc.etas)
        for (Geometry g : rc.geometries)
        {
            CountParams const p = params_for(rc, eta, g);
            CountCurve const c = rc.method == "transport" ? count_transport(p, grid, rc.levels)
                                                           : count_direct(p, grid, rc.levels);
            Table t;
            t.label = "count";
            if (many_eta)
                t.label = ratio_label(eta / p.roughness.r);
            if (many_geom)
                t.label = many_eta ? t.label + "_" + to_string(g) : std::string(to_string(g));
            t.columns = {"h", "n_total"};
            for (std::size_t j = 0; j < c.per_level.size(); ++j)
                t.columns.push_back("n_" + std::to_string(j + 1));
            for (std::size_t i = 0; i < grid.size(); ++i)
            {
                std::vector<Cell> row{Cell::real(grid[i]), Cell::real(c.total[i])};
                for (auto const& lvl : c.per_level)
                    row.push_back(Cell::real(lvl[i]));
                t.rows.push_back(std::move(row));
            }
            out.push_back(std::move(t));
        }
    return out;
}

Table transport_table(RunConfig const& rc)
{
    CountParams const p = params_for(rc, rc.etas.front(), rc.geometries.front());
    auto const ladder = ladder_for(rc, p, rc.h);
    auto const scales = scales_of(p);
    RateSystem const sys = build_rate_system(ladder, p.roughness, scales);
    InitialDistribution init;
    init.kind = p.initial;
    init.total = static_cast<double>(sys.size());
    std::vector<double> times;
    for (int i = 0; i < rc.samples; ++i)
        times.push_back(scales.flight_time * i / (rc.samples - 1));
    auto const states = evolve(sys, initial_populations(sys, init), times);
    Table t;
    t.label = "transport";
    t.columns = {"t_s"};
    for (std::size_t j = 0; j < sys.size(); ++j)
        t.columns.push_back("N_" + std::to_string(j + 1));
    t.columns.push_back("N_total");
    for (auto const& s : states)
    {
        std::vector<Cell> row{Cell::real(s.t)};
        for (double v : s.N)
            row.push_back(Cell::real(v));
        row.push_back(Cell::real(std::accumulate(s.N.begin(), s.N.end(), 0.0)));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table scan_table(RunConfig const& rc)
{
    CountParams const p = params_for(rc, rc.etas.front(), rc.geometries.front());
    auto const grid = h_grid(rc);
    auto const scales = scales_of(p);
    int const n = rc.levels;
    double const F = direct_kinematic_factor(p.roughness, well_at(p, grid.front()));
    std::vector<std::vector<Cell>> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        auto const ladder = ladder_for(rc, p, grid[i]);
        std::vector<Cell> row{Cell::real(grid[i])};
        double const ln10 = std::log(10.0);
        for (int j = 0; j < n; ++j)
        {
            if (j < static_cast<int>(ladder.states.size()))
            {
                auto const& s = ladder.states[j];
                auto const d = direct_rate(s, p.roughness, scales, ladder.config, F);
                row.push_back(Cell::real(s.lambda));
                row.push_back(Cell::real(s.log_b / ln10));
                row.push_back(Cell::real(s.log_c / ln10));
                row.push_back(Cell::real(d.t_over_tau));
            }
            else
                for (int k = 0; k < 4; ++k)
                    row.push_back(Cell::real(std::nan("")));
        }
        rows[i] = std::move(row);
    }, p.threads);
    Table t;
    t.label = "scan";
    t.columns = {"h"};
    for (int j = 1; j <= n; ++j)
    {
        std::string const s = std::to_string(j);
        for (char const* c : {"lambda_", "log10_b_", "log10_c_", "t_over_tau_"})
            t.columns.push_back(c + s);
    }
    t.rows = std::move(rows);
    return t;
}

std::vector<Table> fnplot_tables(RunConfig const& rc)
{
    std::vector<std::string> which;
    if (rc.which == "all")
        which = {"f0", "f1", "f1_quadrature", "f", "f_vs_r"};
    else
        which = {rc.which};
    auto const scales = scales_of(rc.params);
    std::vector<Table> out;
    for (auto const& w : which)
    {
        std::vector<double> grid;
        if (rc.grid_set)
            grid = rc.grid;
        else if (w == "f0")
            grid = make_grid(0.05, 1.0, 0.01);
        else if (w == "f_vs_r")
            grid = make_grid(0.0005, 0.02, 0.0005);
        else
            grid = make_grid(0.05, 0.95, 0.01);
        Table t;
        t.label = w;
        std::vector<double> values(grid.size());
        std::function<double(double)> fn;
        if (w == "f0")
        {
            t.columns = {"x", "F0"};
            fn = f0;
        }
        else if (w == "f1")
        {
            t.columns = {"x", "F1"};
            fn = f1;
        }
        else if (w == "f1_quadrature")
        {
            t.columns = {"x", "F1_quadrature"};
            fn = f1_quadrature;
        }
        else if (w == "f")
        {
            t.columns = {"x", "F"};
            double const y = std::sqrt(scales.uc) * rc.params.roughness.r;
            fn = [y](double x) { return f_full(x, y); };
        }
        else
        {
            t.columns = {"r", "F"};
            double const chi = rc.params.chi;
            double const su = std::sqrt(scales.uc);
            fn = [chi, su](double r) { return f_full(chi, su * r); };
        }
        parallel_for(grid.size(), [&](std::size_t i) { values[i] = fn(grid[i]); },
                     rc.params.threads);
        for (std::size_t i = 0; i < grid.size(); ++i)
            t.rows.push_back({Cell::real(grid[i]), Cell::real(values[i])});
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace

std::vector<std::string> const& ConfigStore::known_keys()
{
    static std::vector<std::string> const keys = {
        "mass", "g", "hbar", "Uc_J", "flight_time_s", "eta", "r", "h", "chi", "geometry",
        "mode", "levels", "grid", "preset", "threads", "out", "well", "which", "init",
        "method", "tails", "samples"};
    return keys;
}

void ConfigStore::set(std::string const& key, std::string const& value)
{
    auto const& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
        throw ValidationError("unknown key '" + key + "'");
    values_[key] = trim(value);
}

bool ConfigStore::has(std::string const& key) const
{
    return values_.count(key) != 0;
}

void ConfigStore::load_file(std::string const& path)
{
    std::ifstream f(path);
    if (!f)
        throw ValidationError("config: cannot read '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(f, line))
    {
        ++lineno;
        auto const hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto const eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config: line " + std::to_string(lineno)
                                  + ": expected key = value");
        set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

std::vector<double> parse_grid(std::string const& text)
{
    auto const a = text.find(':');
    auto const b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos)
        throw ValidationError("grid: expected A:B:STEP, got '" + text + "'");
    double const lo = parse_real("grid", text.substr(0, a), "A:B:STEP");
    double const hi = parse_real("grid", text.substr(a + 1, b - a - 1), "A:B:STEP");
    double const step = parse_real("grid", text.substr(b + 1), "A:B:STEP");
    if (!(step > 0) || !(hi >= lo))
        throw ValidationError("grid: expected A:B:STEP with B >= A and STEP > 0, got '" + text + "'");
    if ((hi - lo) / step > 1e6)
        throw ValidationError("grid: more than 1e6 points in '" + text + "'");
    return make_grid(lo, hi, step);
}

RunConfig ConfigStore::resolve() const
{
    auto get = [this](char const* k) -> std::string const* {
        auto it = values_.find(k);
        return it == values_.end() ? nullptr : &it->second;
    };
    RunConfig rc;
    CountParams& p = rc.params;
    p.roughness.eta = 0.01;
    p.roughness.r = 0.01;
    if (auto v = get("preset"))
    {
        rc.preset = choice("preset", *v, {"fig10", "fig11", "fig14", "optimal"});
        p = preset(rc.preset);
        rc.mode = to_string(p.roughness.mode);
    }
    bool const sweep = rc.preset == "fig14";
    rc.geometries = sweep ? std::vector<Geometry>{Geometry::direct, Geometry::inverse}
                          : std::vector<Geometry>{Geometry::direct};

    if (auto v = get("mass"))
        p.constants.mass = parse_positive("mass", *v);
    if (auto v = get("g"))
        p.constants.g = parse_positive("g", *v);
    if (auto v = get("hbar"))
        p.constants.hbar = parse_positive("hbar", *v);
    if (auto v = get("Uc_J"))
        p.Uc = parse_positive("Uc_J", *v);
    if (auto v = get("flight_time_s"))
        p.flight_time = parse_positive("flight_time_s", *v);
    if (auto v = get("r"))
        p.roughness.r = parse_positive("r", *v);
    if (auto v = get("chi"))
    {
        p.chi = parse_real("chi", *v, "in (0, 1)");
        if (!(p.chi > 0 && p.chi < 1))
            throw ValidationError("chi: must lie in (0, 1), got '" + *v + "'");
    }
    if (auto v = get("eta"))
        rc.etas = {parse_positive("eta", *v)};
    else if (sweep)
        for (double ratio : fig14_ratios())
            rc.etas.push_back(ratio * p.roughness.r);
    else
        rc.etas = {p.roughness.eta};
    p.roughness.eta = rc.etas.front();
    if (auto v = get("h"))
        rc.h = parse_positive("h", *v);
    if (auto v = get("geometry"))
    {
        std::string const g = choice("geometry", *v, {"direct", "inverse", "both"});
        if (g == "both")
            rc.geometries = {Geometry::direct, Geometry::inverse};
        else
            rc.geometries = {parse_geometry(g)};
    }
    p.geometry = rc.geometries.front();
    if (auto v = get("mode"))
        rc.mode = choice("mode", *v, {"auto", "full", "suppressed"});
    if (auto v = get("levels"))
    {
        rc.levels = static_cast<int>(parse_int("levels", *v, 1, 2000));
        rc.levels_set = true;
    }
    if (auto v = get("grid"))
    {
        rc.grid = parse_grid(*v);
        rc.grid_set = true;
    }
    if (auto v = get("threads"))
        p.threads = static_cast<int>(parse_int("threads", *v, 0, 1024));
    if (auto v = get("out"))
        rc.out = *v;
    if (auto v = get("well"))
        p.well = choice("well", *v, {"infinite", "finite"}) == "finite" ? WellModel::finite
                                                                          : WellModel::infinite;
    if (auto v = get("which"))
        rc.which = choice("which", *v, {"f0", "f1", "f1_quadrature", "f", "f_vs_r", "all"});
    if (auto v = get("init"))
        p.initial = choice("init", *v, {"uniform", "equilibrium"}) == "uniform"
                        ? InitialDistribution::Kind::uniform
                        : InitialDistribution::Kind::equilibrium;
    if (auto v = get("method"))
        rc.method = choice("method", *v, {"direct", "transport"});
    if (auto v = get("tails"))
        rc.tails = parse_int("tails", *v, 0, 1) == 1;
    if (auto v = get("samples"))
        rc.samples = static_cast<int>(parse_int("samples", *v, 2, 100000));

    // Cross-field checks and soft warnings.
    for (double eta : rc.etas)
    {
        auto const scales = make_scales(p.constants, p.Uc, p.flight_time, eta);
        RoughnessSpec spec = p.roughness;
        spec.eta = eta;
        for (auto& w : spec.validate())
            rc.warnings.push_back(std::move(w));
        select_exponent_mode(rc.mode, eta, spec.r, &rc.warnings);
        WellConfig const wc = WellConfig::from_chi(rc.h, scales.uc, p.chi, p.geometry);
        for (auto& w : wc.validate())
            if (std::find(rc.warnings.begin(), rc.warnings.end(), w) == rc.warnings.end())
                rc.warnings.push_back(std::move(w));
    }
    if (rc.grid_set)
        for (double x : rc.grid)
            if (!(x > 0))
                throw ValidationError("grid: values must be > 0");
    p.roughness.mode = select_exponent_mode(rc.mode, p.roughness.eta, p.roughness.r);
    return rc;
}

std::vector<Table> run_command(std::string const& command, RunConfig const& cfg)
{
    if (command == "levels")
        return {levels_table(cfg)};
    if (command == "rates")
        return {rates_table(cfg)};
    if (command == "absorb")
        return {absorb_table(cfg)};
    if (command == "count")
        return count_tables(cfg);
    if (command == "transport")
        return {transport_table(cfg)};
    if (command == "scan")
        return {scan_table(cfg)};
    if (command == "fnplot")
        return fnplot_tables(cfg);
    throw ValidationError("command: expected levels|rates|absorb|count|transport|scan|fnplot, got '"
                          + command + "'");
}

} // namespace gravwell
