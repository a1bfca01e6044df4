#include "gravwell/count.hpp"

#include <cmath>
#include <numeric>

#include "gravwell/absorption.hpp"
#include "gravwell/errors.hpp"
#include "gravwell/parallel.hpp"

namespace gravwell {
namespace {

void check_grid(std::vector<double> const& grid)
{
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        if (!(grid[i] > 0))
            throw ValidationError("grid: h values must be > 0");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw ValidationError("grid: h values must be ascending");
    }
}

LevelLadder ladder_at(CountParams const& p, double h, int n_levels)
{
    return solve_ladder(well_at(p, h), p.well, n_levels);
}

CountCurve empty_curve(CountParams const& p, std::vector<double> const& grid, int n_levels)
{
    if (n_levels < 1)
        throw ValidationError("levels: must be >= 1");
    check_grid(grid);
    p.roughness.validate();
    CountCurve c;
    c.h_grid = grid;
    c.params = p;
    c.per_level.assign(n_levels, std::vector<double>(grid.size(), 0.0));
    c.total.assign(grid.size(), 0.0);
    return c;
}

} // namespace

std::vector<double> make_grid(double a, double b, double step)
{
    if (!(step > 0) || !(b >= a) || !std::isfinite(a) || !std::isfinite(b))
        throw ValidationError("grid: expected A:B:STEP with B >= A and STEP > 0");
    std::vector<double> out;
    long const n = static_cast<long>(std::floor((b - a) / step + 1e-6));
    for (long i = 0; i <= n; ++i)
        out.push_back(a + static_cast<double>(i) * step);
    return out;
}

std::vector<double> default_h_grid()
{
    return make_grid(0.5, 12.0, 0.05);
}

PhysicalScales scales_of(CountParams const& p)
{
    return make_scales(p.constants, p.Uc, p.flight_time, p.roughness.eta);
}

WellConfig well_at(CountParams const& p, double h)
{
    auto const s = scales_of(p);
    return WellConfig::from_chi(h, s.uc, p.chi, p.geometry);
}

CountCurve count_direct(CountParams const& params, std::vector<double> const& h_grid, int n_levels)
{
    CountCurve c = empty_curve(params, h_grid, n_levels);
    auto const scales = scales_of(params);
    double const F = direct_kinematic_factor(params.roughness, well_at(params, h_grid.front()));
    parallel_for(h_grid.size(), [&](std::size_t i) {
        auto const ladder = ladder_at(params, h_grid[i], n_levels);
        double total = 0;
        for (std::size_t j = 0; j < ladder.states.size(); ++j)
        {
            auto const d = direct_rate(ladder.states[j], params.roughness, scales, ladder.config, F);
            double const n = std::exp(-d.t_over_tau);
            c.per_level[j][i] = n;
            total += n;
        }
        c.total[i] = total;
    }, params.threads);
    return c;
}

CountCurve count_transport(CountParams const& params, std::vector<double> const& h_grid,
                           int n_levels)
{
    CountCurve c = empty_curve(params, h_grid, n_levels);
    auto const scales = scales_of(params);
    parallel_for(h_grid.size(), [&](std::size_t i) {
        auto const ladder = ladder_at(params, h_grid[i], n_levels);
        RateSystem sys = build_rate_system(ladder, params.roughness, scales);
        if (!params.interstate)
            sys.interstate.setZero();
        InitialDistribution init;
        init.kind = params.initial;
        init.total = static_cast<double>(sys.size());
        auto const st = evolve(sys, init, scales.flight_time);
        for (std::size_t j = 0; j < st.N.size(); ++j)
            c.per_level[j][i] = st.N[j];
        c.total[i] = std::accumulate(st.N.begin(), st.N.end(), 0.0);
    }, params.threads);
    return c;
}

GeometryPair geometry_compare(CountParams const& params, std::vector<double> const& h_grid,
                              int n_levels)
{
    CountParams d = params;
    d.geometry = Geometry::direct;
    CountParams v = params;
    v.geometry = Geometry::inverse;
    return {count_direct(d, h_grid, n_levels), count_direct(v, h_grid, n_levels)};
}

CountParams preset(std::string const& name)
{
    CountParams p;
    p.chi = 0.15;
    if (name == "fig10")
    {
        p.roughness.eta = 0.01;
        p.roughness.r = 0.01;
        p.roughness.mode = ExponentMode::full;
    }
    else if (name == "fig11")
    {
        p.roughness.r = 0.015;
        p.roughness.eta = 30 * 0.015;
        p.roughness.mode = ExponentMode::suppressed;
    }
    else if (name == "fig14")
    {
        p.roughness.r = 0.015;
        p.roughness.eta = 0.015;
        p.roughness.mode = ExponentMode::full;
    }
    else if (name == "optimal")
    {
        p.roughness.eta = 0.015;
        p.roughness.r = 0.015;
        p.roughness.mode = ExponentMode::full;
    }
    else
        throw ValidationError("preset: expected fig10|fig11|fig14|optimal, got '" + name + "'");
    return p;
}

std::vector<double> fig14_ratios()
{
    return {1, 2, 3, 4, 5, 6, 8};
}

} // namespace gravwell
