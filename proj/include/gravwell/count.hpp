#pragma once

#include <string>
#include <vector>

#include "gravwell/eigen.hpp"
#include "gravwell/roughness.hpp"
#include "gravwell/scales.hpp"
#include "gravwell/transport.hpp"

namespace gravwell {

/// Everything needed to produce a count curve.
struct CountParams
{
    PhysicalConstants constants;
    double Uc = kDefaultBarrier;
    double flight_time = kDefaultFlightTime;
    double chi = 0.15;
    RoughnessSpec roughness;
    Geometry geometry = Geometry::direct;
    WellModel well = WellModel::infinite;
    InitialDistribution::Kind initial = InitialDistribution::Kind::uniform;
    bool interstate = true; // count_transport only
    int threads = 0;
};

struct CountCurve
{
    std::vector<double> h_grid;
    std::vector<std::vector<double>> per_level; // per_level[j][i] at h_grid[i]
    std::vector<double> total;
    CountParams params;
};

/// Inclusive grid a, a + step, ..., b (within step/1e6 of b).
std::vector<double> make_grid(double a, double b, double step);

/// Default h grid 0.5:12:0.05.
std::vector<double> default_h_grid();

/// Well at slit height h for these parameters.
WellConfig well_at(CountParams const& p, double h);
PhysicalScales scales_of(CountParams const& p);

/// Survival exp(-t/tau_j^(0)) per level, summed into the total.
CountCurve count_direct(CountParams const& params, std::vector<double> const& h_grid,
                        int n_levels);

/// Survival from the full rate equations, uniform or equilibrium start over
/// the n_levels lowest levels.
CountCurve count_transport(CountParams const& params, std::vector<double> const& h_grid,
                           int n_levels);

struct GeometryPair
{
    CountCurve direct;
    CountCurve inverse;
};

GeometryPair geometry_compare(CountParams const& params, std::vector<double> const& h_grid,
                              int n_levels);

/// Named parameter sets: fig10, fig11, fig14 (eta/r = 1), optimal.
CountParams preset(std::string const& name);

/// eta/r ratios swept by fig14.
std::vector<double> fig14_ratios();

} // namespace gravwell
