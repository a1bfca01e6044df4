#pragma once

#include "gravwell/eigen.hpp"
#include "gravwell/roughness.hpp"
#include "gravwell/scales.hpp"

namespace gravwell {

/// sqrt(x) / (1 - sqrt(1 - x)) on (0, 1].
double f0(double x);

/// Closed fit 0.11 [1.2/sqrt(x) - 1.76 + 0.245 ln(6/(3 - 2.45 sqrt(x)) - 1)] on (0, 1).
double f1(double x);

/// 0.2 times the integral of z / ((3z + 1) sqrt(1 + z)) over [0, 1/x - 1].
double f1_quadrature(double x);

/// f1_quadrature with the lateral factor exp[-(sqrt(1/x) - sqrt(1/x - 1 - z))^2 y^2 / 2].
double f_full(double x, double y);

/// l0 psi^2 on the absorbing wall: 2e-5 b (or c) for gravitational levels,
/// the symmetric square-well value otherwise.
double absorbing_wall_value(BoundState const& state, WellConfig const& config);

struct DirectRate
{
    double rate_per_s = 0;
    double t_over_tau = 0;
    double wall_value = 0; // l0 psi^2
    double F = 0;
};

/// Kinematic factor used by direct_rate: F(chi, sqrt(uc) r), or F(chi, 0) when suppressed.
double direct_kinematic_factor(RoughnessSpec const& spec, WellConfig const& config);

DirectRate direct_rate(BoundState const& state, RoughnessSpec const& spec,
                       PhysicalScales const& scales, WellConfig const& config);

/// Same with a precomputed kinematic factor (see direct_kinematic_factor).
DirectRate direct_rate(BoundState const& state, RoughnessSpec const& spec,
                       PhysicalScales const& scales, WellConfig const& config, double F);

/// Continuum integral over lambda' in (0, e - uc) with measure 1/sqrt(lambda')
/// (box limit). half_cos replaces cos^2(h sqrt(lambda' + uc)) by 1/2.
double continuum_rate(BoundState const& state, RoughnessSpec const& spec,
                      PhysicalScales const& scales, WellConfig const& config, bool half_cos);

/// Same rate as a sum over the levels of a box of dimensionless size L.
double box_discretized_rate(BoundState const& state, RoughnessSpec const& spec,
                            PhysicalScales const& scales, WellConfig const& config, double L);

/// Interstate kernel plus direct rates for a ladder.
RateSystem build_rate_system(LevelLadder const& ladder, RoughnessSpec const& spec,
                             PhysicalScales const& scales);

} // namespace gravwell
