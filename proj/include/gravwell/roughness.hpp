#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gravwell/eigen.hpp"
#include "gravwell/scales.hpp"

namespace gravwell {

enum class Correlator
{
    gaussian
};

/// Whether the lateral correlation exponent is kept (full) or dropped (suppressed).
enum class ExponentMode
{
    full,
    suppressed
};

char const* to_string(ExponentMode m);
ExponentMode parse_exponent_mode(std::string const& text);

/// Ratio eta / r at and above which the automatic mode switches to suppressed.
inline constexpr double kHighApertureRatio = 10.0;

struct RoughnessSpec
{
    double eta = 0.01; // amplitude / l0
    double r = 0.01;   // correlation radius / l0
    Correlator correlator = Correlator::gaussian;
    ExponentMode mode = ExponentMode::full;

    /// eta << 1 and eta <= r.
    bool weak_roughness() const;
    /// r < eta << 1.
    bool high_aperture() const;

    /// Throws ValidationError on non-positive eta or r; returns warnings.
    std::vector<std::string> validate() const;
};

/// Picks the exponent mode from "auto", "full" or "suppressed"; auto selects
/// suppressed for eta / r >= 10 and appends a notice to warnings.
ExponentMode select_exponent_mode(std::string const& requested, double eta, double r,
                                  std::vector<std::string>* warnings = nullptr);

/// Dimensionless spectrum of the correlator at lateral momentum transfer p.
double power_spectrum(RoughnessSpec const& spec, double momentum_transfer);

/// Lateral factor exp[-(beta_j - beta_j')^2 r^2 / 2], or 1 when suppressed.
double lateral_factor(RoughnessSpec const& spec, double beta_j, double beta_j2);

/// l0^3 psi'^2 on the rough wall: b/0.3 or c/0.3 for gravitational levels,
/// 2 pi^2 n^2 / h^3 for square-well levels.
double wall_slope_squared(BoundState const& state, WellConfig const& config);

/// Same quantity with the printed square-well coefficient pi^2 n^2 / (2 h^3).
double wall_slope_squared_printed(BoundState const& state, WellConfig const& config);

/// Symmetric interstate kernel w_jj' / tau0 in s^-1.
double transition_rate(BoundState const& j, BoundState const& j2, RoughnessSpec const& spec,
                       PhysicalScales const& scales, WellConfig const& config);

struct RateSystem
{
    Eigen::MatrixXd interstate;   // symmetric, s^-1, zero diagonal
    std::vector<double> direct;   // 1/tau_j^(0), s^-1
    std::vector<double> betas;    // lateral velocities
    std::vector<double> t_over_tau; // flight_time * direct
    double flight_time = 0;

    std::size_t size() const { return direct.size(); }
};

/// Interstate part of a rate system for the given ladder (direct rates zero).
RateSystem build_interstate_system(LevelLadder const& ladder, RoughnessSpec const& spec,
                                   PhysicalScales const& scales);

/// Heights where (lambda_{j+1} - lambda_j) / (2 sqrt(e)) = 1 / r for the
/// infinite-well ladder, found by scanning [h_lo, h_hi] and bisecting.
std::vector<double> channel_opening_heights(int j, RoughnessSpec const& spec,
                                            WellConfig const& config, double h_lo = 1.0,
                                            double h_hi = 30.0);

} // namespace gravwell
