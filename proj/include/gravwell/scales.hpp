#pragma once

#include <string>
#include <vector>

namespace gravwell {

/// Inputs that fix the unit system. Defaults are CODATA values for the neutron.
struct PhysicalConstants
{
    double mass = 1.67492750e-27;  // kg
    double g = 9.80665;            // m/s^2
    double hbar = 1.054571817e-34; // J s
};

inline constexpr double kDefaultBarrier = 1.34e-26;   // J
inline constexpr double kDefaultFlightTime = 2e-2;    // s

struct PhysicalScales
{
    double l0 = 0;           // m
    double e0 = 0;           // J
    double v0 = 0;           // m/s
    double Uc = 0;           // J
    double uc = 0;           // Uc / e0
    double flight_time = 0;  // s
    double tau0 = 0;         // s, infinite when eta == 0
    double inv_tau0 = 0;     // 1/s
    double neutron_mass = 0; // kg
    double g = 0;            // m/s^2
    double hbar = 0;         // J s
    double eta = 0;

    double length_to_si(double s) const { return s * l0; }
    double length_from_si(double z) const { return z / l0; }
    double energy_to_si(double lambda) const { return lambda * e0; }
    double energy_from_si(double e) const { return e / e0; }
    double velocity_to_si(double beta) const { return beta * v0; }
    double velocity_from_si(double v) const { return v / v0; }
};

/// Builds the scale set; throws ValidationError on non-positive inputs (eta may be 0).
PhysicalScales make_scales(double mass, double g, double Uc, double flight_time, double eta,
                           double hbar = PhysicalConstants{}.hbar);
PhysicalScales make_scales(PhysicalConstants const& c, double Uc, double flight_time,
                           double eta);

/// 1/tau0 in s^-1 for roughness amplitude eta on the given scales.
double inverse_tau0(PhysicalScales const& s, double eta);

/// Lateral velocity sqrt(e - lambda); DomainError when lambda > e.
double beta(double e, double lambda);

enum class Geometry
{
    direct,
    inverse
};

char const* to_string(Geometry g);
Geometry parse_geometry(std::string const& text);

struct WellConfig
{
    double h = 10;
    double uc = 0;
    double e = 0;
    double chi = 0.15;
    Geometry geometry = Geometry::direct;

    /// Well with energy fixed through chi = uc / e.
    static WellConfig from_chi(double h, double uc, double chi,
                               Geometry geometry = Geometry::direct);

    /// Throws ValidationError for hard violations and returns soft warnings
    /// (chi outside [0.15, 1)).
    std::vector<std::string> validate() const;
};

} // namespace gravwell
