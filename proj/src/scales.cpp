#include "gravwell/scales.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "gravwell/errors.hpp"

namespace gravwell {
namespace {

void require_positive(char const* key, double v)
{
    if (!(v > 0) || !std::isfinite(v))
        throw ValidationError(std::string(key) + ": must be a finite positive number");
}

std::string number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

PhysicalScales make_scales(double mass, double g, double Uc, double flight_time, double eta,
                           double hbar)
{
    require_positive("mass", mass);
    require_positive("g", g);
    require_positive("Uc_J", Uc);
    require_positive("flight_time_s", flight_time);
    require_positive("hbar", hbar);
    if (!(eta >= 0) || !std::isfinite(eta))
        throw ValidationError("eta: must be a finite number >= 0");

    PhysicalScales s;
    s.neutron_mass = mass;
    s.g = g;
    s.hbar = hbar;
    s.eta = eta;
    s.l0 = std::cbrt(hbar * hbar / (2.0 * mass * mass * g));
    s.e0 = mass * g * s.l0;
    s.v0 = std::sqrt(2.0 * g * s.l0);
    s.Uc = Uc;
    s.uc = Uc / s.e0;
    s.flight_time = flight_time;
    s.inv_tau0 = inverse_tau0(s, eta);
    s.tau0 = s.inv_tau0 > 0 ? 1.0 / s.inv_tau0 : HUGE_VAL;
    return s;
}

double inverse_tau0(PhysicalScales const& s, double eta)
{
    double const hm = s.hbar / s.neutron_mass;
    return std::sqrt(2.0 * std::numbers::pi) / 4.0 * hm * hm / (s.l0 * s.l0 * s.l0 * s.v0) * eta
           * eta;
}

PhysicalScales make_scales(PhysicalConstants const& c, double Uc, double flight_time,
                           double eta)
{
    return make_scales(c.mass, c.g, Uc, flight_time, eta, c.hbar);
}

double beta(double e, double lambda)
{
    if (!(lambda <= e))
        throw DomainError("beta: lambda " + number(lambda) + " exceeds e " + number(e));
    return std::sqrt(e - lambda);
}

char const* to_string(Geometry g)
{
    return g == Geometry::direct ? "direct" : "inverse";
}

Geometry parse_geometry(std::string const& text)
{
    if (text == "direct")
        return Geometry::direct;
    if (text == "inverse")
        return Geometry::inverse;
    throw ValidationError("geometry: expected direct|inverse, got '" + text + "'");
}

WellConfig WellConfig::from_chi(double h, double uc, double chi, Geometry geometry)
{
    WellConfig c;
    c.h = h;
    c.uc = uc;
    c.chi = chi;
    c.e = chi > 0 ? uc / chi : 0;
    c.geometry = geometry;
    return c;
}

std::vector<std::string> WellConfig::validate() const
{
    if (!(h > 0) || !std::isfinite(h))
        throw ValidationError("h: must be > 0, got " + number(h));
    if (!(uc > 0) || !std::isfinite(uc))
        throw ValidationError("Uc_J: dimensionless barrier must be > 0, got " + number(uc));
    if (!(chi > 0) || !(chi < 1))
        throw ValidationError("chi: must lie in (0, 1) so that e > uc, got " + number(chi));
    if (!(e > uc))
        throw ValidationError("chi: beam energy e must exceed the barrier uc");
    std::vector<std::string> warnings;
    if (chi < 0.15)
        warnings.push_back("chi = " + number(chi)
                           + " is below the experimental range [0.15, 1)");
    return warnings;
}

} // namespace gravwell
