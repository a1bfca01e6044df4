#include "gravwell/absorption.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gravwell/errors.hpp"
#include "gravwell/parallel.hpp"

namespace gravwell {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGravWallFactor = 2e-5;

template <class F>
double integrate(F f, double a, double b, double tol)
{
    double err = 0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, tol, &err);
}

void require_open_unit(char const* name, double x)
{
    if (!(x > 0 && x < 1))
        throw DomainError(std::string(name) + ": x must lie in (0, 1)");
}

// Common prefactor uc^2 r (l0 psi^2) / (pi tau0 beta) in s^-1.
double continuum_prefactor(BoundState const& state, RoughnessSpec const& spec,
                           PhysicalScales const& scales, WellConfig const& config)
{
    double const w = absorbing_wall_value(state, config);
    return config.uc * config.uc * spec.r * w * inverse_tau0(scales, spec.eta)
           / (kPi * state.beta);
}

double exponent_factor(RoughnessSpec const& spec, double beta_j, double beta_out)
{
    if (spec.mode == ExponentMode::suppressed)
        return 1.0;
    double const d = beta_j - beta_out;
    return std::exp(-d * d * spec.r * spec.r / 2);
}

} // namespace

double f0(double x)
{
    if (!(x > 0 && x <= 1))
        throw DomainError("f0: x must lie in (0, 1]");
    return std::sqrt(x) / (1 - std::sqrt(1 - x));
}

double f1(double x)
{
    require_open_unit("f1", x);
    double const sx = std::sqrt(x);
    return 0.11 * (1.2 / sx - 1.76 + 0.245 * std::log(6 / (3 - 2.45 * sx) - 1));
}

double f1_quadrature(double x)
{
    return f_full(x, 0.0);
}

double f_full(double x, double y)
{
    require_open_unit("f_full", x);
    if (!(y >= 0) || !std::isfinite(y))
        throw DomainError("f_full: y must be finite and >= 0");
    double const inv = 1 / x;
    double const top = inv - 1;
    double const root_inv = std::sqrt(inv);
    double const y2 = y * y;
    auto integrand = [=](double z) {
        double const base = z / ((3 * z + 1) * std::sqrt(1 + z));
        if (y2 == 0)
            return base;
        double const d = root_inv - std::sqrt(std::max(top - z, 0.0));
        return base * std::exp(-d * d * y2 / 2);
    };
    return 0.2 * integrate(integrand, 0.0, top, 1e-10);
}

double absorbing_wall_value(BoundState const& state, WellConfig const& config)
{
    if (state.kind == StateKind::gravitational)
    {
        double const lg = config.geometry == Geometry::direct ? state.log_b : state.log_c;
        return kGravWallFactor * std::exp(lg);
    }
    return square_well_wall_value(state.lambda, config);
}

double direct_kinematic_factor(RoughnessSpec const& spec, WellConfig const& config)
{
    double const y = spec.mode == ExponentMode::suppressed ? 0.0 : std::sqrt(config.uc) * spec.r;
    return f_full(config.chi, y);
}

DirectRate direct_rate(BoundState const& state, RoughnessSpec const& spec,
                       PhysicalScales const& scales, WellConfig const& config)
{
    return direct_rate(state, spec, scales, config, direct_kinematic_factor(spec, config));
}

DirectRate direct_rate(BoundState const& state, RoughnessSpec const& spec,
                       PhysicalScales const& scales, WellConfig const& config, double F)
{
    DirectRate out;
    out.wall_value = absorbing_wall_value(state, config);
    out.F = F;
    double const uc = config.uc;
    out.rate_per_s = 10 * std::pow(uc, 2.5) * spec.r * out.wall_value
                     * inverse_tau0(scales, spec.eta) / (kPi * state.beta) * out.F;
    out.t_over_tau = scales.flight_time * out.rate_per_s;
    return out;
}

double continuum_rate(BoundState const& state, RoughnessSpec const& spec,
                      PhysicalScales const& scales, WellConfig const& config, bool half_cos)
{
    double const uc = config.uc;
    double const e = config.e;
    double const h = config.h;
    double const kmax = std::sqrt(e - uc);
    // Integrate in kappa = sqrt(lambda'): dlambda'/sqrt(lambda') = 2 dkappa.
    auto integrand = [&](double kappa) {
        double const k2 = kappa * kappa;
        double const lam = k2 + uc;
        double const g = exponent_factor(spec, state.beta, std::sqrt(std::max(e - lam, 0.0)));
        double c2 = 0.5;
        if (!half_cos)
        {
            double const c = std::cos(h * std::sqrt(lam));
            c2 = c * c;
        }
        if (k2 == 0)
            return c2 == 0 ? 2 * g : 0.0;
        return 2 * g / (1 + lam / k2 * c2);
    };
    double total = 0;
    if (half_cos)
        total = integrate(integrand, 0.0, kmax, 1e-10);
    else
    {
        // Split at every quarter period of the phase h sqrt(kappa^2 + uc).
        double const phi0 = h * std::sqrt(uc);
        double const phi1 = h * std::sqrt(e);
        double const quarter = kPi / 2;
        double a = 0;
        double phi = (std::floor(phi0 / quarter) + 1) * quarter;
        while (a < kmax)
        {
            double b = kmax;
            if (phi < phi1)
            {
                double const t = phi / h;
                b = std::min(kmax, std::sqrt(std::max(t * t - uc, 0.0)));
            }
            if (b > a)
                total += integrate(integrand, a, b, 1e-9);
            a = b;
            phi += quarter;
        }
    }
    return continuum_prefactor(state, spec, scales, config) * total;
}

double box_discretized_rate(BoundState const& state, RoughnessSpec const& spec,
                            PhysicalScales const& scales, WellConfig const& config, double L)
{
    if (!(L > 0))
        throw ValidationError("box: L must be > 0");
    double const uc = config.uc;
    double const e = config.e;
    double const h = config.h;
    long double sum = 0;
    double const dk = kPi / L;
    for (long n = 1;; ++n)
    {
        double const kappa = dk * static_cast<double>(n);
        double const k2 = kappa * kappa;
        double const lam = uc + k2;
        if (!(lam < e))
            break;
        double const c = std::cos(h * std::sqrt(lam));
        double const g = exponent_factor(spec, state.beta, std::sqrt(e - lam));
        sum += g / (1 + c * c * lam / k2);
    }
    return continuum_prefactor(state, spec, scales, config) * kPi * 2.0 / L
           * static_cast<double>(sum);
}

RateSystem build_rate_system(LevelLadder const& ladder, RoughnessSpec const& spec,
                             PhysicalScales const& scales)
{
    RateSystem sys = build_interstate_system(ladder, spec, scales);
    double const F = direct_kinematic_factor(spec, ladder.config);
    for (std::size_t i = 0; i < ladder.states.size(); ++i)
    {
        auto const d = direct_rate(ladder.states[i], spec, scales, ladder.config, F);
        sys.direct[i] = d.rate_per_s;
        sys.t_over_tau[i] = d.t_over_tau;
    }
    return sys;
}

} // namespace gravwell
