#include "gravwell/roughness.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "gravwell/errors.hpp"
#include "gravwell/parallel.hpp"

namespace gravwell {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWallScale = 0.3;

std::string number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

char const* to_string(ExponentMode m)
{
    return m == ExponentMode::full ? "full" : "suppressed";
}

ExponentMode parse_exponent_mode(std::string const& text)
{
    if (text == "full")
        return ExponentMode::full;
    if (text == "suppressed")
        return ExponentMode::suppressed;
    throw ValidationError("mode: expected auto|full|suppressed, got '" + text + "'");
}

bool RoughnessSpec::weak_roughness() const
{
    return eta < 0.1 && eta <= r;
}

bool RoughnessSpec::high_aperture() const
{
    return r < eta && eta < 0.1;
}

std::vector<std::string> RoughnessSpec::validate() const
{
    if (!(eta > 0) || !std::isfinite(eta))
        throw ValidationError("eta: must be > 0, got " + number(eta));
    if (!(r > 0) || !std::isfinite(r))
        throw ValidationError("r: must be > 0, got " + number(r));
    std::vector<std::string> warnings;
    if (!weak_roughness() && !high_aperture())
        warnings.push_back("eta = " + number(eta) + ", r = " + number(r)
                           + " satisfies neither the weak-roughness (eta << 1, eta <= r) nor the "
                             "high-aperture (r < eta << 1) condition");
    return warnings;
}

ExponentMode select_exponent_mode(std::string const& requested, double eta, double r,
                                  std::vector<std::string>* warnings)
{
    if (requested != "auto")
        return parse_exponent_mode(requested);
    if (r > 0 && eta / r >= kHighApertureRatio)
    {
        if (warnings)
            warnings->push_back("mode auto: eta/r = " + number(eta / r)
                                + " >= 10, correlation exponent suppressed");
        return ExponentMode::suppressed;
    }
    return ExponentMode::full;
}

double power_spectrum(RoughnessSpec const& spec, double p)
{
    double const base = std::sqrt(2 * kPi) * spec.eta * spec.eta * spec.r;
    if (spec.mode == ExponentMode::suppressed)
        return base;
    return base * std::exp(-p * p * spec.r * spec.r / 2);
}

double lateral_factor(RoughnessSpec const& spec, double beta_j, double beta_j2)
{
    if (spec.mode == ExponentMode::suppressed)
        return 1.0;
    double const d = beta_j - beta_j2;
    return std::exp(-d * d * spec.r * spec.r / 2);
}

double wall_slope_squared(BoundState const& state, WellConfig const& config)
{
    if (state.kind == StateKind::gravitational)
    {
        double const lg = config.geometry == Geometry::direct ? state.log_b : state.log_c;
        return std::exp(lg) / kWallScale;
    }
    double const n = state.n;
    return 2 * kPi * kPi * n * n / (config.h * config.h * config.h);
}

double wall_slope_squared_printed(BoundState const& state, WellConfig const& config)
{
    if (state.kind == StateKind::gravitational)
        return wall_slope_squared(state, config);
    double const n = state.n;
    return kPi * kPi * n * n / (2 * config.h * config.h * config.h);
}

double transition_rate(BoundState const& j, BoundState const& j2, RoughnessSpec const& spec,
                       PhysicalScales const& scales, WellConfig const& config)
{
    double const pj = wall_slope_squared(j, config);
    double const pj2 = wall_slope_squared(j2, config);
    return inverse_tau0(scales, spec.eta) * spec.r * lateral_factor(spec, j.beta, j2.beta)
           * (pj * pj2);
}

RateSystem build_interstate_system(LevelLadder const& ladder, RoughnessSpec const& spec,
                                   PhysicalScales const& scales)
{
    auto const& st = ladder.states;
    std::size_t const n = st.size();
    RateSystem sys;
    sys.interstate = Eigen::MatrixXd::Zero(n, n);
    sys.direct.assign(n, 0.0);
    sys.t_over_tau.assign(n, 0.0);
    sys.betas.resize(n);
    sys.flight_time = scales.flight_time;
    for (std::size_t i = 0; i < n; ++i)
        sys.betas[i] = st[i].beta;
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t k = i + 1; k < n; ++k)
            sys.interstate(i, k) = transition_rate(st[i], st[k], spec, scales, ladder.config);
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            sys.interstate(k, i) = sys.interstate(i, k);
    return sys;
}

std::vector<double> channel_opening_heights(int j, RoughnessSpec const& spec,
                                            WellConfig const& config, double h_lo, double h_hi)
{
    if (j < 1)
        throw ValidationError("level: must be >= 1");
    double const target = 1.0 / spec.r;
    double const two_sqrt_e = 2 * std::sqrt(config.e);
    auto g = [&](double h) {
        auto const s = solve_infinite_well(h, j + 1);
        return (s[j].lambda - s[j - 1].lambda) / two_sqrt_e - target;
    };
    std::vector<double> out;
    if (!std::isfinite(target))
        return out;
    int const cells = 290;
    double const dh = (h_hi - h_lo) / cells;
    double a = h_lo;
    double ga = g(a);
    for (int i = 1; i <= cells; ++i)
    {
        double const b = h_lo + i * dh;
        double const gb = g(b);
        if ((ga < 0) != (gb < 0))
        {
            double lo = a, hi = b, glo = ga;
            for (int it = 0; it < 100 && hi - lo > 1e-12 * hi; ++it)
            {
                double const m = 0.5 * (lo + hi);
                double const gm = g(m);
                if ((gm < 0) == (glo < 0))
                {
                    lo = m;
                    glo = gm;
                }
                else
                    hi = m;
            }
            out.push_back(0.5 * (lo + hi));
        }
        a = b;
        ga = gb;
    }
    return out;
}

} // namespace gravwell
