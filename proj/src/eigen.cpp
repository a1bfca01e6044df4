#include "gravwell/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gravwell/airy.hpp"
#include "gravwell/errors.hpp"

namespace gravwell {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWallScale = 0.3;
constexpr double kIndexTolerance = 0.6;
constexpr int kMaxBisection = 200;

double log_wall_scale()
{
    static double const v = std::log(kWallScale);
    return v;
}

// Semiclassical phase (2/3)(lambda^{3/2} - (lambda - h)_+^{3/2}).
double phase(double lambda, double h)
{
    if (lambda <= 0)
        return 0;
    double const above = std::max(lambda - h, 0.0);
    return 2.0 / 3.0 * (lambda * std::sqrt(lambda) - above * std::sqrt(above));
}

double half_gap(double lambda, double h)
{
    double const t = 2.0 * (std::sqrt(std::max(lambda, 0.0)) - std::sqrt(std::max(lambda - h, 0.0)));
    return t > 0 ? kPi / t : HUGE_VAL;
}

double scan_step(double lambda, double h)
{
    if (lambda >= h)
        return 0.25 * half_gap(lambda, h);
    double s = 0.25 * half_gap(h, h);
    for (int i = 0; i < 4; ++i)
        s = 0.25 * half_gap(std::min(lambda + s, h), h);
    return s;
}

double index_estimate(double lambda, double h, double uc)
{
    double n = phase(lambda, h) / kPi;
    int walls = 2;
    if (lambda < h)
    {
        n += 0.25;
        walls = 1;
    }
    if (uc > 0 && lambda < uc)
        n += walls * std::asin(std::sqrt(lambda / uc)) / kPi;
    return n;
}

double bisect(std::function<double(double)> const& f, double a, double b, double fa)
{
    for (int it = 0; it < kMaxBisection; ++it)
    {
        double const m = 0.5 * (a + b);
        double const tol = std::max(1e-12, 4 * std::numeric_limits<double>::epsilon() * std::fabs(m));
        if (b - a <= tol)
            return m;
        double const fm = f(m);
        if (fm == 0)
            return m;
        if ((fm < 0) == (fa < 0))
        {
            a = m;
            fa = fm;
        }
        else
            b = m;
    }
    throw ConvergenceError("bisection did not converge in 200 iterations near lambda = "
                           + std::to_string(0.5 * (a + b)));
}

int sign_of(double v)
{
    return v < 0 ? -1 : 1;
}

// Infinite well: f = p Ai(s - l) + q Bi(s - l), f(0) = 0, f'(0) = -1/pi.
BoundState build_infinite_state(int n, double lambda, double h, double e)
{
    auto const a0 = airy::airy_eval(-lambda);
    double const p = a0.bi;
    double const q = -a0.ai;
    double const x = h - lambda;
    double ln_rho = 0;
    if (x > 0)
        ln_rho = 2 * std::log(std::fabs(p)) - 2 * airy::airy_bi_log(x);
    else
    {
        auto const ax = airy::airy_eval(x);
        double const dh = p * ax.dai + q * ax.dbi;
        ln_rho = 2 * std::log(kPi * std::fabs(dh));
    }
    double const rho = std::exp(ln_rho);
    double const l1 = std::log1p(-rho);
    double const norm = (1.0 - rho) / (kPi * kPi); // integral of f^2 over [0, h]

    BoundState st;
    st.n = n;
    st.lambda = lambda;
    st.S = a0.ai / a0.bi;
    st.a = p * p / norm;
    st.log_b = log_wall_scale() + ln_rho - l1;
    st.log_c = log_wall_scale() - l1;
    st.kind = lambda < h ? StateKind::gravitational : StateKind::square_well;
    st.beta = e > lambda ? std::sqrt(e - lambda) : 0;
    double const root = std::sqrt(norm);
    st.ai_coef = p / root;
    st.bi_coef = q / root;
    st.residual = std::fabs(infinite_well_secular(lambda, h));
    return st;
}

// Finite well: f'(0) = k f(0) with f(0) = -1/pi, f'(h) = -k f(h).
BoundState build_finite_state(int n, double lambda, double h, double uc, double e, bool tails)
{
    double const k = std::sqrt(uc - lambda);
    auto const a0 = airy::airy_eval(-lambda);
    double const p = k * a0.bi - a0.dbi;
    double const q = -(k * a0.ai - a0.dai);
    double const x = h - lambda;
    // ln of f'(h)^2 / f'(0)^2 with f'(0) = -k/pi.
    double ln_ratio = 0;
    if (x > 0)
    {
        auto const sx = airy::airy_scaled(x);
        double const g = sx.bi + sx.dbi / k;
        ln_ratio = 2 * (std::log(std::fabs(p)) - std::log(g) - sx.zeta - std::log(k));
    }
    else
    {
        auto const ax = airy::airy_eval(x);
        double const dh = p * ax.dai + q * ax.dbi;
        ln_ratio = 2 * std::log(kPi * std::fabs(dh) / k);
    }
    double const ratio = std::exp(ln_ratio);
    double const k2 = k * k;
    double bracket = (1 + lambda / k2) - ratio * (1 - x / k2);
    if (tails)
        bracket += (1 + ratio) / (2 * k2 * k);
    double const norm = k2 / (kPi * kPi) * bracket;

    BoundState st;
    st.n = n;
    st.lambda = lambda;
    st.S = -q / p;
    st.a = p * p / norm;
    st.log_b = log_wall_scale() + ln_ratio - std::log(bracket);
    st.log_c = log_wall_scale() - std::log(bracket);
    st.kind = lambda < h ? StateKind::gravitational : StateKind::square_well;
    st.beta = e > lambda ? std::sqrt(e - lambda) : 0;
    double const root = std::sqrt(norm);
    st.ai_coef = p / root;
    st.bi_coef = q / root;
    st.residual = std::fabs(finite_well_secular(lambda, h, uc));
    return st;
}

} // namespace

char const* to_string(StateKind k)
{
    return k == StateKind::gravitational ? "gravitational" : "square_well";
}

double infinite_well_secular(double lambda, double h)
{
    auto const a0 = airy::airy_eval(-lambda);
    auto const sx = airy::airy_scaled(h - lambda);
    double const w = std::exp(-2 * sx.zeta);
    double const num = a0.ai * sx.bi - a0.bi * sx.ai * w;
    double const den = (std::fabs(a0.ai) + std::fabs(a0.bi)) * (std::fabs(sx.ai) * w + std::fabs(sx.bi));
    return num / den;
}

double finite_well_secular(double lambda, double h, double uc)
{
    double const k = std::sqrt(uc - lambda);
    auto const a0 = airy::airy_eval(-lambda);
    double const p = k * a0.bi - a0.dbi;
    double const q = -(k * a0.ai - a0.dai);
    auto const sx = airy::airy_scaled(h - lambda);
    double const w = std::exp(-2 * sx.zeta);
    double const ua = (k * sx.ai + sx.dai) * w;
    double const ub = k * sx.bi + sx.dbi;
    return (p * ua + q * ub) / ((std::fabs(p) + std::fabs(q)) * (std::fabs(ua) + std::fabs(ub)));
}

namespace detail {

std::vector<double> find_ladder(std::function<double(double)> const& f,
                                std::function<double(double)> const& step_of,
                                std::function<double(double)> const& index_of, double lo,
                                double hi, int n_max)
{
    std::string failure;
    for (double shrink : {1.0, 0.25})
    {
        std::vector<double> roots;
        bool consistent = true;
        double lam = lo;
        double f_prev = f(lam);
        while (static_cast<int>(roots.size()) < n_max && lam < hi)
        {
            double const next = std::min(lam + shrink * step_of(lam), hi);
            if (next <= lam)
                break;
            if (next >= hi && hi < HUGE_VAL)
            {
                // The upper end is excluded (threshold); stop short of it.
                double const edge = std::nextafter(hi, lo);
                if (edge <= lam)
                    break;
                double const f_edge = f(edge);
                if (sign_of(f_edge) != sign_of(f_prev))
                    roots.push_back(bisect(f, lam, edge, f_prev));
                break;
            }
            double const f_next = f(next);
            if (sign_of(f_next) != sign_of(f_prev))
            {
                double const root = bisect(f, lam, next, f_prev);
                double const expected = static_cast<double>(roots.size() + 1);
                if (std::fabs(index_of(root) - expected) > kIndexTolerance)
                {
                    consistent = false;
                    failure = "level " + std::to_string(roots.size() + 1) + " at lambda = "
                              + std::to_string(root) + " has semiclassical index "
                              + std::to_string(index_of(root));
                    break;
                }
                roots.push_back(root);
            }
            lam = next;
            f_prev = f_next;
        }
        if (consistent)
            return roots;
    }
    throw BracketingError("ladder bracketing inconsistent after refinement: " + failure);
}

} // namespace detail

std::vector<BoundState> solve_infinite_well(double h, int n_max, double e)
{
    if (!(h > 0) || !std::isfinite(h))
        throw ValidationError("h: must be > 0");
    if (n_max < 1)
        throw ValidationError("levels: must be >= 1");
    auto const roots = detail::find_ladder(
        [h](double l) { return infinite_well_secular(l, h); },
        [h](double l) { return scan_step(l, h); },
        [h](double l) { return index_estimate(l, h, 0); }, 0.0, HUGE_VAL, n_max);
    std::vector<BoundState> out;
    out.reserve(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i)
        out.push_back(build_infinite_state(static_cast<int>(i) + 1, roots[i], h, e));
    return out;
}

double single_wall_seed(int n)
{
    return std::pow(3 * kPi / 4 * (2 * n - 0.5), 2.0 / 3.0);
}

std::vector<double> solve_single_wall(int n_max)
{
    if (n_max < 1)
        throw ValidationError("levels: must be >= 1");
    auto f = [](double l) {
        auto const v = airy::airy_eval(-l);
        return v.ai / (std::fabs(v.ai) + std::fabs(v.bi));
    };
    auto step = [](double l) { return 0.25 * kPi / (2 * std::sqrt(std::max(l, 1.0))); };
    auto index = [](double l) { return phase(l, HUGE_VAL) / kPi + 0.25; };
    return detail::find_ladder(f, step, index, 0.0, HUGE_VAL, n_max);
}

LevelLadder solve_finite_well(WellConfig const& config, int n_max, FiniteWellOptions const& options)
{
    config.validate();
    if (n_max < 1)
        throw ValidationError("levels: must be >= 1");
    double const h = config.h;
    double const uc = config.uc;
    auto const roots = detail::find_ladder(
        [h, uc](double l) { return finite_well_secular(l, h, uc); },
        [h](double l) { return scan_step(l, h); },
        [h, uc](double l) { return index_estimate(l, h, uc); }, 0.0, uc, n_max);
    LevelLadder ladder;
    ladder.config = config;
    ladder.model = WellModel::finite;
    ladder.total_expected = level_count_estimate(h, uc);
    for (std::size_t i = 0; i < roots.size(); ++i)
        ladder.states.push_back(build_finite_state(static_cast<int>(i) + 1, roots[i], h, uc,
                                                   config.e, options.tail_normalization));
    return ladder;
}

LevelLadder solve_ladder(WellConfig const& config, WellModel model, int n_max)
{
    config.validate();
    int const estimate = level_count_estimate(config.h, config.uc);
    if (n_max <= 0)
        n_max = std::max(1, std::min(estimate, 200));
    if (model == WellModel::finite)
        return solve_finite_well(config, n_max);
    LevelLadder ladder;
    ladder.config = config;
    ladder.model = WellModel::infinite;
    ladder.total_expected = estimate;
    ladder.states = solve_infinite_well(config.h, n_max, config.e);
    return ladder;
}

WallCoefficients wall_coefficients(BoundState const& state, WellConfig const&)
{
    return {state.log_b, state.log_c};
}

double square_well_wall_value(double lambda, WellConfig const& config)
{
    double const uc = config.uc;
    if (!(lambda > 0) || !(lambda < uc))
        throw DomainError("square_well_wall_value: lambda must lie in (0, uc)");
    double const k = std::sqrt(uc - lambda);
    double const s = std::sqrt(lambda / (uc - lambda));
    double const q = std::sqrt(lambda);
    double const qh = q * config.h;
    double const inv_a2 = s * s / k
                          + (2 * (qh + s + qh * s * s) - 2 * s * std::cos(2 * qh)
                             - (1 - s * s) * std::sin(2 * qh))
                                / (4 * q);
    return s * s / inv_a2;
}

double square_well_wall_value_deep(double lambda, WellConfig const& config)
{
    return 2.0 / config.h * lambda / config.uc;
}

PerturbativeShift perturbative_shift(BoundState const& st, double h, double uc)
{
    double const lam = st.lambda;
    double const k = std::sqrt(uc - lam);
    auto const a0 = airy::airy_eval(-lam);
    double const r0 = -kPi * a0.bi * a0.bi; // Bi(-l) / [Ai'(-l) - S Bi'(-l)]
    double const x = h - lam;
    double th = 0; // [Ai'(x) - S Bi'(x)] / Bi(x)
    if (x > 0)
        th = -std::exp(-2 * airy::airy_bi_log(x)) / kPi;
    else
    {
        auto const ax = airy::airy_eval(x);
        double const s = a0.ai / a0.bi;
        th = (ax.dai - s * ax.dbi) / ax.bi;
    }
    PerturbativeShift out;
    out.d_S = 2 * th / (k * (1 - r0 * th));
    out.d_lambda = -1 / k - out.d_S * r0;
    return out;
}

int level_count_estimate(double h, double uc)
{
    return static_cast<int>(h / kPi * std::sqrt(uc));
}

double wave_function(BoundState const& st, double s, double h, double uc)
{
    auto interior = [&](double y) {
        auto const v = airy::airy_eval(y - st.lambda);
        return st.ai_coef * v.ai + st.bi_coef * v.bi;
    };
    if (s >= 0 && s <= h)
        return interior(s);
    if (!(uc > st.lambda))
        return 0;
    double const k = std::sqrt(uc - st.lambda);
    if (s < 0)
        return interior(0) * std::exp(k * s);
    return interior(h) * std::exp(-k * (s - h));
}

} // namespace gravwell
