#include "gravwell/airy.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "gravwell/errors.hpp"

namespace gravwell::airy {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;

// Ai(0) and -Ai'(0).
constexpr long double kC1 = 0.355028053887817239260063186004183176L;
constexpr long double kC2 = 0.258819403792806798405183560189203963L;
constexpr long double kSqrt3 = 1.732050807568877293527446341505872367L;

// Branch boundaries.
constexpr double kNegativeAsymptotic = -8.0; // x <= this: oscillatory expansion
constexpr double kAiSeriesMax = 2.5;         // 0 < x <= this: Maclaurin for Ai
constexpr double kBiSeriesMax = 8.0;         // 0 < x <= this: Maclaurin for Bi

constexpr int kNumCoeffs = 48;

struct AsymptoticCoefficients
{
    std::array<double, kNumCoeffs> u{};
    std::array<double, kNumCoeffs> v{};

    AsymptoticCoefficients()
    {
        u[0] = 1.0;
        v[0] = 1.0;
        for (int k = 1; k < kNumCoeffs; ++k)
        {
            double const kk = k;
            u[k] = u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1)
                   / ((2 * kk - 1) * 216.0 * kk);
            v[k] = -u[k] * (6 * kk + 1) / (6 * kk - 1);
        }
    }
};

AsymptoticCoefficients const& coefficients()
{
    static AsymptoticCoefficients const table;
    return table;
}

// Sum of sign^k c_k t^k over the terms selected by stride/offset, truncated
// at the smallest term of the divergent series.
double truncated_series(std::array<double, kNumCoeffs> const& c,
                        double inv_zeta, int offset, int stride, bool alternate)
{
    double sum = 0;
    double previous = HUGE_VAL;
    int sign = 1;
    for (int k = offset; k < kNumCoeffs; k += stride)
    {
        double const term = sign * c[k] * std::pow(inv_zeta, k);
        double const mag = std::fabs(term);
        if (mag > previous)
            break;
        sum += term;
        if (mag <= 1e-17 * std::fabs(sum))
            break;
        previous = mag;
        if (alternate)
            sign = -sign;
    }
    return sum;
}

void require_finite(double x)
{
    if (!std::isfinite(x))
        throw DomainError("airy: argument must be finite");
}

// e^x K_nu(x) and e^x K_{nu+1}(x) for x >= 2 by Steed's continued fraction.
std::pair<double, double> scaled_bessel_k(double nu, double x)
{
    constexpr int kMaxIter = 10000;
    constexpr double kEps = 1e-16;
    double const xi = 1.0 / x;
    double const a1 = 0.25 - nu * nu;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= kMaxIter; ++i)
    {
        a -= 2 * (i - 1);
        c = -a * c / i;
        double const qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        double const dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < kEps)
            break;
    }
    if (i > kMaxIter)
        throw ConvergenceError("airy: Bessel-K continued fraction did not converge");
    h *= a1;
    double const k_nu = std::sqrt(kPi / (2.0 * x)) / s;
    double const k_nu1 = k_nu * (nu + x + 0.5 - h) * xi;
    return {k_nu, k_nu1};
}

} // namespace

namespace detail {

AiryPair maclaurin(double xd)
{
    long double const x = xd;
    long double const x3 = x * x * x;
    long double f = 1, g = x, df = 0, dg = 1;
    long double tf = 1, tg = x, tdf = x * x / 2, tdg = 1;
    df = tdf;
    for (int k = 1; k < 400; ++k)
    {
        long double const kk = k;
        tf *= x3 / ((3 * kk - 1) * (3 * kk));
        tg *= x3 / ((3 * kk) * (3 * kk + 1));
        tdg *= x3 / ((3 * kk) * (3 * kk - 2));
        if (k >= 2)
            tdf *= x3 / ((3 * kk - 1) * (3 * kk - 3));
        f += tf;
        g += tg;
        dg += tdg;
        if (k >= 2)
            df += tdf;
        long double const scale = std::fabs(f) + std::fabs(g) + std::fabs(df) + std::fabs(dg);
        long double const last = std::fabs(tf) + std::fabs(tg) + std::fabs(tdf) + std::fabs(tdg);
        if (k > 2 && last <= 1e-22L * scale)
            break;
    }
    AiryPair out;
    out.ai = static_cast<double>(kC1 * f - kC2 * g);
    out.bi = static_cast<double>(kSqrt3 * (kC1 * f + kC2 * g));
    out.dai = static_cast<double>(kC1 * df - kC2 * dg);
    out.dbi = static_cast<double>(kSqrt3 * (kC1 * df + kC2 * dg));
    return out;
}

AiryPair asymptotic_negative(double x)
{
    double const z = -x;
    double const zeta = 2.0 / 3.0 * z * std::sqrt(z);
    double const inv = 1.0 / zeta;
    auto const& c = coefficients();
    // Even/odd sub-series carry alternating signs in k/2.
    double const p = truncated_series(c.u, inv, 0, 2, true);
    double const q = truncated_series(c.u, inv, 1, 2, true);
    double const r = truncated_series(c.v, inv, 0, 2, true);
    double const s = truncated_series(c.v, inv, 1, 2, true);
    double const theta = zeta - kPi / 4;
    double const ct = std::cos(theta);
    double const st = std::sin(theta);
    double const z4 = std::sqrt(std::sqrt(z));
    AiryPair out;
    out.ai = (ct * p + st * q) / (kSqrtPi * z4);
    out.dai = z4 / kSqrtPi * (st * r - ct * s);
    out.bi = (-st * p + ct * q) / (kSqrtPi * z4);
    out.dbi = z4 / kSqrtPi * (ct * r + st * s);
    return out;
}

ScaledAiry asymptotic_positive(double x)
{
    double const zeta = 2.0 / 3.0 * x * std::sqrt(x);
    double const inv = 1.0 / zeta;
    auto const& c = coefficients();
    double const su_alt = truncated_series(c.u, inv, 0, 1, true);
    double const sv_alt = truncated_series(c.v, inv, 0, 1, true);
    double const su = truncated_series(c.u, inv, 0, 1, false);
    double const sv = truncated_series(c.v, inv, 0, 1, false);
    double const x4 = std::sqrt(std::sqrt(x));
    ScaledAiry out;
    out.zeta = zeta;
    out.ai = su_alt / (2 * kSqrtPi * x4);
    out.dai = -x4 / (2 * kSqrtPi) * sv_alt;
    out.bi = su / (kSqrtPi * x4);
    out.dbi = x4 / kSqrtPi * sv;
    return out;
}

ScaledAiry bessel_k_positive(double x)
{
    double const zeta = 2.0 / 3.0 * x * std::sqrt(x);
    // nu = -1/3 yields K_{1/3} and K_{2/3} in one pass.
    auto const [k13, k23] = scaled_bessel_k(-1.0 / 3.0, zeta);
    ScaledAiry out;
    out.zeta = zeta;
    out.ai = std::sqrt(x / 3.0) * k13 / kPi;
    out.dai = -x / (kPi * std::sqrt(3.0)) * k23;
    return out;
}

} // namespace detail

ScaledAiry airy_scaled(double x)
{
    require_finite(x);
    if (x <= kNegativeAsymptotic)
    {
        auto const v = detail::asymptotic_negative(x);
        return {v.ai, v.bi, v.dai, v.dbi, 0.0};
    }
    if (x <= 0)
    {
        auto const v = detail::maclaurin(x);
        return {v.ai, v.bi, v.dai, v.dbi, 0.0};
    }
    double const zeta = 2.0 / 3.0 * x * std::sqrt(x);
    ScaledAiry out;
    out.zeta = zeta;
    if (x <= kAiSeriesMax)
    {
        auto const v = detail::maclaurin(x);
        double const up = std::exp(zeta);
        double const down = std::exp(-zeta);
        return {v.ai * up, v.bi * down, v.dai * up, v.dbi * down, zeta};
    }
    auto const k = detail::bessel_k_positive(x);
    out.ai = k.ai;
    out.dai = k.dai;
    if (x <= kBiSeriesMax)
    {
        auto const v = detail::maclaurin(x);
        double const down = std::exp(-zeta);
        out.bi = v.bi * down;
        out.dbi = v.dbi * down;
    }
    else
    {
        auto const a = detail::asymptotic_positive(x);
        out.bi = a.bi;
        out.dbi = a.dbi;
    }
    return out;
}

AiryPair airy_eval(double x)
{
    auto const s = airy_scaled(x);
    if (s.zeta == 0.0)
        return {s.ai, s.bi, s.dai, s.dbi};
    // Bi' carries the extra x^{1/4} factor, so leave some headroom.
    if (s.zeta > 700.0)
        throw OverflowError("airy: Bi(" + std::to_string(x)
                            + ") exceeds the double range; use the scaled or log form");
    double const up = std::exp(s.zeta);
    double const down = std::exp(-s.zeta);
    return {s.ai * down, s.bi * up, s.dai * down, s.dbi * up};
}

LogValue airy_ai_log(double x)
{
    require_finite(x);
    if (x < 0)
        throw DomainError("airy_ai_log: requires x >= 0");
    auto const s = airy_scaled(x);
    return {std::log(s.ai) - s.zeta, 1};
}

double airy_bi_log(double x)
{
    require_finite(x);
    if (x < 0)
        throw DomainError("airy_bi_log: requires x >= 0");
    auto const s = airy_scaled(x);
    return std::log(s.bi) + s.zeta;
}

} // namespace gravwell::airy
