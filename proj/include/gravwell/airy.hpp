#pragma once

namespace gravwell::airy {

/// Ai, Bi and their first derivatives at one point of the real line.
struct AiryPair
{
    double ai = 0;
    double bi = 0;
    double dai = 0;
    double dbi = 0;
};

/// Exponentially scaled Airy values.
///
/// For x > 0 the stored values are Ai e^{zeta}, Ai' e^{zeta}, Bi e^{-zeta},
/// Bi' e^{-zeta} with zeta = (2/3) x^{3/2}; for x <= 0 no scaling is applied
/// and zeta is zero. Every finite x >= 0 is representable in this form.
struct ScaledAiry
{
    double ai = 0;
    double bi = 0;
    double dai = 0;
    double dbi = 0;
    double zeta = 0;
};

/// Logarithm of |f| together with the sign of f.
struct LogValue
{
    double log_magnitude = 0;
    int sign = 1;
};

/// Ai, Ai', Bi, Bi' at x.
///
/// Any finite x <= 0 is accepted (the oscillatory expansion covers the
/// near-threshold square-well arguments of order -u_c). On the positive side
/// the call throws OverflowError once Bi leaves the double range (x > ~104);
/// use airy_scaled or the log variants there. Throws DomainError for NaN/inf.
AiryPair airy_eval(double x);

/// Scaled values, see ScaledAiry. Throws DomainError for non-finite x.
ScaledAiry airy_scaled(double x);

/// ln|Ai(x)| and sign for x >= 0; valid far beyond the underflow of Ai.
LogValue airy_ai_log(double x);

/// ln|Bi(x)| for x >= 0 (Bi is positive there).
double airy_bi_log(double x);

namespace detail {

// Individual branches, exposed for overlap validation in tests.
AiryPair maclaurin(double x);
AiryPair asymptotic_negative(double x);
ScaledAiry asymptotic_positive(double x);
ScaledAiry bessel_k_positive(double x);

} // namespace detail

} // namespace gravwell::airy
