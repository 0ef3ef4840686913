#include "fracode/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracode {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEps = 2.220446049250313e-16;

// Lanczos g = 6.024680040776729583740234375, 13-term rational form for double
// precision. Numerator absorbs sqrt(2*pi); denominator is prod_{k=1..12}(z+k).
constexpr double kLanczosNum[13] = {
    2.506628274631000270164908177133837338626e0,
    2.108242777515793458725097339207133627117e2,
    8.071672002365816210638002902272250613822e3,
    1.860562653952234950402949897160456992822e5,
    2.876370628935372441225409051620849613599e6,
    3.142641558540019438061423162831820536287e7,
    2.488745578620541565114603864132294232163e8,
    1.439720407311721673663223072794912393972e9,
    6.039542586352028005064291644307297921070e9,
    1.792103442603720969991975575445893111267e10,
    3.571195923735566804944018545154716670596e10,
    4.292980364264909876895789904700198885093e10,
    2.353137688041075968857200767445163675473e10,
};
constexpr double kLanczosDen[13] = {
    1.0, 66.0, 1925.0, 32670.0, 357423.0, 2637558.0, 13339535.0,
    45995730.0, 105258076.0, 150917976.0, 120543840.0, 39916800.0, 0.0,
};

// num and den are stored highest-degree-last above; evaluate with Horner on
// the reversed order.
double lanczos_sum(double z) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 13; ++i) {
        num = num * z + kLanczosNum[i];
        den = den * z + kLanczosDen[i];
    }
    return num / den;
}

constexpr double kLanczosG = 6.024680040776729583740234375;
constexpr double kGammaOverflow = 171.624;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Gamma on [0.5, 171.6]; the power is split in two for large x so the
// intermediate (x+g-0.5)^(x-0.5) stays inside double range.
double gamma_positive(double x) {
    const double s = lanczos_sum(x);
    const double zgh = x + kLanczosG - 0.5;
    if (x < 140.0) {
        return s * std::pow(zgh, x - 0.5) * std::exp(-zgh);
    }
    const double half_pow = std::pow(zgh, 0.5 * (x - 0.5));
    double r = s * half_pow;
    r *= std::exp(-zgh);
    r *= half_pow;
    return r;
}

}  // namespace

namespace detail {

double sin_pi(double x) {
    const double n = std::floor(x);
    const double r = x - n;
    if (r == 0.0) return 0.0;
    const double s = std::sin(kPi * (r <= 0.5 ? r : 1.0 - r));
    const bool even = std::fmod(n, 2.0) == 0.0;
    return even ? s : -s;
}

double lgamma_pos(double x) {
    const double zgh = x + kLanczosG - 0.5;
    return std::log(lanczos_sum(x)) + (x - 0.5) * std::log(zgh) - zgh;
}

}  // namespace detail

double gamma_fn(double x) {
    if (std::isnan(x)) throw std::domain_error("gamma_fn: NaN argument");
    if (is_nonpositive_integer(x))
        throw std::domain_error("gamma_fn: pole at non-positive integer; use recip_gamma_fn");
    if (x >= 0.5) {
        if (x > kGammaOverflow) return std::numeric_limits<double>::infinity();
        return gamma_positive(x);
    }
    // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x)).
    const double denom = detail::sin_pi(x) * gamma_fn(1.0 - x);
    return kPi / denom;
}

double recip_gamma_fn(double x) {
    if (std::isnan(x)) throw std::domain_error("recip_gamma_fn: NaN argument");
    if (x >= 0.5) {
        if (x > kGammaOverflow) return 0.0;  // Gamma overflows, reciprocal underflows
        return 1.0 / gamma_positive(x);
    }
    if (is_nonpositive_integer(x)) return 0.0;
    // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi. Gamma(1-x) overflows for
    // x < -170.6; the reciprocal is genuinely huge there.
    const double one_minus = 1.0 - x;
    if (one_minus > kGammaOverflow) {
        const double lg = detail::lgamma_pos(one_minus);
        return detail::sin_pi(x) / kPi * std::exp(lg);
    }
    return detail::sin_pi(x) * gamma_positive(one_minus) / kPi;
}

namespace {

MLResult ml_series(double alpha, double beta, double z) {
    constexpr int kMaxTerms = 400;
    double sum = 0.0, comp = 0.0, abs_mass = 0.0;
    double zn = 1.0;           // z^n while it stays representable
    bool zn_ok = true;
    const double log_abs_z = (z != 0.0) ? std::log(std::abs(z)) : 0.0;
    int n = 0, below = 0;
    double term = 0.0;
    for (; n < kMaxTerms; ++n) {
        const double g = alpha * n + beta;
        if (g > kGammaOverflow || !zn_ok) {
            if (z == 0.0) break;
            const double lg = (g >= 0.5) ? detail::lgamma_pos(g)
                                         : std::log(kPi / std::abs(detail::sin_pi(g))) -
                                               detail::lgamma_pos(1.0 - g);
            double mag = std::exp(n * log_abs_z - lg);
            double sign = (z < 0.0 && (n & 1)) ? -1.0 : 1.0;
            if (g < 0.5) {
                // reflected Gamma can be negative
                if (detail::sin_pi(g) < 0.0) sign = -sign;
                if (detail::sin_pi(g) == 0.0) mag = 0.0;
            }
            term = sign * mag;
        } else {
            term = zn * recip_gamma_fn(g);
        }
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        abs_mass += std::abs(term);
        if (zn_ok) {
            zn *= z;
            if (!std::isfinite(zn)) zn_ok = false;
        }
        if (std::abs(term) < 1e-16 * (1.0 + std::abs(sum)) && n > 2) {
            if (++below >= 2) {
                ++n;
                break;
            }
        } else {
            below = 0;
        }
    }
    MLResult r;
    r.value = sum;
    r.regime.kind = MLRegime::Kind::series;
    r.regime.terms_used = n;
    r.regime.est_error = 4.0 * kEps * abs_mass + std::abs(term);
    return r;
}

// E_{alpha,beta}(-x) ~ sum_{k>=1} (-1)^{k+1} x^{-k} / Gamma(beta - alpha k),
// x large, alpha <= 1. Optimal truncation: stop before the first significant
// term that grows. Terms killed (or nearly killed, through floating-point
// fuzz in beta - alpha k) by Gamma poles are summed but ignored by the
// truncation logic.
MLResult ml_asymptotic(double alpha, double beta, double z) {
    const double x = -z;
    const double inv_x = 1.0 / x;
    double sum = 0.0;
    double last_sig = std::numeric_limits<double>::infinity();
    double max_mag = 0.0;
    double est = std::numeric_limits<double>::infinity();
    int k = 1;
    double xk = inv_x;
    for (; k <= 150; ++k) {
        const double rg = recip_gamma_fn(beta - alpha * k);
        const double term = ((k & 1) ? 1.0 : -1.0) * xk * rg;
        const double mag = std::abs(term);
        const bool significant = mag > 1e-13 * max_mag;
        if (significant && mag > last_sig) {
            est = last_sig;
            break;
        }
        sum += term;
        if (significant) {
            last_sig = mag;
            if (mag > max_mag) max_mag = mag;
            est = mag;
            if (mag <= 1e-17 * std::abs(sum)) {
                ++k;
                break;
            }
        }
        xk *= inv_x;
    }
    if (alpha == 1.0) est += std::exp(-x);  // exponential part absent from the expansion
    MLResult r;
    r.value = sum;
    r.regime.kind = MLRegime::Kind::asymptotic;
    r.regime.terms_used = k - 1;
    r.regime.est_error = est;
    return r;
}

}  // namespace

MLResult mittag_leffler(const MLParams& p) {
    if (!(p.alpha > 0.0)) throw std::domain_error("mittag_leffler: alpha must be positive");
    if (p.alpha == 1.0 && p.beta == 1.0) {
        MLResult r;
        r.value = std::exp(p.z);
        r.regime.kind = MLRegime::Kind::series;
        r.regime.terms_used = 1;
        r.regime.est_error = 2.0 * kEps * std::abs(r.value);
        return r;
    }
    if (p.z < 0.0 && p.alpha <= 1.0 &&
        std::pow(-p.z, 1.0 / p.alpha) > detail::kSeriesExponentLimit) {
        return ml_asymptotic(p.alpha, p.beta, p.z);
    }
    return ml_series(p.alpha, p.beta, p.z);
}

double ml_e(double gamma, double lambda, double t) {
    if (t < 0.0) throw std::domain_error("ml_e: t must be nonnegative");
    if (t == 0.0) return 1.0;
    return mittag_leffler({gamma, 1.0, lambda * std::pow(t, gamma)}).value;
}

}  // namespace fracode
