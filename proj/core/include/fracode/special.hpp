#pragma once

#include <cstdint>

namespace fracode {

/// Arguments of the two-parameter Mittag-Leffler function E_{alpha,beta}(z).
/// alpha > 0 required; beta defaults to 1 (E_alpha = E_{alpha,1}); real z only.
struct MLParams {
    double alpha;
    double beta = 1.0;
    double z = 0.0;
};

/// Bookkeeping for how an E_{alpha,beta}(z) value was obtained.
/// est_error is an a-posteriori absolute error estimate: rounding/cancellation
/// mass of the power series, or the first omitted term of the asymptotic
/// expansion. Values with est_error above the 1e-10 target fall in the
/// hand-over band between the two methods and are flagged, not rejected.
struct MLRegime {
    enum class Kind : std::uint8_t { series, asymptotic };
    Kind kind = Kind::series;
    int terms_used = 0;
    double est_error = 0.0;
};

struct MLResult {
    double value = 0.0;
    MLRegime regime;
};

/// Gamma(x) by a fixed-coefficient Lanczos(g=6.0247, 13-term) rational
/// approximation, reflected for x < 0.5. Relative error ~1e-15 on (0, 171.6];
/// overflows to +inf beyond. Throws std::domain_error at the poles
/// x = 0, -1, -2, ... (use recip_gamma_fn there).
double gamma_fn(double x);

/// 1/Gamma(x) for any real x; exactly 0 at the poles x = 0, -1, -2, ...
double recip_gamma_fn(double x);

/// E_{alpha,beta}(z) on real arguments.
///
/// Power series sum z^n / Gamma(alpha n + beta) with compensated summation
/// while |z|^{1/alpha} <= ln(1e8); past that the series loses more than six
/// digits to cancellation and, for alpha <= 1, the algebraic large-|z|
/// expansion  E_{alpha,beta}(-x) ~ sum_{k>=1} (-1)^{k+1} x^{-k}/Gamma(beta - alpha k)
/// takes over at optimal truncation. Terms whose Gamma argument sits at a
/// non-positive integer vanish through recip_gamma_fn. For alpha in (1, 2]
/// the expansion omits slowly-decaying oscillatory parts and is never used;
/// the series est_error reports the cancellation honestly instead.
/// E_{1,1} = exp is evaluated as such.
///
/// Throws std::domain_error for alpha <= 0.
MLResult mittag_leffler(const MLParams& p);

/// e_{gamma,lambda}(t) = E_gamma(lambda t^gamma), the relaxation eigenfunction
/// of the order-gamma Caputo derivative. Requires t >= 0.
double ml_e(double gamma, double lambda, double t);

namespace detail {
/// log|Gamma(x)| for x >= 0.5 (series terms beyond the Gamma overflow point).
double lgamma_pos(double x);
/// sin(pi*x) with exact zeros at integer x.
double sin_pi(double x);
/// Boundary of the series regime: series while |z|^{1/alpha} <= this.
inline constexpr double kSeriesExponentLimit = 18.420680743952367;  // ln(1e8)
}  // namespace detail

}  // namespace fracode
