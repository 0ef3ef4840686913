#pragma once

#include <vector>

#include "fracode/grid.hpp"

namespace fracode {

/// Order tag for the convolution kernel g_alpha = u(t) t^{alpha-1} / Gamma(alpha).
/// Pointwise evaluation only makes sense for alpha > 0; distributional orders
/// enter through the operators below, never through kernel_eval.
struct KernelOrder {
    double alpha;
};

/// The order-(-gamma) modified Riemann-Liouville action of a causal sample,
/// split into its regular Caputo part and the singular atoms carried
/// symbolically:  J_{-gamma} phi = regular + singular_coeff * g_{1-gamma}
/// (+ delta_coeff * delta for the order -1 decomposition).
/// singular_coeff equals phi(0+), i.e. values[0] of the input.
struct CaputoDecomposition {
    GridFunction regular;
    double singular_coeff = 0.0;
    double delta_coeff = 0.0;
};

using GammaFn = double (*)(double);

/// g_alpha(t) = t^{alpha-1}/Gamma(alpha) for alpha > 0, t > 0.
double kernel_eval(KernelOrder alpha, double t);

/// Abel fractional integral J_gamma f on the grid of f, gamma in (0, 1].
/// Product-rectangle rule with exact kernel moments per cell:
///   (J f)_n = 1/Gamma(gamma+1) * sum_{j<n} f_j [(t_n-t_j)^gamma - (t_n-t_{j+1})^gamma].
/// Exact for piecewise-constant f; first-order in h for bounded variation.
GridFunction frac_integral(double gamma, const GridFunction& f);

/// Caputo derivative of order gamma in (0,1) by the L1 product scheme
/// (piecewise-linear phi, exact kernel moments):
///   (D phi)_n = 1/Gamma(2-gamma) * sum_{j<n} (phi_{j+1}-phi_j)/h *
///               [(t_n-t_j)^{1-gamma} - (t_n-t_{j+1})^{1-gamma}].
/// Node 0 of the regular part is set to 0 (the derivative is defined a.e.;
/// consumers read nodes k >= 1). A constant input yields a bitwise-zero
/// regular part.
CaputoDecomposition caputo_derivative(double gamma, const GridFunction& phi);

/// The integrated-by-parts Caputo form
///   1/Gamma(1-gamma) [ (phi(t)-phi(0))/t^gamma
///                      + gamma * int_0^t (phi(t)-phi(s))/(t-s)^{gamma+1} ds ],
/// discretized with phi piecewise linear and the cell adjacent to the
/// singularity integrated analytically. Independent cross-check route for
/// caputo_derivative().regular; node 0 is the one-sided limit 0.
GridFunction caputo_holder_form(double gamma, const GridFunction& phi);

/// Right Riemann-Liouville derivative of order gamma on compactly supported
/// grid data: the time reflection of the L1 scheme with zero trace at t_end.
/// Requires psi to vanish at both end nodes. Used for the duality pairing
/// <J_{-gamma} phi, psi> = <phi, right-RL psi>.
GridFunction right_rl_apply(double gamma, const GridFunction& psi);

/// Max-norm discrepancy || J_alpha(J_beta f) - J_{alpha+beta} f || over the
/// nodes with t >= t0 + span/16. The leading sixteenth of the window is a
/// burn-in region: at the first few nodes the rectangle rule is limited to
/// order alpha+beta by the kernel singularity, while past the burn-in the
/// discrepancy is first-order in h. alpha, beta, alpha+beta must lie in (0,1].
/// g_fn injects the Gamma used in the quadrature weights (testability hook).
double compose_check(double alpha, double beta, const GridFunction& f,
                     GammaFn g_fn = nullptr);

namespace detail {
/// Cumulative kernel moments for the rectangle rule: w[m] =
/// ((m+1)^gamma - m^gamma) * h^gamma / Gamma(gamma+1), m = 0..n-1.
std::vector<double> abel_weights(double gamma, std::size_t n, double h,
                                 GammaFn g_fn = nullptr);
}  // namespace detail

}  // namespace fracode
