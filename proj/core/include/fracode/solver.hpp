#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fracode/grid.hpp"

namespace fracode {

/// Right-hand side of D_c^gamma v = f(t, v); writes f into `out`.
/// Must be pure: no shared mutable state (caller contract; solves may be run
/// concurrently but each solve is single-threaded and deterministic).
using RhsFn = std::function<void(double t, const std::vector<double>& v, std::vector<double>& out)>;

/// Local existence data on the box D = [0,T] x [v0-A, v0+A]:
/// L Lipschitz constant in v, M = sup_D |f|. Caller-supplied, not verified.
struct BoxData {
    double A = 0.0;
    double L = 0.0;
    double M = 0.0;
    double T = 0.0;
};

struct FodeProblem {
    double gamma = 0.5;
    RhsFn rhs;
    std::vector<double> v0;
    std::optional<BoxData> box;

    std::size_t dim() const { return v0.size(); }

    static FodeProblem scalar(double gamma, std::function<double(double, double)> f, double v0,
                              std::optional<BoxData> box = std::nullopt) {
        FodeProblem p;
        p.gamma = gamma;
        p.rhs = [f = std::move(f)](double t, const std::vector<double>& v, std::vector<double>& out) {
            out[0] = f(t, v[0]);
        };
        p.v0 = {v0};
        p.box = box;
        return p;
    }
};

struct BlowupBracket {
    double t_low = 0.0;
    double t_high = 0.0;
};

struct SolveReport {
    std::vector<GridFunction> solution;  // one grid per component
    std::optional<double> horizon_T1;
    std::optional<int> picard_iters;
    std::optional<BlowupBracket> blowup;
    bool converged = false;
    bool blowup_suspected = false;
    double max_residual = 0.0;  // sup_n |v_n - v0 - (J_gamma f(.,v))_n|
};

/// Guaranteed existence horizon T1 = min{ T, sup{ t : (M/Gamma(1+gamma)) t^gamma
/// E_gamma(L t^gamma) <= A } }, located by bisection of the monotone map to
/// relative tolerance 1e-10. Requires box data; M = 0 returns T.
double existence_horizon(const FodeProblem& p);

/// Picard iteration v^{n} = v0 + J_gamma f(., v^{n-1}) on the grid, stopping at
/// sup-norm increment <= tol or max_iter. `initial` overrides the starting
/// iterate (default: constant v0). picard_iters and the Volterra residual are
/// recorded in the report.
SolveReport picard_solve(const FodeProblem& p, double h, double t_end, double tol, int max_iter,
                         const std::vector<GridFunction>* initial = nullptr);

/// Explicit product-rectangle marching of the de-convolved Volterra form:
///   v_n = v0 + 1/Gamma(gamma+1) sum_{j<n} f(t_j, v_j) [(t_n-t_j)^g - (t_n-t_{j+1})^g].
/// One rhs evaluation per node, O(N^2) weight accumulation. Non-finite or
/// cap-exceeding states truncate the grid and set blowup_suspected.
SolveReport step_solve(const FodeProblem& p, double h, double t_end);

/// Closed-form solution of D_c^gamma v = lambda v + b(t), v(0) = v0:
///   v(t) = v0 E_gamma(lambda t^gamma) + int_0^t b(t-s) s^{gamma-1}
///          E_{gamma,gamma}(lambda s^gamma) ds,
/// the convolution kernel being e'_{gamma,lambda} / lambda evaluated through
/// the series identity (no numerical differentiation near the s^{gamma-1}
/// singularity). Quadrature: b piecewise linear, kernel singular factor
/// integrated exactly per cell, Mittag-Leffler factor frozen at cell midpoints.
/// lambda = 0 is rejected: use v0 + frac_integral(gamma, b) instead.
GridFunction solve_linear(double gamma, double lambda, const GridFunction& b, double v0);

/// Blow-up bracketing by three h-halvings of step_solve (h0, h0/2, h0/4) with
/// cap `growth_cap` on |v|: t_high is the first cap crossing on the h0/2 grid;
/// t_low extrapolates the two finest crossings, t_low = x2 - 2 (x1 - x2),
/// a first-order lag model with safety factor 2 (explicit marching reaches the
/// cap after the exact solution does, by a lag that halves with h).
/// Returns nullopt when no level crosses the cap before t_end.
std::optional<BlowupBracket> detect_blowup(const FodeProblem& p, double h0, double t_end,
                                           double growth_cap);

}  // namespace fracode
