#pragma once

#include <array>
#include <functional>
#include <vector>

#include "fracode/grid.hpp"
#include "fracode/solver.hpp"

namespace fracode {

/// A sub-solution v1 (integrated sense) paired with the problem solved by the
/// dominating trajectory v2, for the order-gamma comparison principle.
/// rhs must be nondecreasing in v (caller contract, spot-checked on samples)
/// and v2(0) >= v1(0).
struct ComparisonCase {
    double gamma = 0.5;
    std::function<double(double, double)> rhs;
    GridFunction sub_solution;
    FodeProblem sup_problem;
};

struct ComparisonResult {
    bool holds = false;
    double max_violation = 0.0;  // max(v1 - v2, 0) over nodes, no tolerance applied
    double t_checked = 0.0;      // end of the interval actually compared
};

/// Verifies v1 <= v2 pointwise up to tol_cmp = 10 h (1 + ||v2||_inf).
/// Precondition (checked): v1 is a sub-solution in the integrated sense,
/// v1(t) <= v1(0) + J_gamma f(., v1) at every node within the same tolerance.
/// rhs monotonicity in v is spot-checked on sampled pairs. If v2 blows up
/// before t_end the comparison is reported on the surviving grid.
ComparisonResult check_comparison(const ComparisonCase& c, double t_end, double h);

/// True iff the trajectory of D_c^gamma v = f(v), v(0) = v0 >= 0 is
/// nondecreasing up to 10 h per step. Preconditions f nondecreasing and
/// f(0) >= 0 are spot-checked.
bool check_monotone_growth(double gamma, const std::function<double(double)>& f, double v0,
                           double t_end, double h);

enum class DissipationMode { gradient_flow, hamiltonian };

struct DissipationResult {
    bool holds = false;
    GridFunction energy;
};

/// Solves D_c^gamma v = -grad E(v) (gradient_flow) or J grad E(v)
/// (hamiltonian, J antisymmetric) with step_solve and checks the energy trace
/// E(v(t_n)) <= E(v0) + 10 h (1 + E(v0)). Monotone decrease is not asserted.
DissipationResult check_dissipation(
    double gamma, const std::function<std::vector<double>(const std::vector<double>&)>& grad_E,
    const std::function<double(const std::vector<double>&)>& E, const std::vector<double>& v0,
    double t_end, double h, DissipationMode mode,
    const std::vector<std::vector<double>>& J = {});

struct HamiltonianState {
    GridFunction p;
    GridFunction q;
    GridFunction energy;  // (p^2 + q^2)/2
};

/// Closed form of the order-gamma Hamiltonian pair D_c^gamma q = p,
/// D_c^gamma p = -q (gamma in (0, 1/2]):
///   q = q0 B + p0 JB,  p = p0 B - q0 JB,
/// with B(t) = E_{2g}(-t^{2g}) and JB(t) = t^g E_{2g,g+1}(-t^{2g}); the energy
/// satisfies E(t) = E(0) (B^2 + JB^2).
HamiltonianState oscillator_closed_form(double gamma, double p0, double q0, double h,
                                        double t_end);

/// Least-squares slope of log E against log t over the nodes in [t_lo, t_hi].
/// Requires strictly positive energy there and t_lo >= 10 (asymptotic window).
double fit_decay_exponent(const GridFunction& energy, double t_lo, double t_hi);

struct LaplacePair {
    double lhs = 0.0;  // transform of the regular Caputo part
    double rhs = 0.0;  // s^gamma L(phi) - phi(0+) s^{gamma-1}
};

/// Both sides of L(D_c^gamma phi) = L(phi) s^gamma - phi(0+) s^{gamma-1} from
/// grid data. lhs: trapezoid of e^{-st} against the L1 regular part plus the
/// analytic last-value tail. rhs: the constant mode of phi is transformed
/// analytically (it cancels the phi(0+) s^{gamma-1} term exactly), the
/// remainder by the same trapezoid-plus-tail rule. Requires s t_end >= 25 so
/// the extension beyond the grid is below the comparison tolerances.
LaplacePair laplace_check(double gamma, const GridFunction& phi, double s);

}  // namespace fracode
