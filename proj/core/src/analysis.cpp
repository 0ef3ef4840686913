#include "fracode/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "fracode/fraccalc.hpp"
#include "fracode/special.hpp"

namespace fracode {

namespace {

// Integrated sub-solution surrogate: v1(t_n) <= v1(0) + (J_gamma f(., v1))_n + tol.
bool integrated_subsolution_ok(double gamma, const std::function<double(double, double)>& f,
                               const GridFunction& v1, double tol) {
    GridFunction fv = v1;
    for (std::size_t k = 0; k < v1.size(); ++k) fv.values[k] = f(v1.t(k), v1.values[k]);
    const GridFunction Jf = frac_integral(gamma, fv);
    for (std::size_t k = 0; k < v1.size(); ++k)
        if (v1.values[k] > v1.values[0] + Jf.values[k] + tol) return false;
    return true;
}

}  // namespace

ComparisonResult check_comparison(const ComparisonCase& c, double t_end, double h) {
    // Spot-check rhs monotonicity in v on sampled pairs.
    for (int i = 0; i < 8; ++i) {
        const double t = t_end * i / 8.0;
        for (double v = -2.0; v < 2.0; v += 0.5) {
            if (c.rhs(t, v) > c.rhs(t, v + 0.25) + 1e-12)
                throw std::domain_error("check_comparison: rhs not nondecreasing in v");
        }
    }
    const double tol_sub = 10.0 * h * (1.0 + c.sub_solution.max_abs());
    if (!integrated_subsolution_ok(c.gamma, c.rhs, c.sub_solution, tol_sub))
        throw std::domain_error("check_comparison: v1 fails the integrated sub-solution check");

    SolveReport r2 = step_solve(c.sup_problem, h, t_end);
    const GridFunction& v2 = r2.solution[0];
    const std::size_t n_cmp = std::min(c.sub_solution.size(), v2.size());
    ComparisonResult res;
    res.t_checked = v2.t(n_cmp - 1);
    const double tol_cmp = 10.0 * h * (1.0 + v2.max_abs());
    res.holds = true;
    for (std::size_t k = 0; k < n_cmp; ++k) {
        const double gap = c.sub_solution.values[k] - v2.values[k];
        res.max_violation = std::max(res.max_violation, gap);
        if (gap > tol_cmp) res.holds = false;
    }
    res.max_violation = std::max(res.max_violation, 0.0);
    return res;
}

bool check_monotone_growth(double gamma, const std::function<double(double)>& f, double v0,
                           double t_end, double h) {
    if (v0 < 0.0) throw std::domain_error("check_monotone_growth: v0 must be >= 0");
    if (f(0.0) < 0.0) throw std::domain_error("check_monotone_growth: f(0) must be >= 0");
    for (double v = 0.0; v < 4.0; v += 0.25)
        if (f(v) > f(v + 0.25) + 1e-12)
            throw std::domain_error("check_monotone_growth: f not nondecreasing");
    auto p = FodeProblem::scalar(gamma, [&](double, double v) { return f(v); }, v0);
    const SolveReport r = step_solve(p, h, t_end);
    const GridFunction& v = r.solution[0];
    for (std::size_t k = 0; k + 1 < v.size(); ++k)
        if (v.values[k + 1] < v.values[k] - 10.0 * h) return false;
    return true;
}

DissipationResult check_dissipation(
    double gamma, const std::function<std::vector<double>(const std::vector<double>&)>& grad_E,
    const std::function<double(const std::vector<double>&)>& E, const std::vector<double>& v0,
    double t_end, double h, DissipationMode mode, const std::vector<std::vector<double>>& J) {
    const std::size_t dim = v0.size();
    if (mode == DissipationMode::hamiltonian) {
        if (J.size() != dim) throw std::domain_error("check_dissipation: J must be dim x dim");
        for (std::size_t i = 0; i < dim; ++i) {
            if (J[i].size() != dim) throw std::domain_error("check_dissipation: J must be dim x dim");
            for (std::size_t k = 0; k < dim; ++k)
                if (std::abs(J[i][k] + J[k][i]) > 1e-14)
                    throw std::domain_error("check_dissipation: J must be antisymmetric");
        }
    }
    FodeProblem p;
    p.gamma = gamma;
    p.v0 = v0;
    p.rhs = [&, mode](double, const std::vector<double>& v, std::vector<double>& out) {
        const std::vector<double> g = grad_E(v);
        if (mode == DissipationMode::gradient_flow) {
            for (std::size_t i = 0; i < g.size(); ++i) out[i] = -g[i];
        } else {
            for (std::size_t i = 0; i < g.size(); ++i) {
                double acc = 0.0;
                for (std::size_t k = 0; k < g.size(); ++k) acc += J[i][k] * g[k];
                out[i] = acc;
            }
        }
    };
    const SolveReport r = step_solve(p, h, t_end);
    const std::size_t n_nodes = r.solution[0].size();
    GridFunction energy(0.0, h, std::vector<double>(n_nodes, 0.0));
    std::vector<double> state(dim);
    for (std::size_t k = 0; k < n_nodes; ++k) {
        for (std::size_t c = 0; c < dim; ++c) state[c] = r.solution[c].values[k];
        energy.values[k] = E(state);
    }
    const double E0 = energy.values[0];
    const double tol_E = 10.0 * h * (1.0 + E0);
    DissipationResult res;
    res.holds = true;
    for (double e : energy.values)
        if (e > E0 + tol_E) res.holds = false;
    res.energy = std::move(energy);
    return res;
}

HamiltonianState oscillator_closed_form(double gamma, double p0, double q0, double h,
                                        double t_end) {
    if (!(gamma > 0.0 && gamma <= 0.5))
        throw std::domain_error("oscillator_closed_form: gamma must lie in (0, 1/2]");
    const std::size_t n_nodes = static_cast<std::size_t>(std::llround(t_end / h)) + 1;
    const double a = 2.0 * gamma;
    HamiltonianState s{GridFunction(0.0, h, std::vector<double>(n_nodes, 0.0)),
                       GridFunction(0.0, h, std::vector<double>(n_nodes, 0.0)),
                       GridFunction(0.0, h, std::vector<double>(n_nodes, 0.0))};
    for (std::size_t k = 0; k < n_nodes; ++k) {
        const double t = static_cast<double>(k) * h;
        double B = 1.0, JB = 0.0;
        if (t > 0.0) {
            const double x = std::pow(t, a);
            B = mittag_leffler({a, 1.0, -x}).value;
            JB = std::pow(t, gamma) * mittag_leffler({a, gamma + 1.0, -x}).value;
        }
        s.q.values[k] = q0 * B + p0 * JB;
        s.p.values[k] = p0 * B - q0 * JB;
        s.energy.values[k] = 0.5 * (s.p.values[k] * s.p.values[k] + s.q.values[k] * s.q.values[k]);
    }
    return s;
}

double fit_decay_exponent(const GridFunction& energy, double t_lo, double t_hi) {
    if (!(t_lo >= 10.0)) throw std::domain_error("fit_decay_exponent: t_lo must be >= 10");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < energy.size(); ++k) {
        const double t = energy.t(k);
        if (t < t_lo || t > t_hi) continue;
        if (!(energy.values[k] > 0.0))
            throw std::domain_error("fit_decay_exponent: energy must be positive on the window");
        const double x = std::log(t), y = std::log(energy.values[k]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::domain_error("fit_decay_exponent: fewer than 2 nodes in window");
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

LaplacePair laplace_check(double gamma, const GridFunction& phi, double s) {
    const double t_end = phi.t_end();
    if (!(s > 0.0) || s * t_end < 25.0)
        throw std::domain_error("laplace_check: need s > 0 and s*t_end >= 25");
    const CaputoDecomposition d = caputo_derivative(gamma, phi);
    const double h = phi.h;
    auto transform = [&](const std::vector<double>& g, double shift) {
        // trapezoid of e^{-st} (g - shift) plus the analytic last-value tail
        double acc = 0.0;
        const std::size_t N = g.size() - 1;
        for (std::size_t k = 0; k <= N; ++k) {
            const double wk = (k == 0 || k == N) ? 0.5 : 1.0;
            acc += wk * std::exp(-s * static_cast<double>(k) * h) * (g[k] - shift);
        }
        acc *= h;
        acc += (g[N] - shift) * std::exp(-s * t_end) / s;
        return acc;
    };
    LaplacePair out;
    out.lhs = transform(d.regular.values, 0.0);
    // L(phi) = phi(0+)/s + L(phi - phi(0+)); the constant mode cancels the
    // initial-trace term of the rule exactly.
    out.rhs = std::pow(s, gamma) * transform(phi.values, phi.values[0]);
    return out;
}

}  // namespace fracode
