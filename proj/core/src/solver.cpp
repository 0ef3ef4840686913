#include "fracode/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracode/fraccalc.hpp"
#include "fracode/special.hpp"

namespace fracode {

namespace {

constexpr double kStateCap = 1e300;

std::size_t node_count(double h, double t_end) {
    if (!(h > 0.0) || !(t_end > 0.0))
        throw std::domain_error("solver: h and t_end must be positive");
    return static_cast<std::size_t>(std::llround(t_end / h)) + 1;
}

std::vector<GridFunction> to_grids(double h, const std::vector<std::vector<double>>& comp) {
    std::vector<GridFunction> out;
    out.reserve(comp.size());
    for (const auto& c : comp) out.emplace_back(0.0, h, c);
    return out;
}

// sup_n |v_n - v0 - (J_gamma f(., v))_n| across components, on the surviving grid.
double volterra_residual(const FodeProblem& p, double h,
                         const std::vector<std::vector<double>>& v,
                         const std::vector<std::vector<double>>& fval) {
    const std::size_t dim = v.size();
    const std::size_t N = v[0].size() - 1;
    const auto w = detail::abel_weights(p.gamma, N, h);
    double res = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t n = 1; n <= N; ++n) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += fval[c][j] * w[n - 1 - j];
            res = std::max(res, std::abs(v[c][n] - p.v0[c] - acc));
        }
    }
    return res;
}

struct MarchOutcome {
    std::vector<std::vector<double>> v;     // [component][node], truncated on blow-up
    std::vector<std::vector<double>> fval;  // rhs samples on the surviving grid
    bool truncated = false;
    double first_cap_crossing = -1.0;  // time of first |v| > cap, <0 if none
};

MarchOutcome march(const FodeProblem& p, double h, double t_end, double cap) {
    const std::size_t N = node_count(h, t_end) - 1;
    const std::size_t dim = p.dim();
    const auto w = detail::abel_weights(p.gamma, N, h);
    std::vector<std::vector<double>> v(dim, std::vector<double>(N + 1, 0.0));
    std::vector<std::vector<double>> fv(dim, std::vector<double>(N + 1, 0.0));
    for (std::size_t c = 0; c < dim; ++c) v[c][0] = p.v0[c];
    std::vector<double> state(dim), fout(dim);
    MarchOutcome out;
    std::size_t n_stop = N;
    for (std::size_t n = 1; n <= N; ++n) {
        for (std::size_t c = 0; c < dim; ++c) state[c] = v[c][n - 1];
        p.rhs(static_cast<double>(n - 1) * h, state, fout);
        for (std::size_t c = 0; c < dim; ++c) fv[c][n - 1] = fout[c];
        bool bad = false;
        for (std::size_t c = 0; c < dim; ++c) {
            double acc = p.v0[c];
            for (std::size_t j = 0; j < n; ++j) acc += fv[c][j] * w[n - 1 - j];
            v[c][n] = acc;
            if (!std::isfinite(acc) || std::abs(acc) > cap) bad = true;
        }
        if (bad) {
            out.truncated = true;
            out.first_cap_crossing = static_cast<double>(n) * h;
            n_stop = n;
            break;
        }
    }
    for (std::size_t c = 0; c < dim; ++c) {
        v[c].resize(n_stop + 1);
        fv[c].resize(n_stop + 1);
    }
    out.v = std::move(v);
    out.fval = std::move(fv);
    return out;
}

}  // namespace

double existence_horizon(const FodeProblem& p) {
    if (!p.box) throw std::domain_error("existence_horizon: box data required");
    const BoxData& b = *p.box;
    if (!(b.T > 0.0) || !(b.A > 0.0))
        throw std::domain_error("existence_horizon: box needs A > 0 and T > 0");
    if (b.M == 0.0) return b.T;
    const double c = b.M * recip_gamma_fn(1.0 + p.gamma);
    auto bound = [&](double t) {
        return c * std::pow(t, p.gamma) * ml_e(p.gamma, b.L, t);
    };
    if (bound(b.T) <= b.A) return b.T;
    double lo = 0.0, hi = b.T;
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (bound(mid) <= b.A ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

SolveReport picard_solve(const FodeProblem& p, double h, double t_end, double tol, int max_iter,
                         const std::vector<GridFunction>* initial) {
    if (!(tol > 0.0) || max_iter < 1)
        throw std::domain_error("picard_solve: tol > 0 and max_iter >= 1 required");
    const std::size_t N = node_count(h, t_end) - 1;
    const std::size_t dim = p.dim();
    const auto w = detail::abel_weights(p.gamma, N, h);
    std::vector<std::vector<double>> v(dim, std::vector<double>(N + 1));
    for (std::size_t c = 0; c < dim; ++c) {
        if (initial) {
            if ((*initial)[c].size() != N + 1)
                throw std::invalid_argument("picard_solve: initial iterate grid mismatch");
            v[c] = (*initial)[c].values;
        } else {
            std::fill(v[c].begin(), v[c].end(), p.v0[c]);
        }
        v[c][0] = p.v0[c];
    }
    std::vector<std::vector<double>> fv(dim, std::vector<double>(N + 1, 0.0));
    std::vector<double> state(dim), fout(dim);
    SolveReport rep;
    int iters = 0;
    bool converged = false;
    for (int it = 1; it <= max_iter; ++it) {
        iters = it;
        for (std::size_t n = 0; n <= N; ++n) {
            for (std::size_t c = 0; c < dim; ++c) state[c] = v[c][n];
            p.rhs(static_cast<double>(n) * h, state, fout);
            for (std::size_t c = 0; c < dim; ++c) fv[c][n] = fout[c];
        }
        double delta = 0.0;
        bool bad = false;
        for (std::size_t c = 0; c < dim; ++c) {
            for (std::size_t n = N; n >= 1; --n) {
                double acc = p.v0[c];
                for (std::size_t j = 0; j < n; ++j) acc += fv[c][j] * w[n - 1 - j];
                if (!std::isfinite(acc) || std::abs(acc) > kStateCap) bad = true;
                delta = std::max(delta, std::abs(acc - v[c][n]));
                v[c][n] = acc;
            }
        }
        if (bad) {
            rep.blowup_suspected = true;
            break;
        }
        if (delta <= tol) {
            converged = true;
            break;
        }
    }
    rep.solution = to_grids(h, v);
    rep.picard_iters = iters;
    rep.converged = converged;
    if (!rep.blowup_suspected) {
        for (std::size_t n = 0; n <= N; ++n) {
            for (std::size_t c = 0; c < dim; ++c) state[c] = v[c][n];
            p.rhs(static_cast<double>(n) * h, state, fout);
            for (std::size_t c = 0; c < dim; ++c) fv[c][n] = fout[c];
        }
        rep.max_residual = volterra_residual(p, h, v, fv);
    }
    return rep;
}

SolveReport step_solve(const FodeProblem& p, double h, double t_end) {
    auto m = march(p, h, t_end, kStateCap);
    SolveReport rep;
    rep.blowup_suspected = m.truncated;
    rep.converged = !m.truncated;
    if (!m.truncated) {
        // rhs at every surviving node, for the Volterra residual
        const std::size_t Ns = m.v[0].size() - 1;
        std::vector<double> state(p.dim()), fout(p.dim());
        for (std::size_t n = 0; n <= Ns; ++n) {
            for (std::size_t c = 0; c < p.dim(); ++c) state[c] = m.v[c][n];
            p.rhs(static_cast<double>(n) * h, state, fout);
            for (std::size_t c = 0; c < p.dim(); ++c) m.fval[c][n] = fout[c];
        }
        rep.max_residual = volterra_residual(p, h, m.v, m.fval);
    }
    rep.solution = to_grids(h, m.v);
    return rep;
}

GridFunction solve_linear(double gamma, double lambda, const GridFunction& b, double v0) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::domain_error("solve_linear: gamma must lie in (0, 1]");
    if (lambda == 0.0)
        throw std::domain_error("solve_linear: lambda = 0; use v0 + frac_integral(gamma, b)");
    const std::size_t N = b.last_index();
    const double h = b.h;
    // Per-cell kernel data: exact moments of s^{gamma-1} and s^gamma, and the
    // Mittag-Leffler factor at the cell midpoint.
    std::vector<double> m0(N), m1(N), eml(N);
    {
        double prev_g = 0.0, prev_g1 = 0.0;
        const double hg = std::pow(h, gamma), hg1 = std::pow(h, gamma + 1.0);
        for (std::size_t j = 0; j < N; ++j) {
            const double cur_g = std::pow(static_cast<double>(j + 1), gamma);
            const double cur_g1 = std::pow(static_cast<double>(j + 1), gamma + 1.0);
            m0[j] = (cur_g - prev_g) * hg / gamma;                    // int s^{g-1}
            m1[j] = (cur_g1 - prev_g1) * hg1 / (gamma + 1.0);         // int s^g
            prev_g = cur_g;
            prev_g1 = cur_g1;
            const double smid = (static_cast<double>(j) + 0.5) * h;
            eml[j] = mittag_leffler({gamma, gamma, lambda * std::pow(smid, gamma)}).value;
        }
    }
    GridFunction out = b;
    for (std::size_t n = 0; n <= N; ++n) {
        const double tn = static_cast<double>(n) * h;
        double acc = v0 * ml_e(gamma, lambda, tn);
        for (std::size_t j = 0; j < n; ++j) {
            // b(t_n - s) linear on s in [jh, (j+1)h]
            const double bj = b.values[n - j];
            const double q = (b.values[n - j - 1] - bj) / h;
            acc += eml[j] * (bj * m0[j] + q * (m1[j] - static_cast<double>(j) * h * m0[j]));
        }
        out.values[n] = acc;
    }
    return out;
}

std::optional<BlowupBracket> detect_blowup(const FodeProblem& p, double h0, double t_end,
                                           double growth_cap) {
    if (!(growth_cap >= 1e6)) throw std::domain_error("detect_blowup: growth_cap too small");
    double x[3];
    for (int k = 0; k < 3; ++k) {
        const auto m = march(p, h0 / std::pow(2.0, k), t_end, growth_cap);
        if (m.first_cap_crossing < 0.0) return std::nullopt;
        x[k] = m.first_cap_crossing;
    }
    BlowupBracket b;
    b.t_high = x[1];
    b.t_low = std::max(0.0, std::min(x[2] - 2.0 * (x[1] - x[2]), x[2]));
    if (b.t_low >= b.t_high) b.t_low = std::max(0.0, b.t_high - h0);
    return b;
}

}  // namespace fracode
