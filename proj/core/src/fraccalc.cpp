#include "fracode/fraccalc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracode/special.hpp"

namespace fracode {

namespace detail {

std::vector<double> abel_weights(double gamma, std::size_t n, double h, GammaFn g_fn) {
    const double g1 = (g_fn ? g_fn(gamma + 1.0) : gamma_fn(gamma + 1.0));
    const double scale = std::pow(h, gamma) / g1;
    std::vector<double> w(n);
    double prev = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        const double cur = std::pow(static_cast<double>(m + 1), gamma);
        w[m] = (cur - prev) * scale;
        prev = cur;
    }
    return w;
}

}  // namespace detail

double kernel_eval(KernelOrder alpha, double t) {
    if (!(alpha.alpha > 0.0))
        throw std::domain_error("kernel_eval: alpha must be positive (singular orders are not pointwise)");
    if (!(t > 0.0)) throw std::domain_error("kernel_eval: t must be positive");
    return std::pow(t, alpha.alpha - 1.0) * recip_gamma_fn(alpha.alpha);
}

GridFunction frac_integral(double gamma, const GridFunction& f) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::domain_error("frac_integral: gamma must lie in (0, 1]");
    const std::size_t N = f.last_index();
    const auto w = detail::abel_weights(gamma, N, f.h);
    GridFunction out = f;
    out.values.assign(f.size(), 0.0);
    for (std::size_t n = 1; n <= N; ++n) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += f.values[j] * w[n - 1 - j];
        out.values[n] = acc;
    }
    return out;
}

CaputoDecomposition caputo_derivative(double gamma, const GridFunction& phi) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::domain_error("caputo_derivative: gamma must lie in (0, 1)");
    const std::size_t N = phi.last_index();
    const double h = phi.h;
    // Kernel moments of order 1-gamma against the difference quotients.
    const double scale = std::pow(h, 1.0 - gamma) / gamma_fn(2.0 - gamma);
    std::vector<double> w(N);
    double prev = 0.0;
    for (std::size_t m = 0; m < N; ++m) {
        const double cur = std::pow(static_cast<double>(m + 1), 1.0 - gamma);
        w[m] = (cur - prev) * scale;
        prev = cur;
    }
    CaputoDecomposition d;
    d.regular = phi;
    d.regular.values.assign(phi.size(), 0.0);
    for (std::size_t n = 1; n <= N; ++n) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += (phi.values[j + 1] - phi.values[j]) * w[n - 1 - j];
        d.regular.values[n] = acc / h;
    }
    d.singular_coeff = phi.values[0];
    d.delta_coeff = 0.0;
    return d;
}

GridFunction caputo_holder_form(double gamma, const GridFunction& phi) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::domain_error("caputo_holder_form: gamma must lie in (0, 1)");
    const std::size_t N = phi.last_index();
    const double h = phi.h;
    const double rg = recip_gamma_fn(1.0 - gamma);
    GridFunction out = phi;
    out.values.assign(phi.size(), 0.0);
    // Powers m^{-gamma} and m^{1-gamma} shared across output nodes.
    std::vector<double> pm(N + 1), pm1(N + 1);
    for (std::size_t m = 1; m <= N; ++m) {
        pm[m] = std::pow(static_cast<double>(m) * h, -gamma);
        pm1[m] = std::pow(static_cast<double>(m) * h, 1.0 - gamma);
    }
    for (std::size_t n = 1; n <= N; ++n) {
        const double phin = phi.values[n];
        double integral = 0.0;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            // cell [t_j, t_{j+1}], tau = t_n - s in [a, b]
            const std::size_t mb = n - j, ma = n - j - 1;
            const double slope = (phi.values[j + 1] - phi.values[j]) / h;
            const double c = phin - phi.values[j] - slope * (static_cast<double>(mb) * h);
            integral += c * (pm[ma] - pm[mb]) / gamma +
                        slope * (pm1[mb] - pm1[ma]) / (1.0 - gamma);
        }
        // cell touching the singularity: phi(t_n)-phi(s) = slope*(t_n-s) exactly
        integral += (phi.values[n] - phi.values[n - 1]) / h * pm1[1] / (1.0 - gamma);
        out.values[n] = rg * ((phin - phi.values[0]) * pm[n] + gamma * integral);
    }
    return out;
}

GridFunction right_rl_apply(double gamma, const GridFunction& psi) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::domain_error("right_rl_apply: gamma must lie in (0, 1)");
    if (psi.values.front() != 0.0 || psi.values.back() != 0.0)
        throw std::domain_error("right_rl_apply: psi must vanish at both end nodes");
    GridFunction reflected = psi;
    std::reverse(reflected.values.begin(), reflected.values.end());
    GridFunction res = caputo_derivative(gamma, reflected).regular;
    std::reverse(res.values.begin(), res.values.end());
    res.t0 = psi.t0;
    return res;
}

double compose_check(double alpha, double beta, const GridFunction& f, GammaFn g_fn) {
    if (!(alpha > 0.0 && alpha <= 1.0 && beta > 0.0 && beta <= 1.0 &&
          alpha + beta > 0.0 && alpha + beta <= 1.0))
        throw std::domain_error("compose_check: alpha, beta, alpha+beta must lie in (0, 1]");
    const std::size_t N = f.last_index();
    const double h = f.h;
    auto apply = [&](double g, const std::vector<double>& in) {
        const auto w = detail::abel_weights(g, N, h, g_fn);
        std::vector<double> out(in.size(), 0.0);
        for (std::size_t n = 1; n <= N; ++n) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += in[j] * w[n - 1 - j];
            out[n] = acc;
        }
        return out;
    };
    const auto composed = apply(alpha, apply(beta, f.values));
    const auto direct = apply(alpha + beta, f.values);
    const double span = static_cast<double>(N) * h;
    const std::size_t burn_in = static_cast<std::size_t>(std::ceil(span / 16.0 / h));
    double disc = 0.0;
    for (std::size_t n = std::max<std::size_t>(burn_in, 1); n <= N; ++n)
        disc = std::max(disc, std::abs(composed[n] - direct[n]));
    return disc;
}

}  // namespace fracode
