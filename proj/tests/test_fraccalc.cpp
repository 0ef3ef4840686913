#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracode/fraccalc.hpp"
#include "fracode/special.hpp"
#include "fracode/suite.hpp"

using namespace fracode;

namespace {

GridFunction sample(double h, double t_end, const std::function<double(double)>& f) {
    const std::size_t n = static_cast<std::size_t>(std::llround(t_end / h)) + 1;
    return GridFunction::sampled(0.0, h, n, f);
}

double uniform01(std::mt19937& eng) { return static_cast<double>(eng() >> 5) / 134217728.0; }

constexpr double kSqrtPiInv2 = 1.1283791670955126;  // 2/sqrt(pi)

}  // namespace

TEST_CASE("kernel_eval values and domain errors") {
    CHECK(kernel_eval({1.0}, 2.7) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(kernel_eval({0.5}, 1.0) - 0.56418958354775629) <= 1e-14);
    CHECK(std::abs(kernel_eval({0.5}, 4.0) - 0.28209479177387814) <= 1e-14);
    CHECK_THROWS_AS(kernel_eval({0.5}, 0.0), std::domain_error);
    CHECK_THROWS_AS(kernel_eval({0.5}, -1.0), std::domain_error);
    CHECK_THROWS_AS(kernel_eval({-0.3}, 1.0), std::domain_error);
    CHECK_THROWS_AS(kernel_eval({0.0}, 1.0), std::domain_error);
}

TEST_CASE("frac_integral exact on constants") {
    const double h = 1.0 / 512;
    const GridFunction one = sample(h, 1.0, [](double) { return 1.0; });
    const GridFunction J = frac_integral(0.5, one);
    // exact value t^gamma / Gamma(1+gamma); the rule telescopes exactly
    for (std::size_t k = 1; k < J.size(); ++k) {
        const double exact = std::sqrt(J.t(k)) / 0.88622692545275801;
        CHECK(std::abs(J.values[k] - exact) <= 1e-12 * exact);
    }
    CHECK(std::abs(J.values.back() - kSqrtPiInv2) <= 1e-12);
}

TEST_CASE("frac_integral of zero is zero; gamma=1 integrates exactly") {
    const double h = 1.0 / 128;
    const GridFunction zero = sample(h, 1.0, [](double) { return 0.0; });
    for (double v : frac_integral(0.7, zero).values) CHECK(v == 0.0);
    const GridFunction one = sample(h, 1.0, [](double) { return 1.0; });
    const GridFunction J1 = frac_integral(1.0, one);
    for (std::size_t k = 0; k < J1.size(); ++k)
        CHECK(std::abs(J1.values[k] - J1.t(k)) <= 1e-12);
    CHECK_THROWS_AS(frac_integral(1.5, one), std::domain_error);
    CHECK_THROWS_AS(frac_integral(0.0, one), std::domain_error);
}

TEST_CASE("frac_integral keeps nonnegative data nonnegative") {
    std::mt19937 eng(7u);
    const double h = 1.0 / 256;
    GridFunction f = sample(h, 1.0, [](double) { return 0.0; });
    for (auto& v : f.values) v = uniform01(eng);
    for (double g : {0.2, 0.5, 1.0})
        for (double v : frac_integral(g, f).values) CHECK(v >= 0.0);
}

TEST_CASE("caputo_derivative of constants: regular part bitwise zero") {
    std::mt19937 eng(11u);
    for (int trial = 0; trial < 10; ++trial) {
        const double C = -10.0 + 20.0 * uniform01(eng);
        const double g = 0.05 + 0.9 * uniform01(eng);
        const double h = 1.0 / (8 << (eng() % 8));
        const GridFunction phi = GridFunction::constant(0.0, h, 33, C);
        const CaputoDecomposition d = caputo_derivative(g, phi);
        for (double v : d.regular.values) CHECK(v == 0.0);
        CHECK(d.singular_coeff == C);
        CHECK(d.delta_coeff == 0.0);
    }
}

TEST_CASE("caputo_derivative exact for affine data") {
    const double h = 1.0 / 512;
    const GridFunction phi = sample(h, 1.0, [](double t) { return t; });
    const CaputoDecomposition d = caputo_derivative(0.5, phi);
    for (std::size_t k = 1; k < phi.size(); ++k) {
        const double exact = std::sqrt(phi.t(k)) / 0.88622692545275801;  // t^{1/2}/Gamma(3/2)
        CHECK(std::abs(d.regular.values[k] - exact) <= 1e-12 * exact);
    }
    CHECK(std::abs(d.regular.values.back() - kSqrtPiInv2) <= 1e-11);
    CHECK_THROWS_AS(caputo_derivative(1.0, phi), std::domain_error);
}

TEST_CASE("caputo_derivative of the relaxation eigenfunction: D phi = lambda phi") {
    const double h = 1.0 / 512, g = 0.5, lambda = -1.0;
    const GridFunction phi = sample(h, 1.0, [&](double t) { return ml_e(g, lambda, t); });
    const CaputoDecomposition d = caputo_derivative(g, phi);
    // interior window: the piecewise-linear scheme cannot follow the t^{1/2}
    // cusp at the first few nodes
    for (std::size_t k = 0; k < phi.size(); ++k) {
        if (phi.t(k) < 0.1) continue;
        CHECK(std::abs(d.regular.values[k] - lambda * phi.values[k]) <= 10.0 * h);
    }
}

TEST_CASE("caputo derivative linear in phi") {
    const double h = 1.0 / 128;
    const GridFunction f1 = sample(h, 1.0, [](double t) { return std::sin(3.0 * t); });
    const GridFunction f2 = sample(h, 1.0, [](double t) { return t * t - 0.3; });
    GridFunction combo = f1;
    for (std::size_t k = 0; k < combo.size(); ++k)
        combo.values[k] = 2.5 * f1.values[k] - 1.25 * f2.values[k];
    const auto d1 = caputo_derivative(0.4, f1);
    const auto d2 = caputo_derivative(0.4, f2);
    const auto dc = caputo_derivative(0.4, combo);
    double scale = 0.0;
    for (std::size_t k = 0; k < combo.size(); ++k)
        scale = std::max(scale, std::abs(dc.regular.values[k]));
    for (std::size_t k = 0; k < combo.size(); ++k) {
        const double lin = 2.5 * d1.regular.values[k] - 1.25 * d2.regular.values[k];
        CHECK(std::abs(dc.regular.values[k] - lin) <= 16.0 * 2.22e-16 * (1.0 + scale));
    }
}

TEST_CASE("caputo_holder_form values and cross-form agreement") {
    const double h = 1.0 / 1024;
    const GridFunction c = GridFunction::constant(0.0, h, 257, 4.2);
    for (double v : caputo_holder_form(0.5, c).values) CHECK(v == 0.0);

    const GridFunction lin = sample(h, 1.0, [](double t) { return t; });
    const GridFunction hl = caputo_holder_form(0.5, lin);
    CHECK(std::abs(hl.values.back() - kSqrtPiInv2) <= 1e-10);

    const GridFunction sq = sample(h, 1.0, [](double t) { return t * t; });
    const GridFunction hs = caputo_holder_form(0.5, sq);
    CHECK(std::abs(hs.values.back() - 1.5045055561273501) <= 1e-4);

    for (auto f : {+[](double t) { return t * t; }, +[](double t) { return std::sin(t); },
                   +[](double t) { return std::exp(t); }}) {
        const GridFunction phi = sample(1.0 / 256, 1.0, f);
        const GridFunction a = caputo_holder_form(0.5, phi);
        const GridFunction b = caputo_derivative(0.5, phi).regular;
        double worst = 0.0;
        for (std::size_t k = 1; k < phi.size(); ++k)
            worst = std::max(worst, std::abs(a.values[k] - b.values[k]));
        CHECK(worst <= 10.0 / 256);
    }
}

TEST_CASE("fundamental theorem: reconstruction error O(h), constant measured") {
    for (double g : {0.3, 0.5, 0.7}) {
        for (auto f : {+[](double t) { return t; }, +[](double t) { return t * t; },
                       +[](double t) { return std::sin(t); }}) {
            for (double h : {1.0 / 512, 1.0 / 1024}) {
                const GridFunction phi = sample(h, 1.0, f);
                const GridFunction rec = frac_integral(g, caputo_derivative(g, phi).regular);
                double err = 0.0;
                for (std::size_t k = 0; k < phi.size(); ++k)
                    err = std::max(err, std::abs(rec.values[k] + phi.values[0] - phi.values[k]));
                INFO("gamma=", g, " h=", h, " C=", err / h);
                CHECK(err <= 5.0 * h);
            }
        }
    }
    // cusped eigenfunction: O(h) away from the origin
    const double h = 1.0 / 1024;
    const GridFunction phi = sample(h, 1.0, [](double t) { return ml_e(0.5, -1.0, t); });
    const GridFunction rec = frac_integral(0.5, caputo_derivative(0.5, phi).regular);
    double err = 0.0;
    for (std::size_t k = 0; k < phi.size(); ++k) {
        if (phi.t(k) < 0.1) continue;
        err = std::max(err, std::abs(rec.values[k] + phi.values[0] - phi.values[k]));
    }
    INFO("eigenfunction C=", err / h);
    CHECK(err <= 10.0 * h);
}

TEST_CASE("right_rl_apply: zero data, boundary preconditions, hat-pair duality") {
    const double h = 1.0 / 512;
    const GridFunction zero = sample(h, 4.0, [](double) { return 0.0; });
    for (double v : right_rl_apply(0.5, zero).values) CHECK(v == 0.0);

    GridFunction bad = zero;
    bad.values.back() = 1.0;
    CHECK_THROWS_AS(right_rl_apply(0.5, bad), std::domain_error);

    const GridFunction hat =
        sample(h, 4.0, [](double t) { return std::max(0.0, 1.0 - std::abs(t - 2.0)); });
    const GridFunction dphi = caputo_derivative(0.5, hat).regular;
    const GridFunction rpsi = right_rl_apply(0.5, hat);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t k = 0; k < hat.size(); ++k) {
        lhs += dphi.values[k] * hat.values[k];
        rhs += hat.values[k] * rpsi.values[k];
    }
    CHECK(std::abs(lhs - rhs) * h <= 5.0 * h);
}

TEST_CASE("duality pairing converges with the grid (value vs h/16 reference)") {
    auto pairing = [](double h) {
        const GridFunction phi = GridFunction::sampled(0.0, h, static_cast<std::size_t>(4.0 / h) + 1,
            [](double t) {
                const double x = t - 2.0;
                return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
            });
        const GridFunction dphi = caputo_derivative(0.5, phi).regular;
        double acc = 0.0;
        for (std::size_t k = 0; k < phi.size(); ++k) acc += dphi.values[k] * phi.values[k];
        return acc * h;
    };
    const double coarse = pairing(1.0 / 64);
    const double fine = pairing(1.0 / 1024);
    CHECK(std::abs(coarse - fine) <= 2.0 / 64);
}

TEST_CASE("compose_check examples and burn-in discrepancy") {
    const GridFunction one = sample(1.0 / 512, 1.0, [](double) { return 1.0; });
    CHECK(compose_check(0.3, 0.3, one) <= 0.01);
    const GridFunction zero = sample(1.0 / 128, 1.0, [](double) { return 0.0; });
    CHECK(compose_check(0.3, 0.3, zero) == 0.0);
    CHECK_THROWS_AS(compose_check(1.0, 1.0, one), std::domain_error);
    CHECK_THROWS_AS(compose_check(0.6, 0.7, one), std::domain_error);
}

TEST_CASE("semigroup property: random cubics, empirical order >= 0.9") {
    std::mt19937 eng(20240812u);
    for (int trial = 0; trial < 5; ++trial) {
        const double c0 = 2.0 * uniform01(eng) - 1.0, c1 = 2.0 * uniform01(eng) - 1.0,
                     c2 = 2.0 * uniform01(eng) - 1.0, c3 = 2.0 * uniform01(eng) - 1.0;
        const double al = 0.2 + 0.3 * uniform01(eng), be = 0.2 + 0.3 * uniform01(eng);
        auto f = [&](double t) { return c0 + c1 * t + c2 * t * t + c3 * t * t * t; };
        const double e1 = compose_check(al, be, sample(1.0 / 512, 1.0, f));
        const double e2 = compose_check(al, be, sample(1.0 / 1024, 1.0, f));
        INFO("trial ", trial, ": e512=", e1, " e1024=", e2);
        CHECK(e2 > 0.0);
        CHECK(std::log2(e1 / e2) >= 0.9);
    }
}

TEST_CASE("corrupting the quadrature Gamma breaks the semigroup criterion") {
    CHECK(suite::semigroup().pass);
    static auto corrupted = [](double x) { return gamma_fn(x) * 1.02; };
    CHECK_FALSE(suite::semigroup(+corrupted).pass);
}
