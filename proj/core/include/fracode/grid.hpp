#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fracode {

/// Samples of a real function on a uniform time grid t_k = t0 + k*h, k = 0..N.
/// values[0] carries the initial trace phi(0+) when t0 = 0.
struct GridFunction {
    double t0 = 0.0;
    double h = 0.0;
    std::vector<double> values;

    GridFunction() = default;

    GridFunction(double t0_, double h_, std::vector<double> v)
        : t0(t0_), h(h_), values(std::move(v)) {
        if (h <= 0.0) throw std::invalid_argument("GridFunction: step h must be positive");
        if (values.size() < 2) throw std::invalid_argument("GridFunction: need at least 2 nodes");
    }

    static GridFunction sampled(double t0, double h, std::size_t n_nodes,
                                const std::function<double(double)>& f) {
        std::vector<double> v(n_nodes);
        for (std::size_t k = 0; k < n_nodes; ++k) v[k] = f(t0 + static_cast<double>(k) * h);
        return GridFunction(t0, h, std::move(v));
    }

    static GridFunction constant(double t0, double h, std::size_t n_nodes, double c) {
        return GridFunction(t0, h, std::vector<double>(n_nodes, c));
    }

    std::size_t size() const { return values.size(); }
    std::size_t last_index() const { return values.size() - 1; }
    double t(std::size_t k) const { return t0 + static_cast<double>(k) * h; }
    double t_end() const { return t(last_index()); }
    double operator[](std::size_t k) const { return values[k]; }
    double& operator[](std::size_t k) { return values[k]; }

    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

/// Max-norm distance between two grid functions on a shared grid.
inline double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: size mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.values[k] - b.values[k]));
    return m;
}

}  // namespace fracode
