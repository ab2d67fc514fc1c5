#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "latspec/quadrature.hpp"

namespace latspec {

/// A point of the torus [-pi, pi]^d.
class TorusPoint {
public:
    explicit TorusPoint(std::vector<double> coords);
    int dim() const { return int(coords_.size()); }
    std::span<double const> coords() const { return coords_; }
private:
    std::vector<double> coords_;
};

struct SymbolValue {
    double value;
};

/// g(theta) = (1/d) sum_j cos(theta_j).
SymbolValue symbol(TorusPoint const& theta);

/// 1 - g(theta) written as (2/d) sum_j sin^2(theta_j / 2), accurate near theta = 0.
double one_minus_symbol(std::span<double const> theta);

/// Nodes and weights of a composite rule on an interval of the real line.
struct LineRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Composite Gauss-Legendre rule over consecutive panels [breaks[i], breaks[i+1]].
LineRule composite_gauss(std::span<double const> breaks, int nodes_per_panel);

/// Breakpoints on [0, pi] refined geometrically toward 0 down to the scale
/// sqrt(offset); a single panel when offset == 0.
std::vector<double> graded_breaks(double offset, double ratio = 0.25);

namespace detail {

template <class Phi>
struct MultisetWalker {
    int d;
    int m;
    double const* s;
    double const* w;
    Phi& phi;
    PairwiseSum& acc;

    void walk(int level, int prev, double sum_s, double weight, int run, double coef) {
        if (level == d) {
            acc.add(coef * weight * phi(sum_s));
            return;
        }
        for (int k = prev; k < m; ++k) {
            int const r = (k == prev) ? run + 1 : 1;
            walk(level + 1, k, sum_s + s[k], weight * w[k], r, coef / r);
        }
    }
};

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

} // namespace detail

/// Sum over the tensor grid of `m` one-dimensional nodes in `d` coordinates of
/// prod_j w[k_j] * phi(sum_j s[k_j]). Only non-decreasing index tuples are
/// visited, each with its multinomial multiplicity. Chunked over the first index.
template <class Phi>
double symmetric_tensor_sum(int d, std::span<double const> s, std::span<double const> w, Phi phi, int threads) {
    int const m = int(s.size());
    double const top = detail::factorial(d);
    return chunked_sum(std::size_t(m), threads, [&](std::size_t k1) {
        PairwiseSum acc;
        Phi local = phi;
        detail::MultisetWalker<Phi> walker{d, m, s.data(), w.data(), local, acc};
        walker.walk(1, int(k1), s[k1], w[k1], 1, top);
        return acc.result();
    });
}

/// (2 pi)^{-d} * integral over T^d of phi(1 - g(theta)) with the periodic
/// trapezoidal rule of n points per axis (n even). Reflection symmetry folds the
/// grid onto [0, pi]; permutation symmetry reduces it to index multisets.
template <class Phi>
double symmetric_trapezoid(int d, int n, Phi phi, int threads) {
    int const half = n / 2;
    std::vector<double> s(half + 1), w(half + 1);
    for (int k = 0; k <= half; ++k) {
        double const sh = std::sin(std::numbers::pi * k / n);
        s[k] = 2.0 * sh * sh / d;
        w[k] = (k == 0 || k == half ? 1.0 : 2.0) / n;
    }
    return symmetric_tensor_sum(d, s, w, phi, threads);
}

/// (2 pi)^{-d} * integral over T^d of phi(1 - g(theta)), restricted to the
/// region where the largest |theta_j| lies in the support of `x_rule`.
/// Each cube sector {theta_j = max} is mapped to (x, x*u) with u in [0,1]^{d-1};
/// the Jacobian x^{d-1} absorbs the point singularity of phi at theta = 0.
template <class Phi>
double pyramid_integral(int d, LineRule const& x_rule, int n_u, Phi phi, int threads) {
    auto const& gl = gauss_legendre(n_u);
    std::vector<double> u(n_u), wu(n_u);
    for (int j = 0; j < n_u; ++j) {
        u[j] = 0.5 * (gl.nodes[j] + 1.0);
        wu[j] = 0.5 * gl.weights[j];
    }
    double const prefactor = std::pow(2.0, d) * d / std::pow(2.0 * std::numbers::pi, d);
    std::size_t const nx = x_rule.nodes.size();
    double const total = chunked_sum(nx, threads, [&](std::size_t i) {
        double const x = x_rule.nodes[i];
        double const sx = std::sin(0.5 * x);
        double const head = 2.0 * sx * sx / d;
        double const jac = x_rule.weights[i] * std::pow(x, d - 1);
        if (d == 1) return jac * phi(head);
        std::vector<double> s(n_u);
        for (int j = 0; j < n_u; ++j) {
            double const sj = std::sin(0.5 * x * u[j]);
            s[j] = 2.0 * sj * sj / d;
        }
        Phi local = phi;
        auto shifted = [&local, head](double rest) { return local(head + rest); };
        return jac * symmetric_tensor_sum(d - 1, s, wu, shifted, 1);
    });
    return prefactor * total;
}

} // namespace latspec
