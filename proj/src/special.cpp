#include "latspec/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>

#include "latspec/errors.hpp"
#include "latspec/quadrature.hpp"

namespace latspec::special {

namespace {

// Below this argument the power series is used; above it the asymptotic series,
// whose smallest term is of order e^{-2z}, reaches full double precision.
constexpr double kSeriesLimit = 30.0;

double i0_series(double z) {
    double const q = 0.25 * z * z;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (double(k) * double(k));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

// sum_k ((2k-1)!!)^2 / (k! (8z)^k), truncated at the first term below 1e-18.
double i0_asymptotic_factor(double z) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        double const odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k * z);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

} // namespace

double log_scaled_bessel_i0(double z) {
    if (!(z >= 0.0)) throw DomainError("log_scaled_bessel_i0: argument must be >= 0");
    if (z < kSeriesLimit) return std::log(i0_series(z)) - z;
    return -0.5 * std::log(2.0 * std::numbers::pi * z) + std::log(i0_asymptotic_factor(z));
}

double scaled_bessel_i0(double z) {
    if (!(z >= 0.0)) throw DomainError("scaled_bessel_i0: argument must be >= 0");
    if (z < kSeriesLimit) return i0_series(z) * std::exp(-z);
    return i0_asymptotic_factor(z) / std::sqrt(2.0 * std::numbers::pi * z);
}

double scaled_bessel_in(int n, double z) {
    if (!(z >= 0.0)) throw DomainError("scaled_bessel_in: argument must be >= 0");
    n = n < 0 ? -n : n;
    if (n == 0) return scaled_bessel_i0(z);
    if (z == 0.0) return 0.0;
    if (z <= 600.0) return boost::math::cyl_bessel_i(n, z) * std::exp(-z);
    // (1/pi) int_0^pi e^{-2 z sin^2(t/2)} cos(n t) dt, cut where the Gaussian factor is below e^-80.
    double const cut = 2.0 * std::asin(std::min(1.0, std::sqrt(40.0 / z)));
    int const panels = 2 + int(std::ceil(2.0 * n * cut / std::numbers::pi));
    constexpr int kNodes = 32;
    auto const& gl = gauss_legendre(kNodes);
    double const h = cut / panels;
    PairwiseSum sum;
    for (int p = 0; p < panels; ++p) {
        double const mid = (p + 0.5) * h;
        for (int i = 0; i < kNodes; ++i) {
            double const t = mid + 0.5 * h * gl.nodes[i];
            double const s = std::sin(0.5 * t);
            sum.add(0.5 * h * gl.weights[i] * std::exp(-2.0 * z * s * s) * std::cos(n * t));
        }
    }
    return sum.result() / std::numbers::pi;
}

double bessel_j0(double z) {
    return boost::math::cyl_bessel_j(0, std::abs(z));
}

double agm(double a, double b) {
    if (a < 0.0 || b < 0.0) throw DomainError("agm: arguments must be non-negative");
    if (a == 0.0 || b == 0.0) return 0.0;
    for (int it = 0; it < 64; ++it) {
        double const mean = 0.5 * (a + b);
        double const geo = std::sqrt(a * b);
        if (std::abs(mean - geo) <= 2.0 * std::numeric_limits<double>::epsilon() * mean) return mean;
        a = mean;
        b = geo;
    }
    return 0.5 * (a + b);
}

double elliptic_k(double k) {
    if (!(k >= 0.0 && k < 1.0)) throw DomainError("elliptic_k: modulus must lie in [0, 1)");
    return std::numbers::pi / (2.0 * agm(1.0, std::sqrt((1.0 - k) * (1.0 + k))));
}

} // namespace latspec::special
