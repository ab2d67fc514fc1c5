#pragma once

// Reference values and slow independent evaluations used only by the tests.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/ellint_1.hpp>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// 50-digit reference computations, rounded to double.
namespace frozen {
inline constexpr double I3_edge = 1.51638605915197801;
inline constexpr double vc3 = 0.659462670449000859;
inline constexpr double I4_edge = 1.239467121848481713;
inline constexpr double vc4 = 0.806798326775016063;
inline constexpr double I5_edge = 1.156308124840231179;
inline constexpr double vc5 = 0.864821390179344709;
inline constexpr double I6_edge = 1.116963373226671844;
inline constexpr double vc6 = 0.895284504371177989;
inline constexpr double J5_edge = 1.934941440382351153;
inline constexpr double J6_edge = 1.514147857024585054;
inline constexpr double I2_at_1_25 = 1.016199360097058232;
inline constexpr double I2_at_2 = 0.536591003574682188;
inline constexpr double I3_at_1_2 = 0.979863168735303005;
inline constexpr double J3_at_1_2 = 1.222688778925654393;
inline constexpr double weight3_at_1_2 = 0.785262649001843597;
inline constexpr double E2_at_0_8 = 1.130367830639365400;
inline constexpr double E3_at_2vc = 1.452131567059215650;
inline constexpr double rho3_at_0 = 0.856037896338116764;
inline constexpr double rho3_at_0_5 = 0.442652644347117246;
inline constexpr double rho2_at_0_5 = 0.437001435895772600;
inline constexpr double psi1_site3_at_sqrt2 = 0.0710678118654752440;
inline constexpr double kappa_at_sqrt2 = 0.881373587019543025;
} // namespace frozen

// Closed form of the three-dimensional edge value as a product of Gamma functions.
inline double watson_I3() {
    return std::sqrt(6.0) / (32.0 * pi * pi * pi) * std::tgamma(1.0 / 24) * std::tgamma(5.0 / 24) *
           std::tgamma(7.0 / 24) * std::tgamma(11.0 / 24);
}

inline double I2_elliptic(double E) { return 2.0 / (pi * E) * boost::math::ellint_1(1.0 / E); }

inline double rho2_elliptic(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    if (x == 0.0) return 0.0;
    if (std::abs(x) < 1e-7) return 2.0 / (pi * pi) * std::log(4.0 / std::abs(x));
    return 2.0 / (pi * pi) * boost::math::ellint_1(std::sqrt(1.0 - x * x));
}

// rho_3(x) = (3/2) (1/pi) int_0^pi rho_2((3x - cos t)/2) dt.
inline double rho3_convolution(double x) {
    auto f = [x](double t) { return rho2_elliptic((3.0 * x - std::cos(t)) / 2.0); };
    std::vector<double> cuts{0.0, pi};
    for (double c : {3.0 * x, 3.0 * x - 2.0, 3.0 * x + 2.0})
        if (c > -1.0 && c < 1.0) cuts.push_back(std::acos(c));
    std::sort(cuts.begin(), cuts.end());
    boost::math::quadrature::tanh_sinh<double> ts;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i + 1] > cuts[i]) s += ts.integrate(f, cuts[i], cuts[i + 1], 1e-12);
    return 1.5 / pi * s;
}

// Full tensor trapezoidal rule on [-pi, pi)^d with no symmetry reduction.
inline double brute_green(int d, double E, int power, int n) {
    std::vector<double> c(n);
    for (int k = 0; k < n; ++k) c[k] = std::cos(2.0 * pi * k / n);
    long total = 1;
    for (int j = 0; j < d; ++j) total *= n;
    double sum = 0.0;
    for (long i = 0; i < total; ++i) {
        long r = i;
        double g = 0.0;
        for (int j = 0; j < d; ++j) {
            g += c[r % n];
            r /= n;
        }
        sum += std::pow(E - g / d, -power);
    }
    return sum / double(total);
}

inline bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

} // namespace oracle
