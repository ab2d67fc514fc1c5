#include "latspec/fourier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "latspec/errors.hpp"
#include "latspec/quadrature.hpp"
#include "latspec/special.hpp"

namespace latspec {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;
// Order of the Hankel expansion kept in the tail (powers of 1/z).
constexpr int kTailOrder = 4;
// Cut between exact quadrature and the asymptotic tail, in units of d.
constexpr double kTailStart = 200.0;

// Coefficients of B(w) = P(w) + i Q(w) for J0, w = 1/z, up to w^kTailOrder.
std::array<cplx, kTailOrder + 1> hankel_b() {
    std::array<cplx, kTailOrder + 1> b{};
    b[0] = 1.0;
    b[1] = cplx(0.0, -1.0 / 8.0);
    b[2] = -9.0 / 128.0;
    b[3] = cplx(0.0, 75.0 / 1024.0);
    b[4] = 3675.0 / 32768.0;
    return b;
}

using Poly = std::array<cplx, kTailOrder + 1>;

Poly multiply(Poly const& a, Poly const& b) {
    Poly c{};
    for (int i = 0; i <= kTailOrder; ++i)
        for (int j = 0; i + j <= kTailOrder; ++j) c[i + j] += a[i] * b[j];
    return c;
}

Poly power(Poly const& a, int n) {
    Poly r{};
    r[0] = 1.0;
    for (int k = 0; k < n; ++k) r = multiply(r, a);
    return r;
}

// int_0^inf e^{-s} f(s) ds for complex f, by double-exponential quadrature.
template <class F>
cplx laplace_integral(F const& f) {
    thread_local boost::math::quadrature::exp_sinh<double> integrator;
    double const tol = 1e-13;
    double const re = integrator.integrate([&](double s) { return std::exp(-s) * f(s).real(); }, tol);
    double const im = integrator.integrate([&](double s) { return std::exp(-s) * f(s).imag(); }, tol);
    return {re, im};
}

// sum_k coef[k] * int_T^inf t^{-(a0+k)} e^{i omega t} dt, Im(omega) >= 0.
cplx tail_integrals(Poly const& coef, double a0, cplx omega, double T) {
    if (std::abs(omega) * T < 1e-10) {
        cplx sum = 0.0;
        for (int k = 0; k <= kTailOrder; ++k) {
            double const a = a0 + k;
            if (coef[k] == cplx(0.0)) continue;
            if (a <= 1.0) throw DomainError("fourier_bessel_resolvent: non-convergent resonant tail");
            sum += coef[k] * std::pow(T, 1.0 - a) / (a - 1.0);
        }
        return sum;
    }
    // t = T + i s / omega turns e^{i omega t} into e^{i omega T} e^{-s}.
    cplx const c = cplx(0.0, 1.0) / (omega * T);
    auto integrand = [&](double s) {
        cplx const base = 1.0 + c * s;
        cplx const lb = std::log(base);
        cplx sum = 0.0;
        for (int k = 0; k <= kTailOrder; ++k) {
            if (coef[k] == cplx(0.0)) continue;
            sum += coef[k] * std::pow(T, -double(k)) * std::exp(-(a0 + k) * lb);
        }
        return sum;
    };
    cplx const prefix = cplx(0.0, 1.0) / omega * std::exp(cplx(0.0, 1.0) * omega * T) * std::pow(T, -a0);
    return prefix * laplace_integral(integrand);
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

double fourier_bessel_resolvent(int d, double x, double eps) {
    if (d < 1) throw DomainError("fourier_bessel_resolvent: dimension must be >= 1");
    if (!(eps >= 0.0)) throw DomainError("fourier_bessel_resolvent: eps must be >= 0");
    if (eps == 0.0 && d < 3) throw DomainError("fourier_bessel_resolvent: eps = 0 requires d >= 3");

    double const T = kTailStart * d;
    auto const& gl = gauss_legendre(12);
    PairwiseSum head;
    int const panels = int(T);
    for (int p = 0; p < panels; ++p) {
        double const mid = p + 0.5;
        for (int i = 0; i < 12; ++i) {
            double const t = mid + 0.5 * gl.nodes[i];
            double const j0 = special::bessel_j0(t / d);
            head.add(0.5 * gl.weights[i] * std::cos(x * t) * std::exp(-eps * t) * std::pow(j0, d));
        }
    }

    // J0(z)^d = (2/(pi z))^{d/2} 2^{-d} sum_m C(d,m) B^m conj(B)^{d-m} e^{i(2m-d)(z - pi/4)},
    // times cos(xt) = Re e^{ixt}; the e^{-ixt} half is the complex conjugate.
    Poly const b = hankel_b();
    Poly bc{};
    for (int k = 0; k <= kTailOrder; ++k) bc[k] = std::conj(b[k]);
    double const scale = std::pow(2.0 * d / kPi, 0.5 * d) * std::pow(2.0, -d);
    cplx tail = 0.0;
    for (int m = 0; m <= d; ++m) {
        Poly coef = multiply(power(b, m), power(bc, d - m));
        double dk = 1.0;
        for (int k = 0; k <= kTailOrder; ++k, dk *= d) coef[k] *= dk;
        cplx const phase = std::exp(cplx(0.0, -(2.0 * m - d) * kPi / 4.0));
        cplx const omega(double(2 * m - d) / d + x, eps);
        tail += binomial(d, m) * phase * tail_integrals(coef, 0.5 * d, omega, T);
    }
    return head.result() + scale * tail.real();
}

std::vector<double> critical_values(int d) {
    std::vector<double> v;
    for (int m = d; m >= 0; --m) v.push_back(double(d - 2 * m) / d);
    return v;
}

double state_density(int d, double x) {
    if (d < 1) throw DomainError("state_density: dimension must be >= 1");
    double const ax = std::abs(x);
    if (ax > 1.0) return 0.0;
    if (d == 1) {
        if (ax == 1.0) return std::numeric_limits<double>::infinity();
        return 1.0 / (kPi * std::sqrt((1.0 - ax) * (1.0 + ax)));
    }
    if (d == 2) {
        if (ax == 0.0) return std::numeric_limits<double>::infinity();
        return 1.0 / (kPi * special::agm(1.0, ax));
    }
    if (ax == 1.0) return 0.0;
    return std::max(0.0, fourier_bessel_resolvent(d, x, 0.0) / kPi);
}

} // namespace latspec
