#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/ellint_1.hpp>

#include "latspec/errors.hpp"
#include "latspec/quadrature.hpp"
#include "latspec/special.hpp"
#include "latspec/torus.hpp"

using namespace latspec;
constexpr double pi = std::numbers::pi;

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
    for (int n : {1, 2, 5, 12, 20, 40, 64}) {
        auto const& r = gauss_legendre(n);
        REQUIRE(r.nodes.size() == std::size_t(n));
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
            double const exact = k % 2 ? 0.0 : 2.0 / (k + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(gauss_legendre(0), DomainError);
}

TEST_CASE("pairwise sums do not depend on the worker count") {
    std::vector<double> terms;
    for (int i = 0; i < 100000; ++i) terms.push_back(std::sin(0.37 * i) / (1.0 + i));
    auto chunk = [&](std::size_t c) {
        PairwiseSum s;
        for (std::size_t i = c * 1000; i < (c + 1) * 1000; ++i) s.add(terms[i]);
        return s.result();
    };
    double const one = chunked_sum(100, 1, chunk);
    for (int threads : {2, 3, 8}) CHECK(chunked_sum(100, threads, chunk) == one);
    CHECK(pairwise_sum(terms) == doctest::Approx(one).epsilon(1e-14));
}

TEST_CASE("scaled modified Bessel functions") {
    for (double z : {0.0, 1e-3, 0.5, 3.0, 7.9, 8.1, 25.0, 29.9, 30.1, 100.0, 500.0}) {
        double const ref = boost::math::cyl_bessel_i(0, z) * std::exp(-z);
        CHECK(special::scaled_bessel_i0(z) == doctest::Approx(ref).epsilon(2e-15));
        CHECK(special::log_scaled_bessel_i0(z) == doctest::Approx(std::log(ref)).epsilon(1e-14));
    }
    // Large-argument behaviour e^{-z} I0(z) sqrt(2 pi z) -> 1 + 1/(8z).
    double const z = 1e8;
    CHECK(special::scaled_bessel_i0(z) * std::sqrt(2 * pi * z) == doctest::Approx(1.0 + 1.0 / (8 * z)).epsilon(1e-15));
    for (int n : {1, 2, 7, 25})
        for (double z2 : {0.3, 12.0, 300.0, 599.0}) {
            double const ref = boost::math::cyl_bessel_i(n, z2) * std::exp(-z2);
            CHECK(special::scaled_bessel_in(n, z2) == doctest::Approx(ref).epsilon(1e-13));
            CHECK(special::scaled_bessel_in(-n, z2) == special::scaled_bessel_in(n, z2));
        }
    // Continuity across the switch to the integral representation.
    for (int n : {1, 5, 30})
        CHECK(special::scaled_bessel_in(n, 600.0 + 1e-9) == doctest::Approx(special::scaled_bessel_in(n, 600.0)).epsilon(1e-12));
    CHECK_THROWS_AS(special::scaled_bessel_i0(-1.0), DomainError);
}

TEST_CASE("AGM and complete elliptic integral") {
    CHECK(special::agm(1.0, 1.0) == 1.0);
    CHECK(special::agm(1.0, 0.0) == 0.0);
    for (double k : {0.0, 0.1, 0.5, 0.9, 0.999})
        CHECK(special::elliptic_k(k) == doctest::Approx(boost::math::ellint_1(k)).epsilon(1e-14));
}

TEST_CASE("symbol on the torus") {
    CHECK(symbol(TorusPoint({0.0, 0.0, 0.0})).value == 1.0);
    for (int d = 1; d <= 6; ++d) CHECK(symbol(TorusPoint(std::vector<double>(d, pi))).value == doctest::Approx(-1.0));
    CHECK(symbol(TorusPoint({pi / 2, 0.0})).value == doctest::Approx(0.5));
    CHECK_THROWS_AS(TorusPoint({4.0}), DomainError);
    CHECK_THROWS_AS(TorusPoint(std::vector<double>{}), DomainError);
    std::vector<double> th{1e-9, -2e-9, 3e-9};
    CHECK(one_minus_symbol(th) == doctest::Approx((1e-18 + 4e-18 + 9e-18) / 6.0).epsilon(1e-9));
}

TEST_CASE("symmetric trapezoid equals the plain tensor rule") {
    auto phi = [](double omg) { return 1.0 / (0.3 + omg); };
    int const n = 8;
    for (int d = 1; d <= 3; ++d) {
        double plain = 0.0;
        long total = 1;
        for (int j = 0; j < d; ++j) total *= n;
        for (long i = 0; i < total; ++i) {
            long r = i;
            double s = 0.0;
            for (int j = 0; j < d; ++j) {
                double const t = 2 * pi * (r % n) / n;
                s += 1.0 - std::cos(t);
                r /= n;
            }
            plain += phi(s / d);
        }
        plain /= double(total);
        CHECK(symmetric_trapezoid(d, n, phi, 1) == doctest::Approx(plain).epsilon(1e-14));
    }
}
