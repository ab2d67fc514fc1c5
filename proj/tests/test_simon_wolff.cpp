#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "latspec/errors.hpp"
#include "latspec/fourier.hpp"
#include "latspec/lattice_green.hpp"
#include "latspec/simon_wolff.hpp"
#include "oracles.hpp"

using namespace latspec;
namespace fz = oracle::frozen;

TEST_CASE("im_resolvent examples") {
    QuadratureConfig cfg;
    CHECK(im_resolvent(1, 0.0, 1e-6, cfg) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(im_limit(1, 0.0, cfg).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(im_resolvent(1, 2.0, 1e-4, cfg) <= 1e-4 * greens_J(1, 2.0, cfg).value);
    for (int d = 1; d <= 6; ++d) CHECK(im_resolvent(d, 0.0, 10.0, cfg) == doctest::Approx(0.1).epsilon(0.01));
    CHECK_THROWS_AS(im_resolvent(3, 0.2, 0.0, cfg), DomainError);
    // Both evaluation routes agree where they overlap.
    for (int d = 1; d <= 4; ++d)
        for (double x : {1.03, 1.2, 1.6})
            for (double eps : {0.02, 0.1}) {
                double const a = im_resolvent(d, x, eps, cfg);
                double const b = fourier_bessel_resolvent(d, x, eps);
                CHECK(oracle::close(a, b, 1e-9));
            }
}

TEST_CASE("dos examples and independent oracles") {
    QuadratureConfig cfg;
    CHECK(dos(1, 0.0, cfg).rho == doctest::Approx(1.0 / oracle::pi).epsilon(1e-15));
    auto const s = dos(2, 0.0, cfg);
    CHECK(std::isinf(s.rho));
    CHECK(s.singular);
    CHECK(dos(2, 0.5, cfg).rho == doctest::Approx(oracle::rho2_elliptic(0.5)).epsilon(1e-14));
    CHECK(dos(2, 0.5, cfg).rho == doctest::Approx(fz::rho2_at_0_5).epsilon(1e-14));
    CHECK(dos(3, 0.0, cfg).rho == doctest::Approx(fz::rho3_at_0).epsilon(1e-10));
    CHECK(dos(3, 0.5, cfg).rho == doctest::Approx(fz::rho3_at_0_5).epsilon(1e-10));
    for (double x : {0.0, 0.1, 0.3, 1.0 / 3.0 + 0.01, 0.5, 0.8, 0.95})
        CHECK(dos(3, x, cfg).rho == doctest::Approx(oracle::rho3_convolution(x)).epsilon(1e-9));
    CHECK_THROWS_AS(dos(3, 1.0, cfg), DomainError);
}

TEST_CASE("property: dos is a symmetric probability density") {
    QuadratureConfig cfg;
    boost::math::quadrature::tanh_sinh<double> ts;
    for (int d = 1; d <= 4; ++d) {
        auto rho = [&](double x) { return dos(d, x, cfg).rho; };
        double total = 0.0;
        std::vector<double> cuts = critical_values(d);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += ts.integrate(rho, cuts[i], cuts[i + 1], 1e-12);
        CAPTURE(d);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
        for (double x : {0.05, 0.3, 0.77}) CHECK(rho(x) == rho(-x));
    }
}

TEST_CASE("property: smoothing inequality above the band") {
    QuadratureConfig cfg;
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> ux(1.05, 2.5), ue(-6.0, -0.5);
    for (int i = 0; i < 40; ++i) {
        int const d = 1 + i % 4;
        double const x = (i % 2 ? -1.0 : 1.0) * ux(rng);
        double const eps = std::pow(10.0, ue(rng));
        CHECK(im_resolvent(d, x, eps, cfg) <= eps * greens_J(d, std::abs(x), cfg).value + 1e-12);
    }
}

TEST_CASE("property: pi * dos matches the extrapolated Im limit for d <= 4") {
    QuadratureConfig cfg;
    for (int d = 1; d <= 4; ++d)
        for (int k = 0; k < 14; ++k) {
            double const x = -0.9 + 1.8 * (k + 0.5) / 14;
            auto const l = im_limit(d, x, cfg);
            CAPTURE(d);
            CAPTURE(x);
            CHECK(std::abs(oracle::pi * dos(d, x, cfg).rho - l.value) <= 1e-4);
            CHECK(l.value > 3 * l.err_estimate);
            CHECK(l.eps.size() == l.values.size());
        }
}

TEST_CASE("classify_point examples") {
    QuadratureConfig cfg;
    CHECK(classify_point(3, 0.5, cfg).member_of == SwSet::X);
    auto const y = classify_point(2, 1.7, cfg);
    CHECK(y.member_of == SwSet::Y);
    REQUIRE(y.J_value);
    CHECK(y.J_value->is_finite());
    CHECK(classify_point(5, 1.0, cfg).member_of == SwSet::Y);
    CHECK(classify_point(5, -1.0, cfg).member_of == SwSet::Y);
    CHECK(classify_point(3, 1.0, cfg).member_of == SwSet::Z);
    CHECK(classify_point(4, -1.0, cfg).member_of == SwSet::Z);
    // The one-dimensional density blows up at the band edge, so the edge has an infinite Im limit.
    auto const e1 = classify_point(1, 1.0, cfg);
    CHECK(e1.member_of == SwSet::X);
    CHECK(std::isinf(e1.im_limit->value));
    // d = 2: jump of the density at the edge leaves half of pi * rho(1-) = 1/2.
    CHECK(classify_point(2, 1.0, cfg).im_limit->value == doctest::Approx(0.5).epsilon(1e-6));
    // d = 2 van Hove point.
    CHECK(std::isinf(classify_point(2, 0.0, cfg).im_limit->value));
    for (int d : {1, 3, 5})
        for (double x : {0.2, 0.6, 1.0, 1.4}) CHECK(classify_point(d, x, cfg).member_of == classify_point(d, -x, cfg).member_of);
}

TEST_CASE("sc evidence report") {
    QuadratureConfig cfg;
    auto r = sc_evidence_report(1, 101, cfg);
    CHECK(r.violations.empty());
    CHECK(r.z_within_band_edges);
    for (auto const& p : r.points) {
        if (std::abs(p.x) < 1.0) CHECK(p.member_of == SwSet::X);
        if (std::abs(p.x) > 1.0) CHECK(p.member_of == SwSet::Y);
    }
    r = sc_evidence_report(5, 33, cfg, 0.5, 1.2);
    CHECK(r.violations.empty());
    CHECK(r.z_points.empty());
    bool saw_eigenvalue = false;
    for (auto const& p : r.points)
        if (p.x == 1.2) saw_eigenvalue = p.member_of == SwSet::Y;
    CHECK(saw_eigenvalue);
    CHECK(sc_evidence_report(2, 0, cfg).points.empty());
    CHECK_THROWS_AS(sc_evidence_report(2, 5, cfg), DomainError);
}
