#pragma once

#include <vector>

#include "latspec/config.hpp"

namespace latspec {

/// int_0^inf cos(x t) exp(-eps t) J0(t/d)^d dt.
///
/// For eps > 0 this is Im <(H0 - (x + i eps))^{-1}>; for eps = 0 and d >= 3 it
/// equals pi * rho_d(x). The integral is done exactly up to t = 200 d and the
/// remainder from the Hankel expansion of J0, term by term along rotated rays.
double fourier_bessel_resolvent(int d, double x, double eps);

/// Critical values (d - 2m)/d, m = 0..d, of the symbol g.
std::vector<double> critical_values(int d);

/// Density of states of g: probability density of g(theta) under the uniform
/// measure on T^d. Closed forms for d <= 2; Fourier-Bessel integral for d >= 3.
/// Zero outside [-1, 1]; at x = +-1 the limit from inside; +infinity at the
/// d = 2 saddle x = 0 and at the d = 1 band edges.
double state_density(int d, double x);

} // namespace latspec
