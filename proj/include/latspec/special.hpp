#pragma once

namespace latspec::special {

/// log(e^{-z} I0(z)) for z >= 0; stays finite for arbitrarily large z.
double log_scaled_bessel_i0(double z);

/// e^{-z} I0(z) for z >= 0.
double scaled_bessel_i0(double z);

/// e^{-z} I_n(z) for integer n and z >= 0.
double scaled_bessel_in(int n, double z);
/// Bessel function of the first kind J0.
double bessel_j0(double z);

/// Arithmetic-geometric mean of two non-negative numbers.
double agm(double a, double b);

/// Complete elliptic integral of the first kind K(k), k the modulus, 0 <= k < 1.
double elliptic_k(double k);

} // namespace latspec::special
