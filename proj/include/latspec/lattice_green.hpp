#pragma once

#include <functional>
#include <vector>

#include "latspec/config.hpp"
#include "latspec/torus.hpp"

namespace latspec {

/// Value of a normalized lattice Green's integral, or a certified divergence.
struct GreenValue {
    enum class Kind { Finite, Divergent };

    Kind kind = Kind::Finite;
    double value = 0.0;
    double err_estimate = 0.0;
    /// Radial power r^{d-1-2k} of the integrand near the singular point (Divergent only).
    double divergence_exponent = 0.0;

    static GreenValue finite(double value, double err_estimate);
    static GreenValue divergent(double exponent);
    bool is_finite() const { return kind == Kind::Finite; }
};

struct Integrability {
    bool I_finite;
    bool J_finite;
};

/// Analytic classification of (E - g)^{-1} and (E - g)^{-2} for E >= -1.
Integrability integrability_class(int d, double E);

// I_d(E) = (2 pi)^{-d} int dtheta / (E - g) and J_d(E) = (2 pi)^{-d} int dtheta / (E - g)^2, E >= 1.
GreenValue greens_I(int d, double E, QuadratureConfig const& cfg);
GreenValue greens_J(int d, double E, QuadratureConfig const& cfg);

// Same integrals addressed by the offset eta = E - 1 >= 0, which keeps full
// relative precision of E - 1 near the band edge.
GreenValue greens_I_above_edge(int d, double eta, QuadratureConfig const& cfg);
GreenValue greens_J_above_edge(int d, double eta, QuadratureConfig const& cfg);

/// I_d(E) = int_0^inf exp(-tE) I0(t/d)^d dt.
GreenValue laplace_bessel_I(int d, double E, QuadratureConfig const& cfg);
/// J_d(E) = int_0^inf t exp(-tE) I0(t/d)^d dt.
GreenValue laplace_bessel_J(int d, double E, QuadratureConfig const& cfg);

/// int_0^inf e^{-t eta} profile(t) dt on geometric panels, for any profile with
/// |profile(t)| <= t^{power-1}/(power-1)! (e^{-t/d} I0(t/d))^d, which makes the
/// certified Laplace tail bound apply.
GreenValue laplace_transform(int d, double eta, int power, std::function<double(double)> const& profile,
                             QuadratureConfig const& cfg);

/// Tensor quadrature on the torus: periodic trapezoidal rule away from the
/// band edge, pyramid-mapped Gauss-Legendre near and at it.
GreenValue direct_I(int d, double E, QuadratureConfig const& cfg);
GreenValue direct_J(int d, double E, QuadratureConfig const& cfg);

/// d = 1: 1/sqrt(E^2 - 1); d = 2: (2/(pi E)) K(1/E).
double closed_form_I(int d, double E);
/// d = 1: E / (E^2 - 1)^{3/2}.
double closed_form_J(int d, double E);

/// Partial integrals of |E - g|^{-power} with a shrinking neighbourhood of the
/// singular set removed. At E = +-1 the neighbourhood is the sup-norm ball of
/// radius delta around the singular point; for |E| < 1 it is the tube
/// {|g - E| < delta} around the level surface.
struct DivergenceProfile {
    std::vector<double> radii;
    std::vector<double> partial;
    /// increments[k] = partial[k+1] - partial[k]
    std::vector<double> increments;
    /// Every increment is positive and none falls below half the first one.
    bool divergent = false;
};

DivergenceProfile divergence_profile(int d, double E, int power, double delta0, int halvings,
                                     QuadratureConfig const& cfg);

} // namespace latspec
