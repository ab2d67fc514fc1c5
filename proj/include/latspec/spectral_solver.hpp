#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include "latspec/config.hpp"
#include "latspec/torus.hpp"

namespace latspec {

struct CriticalCoupling {
    int dim = 0;
    /// 1 / I_d(1); exactly 0 for d <= 2.
    double v_c = 0.0;
    double err_estimate = 0.0;
};

enum class EigenKind { Discrete, ThresholdEmbedded };

struct EigenSolution {
    double E = 1.0;
    double v = 0.0;
    EigenKind kind = EigenKind::Discrete;
    /// Spectral mass of the eigenvalue, I_d(E)^2 / J_d(E).
    double weight = 0.0;
    /// |v I_d(E) - 1| at the returned root.
    double residual = 0.0;
    int iterations = 0;
};

enum class Regime { Subcritical, Critical, Supercritical };

struct SpectrumReport {
    int dim = 0;
    double v = 0.0;
    double v_c = 0.0;
    std::array<double, 2> ac_interval{-1.0, 1.0};
    std::array<double, 2> ess_interval{-1.0, 1.0};
    bool sc_empty = true;
    std::optional<EigenSolution> pp;
    Regime regime = Regime::Subcritical;
};

std::string to_string(EigenKind kind);
std::string to_string(Regime regime);

CriticalCoupling critical_coupling(int d, QuadratureConfig const& cfg);

/// Point spectrum of g + v (phi, .) phi: the root of v I_d(E) = 1 above the band,
/// the threshold eigenvalue E = 1 when d >= 5 and v = v_c, or nothing.
std::optional<EigenSolution> eigenvalue(int d, double v, QuadratureConfig const& cfg);

/// v = 1 / I_d(E), the coupling whose eigenvalue is E.
double coupling_for_energy(int d, double E, QuadratureConfig const& cfg);

/// 1 / (E - g(theta)); +infinity at the singular point for E = 1.
double eigenvector_momentum(int d, double E, TorusPoint const& theta);

/// (2 pi)^{-d} int e^{i x.theta} / (E - g(theta)) dtheta, so that the value at
/// x = 0 is I_d(E).
double eigenvector_position(int d, double E, std::span<int const> x, QuadratureConfig const& cfg);

/// I_d(E)^2 / J_d(E), the squared overlap of the normalized eigenvector with the impurity site.
double point_mass_weight(int d, double E, QuadratureConfig const& cfg);

SpectrumReport classify_spectrum(int d, double v, QuadratureConfig const& cfg);

} // namespace latspec
