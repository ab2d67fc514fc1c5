#pragma once

#include <span>
#include <vector>

namespace latspec {

/// Basis function eps^power * log(1/eps)^log_power.
struct BasisTerm {
    double power = 0.0;
    int log_power = 0;
    double operator()(double eps) const;
    /// Unbounded as eps -> 0.
    bool diverges() const { return power < 0.0 || (power == 0.0 && log_power > 0); }
    bool constant() const { return power == 0.0 && log_power == 0; }
};

struct ExtrapolationFit {
    std::vector<double> coefficients;
    /// Change of the fitted coefficients when the last basis term is dropped.
    std::vector<double> coefficient_changes;
};

/// Fits values[i] = sum_k c_k basis[k](eps[i]) exactly on the last basis.size()
/// samples (the smallest eps if the ladder is decreasing), and again with one
/// term and one sample fewer to estimate the error of every coefficient.
ExtrapolationFit fit_expansion(std::span<double const> eps, std::span<double const> values,
                               std::vector<BasisTerm> const& basis);

/// Basis {1, eps, eps^2, ...} with `terms` entries.
std::vector<BasisTerm> regular_basis(int terms);

/// Basis for the Poisson smoothing of a density with a local singularity
/// |s - c|^alpha: non-integer alpha gives {eps^alpha, 1, eps, eps^{alpha+1}, ...};
/// integer alpha gives {eps^alpha log(1/eps), 1, eps, eps log(1/eps), ...}.
std::vector<BasisTerm> singular_basis(double alpha, int terms);

} // namespace latspec
