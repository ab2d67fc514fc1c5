#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "latspec/config.hpp"

namespace latspec {

enum class Boundary { Dirichlet, Periodic };

/// Nearest-neighbour average on the box {-N..N}^d plus v at the origin.
/// Sites are numbered with the first coordinate running fastest.
struct LatticeHamiltonian {
    int dim = 1;
    int half_width = 1;
    double v = 0.0;
    Boundary bc = Boundary::Dirichlet;

    int side() const { return 2 * half_width + 1; }
    std::size_t sites() const;
    std::size_t index(std::span<int const> x) const;
    std::size_t origin() const;
    void validate() const;
};

struct EigenPair {
    double lambda = 0.0;
    std::vector<double> vector;
    double residual = 0.0;
    int restarts = 0;
    int matvecs = 0;
};

std::vector<double> apply(LatticeHamiltonian const& h, std::span<double const> psi, int threads = 1);

/// normalized(ones + 10 * delta_0)
std::vector<double> start_vector(LatticeHamiltonian const& h);

/// Largest eigenvalue by explicitly restarted Lanczos with full
/// reorthogonalization, stopped once ||H psi - lambda psi|| <= tol.
EigenPair extremal_eigenpair(LatticeHamiltonian const& h, double tol, int threads = 1, int max_restarts = 2000);

/// Least-squares slope of -log|psi| along the positive first axis, over sites with |psi| > 1e-12.
double decay_rate(EigenPair const& pair, LatticeHamiltonian const& h, double tol);

struct ConvergenceRow {
    int half_width = 0;
    double lambda = 0.0;
    double residual = 0.0;
    /// lambda - E when the infinite-volume operator has an eigenvalue E.
    std::optional<double> deviation;
    /// |psi(0)|^2 of the unit eigenvector.
    double origin_weight = 0.0;
    int matvecs = 0;
};

std::vector<ConvergenceRow> convergence_study(int d, double v, std::vector<int> const& half_widths, Boundary bc,
                                              double tol, QuadratureConfig const& cfg);

} // namespace latspec
