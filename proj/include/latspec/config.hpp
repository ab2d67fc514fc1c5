#pragma once

namespace latspec {

enum class Backend { Auto, Direct, Laplace };

/// Tolerances and resolution knobs shared by every integral in the library.
struct QuadratureConfig {
    double rel_tol = 1e-10;
    /// Upper limit of the Laplace representation; 0 selects it from the certified tail bound.
    double laplace_truncation = 0.0;
    /// Starting resolution of the periodic trapezoidal rule (doubled until converged).
    int grid_points_per_axis = 256;
    double epsilon_floor = 1e-6;
    Backend backend = Backend::Auto;
    /// Worker count for chunked sums; results do not depend on it.
    int threads = 1;

    void validate() const;
};

} // namespace latspec
