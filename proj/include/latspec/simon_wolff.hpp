#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latspec/config.hpp"
#include "latspec/lattice_green.hpp"

namespace latspec {

/// X: positive boundary value of Im <(g - x - i0)^{-1}>; Y: finite J_d(x); Z: neither.
enum class SwSet { X, Y, Z };

std::string to_string(SwSet s);

/// Extrapolated eps -> 0 limit of im_resolvent with the raw ladder it came from.
struct ImLimit {
    double value = 0.0;
    double err_estimate = 0.0;
    /// "regular" or "singular" (critical value of g).
    std::string model;
    double exponent = 0.0;
    std::vector<double> eps;
    std::vector<double> values;
};

struct SetMembership {
    double x = 0.0;
    SwSet member_of = SwSet::Z;
    std::optional<ImLimit> im_limit;
    std::optional<GreenValue> J_value;
};

struct DosValue {
    double x = 0.0;
    double rho = 0.0;
    /// rho is +infinity (d = 2 at x = 0).
    bool singular = false;
};

/// (2 pi)^{-d} int eps / ((g - x)^2 + eps^2) dtheta.
double im_resolvent(int d, double x, double eps, QuadratureConfig const& cfg);

/// Density of states of g on (-1, 1).
DosValue dos(int d, double x, QuadratureConfig const& cfg);

/// Limit of im_resolvent(d, x, eps) as eps -> 0 for |x| <= 1, by fitting the
/// finest samples of a ratio-2 eps ladder with a local expansion. Away from the
/// critical values of g the expansion is a power series in eps; at a critical
/// value it carries eps^{(d-2)/2} (times log(1/eps) when that power is an integer).
/// A positive coefficient on a term that blows up gives +infinity.
ImLimit im_limit(int d, double x, QuadratureConfig const& cfg);

/// |x| > 1 goes to Y. Otherwise X when the Im limit exceeds three times its
/// error estimate, then Y when J_d(x) is finite, else Z.
SetMembership classify_point(int d, double x, QuadratureConfig const& cfg);

struct ScEvidenceReport {
    int dim = 0;
    std::vector<SetMembership> points;
    /// Points in (-1, 1) not in X, or with |x| > 1 not in Y.
    std::vector<double> violations;
    std::vector<double> z_points;
    /// Every Z point is one of -1, 1.
    bool z_within_band_edges = true;
};

/// `grid_size` equispaced points over [-1 - margin, 1 + margin] plus the band
/// edges and the optional eigenvalue. grid_size = 0 gives an empty report.
ScEvidenceReport sc_evidence_report(int d, int grid_size, QuadratureConfig const& cfg, double margin = 0.5,
                                    std::optional<double> eigenvalue = std::nullopt);

} // namespace latspec
