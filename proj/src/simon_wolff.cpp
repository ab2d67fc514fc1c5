#include "latspec/simon_wolff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latspec/errors.hpp"
#include "latspec/extrapolation.hpp"
#include "latspec/fourier.hpp"
#include "latspec/quadrature.hpp"

namespace latspec {

namespace {

constexpr double kLadderTop = 1e-2;
constexpr int kLadderLevels = 12;
constexpr int kFitTerms = 6;
// Offset above the band from which the periodic trapezoidal rule is used.
constexpr double kDirectOffset = 0.02;
constexpr double kCriticalMatch = 1e-6;

void check_dim(int d) {
    if (d < 1) throw DomainError("dimension must be >= 1");
}

double trapezoid_resolvent(int d, double x, double eps, QuadratureConfig const& cfg) {
    auto phi = [x, eps](double omg) {
        double const gap = 1.0 - omg - x;
        return eps / (gap * gap + eps * eps);
    };
    int const max_points = std::max(512, cfg.grid_points_per_axis);
    int n = 16;
    double prev = symmetric_trapezoid(d, n, phi, cfg.threads);
    while (true) {
        n *= 2;
        double const cur = symmetric_trapezoid(d, n, phi, cfg.threads);
        double const err = std::abs(cur - prev);
        if (err <= cfg.rel_tol * std::abs(cur)) return cur;
        if (2 * n > max_points) throw NonConvergence("im_resolvent: trapezoidal rule did not converge", cur, err);
        prev = cur;
    }
}

double nearest_critical_distance(int d, double x) {
    double dist = std::numeric_limits<double>::infinity();
    for (double c : critical_values(d)) dist = std::min(dist, std::abs(x - c));
    return dist;
}

} // namespace

std::string to_string(SwSet s) {
    switch (s) {
    case SwSet::X: return "X";
    case SwSet::Y: return "Y";
    case SwSet::Z: return "Z";
    }
    return "?";
}

double im_resolvent(int d, double x, double eps, QuadratureConfig const& cfg) {
    check_dim(d);
    if (!(eps > 0.0) || std::isinf(eps)) throw DomainError("im_resolvent: eps must be > 0");
    if (!std::isfinite(x)) throw DomainError("im_resolvent: x must be finite");
    cfg.validate();
    double const ax = std::abs(x);
    if (ax > 1.0 && d <= 4 && (ax - 1.0) + eps >= kDirectOffset) return trapezoid_resolvent(d, ax, eps, cfg);
    return fourier_bessel_resolvent(d, ax, eps);
}

DosValue dos(int d, double x, QuadratureConfig const& cfg) {
    check_dim(d);
    cfg.validate();
    if (!(std::abs(x) < 1.0)) throw DomainError("dos: x must lie in (-1, 1)");
    DosValue r;
    r.x = x;
    r.rho = state_density(d, std::abs(x));
    r.singular = std::isinf(r.rho);
    return r;
}

ImLimit im_limit(int d, double x, QuadratureConfig const& cfg) {
    check_dim(d);
    cfg.validate();
    double const ax = std::abs(x);
    if (!(ax <= 1.0)) throw DomainError("im_limit: x must lie in [-1, 1]");

    double const dist = nearest_critical_distance(d, ax);
    double top = std::min(kLadderTop, dist / 4.0);
    bool const critical = dist <= kCriticalMatch || top * std::ldexp(1.0, -(kFitTerms - 1)) < cfg.epsilon_floor;
    if (critical) top = kLadderTop;

    ImLimit lim;
    lim.model = critical ? "singular" : "regular";
    lim.exponent = critical ? 0.5 * (d - 2) : 1.0;
    for (int k = 0; k < kLadderLevels; ++k) {
        double const eps = top * std::ldexp(1.0, -k);
        if (eps < cfg.epsilon_floor) break;
        lim.eps.push_back(eps);
        lim.values.push_back(im_resolvent(d, ax, eps, cfg));
    }
    auto const basis = critical ? singular_basis(lim.exponent, kFitTerms) : regular_basis(kFitTerms);
    if (lim.eps.size() < basis.size()) throw NonConvergence("im_limit: eps ladder shorter than the fit", 0.0, 0.0);
    auto const fit = fit_expansion(lim.eps, lim.values, basis);

    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (basis[k].diverges() && fit.coefficients[k] > 3.0 * fit.coefficient_changes[k] + 1e-9) {
            lim.value = std::numeric_limits<double>::infinity();
            lim.err_estimate = fit.coefficient_changes[k];
            return lim;
        }
    }
    double value = 0.0;
    double err = 0.0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (basis[k].constant()) {
            value = fit.coefficients[k];
            err = fit.coefficient_changes[k];
        }
    }
    lim.value = value;
    lim.err_estimate = err;
    return lim;
}

SetMembership classify_point(int d, double x, QuadratureConfig const& cfg) {
    check_dim(d);
    if (!std::isfinite(x)) throw DomainError("classify_point: x must be finite");
    double const ax = std::abs(x);
    SetMembership m;
    m.x = x;
    if (ax > 1.0) {
        m.J_value = greens_J(d, ax, cfg);
        m.member_of = SwSet::Y;
        return m;
    }
    m.im_limit = im_limit(d, ax, cfg);
    if (ax == 1.0 && integrability_class(d, 1.0).J_finite)
        m.J_value = greens_J(d, 1.0, cfg);
    else
        m.J_value = GreenValue::divergent(ax == 1.0 ? d - 5.0 : -2.0);
    if (m.im_limit->value > 3.0 * m.im_limit->err_estimate + 1e-9)
        m.member_of = SwSet::X;
    else if (m.J_value->is_finite())
        m.member_of = SwSet::Y;
    else
        m.member_of = SwSet::Z;
    return m;
}

ScEvidenceReport sc_evidence_report(int d, int grid_size, QuadratureConfig const& cfg, double margin,
                                    std::optional<double> eigenvalue) {
    check_dim(d);
    ScEvidenceReport r;
    r.dim = d;
    if (grid_size == 0) return r;
    if (grid_size < 16) throw DomainError("sc_evidence_report: grid_size must be 0 or >= 16");
    if (!(margin >= 0.0)) throw DomainError("sc_evidence_report: margin must be >= 0");

    std::vector<double> xs;
    double const lo = -1.0 - margin;
    double const step = 2.0 * (1.0 + margin) / (grid_size - 1);
    for (int k = 0; k < grid_size; ++k) xs.push_back(k + 1 == grid_size ? 1.0 + margin : lo + k * step);
    xs.push_back(-1.0);
    xs.push_back(1.0);
    if (eigenvalue) xs.push_back(*eigenvalue);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    r.points.resize(xs.size());
    QuadratureConfig inner = cfg;
    inner.threads = 1;
    parallel_blocks(xs.size(), cfg.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) r.points[i] = classify_point(d, xs[i], inner);
    });

    for (auto const& p : r.points) {
        double const ax = std::abs(p.x);
        if ((ax < 1.0 && p.member_of != SwSet::X) || (ax > 1.0 && p.member_of != SwSet::Y))
            r.violations.push_back(p.x);
        if (p.member_of == SwSet::Z) {
            r.z_points.push_back(p.x);
            if (ax != 1.0) r.z_within_band_edges = false;
        }
    }
    return r;
}

} // namespace latspec
