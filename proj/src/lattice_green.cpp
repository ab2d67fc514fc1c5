#include "latspec/lattice_green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "latspec/errors.hpp"
#include "latspec/fourier.hpp"
#include "latspec/quadrature.hpp"
#include "latspec/special.hpp"

namespace latspec {

namespace {

constexpr double kPi = std::numbers::pi;
// Offset E - 1 from which the periodic trapezoidal rule is preferred in auto mode.
constexpr double kTrapezoidOffset = 0.1;
// The Laplace tail is truncated once its certified bound drops below this
// fraction of the partial integral (~2^-60), i.e. below double rounding.
constexpr double kTruncationFraction = 8.7e-19;

void check_dim(int d) {
    if (d < 1) throw DomainError("dimension must be >= 1");
}

void check_offset(double eta) {
    if (!(eta >= 0.0) || std::isinf(eta)) throw DomainError("energy must satisfy E >= 1");
}

double inverse_factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return 1.0 / f;
}

bool moment_finite_at_edge(int d, int power) { return d > 2 * power; }

// Certified bound on int_T^inf t^{power-1}/(power-1)! e^{-t eta} (e^{-t/d} I0(t/d))^d dt,
// using e^{-z} I0(z) <= 1.1 / sqrt(2 pi z) for z >= 2.
double laplace_tail_bound(int d, int power, double eta, double T) {
    double const p = 0.5 * d - (power - 1);
    double const pref = std::pow(1.1, d) * std::pow(d / (2.0 * kPi), 0.5 * d) * inverse_factorial(power - 1);
    double bound = std::numeric_limits<double>::infinity();
    if (p > 1.0) bound = pref * std::pow(T, 1.0 - p) / (p - 1.0);
    if (eta > 0.0) bound = std::min(bound, pref * std::pow(T, -p) * std::exp(-T * eta) / eta);
    return bound;
}

GreenValue laplace_panels(int d, double eta, int power, std::function<double(double)> const& profile,
                          QuadratureConfig const& cfg) {
    constexpr int kNodes = 20;
    auto const& coarse = gauss_legendre(kNodes);
    auto const& fine = gauss_legendre(2 * kNodes);
    auto integrand = [&](double t) {
        double const f = profile(t);
        return f == 0.0 ? 0.0 : f * std::exp(-t * eta);
    };
    auto panel = [&](GaussRule const& rule, double a, double b) {
        double const half = 0.5 * (b - a);
        double const mid = 0.5 * (a + b);
        PairwiseSum s;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) s.add(rule.weights[i] * integrand(mid + half * rule.nodes[i]));
        return half * s.result();
    };

    double const fixed_end = cfg.laplace_truncation;
    PairwiseSum value;
    PairwiseSum refinement;
    double a = 0.0;
    double b = std::min(1.0, 1.0 / (1.0 + eta));
    double tail = std::numeric_limits<double>::infinity();
    for (int p = 0; p < 1000; ++p) {
        if (fixed_end > 0.0) b = std::min(b, fixed_end);
        double const qf = panel(fine, a, b);
        double const qc = panel(coarse, a, b);
        value.add(qf);
        refinement.add(std::abs(qf - qc));
        a = b;
        b *= 2.0;
        if (a / d >= 2.0) tail = laplace_tail_bound(d, power, eta, a);
        if (fixed_end > 0.0) {
            if (a >= fixed_end) break;
        } else if (tail <= kTruncationFraction * std::abs(value.result())) {
            break;
        }
        if (!std::isfinite(b)) break;
    }
    double const result = value.result();
    double const err = refinement.result() + tail;
    if (!(err <= cfg.rel_tol * std::abs(result)))
        throw NonConvergence("Laplace-Bessel quadrature did not reach the requested tolerance", result, err);
    return GreenValue::finite(result, err);
}

GreenValue laplace_moment(int d, double eta, int power, QuadratureConfig const& cfg) {
    double const norm = inverse_factorial(power - 1);
    auto profile = [d, power, norm](double t) {
        return norm * std::pow(t, power - 1) * std::exp(d * special::log_scaled_bessel_i0(t / d));
    };
    return laplace_panels(d, eta, power, profile, cfg);
}

// Periodic trapezoidal rule, doubled until two successive grids agree.
GreenValue trapezoid_moment(int d, double eta, int power, QuadratureConfig const& cfg) {
    auto phi = [eta, power](double omg) { return std::pow(eta + omg, -power); };
    int const max_points = std::max(16, cfg.grid_points_per_axis);
    int n = 16;
    double prev = symmetric_trapezoid(d, n, phi, cfg.threads);
    while (true) {
        n *= 2;
        double const cur = symmetric_trapezoid(d, n, phi, cfg.threads);
        double const err = std::abs(cur - prev);
        if (err <= cfg.rel_tol * std::abs(cur)) return GreenValue::finite(cur, err);
        if (2 * n > max_points) throw NonConvergence("trapezoidal rule did not converge on the allowed grid", cur, err);
        prev = cur;
    }
}

// Gauss-Legendre in pyramid coordinates with panels graded toward theta = 0.
GreenValue pyramid_moment(int d, double eta, int power, QuadratureConfig const& cfg) {
    auto phi = [eta, power](double omg) { return std::pow(eta + omg, -power); };
    static constexpr std::array<std::pair<int, int>, 7> levels{
        {{10, 6}, {14, 8}, {20, 12}, {28, 16}, {40, 24}, {56, 32}, {80, 48}}};
    auto const breaks = graded_breaks(eta);
    double prev = std::numeric_limits<double>::quiet_NaN();
    double err = std::numeric_limits<double>::infinity();
    double cur = 0.0;
    for (auto const& [nx, nu] : levels) {
        double const points = double(breaks.size() - 1) * nx * std::pow(double(nu), d - 1) / std::tgamma(double(d));
        if (points > 4e8) break;
        cur = pyramid_integral(d, composite_gauss(breaks, nx), nu, phi, cfg.threads);
        if (!std::isnan(prev)) {
            err = std::abs(cur - prev);
            if (err <= cfg.rel_tol * std::abs(cur)) return GreenValue::finite(cur, err);
        }
        prev = cur;
    }
    throw NonConvergence("pyramid quadrature did not converge", cur, err);
}

GreenValue direct_moment(int d, double eta, int power, QuadratureConfig const& cfg) {
    if (eta >= kTrapezoidOffset) return trapezoid_moment(d, eta, power, cfg);
    return pyramid_moment(d, eta, power, cfg);
}

GreenValue green_moment(int d, double eta, int power, QuadratureConfig const& cfg) {
    check_dim(d);
    check_offset(eta);
    cfg.validate();
    if (eta == 0.0 && !moment_finite_at_edge(d, power)) return GreenValue::divergent(d - 1 - 2 * power);
    Backend backend = cfg.backend;
    if (backend == Backend::Auto) backend = (eta >= kTrapezoidOffset && d <= 4) ? Backend::Direct : Backend::Laplace;
    if (backend == Backend::Direct) return direct_moment(d, eta, power, cfg);
    return laplace_moment(d, eta, power, cfg);
}

double offset_of(double E) {
    if (!(E >= 1.0)) throw DomainError("energy must satisfy E >= 1");
    return E - 1.0;
}

void require_finite_at(int d, double eta, int power) {
    check_dim(d);
    check_offset(eta);
    if (eta == 0.0 && !moment_finite_at_edge(d, power))
        throw DomainError("integral diverges at E = 1 in this dimension");
}

} // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("QuadratureConfig: rel_tol must be > 0");
    if (grid_points_per_axis < 8 || grid_points_per_axis % 2 != 0)
        throw DomainError("QuadratureConfig: grid_points_per_axis must be even and >= 8");
    if (laplace_truncation < 0.0) throw DomainError("QuadratureConfig: laplace_truncation must be > 0 (or 0 for auto)");
    if (!(epsilon_floor > 0.0)) throw DomainError("QuadratureConfig: epsilon_floor must be > 0");
}

GreenValue GreenValue::finite(double value, double err_estimate) {
    GreenValue g;
    g.kind = Kind::Finite;
    g.value = value;
    g.err_estimate = err_estimate;
    return g;
}

GreenValue GreenValue::divergent(double exponent) {
    GreenValue g;
    g.kind = Kind::Divergent;
    g.divergence_exponent = exponent;
    return g;
}

Integrability integrability_class(int d, double E) {
    check_dim(d);
    if (!(E >= -1.0)) throw DomainError("integrability_class: E must be >= -1");
    if (std::abs(E) > 1.0) return {true, true};
    if (std::abs(E) == 1.0) return {moment_finite_at_edge(d, 1), moment_finite_at_edge(d, 2)};
    return {false, false};
}

GreenValue greens_I(int d, double E, QuadratureConfig const& cfg) { return green_moment(d, offset_of(E), 1, cfg); }
GreenValue greens_J(int d, double E, QuadratureConfig const& cfg) { return green_moment(d, offset_of(E), 2, cfg); }
GreenValue greens_I_above_edge(int d, double eta, QuadratureConfig const& cfg) { return green_moment(d, eta, 1, cfg); }
GreenValue greens_J_above_edge(int d, double eta, QuadratureConfig const& cfg) { return green_moment(d, eta, 2, cfg); }

GreenValue laplace_transform(int d, double eta, int power, std::function<double(double)> const& profile,
                             QuadratureConfig const& cfg) {
    check_dim(d);
    check_offset(eta);
    cfg.validate();
    if (power < 1) throw DomainError("laplace_transform: power must be >= 1");
    return laplace_panels(d, eta, power, profile, cfg);
}

GreenValue laplace_bessel_I(int d, double E, QuadratureConfig const& cfg) {
    double const eta = offset_of(E);
    require_finite_at(d, eta, 1);
    cfg.validate();
    return laplace_moment(d, eta, 1, cfg);
}

GreenValue laplace_bessel_J(int d, double E, QuadratureConfig const& cfg) {
    double const eta = offset_of(E);
    require_finite_at(d, eta, 2);
    cfg.validate();
    return laplace_moment(d, eta, 2, cfg);
}

GreenValue direct_I(int d, double E, QuadratureConfig const& cfg) {
    double const eta = offset_of(E);
    require_finite_at(d, eta, 1);
    cfg.validate();
    return direct_moment(d, eta, 1, cfg);
}

GreenValue direct_J(int d, double E, QuadratureConfig const& cfg) {
    double const eta = offset_of(E);
    require_finite_at(d, eta, 2);
    cfg.validate();
    return direct_moment(d, eta, 2, cfg);
}

double closed_form_I(int d, double E) {
    if (!(E > 1.0)) throw DomainError("closed_form_I: requires E > 1");
    if (d == 1) return 1.0 / std::sqrt((E - 1.0) * (E + 1.0));
    if (d == 2) return 2.0 / (kPi * E) * special::elliptic_k(1.0 / E);
    throw DomainError("closed_form_I: only d = 1, 2 have a closed form");
}

double closed_form_J(int d, double E) {
    if (!(E > 1.0)) throw DomainError("closed_form_J: requires E > 1");
    if (d != 1) throw DomainError("closed_form_J: only d = 1 has a closed form");
    double const q = (E - 1.0) * (E + 1.0);
    return E / (q * std::sqrt(q));
}

DivergenceProfile divergence_profile(int d, double E, int power, double delta0, int halvings,
                                     QuadratureConfig const& cfg) {
    check_dim(d);
    if (!(std::abs(E) <= 1.0)) throw DomainError("divergence_profile: E must lie in [-1, 1]");
    if (power != 1 && power != 2) throw DomainError("divergence_profile: power must be 1 or 2");
    if (!(delta0 > 0.0) || halvings < 1) throw DomainError("divergence_profile: need delta0 > 0 and halvings >= 1");

    DivergenceProfile prof;
    for (int k = 0; k <= halvings; ++k) prof.radii.push_back(delta0 * std::ldexp(1.0, -k));

    if (std::abs(E) == 1.0) {
        // g -> -g under theta -> theta + pi, so E = -1 mirrors E = 1.
        if (delta0 >= kPi) throw DomainError("divergence_profile: ball radius must be < pi");
        auto phi = [power](double omg) { return std::pow(omg, -power); };
        constexpr int nx = 24;
        constexpr int nu = 16;
        std::vector<double> breaks{delta0};
        while (breaks.back() * 2.0 < kPi) breaks.push_back(breaks.back() * 2.0);
        breaks.push_back(kPi);
        double partial = pyramid_integral(d, composite_gauss(breaks, nx), nu, phi, cfg.threads);
        prof.partial.push_back(partial);
        for (int k = 0; k < halvings; ++k) {
            std::array<double, 2> const shell{prof.radii[k + 1], prof.radii[k]};
            double const inc = pyramid_integral(d, composite_gauss(shell, nx), nu, phi, cfg.threads);
            prof.increments.push_back(inc);
            partial += inc;
            prof.partial.push_back(partial);
        }
    } else {
        // Co-area form: the torus integral over {|g - E| >= delta} equals
        // int_{|s - E| >= delta} rho_d(s) |s - E|^{-power} ds.
        auto weight = [&](double s) { return state_density(d, s) * std::pow(std::abs(s - E), -power); };
        std::vector<double> cuts{-1.0, 1.0, E - delta0, E + delta0};
        for (double c : critical_values(d))
            if (std::none_of(cuts.begin(), cuts.end(), [c](double b) { return std::abs(b - c) < 1e-12; }))
                cuts.push_back(c);
        std::sort(cuts.begin(), cuts.end());
        thread_local boost::math::quadrature::tanh_sinh<double> integrator;
        PairwiseSum outer;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double const lo = std::max(cuts[i], -1.0);
            double const hi = std::min(cuts[i + 1], 1.0);
            if (!(hi > lo)) continue;
            if (lo >= E - delta0 && hi <= E + delta0) continue;
            outer.add(integrator.integrate(weight, lo, hi, 1e-8));
        }
        double partial = outer.result();
        prof.partial.push_back(partial);
        auto const& gl = gauss_legendre(16);
        for (int k = 0; k < halvings; ++k) {
            double const a = prof.radii[k + 1];
            double const b = prof.radii[k];
            PairwiseSum inc;
            for (int i = 0; i < 16; ++i) {
                double const s = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
                double const dens = state_density(d, E + s) + state_density(d, E - s);
                inc.add(0.5 * (b - a) * gl.weights[i] * dens * std::pow(s, -power));
            }
            prof.increments.push_back(inc.result());
            partial += inc.result();
            prof.partial.push_back(partial);
        }
    }

    double const first = prof.increments.front();
    prof.divergent = first > 0.0 && std::all_of(prof.increments.begin(), prof.increments.end(),
                                                 [first](double inc) { return inc > 0.0 && inc >= 0.5 * first; });
    return prof;
}

} // namespace latspec
