#include "latspec/spectral_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "latspec/errors.hpp"
#include "latspec/lattice_green.hpp"
#include "latspec/special.hpp"

namespace latspec {

namespace {

constexpr double kResidualTarget = 1e-12;
constexpr int kMaxRootIterations = 200;

void check_dim(int d) {
    if (d < 1) throw DomainError("dimension must be >= 1");
}

void check_coupling(double v) {
    if (!(v >= 0.0) || std::isinf(v)) throw DomainError("coupling must be finite and >= 0");
}

// Eigenvector square integrability: E > 1, or E = 1 with d >= 5.
void check_l2(int d, double E) {
    if (!(E >= 1.0) || std::isinf(E)) throw DomainError("eigenvector requires finite E >= 1");
    if (E == 1.0 && !integrability_class(d, 1.0).J_finite)
        throw DomainError("1 / (1 - g) is not square integrable for d <= 4");
}

bool critical_tie(double v, double v_c, QuadratureConfig const& cfg) {
    return std::abs(v - v_c) <= std::max(1e-12, cfg.rel_tol * v_c);
}

double weight_above_edge(int d, double eta, QuadratureConfig const& cfg) {
    double const I = greens_I_above_edge(d, eta, cfg).value;
    double const J = greens_J_above_edge(d, eta, cfg).value;
    return I * I / J;
}

} // namespace

std::string to_string(EigenKind kind) { return kind == EigenKind::Discrete ? "discrete" : "threshold-embedded"; }

std::string to_string(Regime regime) {
    switch (regime) {
    case Regime::Subcritical: return "subcritical";
    case Regime::Critical: return "critical";
    case Regime::Supercritical: return "supercritical";
    }
    return "unknown";
}

CriticalCoupling critical_coupling(int d, QuadratureConfig const& cfg) {
    check_dim(d);
    CriticalCoupling c;
    c.dim = d;
    if (!integrability_class(d, 1.0).I_finite) return c;
    auto const I = greens_I(d, 1.0, cfg);
    c.v_c = 1.0 / I.value;
    c.err_estimate = I.err_estimate / (I.value * I.value);
    return c;
}

std::optional<EigenSolution> eigenvalue(int d, double v, QuadratureConfig const& cfg) {
    check_dim(d);
    check_coupling(v);
    cfg.validate();
    if (v == 0.0) return std::nullopt;

    bool const edge_finite = integrability_class(d, 1.0).I_finite;
    double f_edge = std::numeric_limits<double>::infinity();
    if (edge_finite) {
        double const I_edge = greens_I(d, 1.0, cfg).value;
        double const v_c = 1.0 / I_edge;
        bool const tie = critical_tie(v, v_c, cfg);
        if (tie && integrability_class(d, 1.0).J_finite) {
            EigenSolution s;
            s.E = 1.0;
            s.v = v;
            s.kind = EigenKind::ThresholdEmbedded;
            s.weight = weight_above_edge(d, 0.0, cfg);
            s.residual = std::abs(v * I_edge - 1.0);
            return s;
        }
        if (tie || v < v_c) return std::nullopt;
        f_edge = v * I_edge - 1.0;
    }

    // f(eta) = v I_d(1 + eta) - 1 decreases strictly in eta; f(v) < 0 since I_d(E) < 1/(E - 1).
    auto f = [&](double eta) { return v * greens_I_above_edge(d, eta, cfg).value - 1.0; };
    double lo = 0.0;
    double f_lo = f_edge;
    double hi = v;
    double f_hi = f(hi);
    int iterations = 1;
    for (int grow = 0; f_hi >= 0.0; ++grow) {
        if (grow == 60) throw BracketFailure("eigenvalue: residual does not change sign above the band");
        lo = hi;
        f_lo = f_hi;
        hi *= 2.0;
        f_hi = f(hi);
        ++iterations;
    }

    double best = hi;
    double f_best = f_hi;
    double width_before = hi - lo;
    double width_prev = width_before;
    for (int it = 0; it < kMaxRootIterations; ++it) {
        double x;
        bool const slow = (hi - lo) > 0.5 * width_before;
        if (lo == 0.0 && !std::isfinite(f_lo)) {
            x = hi / 16.0;
        } else if (lo > 0.0 && hi / lo > 8.0) {
            x = std::sqrt(lo * hi);
        } else if (slow && it >= 2) {
            x = lo == 0.0 ? hi / 16.0 : 0.5 * (lo + hi);
        } else {
            x = hi - f_hi * (hi - lo) / (f_hi - f_lo);
            double const margin = 1e-3 * (hi - lo);
            if (!(x > lo + margin && x < hi - margin)) x = lo == 0.0 ? hi / 16.0 : 0.5 * (lo + hi);
        }
        width_before = width_prev;
        width_prev = hi - lo;
        double const fx = f(x);
        ++iterations;
        if (std::abs(fx) < std::abs(f_best)) {
            best = x;
            f_best = fx;
        }
        if (std::abs(fx) <= kResidualTarget) break;
        if (fx > 0.0) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    }

    // One Newton step with f'(eta) = -v J_d(1 + eta).
    double const I_best = greens_I_above_edge(d, best, cfg).value;
    double const J_best = greens_J_above_edge(d, best, cfg).value;
    double const step = best + f_best / (v * J_best);
    if (step > lo && step < hi && step != best) {
        double const f_step = f(step);
        ++iterations;
        if (std::abs(f_step) < std::abs(f_best)) {
            best = step;
            f_best = f_step;
        }
    }

    EigenSolution s;
    s.E = 1.0 + best;
    s.v = v;
    s.kind = EigenKind::Discrete;
    s.weight = best == step ? weight_above_edge(d, best, cfg) : I_best * I_best / J_best;
    s.residual = std::abs(f_best);
    s.iterations = iterations;
    return s;
}

double coupling_for_energy(int d, double E, QuadratureConfig const& cfg) {
    check_dim(d);
    if (!(E >= 1.0) || std::isinf(E)) throw DomainError("coupling_for_energy: E must be finite and >= 1");
    if (E == 1.0 && !integrability_class(d, 1.0).I_finite)
        throw DomainError("coupling_for_energy: I_d(1) diverges for d <= 2");
    return 1.0 / greens_I(d, E, cfg).value;
}

double eigenvector_momentum(int d, double E, TorusPoint const& theta) {
    check_dim(d);
    if (theta.dim() != d) throw DomainError("eigenvector_momentum: point dimension mismatch");
    check_l2(d, E);
    double const gap = (E - 1.0) + one_minus_symbol(theta.coords());
    if (gap == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / gap;
}

double eigenvector_position(int d, double E, std::span<int const> x, QuadratureConfig const& cfg) {
    check_dim(d);
    if (int(x.size()) != d) throw DomainError("eigenvector_position: site dimension mismatch");
    check_l2(d, E);
    cfg.validate();
    if (d == 1) {
        double const q = std::sqrt((E - 1.0) * (E + 1.0));
        return std::pow(E - q, std::abs(x[0])) / q;
    }
    // 1/(E - g) = int_0^inf e^{-tE} e^{t g} dt and the Fourier coefficients of
    // e^{(t/d) cos theta} are I_n(t/d).
    std::vector<int> sites(x.begin(), x.end());
    auto profile = [d, sites](double t) {
        double p = 1.0;
        for (int n : sites) {
            p *= special::scaled_bessel_in(n, t / d);
            if (p == 0.0) break;
        }
        return p;
    };
    return laplace_transform(d, E - 1.0, 1, profile, cfg).value;
}

double point_mass_weight(int d, double E, QuadratureConfig const& cfg) {
    check_dim(d);
    check_l2(d, E);
    return weight_above_edge(d, E - 1.0, cfg);
}

SpectrumReport classify_spectrum(int d, double v, QuadratureConfig const& cfg) {
    check_dim(d);
    check_coupling(v);
    SpectrumReport r;
    r.dim = d;
    r.v = v;
    r.v_c = critical_coupling(d, cfg).v_c;
    if (critical_tie(v, r.v_c, cfg))
        r.regime = Regime::Critical;
    else
        r.regime = v < r.v_c ? Regime::Subcritical : Regime::Supercritical;
    r.pp = eigenvalue(d, v, cfg);
    return r;
}

} // namespace latspec
