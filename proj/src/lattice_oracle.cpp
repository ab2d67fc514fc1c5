#include "latspec/lattice_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "latspec/errors.hpp"
#include "latspec/quadrature.hpp"
#include "latspec/spectral_solver.hpp"

namespace latspec {

namespace {

constexpr std::size_t kDotChunk = 4096;
// Memory budget for the Krylov basis, in doubles.
constexpr double kBasisBudget = 4e7;
constexpr int kMaxKrylov = 40;

double dot(std::span<double const> a, std::span<double const> b, int threads) {
    std::size_t const n = a.size();
    std::size_t const chunks = (n + kDotChunk - 1) / kDotChunk;
    return chunked_sum(chunks, threads, [&](std::size_t c) {
        std::size_t const lo = c * kDotChunk;
        std::size_t const hi = std::min(n, lo + kDotChunk);
        PairwiseSum s;
        for (std::size_t i = lo; i < hi; ++i) s.add(a[i] * b[i]);
        return s.result();
    });
}

double norm(std::span<double const> a, int threads) { return std::sqrt(dot(a, a, threads)); }

void axpy(double alpha, std::span<double const> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> x) {
    for (double& e : x) e *= alpha;
}

} // namespace

std::size_t LatticeHamiltonian::sites() const {
    std::size_t n = 1;
    for (int j = 0; j < dim; ++j) n *= std::size_t(side());
    return n;
}

std::size_t LatticeHamiltonian::index(std::span<int const> x) const {
    if (int(x.size()) != dim) throw DomainError("LatticeHamiltonian: site dimension mismatch");
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (int j = 0; j < dim; ++j) {
        if (std::abs(x[j]) > half_width) throw DomainError("LatticeHamiltonian: site outside the box");
        idx += std::size_t(x[j] + half_width) * stride;
        stride *= std::size_t(side());
    }
    return idx;
}

std::size_t LatticeHamiltonian::origin() const {
    std::vector<int> zero(dim, 0);
    return index(zero);
}

void LatticeHamiltonian::validate() const {
    if (dim < 1 || dim > 6) throw DomainError("LatticeHamiltonian: dimension must be in 1..6");
    if (half_width < 1) throw DomainError("LatticeHamiltonian: half width must be >= 1");
    if (!(v >= 0.0) || std::isinf(v)) throw DomainError("LatticeHamiltonian: coupling must be finite and >= 0");
    if (std::pow(double(side()), dim) > 5e7) throw DomainError("LatticeHamiltonian: box too large");
}

std::vector<double> apply(LatticeHamiltonian const& h, std::span<double const> psi, int threads) {
    h.validate();
    std::size_t const n = h.sites();
    if (psi.size() != n) throw DomainError("apply: vector length does not match the box");
    int const side = h.side();
    double const hop = 1.0 / (2.0 * h.dim);
    bool const periodic = h.bc == Boundary::Periodic;
    std::vector<std::size_t> strides(h.dim);
    for (int j = 0, s = 1; j < h.dim; ++j, s *= side) strides[j] = std::size_t(s);
    std::size_t const origin = h.origin();

    std::vector<double> out(n, 0.0);
    parallel_blocks(n, threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            double acc = 0.0;
            for (int j = 0; j < h.dim; ++j) {
                std::size_t const s = strides[j];
                int const c = int((i / s) % std::size_t(side));
                if (c > 0)
                    acc += psi[i - s];
                else if (periodic)
                    acc += psi[i + s * std::size_t(side - 1)];
                if (c < side - 1)
                    acc += psi[i + s];
                else if (periodic)
                    acc += psi[i - s * std::size_t(side - 1)];
            }
            out[i] = hop * acc;
        }
    });
    out[origin] += h.v * psi[origin];
    return out;
}

std::vector<double> start_vector(LatticeHamiltonian const& h) {
    h.validate();
    std::vector<double> q(h.sites(), 1.0);
    q[h.origin()] += 10.0;
    scale(1.0 / norm(q, 1), q);
    return q;
}

EigenPair extremal_eigenpair(LatticeHamiltonian const& h, double tol, int threads, int max_restarts) {
    h.validate();
    if (!(tol > 0.0)) throw DomainError("extremal_eigenpair: tol must be > 0");
    std::size_t const n = h.sites();
    int const m = int(std::clamp<double>(kBasisBudget / double(n), 2.0, double(std::min<std::size_t>(kMaxKrylov, n))));

    EigenPair pair;
    std::vector<double> y = start_vector(h);
    std::vector<std::vector<double>> Q;
    for (int restart = 0; restart < max_restarts; ++restart) {
        Q.assign(1, y);
        std::vector<double> alpha, beta;
        for (int j = 0; j < m; ++j) {
            std::vector<double> w = apply(h, Q[j], threads);
            ++pair.matvecs;
            alpha.push_back(dot(Q[j], w, threads));
            // Two passes of Gram-Schmidt against the whole basis.
            for (int pass = 0; pass < 2; ++pass)
                for (auto const& q : Q) axpy(-dot(q, w, threads), q, w);
            double const b = norm(w, threads);
            if (j + 1 == m || b <= 1e-13 * std::max(1.0, std::abs(alpha.back()))) break;
            beta.push_back(b);
            scale(1.0 / b, w);
            Q.push_back(std::move(w));
        }
        int const k = int(alpha.size());
        Eigen::VectorXd diag(k), sub(std::max(k - 1, 0));
        for (int i = 0; i < k; ++i) diag(i) = alpha[i];
        for (int i = 0; i + 1 < k; ++i) sub(i) = beta[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        Eigen::VectorXd const s = tri.eigenvectors().col(k - 1);

        std::fill(y.begin(), y.end(), 0.0);
        for (int i = 0; i < k; ++i) axpy(s(i), Q[i], y);
        scale(1.0 / norm(y, threads), y);
        std::vector<double> hy = apply(h, y, threads);
        ++pair.matvecs;
        double const lambda = dot(y, hy, threads);
        axpy(-lambda, y, hy);
        double const residual = norm(hy, threads);
        pair.lambda = lambda;
        pair.residual = residual;
        pair.restarts = restart + 1;
        if (residual <= tol) {
            // Fix the sign so the origin amplitude is non-negative.
            if (y[h.origin()] < 0.0) scale(-1.0, y);
            pair.vector = std::move(y);
            return pair;
        }
    }
    throw IterationLimit("extremal_eigenpair: residual did not reach tol", pair.lambda, pair.residual, y);
}

double decay_rate(EigenPair const& pair, LatticeHamiltonian const& h, double tol) {
    h.validate();
    if (pair.vector.size() != h.sites()) throw DomainError("decay_rate: eigenvector does not match the box");
    if (!(pair.lambda > 1.0 + 10.0 * tol)) throw InsufficientDecay("decay_rate: no bound state above the band");
    std::vector<double> r, y;
    std::vector<int> x(h.dim, 0);
    for (int k = 0; k <= h.half_width; ++k) {
        x[0] = k;
        double const a = std::abs(pair.vector[h.index(x)]);
        if (a <= 1e-12) break;
        r.push_back(k);
        y.push_back(-std::log(a));
    }
    if (r.size() < 5) throw InsufficientDecay("decay_rate: fewer than 5 sites above 1e-12 along the axis");
    double const n = double(r.size());
    double mr = 0.0, my = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        mr += r[i] / n;
        my += y[i] / n;
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        sxy += (r[i] - mr) * (y[i] - my);
        sxx += (r[i] - mr) * (r[i] - mr);
    }
    return sxy / sxx;
}

std::vector<ConvergenceRow> convergence_study(int d, double v, std::vector<int> const& half_widths, Boundary bc,
                                              double tol, QuadratureConfig const& cfg) {
    if (!std::is_sorted(half_widths.begin(), half_widths.end()) ||
        std::adjacent_find(half_widths.begin(), half_widths.end()) != half_widths.end())
        throw DomainError("convergence_study: box sizes must be strictly increasing");
    auto const analytic = eigenvalue(d, v, cfg);
    std::vector<ConvergenceRow> rows;
    for (int N : half_widths) {
        LatticeHamiltonian h{d, N, v, bc};
        auto const pair = extremal_eigenpair(h, tol, cfg.threads);
        ConvergenceRow row;
        row.half_width = N;
        row.lambda = pair.lambda;
        row.residual = pair.residual;
        if (analytic) row.deviation = pair.lambda - analytic->E;
        double const o = pair.vector[h.origin()];
        row.origin_weight = o * o;
        row.matvecs = pair.matvecs;
        rows.push_back(row);
    }
    return rows;
}

} // namespace latspec
