#include "latspec/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "latspec/errors.hpp"

namespace latspec {

double BasisTerm::operator()(double eps) const {
    double v = power == 0.0 ? 1.0 : std::pow(eps, power);
    if (log_power != 0) v *= std::pow(std::log(1.0 / eps), log_power);
    return v;
}

namespace {

std::vector<double> solve_exact(std::span<double const> eps, std::span<double const> values,
                                std::vector<BasisTerm> const& basis) {
    std::size_t const m = basis.size();
    std::size_t const first = eps.size() - m;
    Eigen::MatrixXd A(m, m);
    Eigen::VectorXd b(m);
    for (std::size_t i = 0; i < m; ++i) {
        // Column scaling by the basis value at the largest sample keeps A well conditioned.
        for (std::size_t k = 0; k < m; ++k) A(i, k) = basis[k](eps[first + i]) / basis[k](eps[first]);
        b(i) = values[first + i];
    }
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    std::vector<double> out(m);
    for (std::size_t k = 0; k < m; ++k) out[k] = c(k) / basis[k](eps[first]);
    return out;
}

} // namespace

ExtrapolationFit fit_expansion(std::span<double const> eps, std::span<double const> values,
                               std::vector<BasisTerm> const& basis) {
    if (eps.size() != values.size()) throw DomainError("fit_expansion: size mismatch");
    if (basis.size() < 2 || eps.size() < basis.size())
        throw DomainError("fit_expansion: need at least as many samples as basis terms (>= 2)");
    ExtrapolationFit fit;
    fit.coefficients = solve_exact(eps, values, basis);
    std::vector<BasisTerm> reduced(basis.begin(), basis.end() - 1);
    auto const coarse = solve_exact(eps, values, reduced);
    fit.coefficient_changes.assign(basis.size(), 0.0);
    for (std::size_t k = 0; k < basis.size(); ++k)
        fit.coefficient_changes[k] = std::abs(fit.coefficients[k] - (k < coarse.size() ? coarse[k] : 0.0));
    return fit;
}

std::vector<BasisTerm> regular_basis(int terms) {
    std::vector<BasisTerm> b;
    for (int k = 0; k < terms; ++k) b.push_back({double(k), 0});
    return b;
}

std::vector<BasisTerm> singular_basis(double alpha, int terms) {
    bool const integer = alpha == std::round(alpha);
    // Candidate terms ordered by their size as eps -> 0.
    std::vector<std::pair<double, BasisTerm>> pool;
    for (int k = 0; k < terms; ++k) {
        pool.push_back({double(k) - 0.25, {double(k), 0}});
        if (integer) {
            if (alpha + k >= 0.0) pool.push_back({alpha + k - 0.5, {alpha + k, 1}});
        } else {
            pool.push_back({alpha + k, {alpha + k, 0}});
        }
    }
    std::stable_sort(pool.begin(), pool.end(), [](auto const& a, auto const& b) { return a.first < b.first; });
    std::vector<BasisTerm> out;
    for (auto const& [key, term] : pool) {
        if (int(out.size()) == terms) break;
        out.push_back(term);
    }
    return out;
}

} // namespace latspec
