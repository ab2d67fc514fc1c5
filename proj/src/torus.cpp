#include "latspec/torus.hpp"

#include <algorithm>
#include <numbers>

#include "latspec/errors.hpp"

namespace latspec {

TorusPoint::TorusPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw DomainError("TorusPoint: dimension must be >= 1");
    for (double c : coords_) {
        if (!(c >= -std::numbers::pi && c <= std::numbers::pi))
            throw DomainError("TorusPoint: coordinates must lie in [-pi, pi]");
    }
}

SymbolValue symbol(TorusPoint const& theta) {
    double sum = 0.0;
    for (double c : theta.coords()) sum += std::cos(c);
    return {sum / theta.dim()};
}

double one_minus_symbol(std::span<double const> theta) {
    double sum = 0.0;
    for (double c : theta) {
        double const s = std::sin(0.5 * c);
        sum += s * s;
    }
    return 2.0 * sum / double(theta.size());
}

LineRule composite_gauss(std::span<double const> breaks, int nodes_per_panel) {
    auto const& gl = gauss_legendre(nodes_per_panel);
    LineRule rule;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        double const a = breaks[p];
        double const b = breaks[p + 1];
        double const half = 0.5 * (b - a);
        double const mid = 0.5 * (a + b);
        for (int i = 0; i < nodes_per_panel; ++i) {
            rule.nodes.push_back(mid + half * gl.nodes[i]);
            rule.weights.push_back(half * gl.weights[i]);
        }
    }
    return rule;
}

std::vector<double> graded_breaks(double offset, double ratio) {
    std::vector<double> breaks{std::numbers::pi};
    if (offset > 0.0) {
        double const floor = 0.05 * std::sqrt(offset);
        double b = std::numbers::pi;
        while (b > floor) {
            b *= ratio;
            breaks.push_back(b);
        }
    }
    breaks.push_back(0.0);
    std::reverse(breaks.begin(), breaks.end());
    return breaks;
}

} // namespace latspec
