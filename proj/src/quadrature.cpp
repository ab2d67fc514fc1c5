#include "latspec/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <utility>

#include "latspec/errors.hpp"

namespace latspec {

namespace {

// Legendre polynomial P_n(x) and its derivative.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
        double const p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

GaussRule make_rule(int n) {
    GaussRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    if (n == 1) {
        rule.weights[0] = 2.0;
        return rule;
    }
    for (int i = 0; i < n / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto const [p, dp] = legendre(n, x);
            double const dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double const dp = legendre(n, x).second;
        double const w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        double const dp = legendre(n, 0.0).second;
        rule.weights[n / 2] = 2.0 / (dp * dp);
    }
    return rule;
}

constexpr int kMaxRule = 256;

} // namespace

GaussRule const& gauss_legendre(int n) {
    if (n < 1 || n > kMaxRule) throw DomainError("gauss_legendre: unsupported order");
    static std::array<GaussRule, kMaxRule + 1> rules;
    static std::array<std::once_flag, kMaxRule + 1> flags;
    std::call_once(flags[n], [n] { rules[n] = make_rule(n); });
    return rules[n];
}

double pairwise_sum(std::span<double const> values) {
    PairwiseSum s;
    for (double v : values) s.add(v);
    return s.result();
}

int default_thread_count() {
    unsigned const hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : int(hc);
}

void parallel_blocks(std::size_t n, int threads, std::function<void(std::size_t, std::size_t)> const& body) {
    if (n == 0) return;
    std::size_t const workers = std::min<std::size_t>(std::max(threads, 1), n);
    if (workers == 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t const begin = n * w / workers;
        std::size_t const end = n * (w + 1) / workers;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& t : pool) t.join();
}

double chunked_sum(std::size_t n_chunks, int threads, std::function<double(std::size_t)> const& chunk) {
    std::vector<double> partial(n_chunks, 0.0);
    parallel_blocks(n_chunks, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) partial[i] = chunk(i);
    });
    return pairwise_sum(partial);
}

} // namespace latspec
