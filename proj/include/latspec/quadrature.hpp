#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace latspec {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached rule with n points, 1 <= n <= 256.
GaussRule const& gauss_legendre(int n);

/// Fixed-order pairwise (cascade) summation. The result depends only on the
/// order of the added terms.
class PairwiseSum {
public:
    void add(double x) {
        double s = x;
        std::uint64_t c = count_;
        int level = 0;
        while (c & 1u) {
            s = partial_[level] + s;
            c >>= 1;
            ++level;
        }
        partial_[level] = s;
        ++count_;
    }

    double result() const {
        double s = 0.0;
        bool first = true;
        std::uint64_t c = count_;
        for (int level = 0; c != 0; ++level, c >>= 1) {
            if (c & 1u) {
                s = first ? partial_[level] : partial_[level] + s;
                first = false;
            }
        }
        return s;
    }

    std::uint64_t count() const { return count_; }

private:
    std::array<double, 64> partial_{};
    std::uint64_t count_ = 0;
};

double pairwise_sum(std::span<double const> values);

/// Evaluates chunk(0..n_chunks-1), possibly on several threads, and reduces the
/// results pairwise in index order. The chunking is fixed by the caller, so the
/// result is bit-identical for every thread count.
double chunked_sum(std::size_t n_chunks, int threads, std::function<double(std::size_t)> const& chunk);

/// Runs body(begin, end) over a partition of [0, n) into contiguous blocks.
void parallel_blocks(std::size_t n, int threads, std::function<void(std::size_t, std::size_t)> const& body);

int default_thread_count();

} // namespace latspec
