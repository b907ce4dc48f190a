#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace multinet {

inline bool is_defined(double x) noexcept { return !std::isnan(x); }

// NaN marks "undefined" throughout: statistics with zero-degree denominators,
// degenerate correlations, and so on. Never imputed as zero.
inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

// Neumaier compensated summation.
double compensated_sum(std::span<const double> xs) noexcept;

struct Moments {
    std::size_t n = 0;
    double mean = kUndefined;
    double sd = kUndefined;  // n-1 denominator; undefined for n < 2
};

// Mean and sample standard deviation over the defined (non-NaN) entries.
Moments sample_moments(std::span<const double> xs) noexcept;

// Pearson product-moment correlation over indices where both inputs are
// defined. Two-pass with compensated accumulation. NaN when fewer than two
// complete pairs remain or either variance vanishes.
double pearson(std::span<const double> x, std::span<const double> y) noexcept;

// Midranks (average rank for ties), 1-based; NaN entries keep NaN.
std::vector<double> midranks(std::span<const double> xs);

// All unordered layer pairs (c, c') with c < c', in row-major order. Every
// pairwise computation in the toolkit enumerates through this one helper.
std::vector<std::pair<int, int>> layer_pairs(int n_layers);

// Deterministic static-chunk parallel map: fn(i) for i in [0, n), each result
// written to its own slot by the caller. Identical output for any thread count.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace multinet
